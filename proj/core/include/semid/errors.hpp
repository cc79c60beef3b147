#pragma once

#include <stdexcept>
#include <string>

namespace semid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateName : public Error { public: using Error::Error; };
class UnknownVariable : public Error { public: using Error::Error; };
class DirectedCycle : public Error { public: using Error::Error; };
class DuplicateEdge : public Error { public: using Error::Error; };
class DiagramTooLarge : public Error { public: using Error::Error; };
class VariableNotOnPath : public Error { public: using Error::Error; };
class NotAnEndpoint : public Error { public: using Error::Error; };
class MissingParameter : public Error { public: using Error::Error; };
class NonPositiveDefinitePsi : public Error { public: using Error::Error; };
class RetriesExhausted : public Error { public: using Error::Error; };
class EmptyIncSet : public Error { public: using Error::Error; };
class MalformedWitness : public Error { public: using Error::Error; };
class IncompleteAssignment : public Error { public: using Error::Error; };
class SingularSystem : public Error { public: using Error::Error; };
class CoefficientUnavailable : public Error { public: using Error::Error; };
class PreconditionError : public Error { public: using Error::Error; };

/// Raised by the model-file reader; carries a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(msg), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace semid

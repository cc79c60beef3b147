#pragma once

#include <map>
#include <string>

#include "semid/diagram.hpp"

namespace semid {

/// Model file contents: the diagram description plus an optional block of
/// fixed parameter values.
struct ModelFile {
    DiagramSpec spec;
    std::map<std::string, double> params;
};

/// Parses the JSON model format. Unknown keys are rejected; malformed input
/// raises ParseError with a 1-based line/column position.
ModelFile parse_model(const std::string& text);

ModelFile load_model_file(const std::string& path);

/// Serialization; parse(serialize(m)) reproduces m exactly.
std::string serialize_model(const ModelFile& m);

}  // namespace semid

#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semid/diagram.hpp"

namespace semid {

/// Assignment of real values to the edge parameters and error variances.
struct Parameterization {
    std::map<std::string, double> coeffs;           // edge parameters (directed and bidirected)
    std::map<std::string, double> error_variances;  // diagonal of Psi, keyed by variable
};

/// Sum of products of parameter names; one term per unblocked path (an empty
/// term is the constant 1, an empty term list the constant 0).
struct PathPolynomial {
    std::vector<std::vector<std::string>> terms;

    bool zero() const { return terms.empty(); }
};

/// Symmetric matrix with unit diagonal over a fixed variable order.
struct CorrelationMatrix {
    std::vector<std::string> variables;
    Eigen::MatrixXd values;

    double at(const std::string& x, const std::string& y) const;
};

/// Wright decomposition: the correlation of x and y as a polynomial with one
/// term per unblocked path, in canonical path order.
PathPolynomial decompose(const CausalDiagram& d, VarId x, VarId y);
PathPolynomial decompose(const CausalDiagram& d, const std::string& x, const std::string& y);

double eval_polynomial(const PathPolynomial& poly, const Parameterization& pi);

/// Model-implied covariance (I-C)^-1 Psi (I-C)^-T, rows/cols in a
/// depth-compatible (topological) variable order.
struct CovarianceMatrix {
    std::vector<std::string> variables;
    Eigen::MatrixXd values;
};
CovarianceMatrix implied_covariance(const CausalDiagram& d, const Parameterization& pi);

/// Rescales every parameter to the unit-variance model and returns the
/// correlation matrix it implies. Evaluating decompose() at the returned
/// parameters reproduces each off-diagonal entry.
std::pair<Parameterization, CorrelationMatrix> standardize(const CausalDiagram& d,
                                                           const Parameterization& pi);

/// Seed-deterministic generic parameterization: edge coefficients uniform in
/// [-scale, scale] with a dead zone of +-0.05*scale, unit error variances,
/// bidirected parameters capped so Psi is diagonally dominant.
Parameterization random_parameterization(const CausalDiagram& d, unsigned long long seed,
                                         double scale);

}  // namespace semid

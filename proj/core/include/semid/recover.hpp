#pragma once

#include <map>
#include <string>
#include <vector>

#include "semid/ident.hpp"

namespace semid {

/// Instantiated k x k system A * lambda = b for one target, with b already
/// net of the intercept.
struct NumericSystem {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
};

/// Numeric coefficients of a Phi system. A row whose member precedes the
/// target in delta and triggers no dependence case reads its coefficients
/// straight off rho (its intercept provably vanishes); every other row
/// evaluates its polynomials over the already-solved parameters. Throws
/// CoefficientUnavailable when a needed parameter has not been solved yet.
NumericSystem numeric_coefficients(const CausalDiagram& d, const PhiSystem& sys,
                                   const std::map<std::string, double>& solved,
                                   const CorrelationMatrix& rho, const Ordering& delta);

/// Solution of a * x = b; rejects systems with condition number above 1e8.
/// The condition number is reported through `condition` when given.
Eigen::VectorXd solve_system(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             double* condition = nullptr);

enum class RecoveryStatus { Success, SingularSystem, CoefficientUnavailable };

struct RecoveryReport {
    std::map<std::string, double> recovered;  // standardized edge parameters
    double max_abs_error = -1.0;              // vs ground truth, when known
    std::vector<std::pair<std::string, double>> condition_numbers;  // per target
    RecoveryStatus status = RecoveryStatus::Success;
    std::string detail;
};

/// Walks the verdict's schedule and solves each Phi system against rho.
/// The verdict must be Identified. Systems whose coefficients are not yet
/// available are retried after the rest of the schedule; if none can make
/// progress the report carries CoefficientUnavailable.
RecoveryReport recover_parameters(const CausalDiagram& d, const CorrelationMatrix& rho,
                                  const Verdict& verdict);

struct RoundTripSummary {
    int trials = 0;
    int successes = 0;
    int ill_conditioned = 0;  // trials rejected by the condition-number cap
    int failures = 0;         // anything else (any occurrence is a finding)
    double worst_error = 0.0;  // max abs error over successful trials
    std::vector<std::string> notes;
};

/// Samples seeded parameterizations, standardizes, recovers from the implied
/// correlation matrix, and reports the worst absolute error.
RoundTripSummary round_trip_verify(const CausalDiagram& d, unsigned long long seed, int trials);

}  // namespace semid

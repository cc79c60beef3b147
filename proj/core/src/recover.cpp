#include "semid/recover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace semid {

namespace {

double eval_terms(const PathPolynomial& poly, const std::map<std::string, double>& solved,
                  std::vector<std::string>& missing) {
    double sum = 0.0;
    for (const auto& term : poly.terms) {
        double prod = 1.0;
        for (const auto& param : term) {
            auto it = solved.find(param);
            if (it == solved.end()) {
                missing.push_back(param);
                prod = 0.0;
            } else {
                prod *= it->second;
            }
        }
        sum += prod;
    }
    return sum;
}

}  // namespace

NumericSystem numeric_coefficients(const CausalDiagram& d, const PhiSystem& sys,
                                   const std::map<std::string, double>& solved,
                                   const CorrelationMatrix& rho, const Ordering& delta) {
    const int k = static_cast<int>(sys.rows.size());
    const int m = static_cast<int>(sys.inc_edges.size());
    NumericSystem out;
    out.a.resize(k, m);
    out.b.resize(k);

    std::vector<std::string> missing;
    for (int i = 0; i < k; ++i) {
        const PhiRow& row = sys.rows[i];
        double rho_zy = rho.at(d.name(row.z), d.name(sys.target));

        if (dependence_cases(d, row.z, sys.target) == DepCase::None &&
            delta.before(row.z, sys.target)) {
            // No dependence case and a delta-earlier member: every unblocked
            // path enters the target through one of its own Inc edges, so the
            // coefficients read straight off rho and the intercept is zero.
            for (int j = 0; j < m; ++j) {
                const Edge& e = d.edge(sys.inc_edges[j]);
                if (e.kind == EdgeKind::Directed) {
                    out.a(i, j) = row.z == e.a ? 1.0 : rho.at(d.name(row.z), d.name(e.a));
                } else {
                    VarId v = d.other_end(sys.inc_edges[j], sys.target);
                    out.a(i, j) = row.z == v ? 1.0 : 0.0;
                }
            }
            out.b(i) = rho_zy;
        } else {
            for (int j = 0; j < m; ++j) {
                out.a(i, j) = eval_terms(row.coefficients[j], solved, missing);
            }
            out.b(i) = rho_zy - eval_terms(row.intercept, solved, missing);
        }
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::string names;
        for (const auto& p : missing) names += (names.empty() ? "" : ", ") + p;
        throw CoefficientUnavailable("coefficients for '" + d.name(sys.target) +
                                     "' need unsolved parameters: " + names);
    }
    return out;
}

Eigen::VectorXd solve_system(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             double* condition) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues().maxCoeff();
    double smin = svd.singularValues().minCoeff();
    double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (condition) *condition = cond;
    if (!(cond <= 1e8)) {
        throw SingularSystem("system is singular or ill-conditioned (condition number " +
                             std::to_string(cond) + ")");
    }
    return svd.solve(b);
}

RecoveryReport recover_parameters(const CausalDiagram& d, const CorrelationMatrix& rho,
                                  const Verdict& verdict) {
    if (verdict.kind != VerdictKind::Identified) {
        throw PreconditionError("parameter recovery requires an Identified verdict");
    }

    RecoveryReport report;
    std::vector<VarId> pending = verdict.schedule;
    std::string last_unavailable;

    bool progress = true;
    while (!pending.empty() && progress) {
        progress = false;
        std::vector<VarId> still_pending;
        for (VarId y : pending) {
            const AuxiliaryCandidate& c = verdict.assignment.by_target.at(y);
            PhiSystem sys = build_phi_system(d, c.members, y, verdict.delta);
            NumericSystem numeric;
            try {
                numeric = numeric_coefficients(d, sys, report.recovered, rho, verdict.delta);
            } catch (const CoefficientUnavailable& e) {
                last_unavailable = e.what();
                still_pending.push_back(y);
                continue;
            }
            double cond = 0.0;
            Eigen::VectorXd solution;
            try {
                solution = solve_system(numeric.a, numeric.b, &cond);
            } catch (const SingularSystem& e) {
                report.status = RecoveryStatus::SingularSystem;
                report.detail = std::string("system for '") + d.name(y) + "': " + e.what();
                report.condition_numbers.emplace_back(d.name(y), cond);
                return report;
            }
            report.condition_numbers.emplace_back(d.name(y), cond);
            for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
                report.recovered[sys.unknowns[j]] = solution(static_cast<int>(j));
            }
            progress = true;
        }
        pending = std::move(still_pending);
    }

    if (!pending.empty()) {
        report.status = RecoveryStatus::CoefficientUnavailable;
        report.detail = last_unavailable;
    }
    return report;
}

RoundTripSummary round_trip_verify(const CausalDiagram& d, unsigned long long seed, int trials) {
    Verdict verdict = analyze(d);
    if (verdict.kind != VerdictKind::Identified) {
        throw PreconditionError("round-trip verification requires an identified model");
    }

    RoundTripSummary summary;
    summary.trials = trials;
    for (int t = 0; t < trials; ++t) {
        unsigned long long trial_seed = seed + 0x9e3779b97f4a7c15ULL * static_cast<unsigned long long>(t);
        Parameterization pi;
        try {
            pi = random_parameterization(d, trial_seed, 0.9);
        } catch (const RetriesExhausted& e) {
            ++summary.failures;
            summary.notes.push_back("trial " + std::to_string(t) + " (seed " +
                                    std::to_string(trial_seed) + "): " + e.what());
            continue;
        }
        auto [std_pi, corr] = standardize(d, pi);
        RecoveryReport report = recover_parameters(d, corr, verdict);

        if (report.status == RecoveryStatus::SingularSystem) {
            ++summary.ill_conditioned;
            summary.notes.push_back("trial " + std::to_string(t) + " (seed " +
                                    std::to_string(trial_seed) + "): " + report.detail);
            continue;
        }
        if (report.status != RecoveryStatus::Success) {
            ++summary.failures;
            summary.notes.push_back("trial " + std::to_string(t) + " (seed " +
                                    std::to_string(trial_seed) + "): " + report.detail);
            continue;
        }

        double err = 0.0;
        for (const Edge& e : d.edges()) {
            err = std::max(err, std::abs(report.recovered.at(e.param) - std_pi.coeffs.at(e.param)));
        }
        ++summary.successes;
        summary.worst_error = std::max(summary.worst_error, err);
    }
    return summary;
}

}  // namespace semid

#include "semid/wright.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace semid {

double CorrelationMatrix::at(const std::string& x, const std::string& y) const {
    auto idx = [&](const std::string& name) -> int {
        auto it = std::find(variables.begin(), variables.end(), name);
        if (it == variables.end()) throw UnknownVariable("unknown variable '" + name + "'");
        return static_cast<int>(it - variables.begin());
    };
    return values(idx(x), idx(y));
}

PathPolynomial decompose(const CausalDiagram& d, VarId x, VarId y) {
    PathPolynomial poly;
    for (const Path& p : enumerate_unblocked_paths(d, x, y)) {
        std::vector<std::string> term;
        term.reserve(p.steps.size());
        for (const PathStep& s : p.steps) term.push_back(d.edge(s.edge).param);
        poly.terms.push_back(std::move(term));
    }
    return poly;
}

PathPolynomial decompose(const CausalDiagram& d, const std::string& x, const std::string& y) {
    return decompose(d, d.var(x), d.var(y));
}

double eval_polynomial(const PathPolynomial& poly, const Parameterization& pi) {
    double sum = 0.0;
    for (const auto& term : poly.terms) {
        double prod = 1.0;
        for (const auto& param : term) {
            auto it = pi.coeffs.find(param);
            if (it == pi.coeffs.end()) {
                throw MissingParameter("no value for parameter '" + param + "'");
            }
            prod *= it->second;
        }
        sum += prod;
    }
    return sum;
}

namespace {

Eigen::MatrixXd psi_matrix(const CausalDiagram& d, const Parameterization& pi,
                           const std::vector<VarId>& order) {
    const int n = d.num_variables();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(n, n);
    for (VarId v = 0; v < n; ++v) {
        auto it = pi.error_variances.find(d.name(v));
        if (it == pi.error_variances.end()) {
            throw MissingParameter("no error variance for variable '" + d.name(v) + "'");
        }
        psi(pos[v], pos[v]) = it->second;
    }
    for (const Edge& e : d.edges()) {
        if (e.kind != EdgeKind::Bidirected) continue;
        auto it = pi.coeffs.find(e.param);
        if (it == pi.coeffs.end()) {
            throw MissingParameter("no value for parameter '" + e.param + "'");
        }
        psi(pos[e.a], pos[e.b]) = it->second;
        psi(pos[e.b], pos[e.a]) = it->second;
    }
    return psi;
}

bool positive_definite(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) return false;
    const double floor = 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    return es.eigenvalues().minCoeff() > floor;
}

}  // namespace

CovarianceMatrix implied_covariance(const CausalDiagram& d, const Parameterization& pi) {
    const int n = d.num_variables();
    const std::vector<VarId> order = ordering_delta(d).order;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : d.edges()) {
        if (e.kind != EdgeKind::Directed) continue;
        auto it = pi.coeffs.find(e.param);
        if (it == pi.coeffs.end()) {
            throw MissingParameter("no value for parameter '" + e.param + "'");
        }
        c(pos[e.b], pos[e.a]) = it->second;
    }

    Eigen::MatrixXd psi = psi_matrix(d, pi, order);
    if (!positive_definite(psi)) {
        throw NonPositiveDefinitePsi("error covariance matrix Psi is not positive definite");
    }

    Eigen::MatrixXd inv = (Eigen::MatrixXd::Identity(n, n) - c).inverse();
    CovarianceMatrix cov;
    cov.values = inv * psi * inv.transpose();
    cov.variables.reserve(n);
    for (VarId v : order) cov.variables.push_back(d.name(v));
    return cov;
}

std::pair<Parameterization, CorrelationMatrix> standardize(const CausalDiagram& d,
                                                           const Parameterization& pi) {
    CovarianceMatrix cov = implied_covariance(d, pi);
    const int n = d.num_variables();

    std::map<std::string, double> sigma;
    for (int i = 0; i < n; ++i) {
        sigma[cov.variables[i]] = std::sqrt(cov.values(i, i));
    }

    Parameterization out;
    for (const Edge& e : d.edges()) {
        double value = pi.coeffs.at(e.param);
        if (e.kind == EdgeKind::Directed) {
            out.coeffs[e.param] = value * sigma[d.name(e.a)] / sigma[d.name(e.b)];
        } else {
            out.coeffs[e.param] = value / (sigma[d.name(e.a)] * sigma[d.name(e.b)]);
        }
    }
    for (VarId v = 0; v < n; ++v) {
        const std::string& name = d.name(v);
        double s = sigma[name];
        out.error_variances[name] = pi.error_variances.at(name) / (s * s);
    }

    CorrelationMatrix corr;
    corr.variables = cov.variables;
    corr.values = cov.values;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            corr.values(i, j) /= sigma[cov.variables[i]] * sigma[cov.variables[j]];
        }
        corr.values(i, i) = 1.0;
    }
    return {std::move(out), std::move(corr)};
}

Parameterization random_parameterization(const CausalDiagram& d, unsigned long long seed,
                                         double scale) {
    if (!(scale > 0.0 && scale <= 1.0)) {
        throw PreconditionError("scale must lie in (0, 1]");
    }

    int max_arc_degree = 1;
    std::vector<int> arc_degree(d.num_variables(), 0);
    for (const Edge& e : d.edges()) {
        if (e.kind != EdgeKind::Bidirected) continue;
        max_arc_degree = std::max({max_arc_degree, ++arc_degree[e.a], ++arc_degree[e.b]});
    }

    const double dead_zone = 0.05 * scale;
    // Cap keeps every row of Psi strictly diagonally dominant (diagonal is 1).
    const double arc_cap = std::max(dead_zone * 1.5, std::min(scale, 0.9 / max_arc_degree));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](double lo, double hi) {
        double magnitude = lo + (hi - lo) * unit(rng);
        return unit(rng) < 0.5 ? -magnitude : magnitude;
    };

    for (int attempt = 0; attempt < 32; ++attempt) {
        Parameterization pi;
        for (const Edge& e : d.edges()) {
            if (e.kind == EdgeKind::Directed) {
                pi.coeffs[e.param] = draw(dead_zone, scale);
            } else {
                pi.coeffs[e.param] = draw(dead_zone, arc_cap);
            }
        }
        for (const auto& name : d.variables()) pi.error_variances[name] = 1.0;

        if (positive_definite(psi_matrix(d, pi, ordering_delta(d).order))) {
            return pi;
        }
    }
    throw RetriesExhausted("could not sample a positive definite error covariance");
}

}  // namespace semid

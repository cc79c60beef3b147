#include "semid/gcrit.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace semid {

namespace {

std::vector<EdgeId> inc_edges_on_path(const Path& p, const std::vector<EdgeId>& inc) {
    std::vector<EdgeId> found;
    for (const PathStep& s : p.steps) {
        if (std::binary_search(inc.begin(), inc.end(), s.edge)) found.push_back(s.edge);
    }
    return found;
}

}  // namespace

PhiSystem build_phi_system(const CausalDiagram& d, const std::vector<VarId>& zs, VarId y,
                           const Ordering& delta) {
    for (VarId z : zs) {
        if (z == y) throw PreconditionError("target variable may not be part of Z");
    }
    PhiSystem sys;
    sys.target = y;
    sys.inc_edges = inc_set(d, y, delta);
    if (sys.inc_edges.empty()) throw EmptyIncSet("Inc(" + d.name(y) + ") is empty");
    for (EdgeId e : sys.inc_edges) sys.unknowns.push_back(d.edge(e).param);

    for (VarId z : zs) {
        PhiRow row;
        row.z = z;
        row.coefficients.resize(sys.inc_edges.size());
        for (const Path& p : enumerate_unblocked_paths(d, z, y)) {
            std::vector<EdgeId> used = inc_edges_on_path(p, sys.inc_edges);
            if (used.size() > 1) {
                throw Error("path uses two Inc(Y) edges; Lemma 2 violated");  // unreachable
            }
            std::vector<std::string> term;
            for (const PathStep& s : p.steps) {
                if (!used.empty() && s.edge == used.front()) continue;  // divide the unknown out
                term.push_back(d.edge(s.edge).param);
            }
            if (used.empty()) {
                row.intercept.terms.push_back(std::move(term));
            } else {
                auto it = std::find(sys.inc_edges.begin(), sys.inc_edges.end(), used.front());
                row.coefficients[it - sys.inc_edges.begin()].terms.push_back(std::move(term));
            }
        }
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

namespace {

/// Condition (ii) of the G criterion for an ordered pair of witnesses:
/// at every common variable U (other than the shared sink) the two paths
/// must not be breakable into a rearranged pair of unblocked paths.
bool pair_condition(const CausalDiagram& d, const Witness& wi, const Witness& wj, VarId y) {
    std::vector<VarId> vars_i = wi.path.vars();
    std::set<VarId> vars_j_set;
    for (VarId v : wj.path.vars()) vars_j_set.insert(v);

    for (VarId u : vars_i) {
        if (u == y || !vars_j_set.count(u)) continue;
        Path i_head = subpath(d, wi.path, wi.source, u);
        Path i_tail = subpath(d, wi.path, u, y);
        Path j_head = subpath(d, wj.path, wj.source, u);
        Path j_tail = subpath(d, wj.path, u, y);
        bool clause_a = points_to(d, i_head, u) && points_to(d, j_tail, u);
        bool clause_b = points_to(d, j_head, u) && points_to(d, i_tail, u);
        if (!clause_a && !clause_b) return false;
    }
    return true;
}

}  // namespace

bool check_g_criterion(const CausalDiagram& d, const WitnessSet& ws, VarId y,
                       const Ordering& delta) {
    std::vector<EdgeId> inc = inc_set(d, y, delta);
    for (const Witness& w : ws.witnesses) {
        if (!is_valid_path(d, w.path) || w.path.sink != y || w.path.source != w.source ||
            w.path.empty()) {
            throw MalformedWitness("witness is not a valid path ending at the target");
        }
    }
    if (ws.witnesses.size() != inc.size()) return false;

    // Condition (i): unblocked, uses its assigned Inc(Y) edge, assignment is a bijection.
    std::set<EdgeId> used;
    for (const Witness& w : ws.witnesses) {
        if (!is_unblocked(d, w.path)) return false;
        if (std::find(inc.begin(), inc.end(), w.inc_edge) == inc.end()) return false;
        bool on_path = false;
        for (const PathStep& s : w.path.steps) on_path |= (s.edge == w.inc_edge);
        if (!on_path) return false;
        if (!used.insert(w.inc_edge).second) return false;
    }

    // Condition (ii), pairwise.
    for (std::size_t i = 0; i < ws.witnesses.size(); ++i) {
        for (std::size_t j = i + 1; j < ws.witnesses.size(); ++j) {
            if (!pair_condition(d, ws.witnesses[i], ws.witnesses[j], y)) return false;
        }
    }
    return true;
}

namespace {

struct WitnessCandidates {
    VarId source;
    std::vector<Witness> options;  // canonical path order
};

bool kuhn_match(const std::vector<std::vector<int>>& adj, int edge_count) {
    const int k = static_cast<int>(adj.size());
    std::vector<int> matched(edge_count, -1);
    std::vector<bool> seen;
    std::function<bool(int)> augment = [&](int z) -> bool {
        for (int e : adj[z]) {
            if (seen[e]) continue;
            seen[e] = true;
            if (matched[e] < 0 || augment(matched[e])) {
                matched[e] = z;
                return true;
            }
        }
        return false;
    };
    for (int z = 0; z < k; ++z) {
        seen.assign(edge_count, false);
        if (!augment(z)) return false;
    }
    return true;
}

bool place_witnesses(const CausalDiagram& d, const std::vector<WitnessCandidates>& cands,
                     VarId y, std::size_t index, std::set<EdgeId>& used,
                     std::vector<Witness>& placed) {
    if (index == cands.size()) return true;
    for (const Witness& w : cands[index].options) {
        if (used.count(w.inc_edge)) continue;
        bool compatible = true;
        for (const Witness& prior : placed) {
            if (!pair_condition(d, prior, w, y)) {
                compatible = false;
                break;
            }
        }
        if (!compatible) continue;
        used.insert(w.inc_edge);
        placed.push_back(w);
        if (place_witnesses(d, cands, y, index + 1, used, placed)) return true;
        placed.pop_back();
        used.erase(w.inc_edge);
    }
    return false;
}

}  // namespace

std::optional<WitnessSet> find_witnesses(const CausalDiagram& d, const std::vector<VarId>& zs,
                                         VarId y, const Ordering& delta) {
    std::vector<EdgeId> inc = inc_set(d, y, delta);
    if (inc.empty()) throw EmptyIncSet("Inc(" + d.name(y) + ") is empty");
    if (zs.size() != inc.size()) {
        throw PreconditionError("candidate set size must equal |Inc(Y)|");
    }

    std::vector<WitnessCandidates> cands;
    std::vector<std::vector<int>> adj(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        WitnessCandidates wc;
        wc.source = zs[i];
        std::set<int> reachable_edges;
        for (const Path& p : enumerate_unblocked_paths(d, zs[i], y)) {
            std::vector<EdgeId> used = inc_edges_on_path(p, inc);
            if (used.size() != 1) continue;
            wc.options.push_back({zs[i], p, used.front()});
            auto it = std::find(inc.begin(), inc.end(), used.front());
            reachable_edges.insert(static_cast<int>(it - inc.begin()));
        }
        adj[i].assign(reachable_edges.begin(), reachable_edges.end());
        cands.push_back(std::move(wc));
    }

    // Matching precheck before the quadratic pairwise search.
    if (!kuhn_match(adj, static_cast<int>(inc.size()))) return std::nullopt;

    std::set<EdgeId> used;
    std::vector<Witness> placed;
    if (!place_witnesses(d, cands, y, 0, used, placed)) return std::nullopt;
    return WitnessSet{std::move(placed)};
}

namespace {

void combos(const std::vector<VarId>& pool, std::size_t k, std::size_t start,
            std::vector<VarId>& current, const std::function<bool(const std::vector<VarId>&)>& emit,
            bool& stop) {
    if (stop) return;
    if (current.size() == k) {
        if (!emit(current)) stop = true;
        return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
        if (pool.size() - i < k - current.size()) break;
        current.push_back(pool[i]);
        combos(pool, k, i + 1, current, emit, stop);
        current.pop_back();
        if (stop) return;
    }
}

}  // namespace

std::vector<AuxiliaryCandidate> find_auxiliary_sets(const CausalDiagram& d, VarId y,
                                                    const Ordering& delta, std::size_t limit) {
    std::vector<EdgeId> inc = inc_set(d, y, delta);
    if (inc.empty()) throw EmptyIncSet("Inc(" + d.name(y) + ") is empty");
    const std::size_t k = inc.size();

    // Candidates prefer delta-later variables: nearer the target, so witness
    // paths stay short and parents come first.
    std::vector<VarId> pool;
    for (VarId v : delta.order) {
        if (v != y) pool.push_back(v);
    }
    std::reverse(pool.begin(), pool.end());

    std::vector<VarId> shallow;  // condition-(4) eligible members
    for (VarId v : pool) {
        if (d.depth(v) < d.depth(y)) shallow.push_back(v);
    }

    std::vector<AuxiliaryCandidate> results;
    auto try_set = [&](const std::vector<VarId>& picked, bool condition4) -> bool {
        // Stored in delta order regardless of enumeration order.
        std::vector<VarId> members = picked;
        std::sort(members.begin(), members.end(),
                  [&](VarId a, VarId b) { return delta.before(a, b); });
        auto ws = find_witnesses(d, members, y, delta);
        if (ws) {
            results.push_back({members, std::move(*ws), condition4});
        }
        return results.size() < limit;
    };

    bool stop = false;
    std::vector<VarId> current;
    combos(shallow, k, 0, current,
           [&](const std::vector<VarId>& members) { return try_set(members, true); }, stop);
    if (!stop) {
        combos(pool, k, 0, current,
               [&](const std::vector<VarId>& members) {
                   bool all_shallow = true;
                   for (VarId v : members) all_shallow &= d.depth(v) < d.depth(y);
                   if (all_shallow) return true;  // already enumerated in the first pass
                   return try_set(members, false);
               },
               stop);
    }
    return results;
}

bool numeric_rank_oracle(const CausalDiagram& d, const std::vector<VarId>& zs, VarId y,
                         unsigned long long seed, const Ordering& delta) {
    PhiSystem sys = build_phi_system(d, zs, y, delta);
    if (zs.size() != sys.inc_edges.size()) {
        throw PreconditionError("candidate set size must equal |Inc(Y)|");
    }

    auto verdict_at = [&](unsigned long long s, bool& borderline) {
        Parameterization pi = random_parameterization(d, s, 0.9);
        Parameterization std_pi = standardize(d, pi).first;

        const int k = static_cast<int>(zs.size());
        Eigen::MatrixXd a(k, k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                a(i, j) = eval_polynomial(sys.rows[i].coefficients[j], std_pi);
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        double smax = svd.singularValues().maxCoeff();
        double smin = svd.singularValues().minCoeff();
        double threshold = 1e-7 * std::max(smax, 1.0);
        borderline = smin > threshold / 10.0 && smin < threshold * 10.0;
        return smin > threshold;
    };

    bool borderline = false;
    bool verdict = verdict_at(seed, borderline);
    if (borderline) {
        verdict = verdict_at(seed * 6364136223846793005ULL + 1442695040888963407ULL, borderline);
    }
    return verdict;
}

}  // namespace semid

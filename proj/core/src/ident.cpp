#include "semid/ident.hpp"

#include <algorithm>
#include <set>

namespace semid {

DepCase dependence_cases(const CausalDiagram& d, VarId z, VarId y) {
    if (z == y) throw PreconditionError("dependence case requires distinct variables");
    if (d.is_descendant(z, y)) return DepCase::Descendant;

    for (const Path& p : enumerate_unblocked_paths(d, z, y)) {
        if (p.length() < 2) continue;  // a bare arc or single edge never triggers
        if (d.edge(p.steps.back().edge).kind != EdgeKind::Bidirected) continue;
        bool tail = true;
        for (int i = 0; i + 1 < p.length(); ++i) {
            const Edge& e = d.edge(p.steps[i].edge);
            // Every edge before the arc must be directed with its arrow
            // pointing toward z, i.e. at the step's 'from' side.
            if (e.kind != EdgeKind::Directed || e.b != p.steps[i].from) {
                tail = false;
                break;
            }
        }
        if (tail) return DepCase::TailBidirected;
    }
    return DepCase::None;
}

namespace {

/// Every solve-before constraint of an assignment, delta-natural ones
/// included. Mirrors numeric_coefficients: a row whose member triggers no
/// dependence case and precedes the target reads its coefficients off rho and
/// needs nothing; any other row evaluates its polynomials, so every parameter
/// they mention must come from an earlier system.
DependenceGraph dependence_constraints(const CausalDiagram& d, const AuxiliaryAssignment& a,
                                       const Ordering& delta) {
    DependenceGraph g;
    for (VarId y : delta.order) {
        if (!inc_set(d, y, delta).empty()) g.nodes.push_back(y);
    }
    for (VarId y : g.nodes) {
        if (!a.by_target.count(y)) {
            throw IncompleteAssignment("no auxiliary set assigned for '" + d.name(y) + "'");
        }
    }

    // Each parameter is owned by the Inc set of its edge's delta-later endpoint.
    std::map<std::string, VarId> owner;
    for (EdgeId e = 0; e < d.num_edges(); ++e) {
        const Edge& ed = d.edge(e);
        owner[ed.param] = delta.before(ed.a, ed.b) ? ed.b : ed.a;
    }

    std::set<std::pair<VarId, VarId>> seen;
    for (const auto& [y, candidate] : a.by_target) {
        PhiSystem sys = build_phi_system(d, candidate.members, y, delta);
        for (const PhiRow& row : sys.rows) {
            if (dependence_cases(d, row.z, y) == DepCase::None && delta.before(row.z, y)) {
                continue;
            }
            auto add_needs = [&](const PathPolynomial& poly) {
                for (const auto& term : poly.terms) {
                    for (const auto& param : term) {
                        VarId w = owner.at(param);
                        if (w != y && seen.insert({w, y}).second) {
                            g.edges.push_back({w, y, dependence_cases(d, row.z, y)});
                        }
                    }
                }
            };
            add_needs(row.intercept);
            for (const PathPolynomial& poly : row.coefficients) add_needs(poly);
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [&](const DependenceEdge& a_, const DependenceEdge& b_) {
        return std::pair(delta.position[a_.to], delta.position[a_.from]) <
               std::pair(delta.position[b_.to], delta.position[b_.from]);
    });
    return g;
}

}  // namespace

DependenceGraph build_dependence_graph(const CausalDiagram& d, const AuxiliaryAssignment& a,
                                       const Ordering& delta) {
    DependenceGraph g = dependence_constraints(d, a, delta);
    std::vector<DependenceEdge> reordering;
    for (const DependenceEdge& e : g.edges) {
        if (delta.before(e.to, e.from)) reordering.push_back(e);
    }
    g.edges = std::move(reordering);
    return g;
}

namespace {

/// Kahn's algorithm picking the delta-earliest available node, so the
/// schedule stays as depth-compatible as the dependence edges allow.
std::optional<std::vector<VarId>> topological_schedule(const DependenceGraph& g,
                                                       const Ordering& delta) {
    std::map<VarId, int> indegree;
    std::map<VarId, std::vector<VarId>> succ;
    for (VarId v : g.nodes) indegree[v] = 0;
    for (const DependenceEdge& e : g.edges) {
        succ[e.from].push_back(e.to);
        ++indegree[e.to];
    }

    auto delta_less = [&](VarId x, VarId y) { return delta.position[x] < delta.position[y]; };
    std::vector<VarId> ready;
    for (VarId v : g.nodes) {
        if (indegree[v] == 0) ready.push_back(v);
    }
    std::sort(ready.begin(), ready.end(), delta_less);

    std::vector<VarId> order;
    while (!ready.empty()) {
        VarId v = ready.front();
        ready.erase(ready.begin());
        order.push_back(v);
        for (VarId w : succ[v]) {
            if (--indegree[w] == 0) {
                ready.insert(std::upper_bound(ready.begin(), ready.end(), w, delta_less), w);
            }
        }
    }
    if (order.size() != g.nodes.size()) return std::nullopt;  // cyclic
    return order;
}

struct AssignmentSearch {
    const CausalDiagram& d;
    const Ordering& delta;
    const std::vector<VarId>& targets;
    const std::vector<std::vector<AuxiliaryCandidate>>& candidates;
    int budget;
    int tried = 0;
    bool exhausted = false;
    bool saw_cyclic = false;

    std::optional<AuxiliaryAssignment> run() {
        AuxiliaryAssignment partial;
        return descend(0, partial);
    }

    std::optional<AuxiliaryAssignment> descend(std::size_t index, AuxiliaryAssignment& partial) {
        if (index == targets.size()) {
            DependenceGraph g = dependence_constraints(d, partial, delta);
            if (topological_schedule(g, delta)) return partial;
            saw_cyclic = true;
            return std::nullopt;
        }
        for (const AuxiliaryCandidate& c : candidates[index]) {
            if (tried >= budget) {
                exhausted = true;
                return std::nullopt;
            }
            ++tried;
            partial.by_target[targets[index]] = c;
            auto found = descend(index + 1, partial);
            if (found) return found;
            partial.by_target.erase(targets[index]);
            if (exhausted) return std::nullopt;
        }
        return std::nullopt;
    }
};

}  // namespace

Verdict analyze(const CausalDiagram& d, const AnalyzeOptions& options) {
    Verdict v;
    v.delta = options.delta ? *options.delta : ordering_delta(d);

    std::vector<VarId> targets;
    for (VarId y : v.delta.order) {
        if (!inc_set(d, y, v.delta).empty()) targets.push_back(y);
    }

    std::vector<std::vector<AuxiliaryCandidate>> candidates;
    for (VarId y : targets) {
        candidates.push_back(find_auxiliary_sets(d, y, v.delta, options.max_candidates_per_variable));
        if (candidates.back().empty()) v.culprits.push_back(y);
    }
    if (!v.culprits.empty()) {
        v.kind = VerdictKind::NoAuxiliarySet;
        for (VarId y : v.culprits) {
            v.notes.push_back("no auxiliary set of size " +
                              std::to_string(inc_set(d, y, v.delta).size()) + " exists for '" +
                              d.name(y) + "'");
        }
        return v;
    }

    AssignmentSearch search{d, v.delta, targets, candidates, options.budget};
    auto assignment = search.run();
    v.combinations_tried = search.tried;
    v.backtracked = search.tried > static_cast<int>(targets.size());

    if (!assignment) {
        v.kind = VerdictKind::Inconclusive;
        v.reason = InconclusiveReason::CyclicDependence;
        v.diagnostics = search.exhausted
                            ? "assignment search budget of " + std::to_string(options.budget) +
                                  " combinations exhausted before an acyclic dependence graph was found"
                            : "every auxiliary-set assignment yields a cyclic dependence graph";
        if (search.saw_cyclic) {
            v.notes.push_back("cyclic assignments were encountered; the model may still be "
                              "k-identified for some finite k");
        }
        return v;
    }

    v.kind = VerdictKind::Identified;
    v.assignment = *assignment;
    v.dependence = build_dependence_graph(d, v.assignment, v.delta);
    v.schedule = *topological_schedule(dependence_constraints(d, v.assignment, v.delta), v.delta);
    for (VarId y : targets) {
        const AuxiliaryCandidate& c = v.assignment.by_target.at(y);
        if (!c.condition4) {
            v.notes.push_back("auxiliary set for '" + d.name(y) +
                              "' violates the depth condition; solve order comes from the "
                              "dependence graph");
        }
    }
    return v;
}

}  // namespace semid

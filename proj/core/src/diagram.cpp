#include "semid/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace semid {

namespace {

std::string quoted(const std::string& s) { return "'" + s + "'"; }

}  // namespace

CausalDiagram CausalDiagram::build(const DiagramSpec& spec) {
    CausalDiagram d;
    if (spec.variables.size() > static_cast<std::size_t>(kMaxVariables)) {
        throw DiagramTooLarge("diagram has " + std::to_string(spec.variables.size()) +
                              " variables; the limit is " + std::to_string(kMaxVariables));
    }
    for (const auto& name : spec.variables) {
        if (d.index_.count(name)) {
            throw DuplicateName("duplicate variable name " + quoted(name));
        }
        d.index_[name] = static_cast<VarId>(d.names_.size());
        d.names_.push_back(name);
    }

    std::set<std::string> params;
    auto claim_param = [&](const std::string& p) {
        if (!params.insert(p).second) {
            throw DuplicateName("duplicate parameter name " + quoted(p));
        }
    };

    std::set<std::pair<VarId, VarId>> directed_pairs;
    for (const auto& e : spec.directed) {
        VarId tail = d.var(e.from);
        VarId head = d.var(e.to);
        if (tail == head) {
            throw DuplicateEdge("self-loop on " + quoted(e.from));
        }
        if (!directed_pairs.insert({tail, head}).second) {
            throw DuplicateEdge("duplicate directed edge " + quoted(e.from) + " -> " + quoted(e.to));
        }
        claim_param(e.param);
        d.edges_.push_back({EdgeKind::Directed, tail, head, e.param});
    }

    std::set<std::pair<VarId, VarId>> arc_pairs;
    for (const auto& e : spec.bidirected) {
        VarId a = d.var(e.a);
        VarId b = d.var(e.b);
        if (a == b) {
            throw DuplicateEdge("bidirected self-loop on " + quoted(e.a));
        }
        auto key = std::minmax(a, b);
        if (!arc_pairs.insert({key.first, key.second}).second) {
            throw DuplicateEdge("duplicate bidirected arc " + quoted(e.a) + " <-> " + quoted(e.b));
        }
        claim_param(e.param);
        d.edges_.push_back({EdgeKind::Bidirected, a, b, e.param});
    }

    d.incidence_.assign(d.names_.size(), {});
    for (EdgeId e = 0; e < d.num_edges(); ++e) {
        d.incidence_[d.edges_[e].a].push_back(e);
        d.incidence_[d.edges_[e].b].push_back(e);
    }

    d.compute_depths();  // throws DirectedCycle on a non-recursive model
    d.compute_reachability();
    return d;
}

VarId CausalDiagram::var(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
        throw UnknownVariable("unknown variable " + quoted(name));
    }
    return it->second;
}

bool CausalDiagram::has_variable(const std::string& name) const {
    return index_.count(name) != 0;
}

bool CausalDiagram::arrowhead_at(EdgeId e, VarId v) const {
    const Edge& ed = edges_[e];
    if (ed.kind == EdgeKind::Bidirected) return v == ed.a || v == ed.b;
    return v == ed.b;  // directed edges point to their head only
}

VarId CausalDiagram::other_end(EdgeId e, VarId v) const {
    const Edge& ed = edges_[e];
    return v == ed.a ? ed.b : ed.a;
}

void CausalDiagram::compute_depths() {
    const int n = num_variables();
    std::vector<int> indegree(n, 0);
    std::vector<std::vector<VarId>> children(n);
    for (const Edge& e : edges_) {
        if (e.kind != EdgeKind::Directed) continue;
        children[e.a].push_back(e.b);
        ++indegree[e.b];
    }

    depth_.assign(n, 0);
    std::vector<VarId> queue;
    for (VarId v = 0; v < n; ++v) {
        if (indegree[v] == 0) queue.push_back(v);
    }
    std::size_t head = 0;
    int visited = 0;
    while (head < queue.size()) {
        VarId v = queue[head++];
        ++visited;
        for (VarId c : children[v]) {
            depth_[c] = std::max(depth_[c], depth_[v] + 1);
            if (--indegree[c] == 0) queue.push_back(c);
        }
    }
    if (visited != n) {
        throw DirectedCycle("directed part of the diagram contains a cycle; the model is not recursive");
    }
}

void CausalDiagram::compute_reachability() {
    const int n = num_variables();
    reach_.assign(n, std::vector<bool>(n, false));
    std::vector<std::vector<VarId>> children(n);
    for (const Edge& e : edges_) {
        if (e.kind == EdgeKind::Directed) children[e.a].push_back(e.b);
    }
    for (VarId s = 0; s < n; ++s) {
        std::vector<VarId> stack = {s};
        while (!stack.empty()) {
            VarId v = stack.back();
            stack.pop_back();
            for (VarId c : children[v]) {
                if (!reach_[s][c]) {
                    reach_[s][c] = true;
                    stack.push_back(c);
                }
            }
        }
    }
}

std::vector<VarId> Path::vars() const {
    std::vector<VarId> vs;
    vs.push_back(source);
    for (const PathStep& s : steps) vs.push_back(s.to);
    return vs;
}

std::optional<int> Path::position_of(VarId v) const {
    if (v == source) return 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i].to == v) return static_cast<int>(i) + 1;
    }
    return std::nullopt;
}

Ordering ordering_delta(const CausalDiagram& d) {
    const int n = d.num_variables();
    Ordering delta;
    delta.order.resize(n);
    std::iota(delta.order.begin(), delta.order.end(), 0);
    std::stable_sort(delta.order.begin(), delta.order.end(),
                     [&](VarId x, VarId y) { return d.depth(x) < d.depth(y); });
    delta.position.assign(n, 0);
    for (int i = 0; i < n; ++i) delta.position[delta.order[i]] = i;
    return delta;
}

Ordering ordering_delta(const CausalDiagram& d, unsigned long long tie_seed) {
    Ordering delta = ordering_delta(d);
    std::mt19937_64 rng(tie_seed);
    // Shuffle inside each equal-depth block; the result stays depth-compatible.
    std::size_t i = 0;
    while (i < delta.order.size()) {
        std::size_t j = i;
        while (j < delta.order.size() && d.depth(delta.order[j]) == d.depth(delta.order[i])) ++j;
        std::shuffle(delta.order.begin() + i, delta.order.begin() + j, rng);
        i = j;
    }
    for (std::size_t k = 0; k < delta.order.size(); ++k) delta.position[delta.order[k]] = k;
    return delta;
}

std::vector<EdgeId> inc_set(const CausalDiagram& d, VarId y, const Ordering& delta) {
    if (y < 0 || y >= d.num_variables()) throw UnknownVariable("variable id out of range");
    std::vector<EdgeId> inc;
    for (EdgeId e : d.edges_at(y)) {
        VarId other = d.other_end(e, y);
        if (!delta.before(other, y)) continue;
        if (d.edge(e).kind == EdgeKind::Directed && d.edge(e).b != y) continue;  // outgoing edge
        inc.push_back(e);
    }
    std::sort(inc.begin(), inc.end());
    return inc;
}

namespace {

void extend_paths(const CausalDiagram& d, VarId y, Path& current,
                  std::vector<bool>& on_path, std::vector<Path>& out) {
    VarId v = current.steps.empty() ? current.source : current.steps.back().to;
    if (v == y) {
        out.push_back(current);
        return;
    }
    for (EdgeId e : d.edges_at(v)) {
        VarId w = d.other_end(e, v);
        if (on_path[w]) continue;
        // v would become a collider when both adjacent edges point at it.
        if (!current.steps.empty() && d.arrowhead_at(current.steps.back().edge, v) &&
            d.arrowhead_at(e, v)) {
            continue;
        }
        current.steps.push_back({e, v, w});
        on_path[w] = true;
        extend_paths(d, y, current, on_path, out);
        on_path[w] = false;
        current.steps.pop_back();
    }
}

}  // namespace

std::vector<Path> enumerate_unblocked_paths(const CausalDiagram& d, VarId x, VarId y) {
    if (x < 0 || x >= d.num_variables() || y < 0 || y >= d.num_variables()) {
        throw UnknownVariable("variable id out of range");
    }
    if (x == y) throw PreconditionError("path endpoints must differ");

    Path current;
    current.source = x;
    current.sink = y;
    std::vector<bool> on_path(d.num_variables(), false);
    on_path[x] = true;
    std::vector<Path> out;
    extend_paths(d, y, current, on_path, out);

    std::sort(out.begin(), out.end(), [](const Path& p, const Path& q) {
        if (p.steps.size() != q.steps.size()) return p.steps.size() < q.steps.size();
        for (std::size_t i = 0; i < p.steps.size(); ++i) {
            if (p.steps[i].edge != q.steps[i].edge) return p.steps[i].edge < q.steps[i].edge;
        }
        return false;
    });
    return out;
}

Path subpath(const CausalDiagram& d, const Path& p, VarId u, VarId v) {
    (void)d;
    auto pu = p.position_of(u);
    auto pv = p.position_of(v);
    if (!pu || !pv) throw VariableNotOnPath("subpath endpoint does not occur on the path");

    Path sub;
    sub.source = u;
    sub.sink = v;
    if (*pu == *pv) return sub;
    if (*pu < *pv) {
        sub.steps.assign(p.steps.begin() + *pu, p.steps.begin() + *pv);
    } else {
        for (int i = *pu - 1; i >= *pv; --i) {
            sub.steps.push_back({p.steps[i].edge, p.steps[i].to, p.steps[i].from});
        }
    }
    return sub;
}

bool points_to(const CausalDiagram& d, const Path& segment, VarId u) {
    if (segment.empty()) return false;
    if (u == segment.source) return d.arrowhead_at(segment.steps.front().edge, u);
    if (u == segment.sink) return d.arrowhead_at(segment.steps.back().edge, u);
    throw NotAnEndpoint("variable is not an endpoint of the segment");
}

bool is_valid_path(const CausalDiagram& d, const Path& p) {
    if (p.source < 0 || p.source >= d.num_variables()) return false;
    if (p.sink < 0 || p.sink >= d.num_variables()) return false;
    if (p.empty()) return p.source == p.sink;

    VarId at = p.source;
    std::set<VarId> seen = {at};
    for (const PathStep& s : p.steps) {
        if (s.from != at) return false;
        const Edge& e = d.edge(s.edge);
        if (!((e.a == s.from && e.b == s.to) || (e.b == s.from && e.a == s.to))) return false;
        if (seen.count(s.to)) return false;
        seen.insert(s.to);
        at = s.to;
    }
    return at == p.sink;
}

bool is_unblocked(const CausalDiagram& d, const Path& p) {
    if (!is_valid_path(d, p)) return false;
    for (std::size_t i = 1; i < p.steps.size(); ++i) {
        VarId v = p.steps[i].from;
        if (d.arrowhead_at(p.steps[i - 1].edge, v) && d.arrowhead_at(p.steps[i].edge, v)) {
            return false;
        }
    }
    return true;
}

}  // namespace semid

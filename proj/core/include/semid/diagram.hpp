#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "semid/errors.hpp"

namespace semid {

using VarId = int;
using EdgeId = int;

enum class EdgeKind { Directed, Bidirected };

/// A labelled edge of the mixed graph. For a directed edge, `a` is the tail
/// and `b` the head; a bidirected arc carries arrowheads at both endpoints.
struct Edge {
    EdgeKind kind;
    VarId a;
    VarId b;
    std::string param;
};

struct DirectedEdgeSpec {
    std::string from;
    std::string to;
    std::string param;
};

struct BidirectedEdgeSpec {
    std::string a;
    std::string b;
    std::string param;
};

/// Plain description of a model, as read from a file or built inline.
struct DiagramSpec {
    std::vector<std::string> variables;
    std::vector<DirectedEdgeSpec> directed;
    std::vector<BidirectedEdgeSpec> bidirected;
};

/// Validated mixed graph of a recursive structural equation model.
/// Immutable after construction; all operations on it are pure.
class CausalDiagram {
public:
    static constexpr int kMaxVariables = 64;

    static CausalDiagram build(const DiagramSpec& spec);

    int num_variables() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& variables() const { return names_; }
    const std::string& name(VarId v) const { return names_[v]; }

    /// Index of a declared variable; throws UnknownVariable otherwise.
    VarId var(const std::string& name) const;
    bool has_variable(const std::string& name) const;

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    /// Edges incident to v, in declaration order.
    const std::vector<EdgeId>& edges_at(VarId v) const { return incidence_[v]; }

    bool arrowhead_at(EdgeId e, VarId v) const;
    VarId other_end(EdgeId e, VarId v) const;

    /// Length of the longest directed chain reaching v (0 for ancestor-free nodes).
    int depth(VarId v) const { return depth_[v]; }
    int depth(const std::string& v) const { return depth_[var(v)]; }

    /// True iff a directed chain from y to z exists (z is a strict descendant of y).
    bool is_descendant(VarId z, VarId y) const { return z != y && reach_[y][z]; }

private:
    CausalDiagram() = default;
    void compute_depths();
    void compute_reachability();

    std::vector<std::string> names_;
    std::unordered_map<std::string, VarId> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incidence_;
    std::vector<int> depth_;
    std::vector<std::vector<bool>> reach_;  // reach_[y][z]: directed path y -> .. -> z
};

/// One traversal step: `edge` walked from endpoint `from` to endpoint `to`.
struct PathStep {
    EdgeId edge;
    VarId from;
    VarId to;
};

/// A valid path of the mixed graph, possibly walking directed edges against
/// their arrows. Variables along the path are pairwise distinct.
struct Path {
    VarId source = -1;
    VarId sink = -1;
    std::vector<PathStep> steps;

    bool empty() const { return steps.empty(); }
    int length() const { return static_cast<int>(steps.size()); }

    /// Variable sequence source..sink (single element when empty and
    /// source == sink).
    std::vector<VarId> vars() const;

    /// Position of v in vars(), if present.
    std::optional<int> position_of(VarId v) const;
};

/// Total order over the variables, compatible with depth.
struct Ordering {
    std::vector<VarId> order;    // order[i] = variable at position i
    std::vector<int> position;   // position[v] = index of v in `order`

    bool before(VarId x, VarId y) const { return position[x] < position[y]; }
};

/// Depth-compatible ordering with ties broken by declaration index.
Ordering ordering_delta(const CausalDiagram& d);

/// Depth-compatible ordering with ties shuffled by `tie_seed`.
Ordering ordering_delta(const CausalDiagram& d, unsigned long long tie_seed);

/// Edges connecting y to variables placed before y in delta.
std::vector<EdgeId> inc_set(const CausalDiagram& d, VarId y, const Ordering& delta);

/// All collider-free valid paths between x and y, in canonical order
/// (by length, then lexicographically by edge indices).
std::vector<Path> enumerate_unblocked_paths(const CausalDiagram& d, VarId x, VarId y);

/// Contiguous piece of p between u and v, oriented from u to v.
/// subpath(p, u, u) is the empty path anchored at u.
Path subpath(const CausalDiagram& d, const Path& p, VarId u, VarId v);

/// True iff the segment's edge adjacent to u carries an arrowhead at u.
/// An empty segment never points.
bool points_to(const CausalDiagram& d, const Path& segment, VarId u);

/// Structural validity check used by witness verification: endpoints match,
/// consecutive steps share their variable, no variable repeats.
bool is_valid_path(const CausalDiagram& d, const Path& p);

/// True iff p is valid and has no collider.
bool is_unblocked(const CausalDiagram& d, const Path& p);

}  // namespace semid

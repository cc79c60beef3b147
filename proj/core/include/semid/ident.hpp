#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semid/gcrit.hpp"

namespace semid {

enum class DepCase { None, Descendant, TailBidirected };

/// Solve-order trigger between a candidate member Z and a target Y:
/// Descendant when a directed chain Y -> .. -> Z exists, TailBidirected when
/// an unblocked path Z <- .. <- V <-> Y exists. A bare arc Z <-> Y triggers
/// neither (its coefficient is the constant 1).
DepCase dependence_cases(const CausalDiagram& d, VarId z, VarId y);

/// Chosen auxiliary set and witnesses per target variable.
struct AuxiliaryAssignment {
    std::map<VarId, AuxiliaryCandidate> by_target;
};

struct DependenceEdge {
    VarId from;  // solve this system first
    VarId to;
    DepCase label;
};

/// "Solve before" constraints between the per-variable systems: an edge
/// w -> y whenever instantiating y's system needs a parameter owned by
/// Inc(w). Only constraints that reorder the schedule relative to delta are
/// recorded; a delta-earlier prerequisite is met by any depth-compatible
/// schedule.
struct DependenceGraph {
    std::vector<VarId> nodes;  // targets with nonempty Inc, in delta order
    std::vector<DependenceEdge> edges;
};

DependenceGraph build_dependence_graph(const CausalDiagram& d, const AuxiliaryAssignment& a,
                                       const Ordering& delta);

enum class VerdictKind { Identified, NoAuxiliarySet, Inconclusive };
enum class InconclusiveReason { CyclicDependence, CoefficientUnavailable };

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    Ordering delta;
    AuxiliaryAssignment assignment;
    DependenceGraph dependence;
    std::vector<VarId> schedule;            // topological order of the dependence graph
    std::vector<VarId> culprits;            // targets with no auxiliary set
    std::optional<InconclusiveReason> reason;
    std::string diagnostics;
    std::vector<std::string> notes;
    int combinations_tried = 0;
    bool backtracked = false;
};

struct AnalyzeOptions {
    std::optional<Ordering> delta;
    int budget = 10000;                         // assignment combinations to try
    std::size_t max_candidates_per_variable = 64;
};

/// Model-level identification verdict: an auxiliary set per target whose
/// dependence graph is acyclic, plus the solve schedule.
Verdict analyze(const CausalDiagram& d, const AnalyzeOptions& options = {});

}  // namespace semid

#pragma once

#include <optional>
#include <vector>

#include "semid/diagram.hpp"
#include "semid/wright.hpp"

namespace semid {

/// One row of the linear system Phi_{Z,Y}: the decomposition of rho_{ZY}
/// split into an intercept and one coefficient polynomial per unknown.
struct PhiRow {
    VarId z;
    PathPolynomial intercept;
    std::vector<PathPolynomial> coefficients;  // aligned with PhiSystem::unknowns
};

/// Linear system over the parameters of Inc(Y).
struct PhiSystem {
    VarId target;
    std::vector<EdgeId> inc_edges;          // Inc(Y) in edge-index order
    std::vector<std::string> unknowns;      // parameter of inc_edges[j]
    std::vector<PhiRow> rows;
};

PhiSystem build_phi_system(const CausalDiagram& d, const std::vector<VarId>& zs, VarId y,
                           const Ordering& delta);

/// One witness path per member of the candidate set, each claiming a distinct
/// Inc(Y) edge.
struct Witness {
    VarId source;
    Path path;
    EdgeId inc_edge;
};

struct WitnessSet {
    std::vector<Witness> witnesses;
};

/// Full G-criterion check of an explicit witness family against target y.
bool check_g_criterion(const CausalDiagram& d, const WitnessSet& ws, VarId y,
                       const Ordering& delta);

/// Backtracking witness search for a specific candidate set; empty when the
/// set fails the G criterion.
std::optional<WitnessSet> find_witnesses(const CausalDiagram& d, const std::vector<VarId>& zs,
                                         VarId y, const Ordering& delta);

struct AuxiliaryCandidate {
    std::vector<VarId> members;
    WitnessSet witnesses;
    bool condition4;  // depth(Z) < depth(Y) for every member
};

/// Auxiliary sets for y in deterministic order: condition-(4) sets first,
/// each block enumerated preferring delta-later members. Stops after `limit`
/// results.
std::vector<AuxiliaryCandidate> find_auxiliary_sets(const CausalDiagram& d, VarId y,
                                                    const Ordering& delta, std::size_t limit);

/// Generic-rank check of the Phi coefficient matrix at a seeded standardized
/// parameterization; smallest singular value thresholded at 1e-7 with a
/// borderline retry on a fresh seed.
bool numeric_rank_oracle(const CausalDiagram& d, const std::vector<VarId>& zs, VarId y,
                         unsigned long long seed, const Ordering& delta);

}  // namespace semid

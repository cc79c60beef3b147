#include <doctest.h>

#include <algorithm>

#include "semid/ident.hpp"
#include "support/fixtures.hpp"
#include "support/random_models.hpp"

using namespace semid;

namespace {

std::vector<std::string> names(const CausalDiagram& d, const std::vector<VarId>& vs) {
    std::vector<std::string> out;
    for (VarId v : vs) out.push_back(d.name(v));
    return out;
}

}  // namespace

TEST_CASE("dependence_cases") {
    SUBCASE("smoke fixture") {
        CausalDiagram d = fixtures::smoke();
        // Z <- X <-> Y: a directed tail into the arc at Y.
        CHECK(dependence_cases(d, d.var("Z"), d.var("Y")) == DepCase::TailBidirected);
        // X touches Y only through the bare arc (and a forward chain).
        CHECK(dependence_cases(d, d.var("X"), d.var("Y")) == DepCase::None);
    }
    SUBCASE("descendant") {
        DiagramSpec spec;
        spec.variables = {"X", "Z", "Y"};
        spec.directed = {{"X", "Z", "a"}, {"Z", "Y", "b"}};
        CausalDiagram d = CausalDiagram::build(spec);
        CHECK(dependence_cases(d, d.var("Y"), d.var("X")) == DepCase::Descendant);
        CHECK(dependence_cases(d, d.var("Z"), d.var("X")) == DepCase::Descendant);
        CHECK(dependence_cases(d, d.var("X"), d.var("Y")) == DepCase::None);
    }
    SUBCASE("bare arc triggers neither case") {
        CausalDiagram d = fixtures::bow();
        CHECK(dependence_cases(d, d.var("X"), d.var("Y")) == DepCase::None);
    }
    SUBCASE("instrument fixture") {
        CausalDiagram d = fixtures::iv();
        CHECK(dependence_cases(d, d.var("U"), d.var("Y")) == DepCase::None);
        CHECK(dependence_cases(d, d.var("W"), d.var("Y")) == DepCase::None);
    }
}

TEST_CASE("analyze on the fixtures") {
    SUBCASE("smoke: identified, solved Z then Y") {
        CausalDiagram d = fixtures::smoke();
        Verdict v = analyze(d);
        REQUIRE(v.kind == VerdictKind::Identified);
        CHECK(names(d, v.schedule) == std::vector<std::string>{"Z", "Y"});
        CHECK_FALSE(v.backtracked);
        // Z's member is at lower depth than Y, so no extra constraint.
        CHECK(v.dependence.edges.empty());
    }
    SUBCASE("instrument: identified") {
        CausalDiagram d = fixtures::iv();
        Verdict v = analyze(d);
        REQUIRE(v.kind == VerdictKind::Identified);
        CHECK(names(d, v.schedule) == std::vector<std::string>{"W", "Y"});
        auto& ay = v.assignment.by_target.at(d.var("Y"));
        std::vector<VarId> members = ay.members;
        std::sort(members.begin(), members.end());
        CHECK(members == std::vector<VarId>{d.var("U"), d.var("W")});
    }
    SUBCASE("collinear fixture: identified via the parents") {
        CausalDiagram d = fixtures::coll();
        Verdict v = analyze(d);
        REQUIRE(v.kind == VerdictKind::Identified);
        auto& ay = v.assignment.by_target.at(d.var("Y"));
        CHECK(ay.members == std::vector<VarId>{d.var("X1"), d.var("X2")});
        CHECK(ay.condition4);
    }
    SUBCASE("bow: no auxiliary set") {
        CausalDiagram d = fixtures::bow();
        Verdict v = analyze(d);
        REQUIRE(v.kind == VerdictKind::NoAuxiliarySet);
        CHECK(names(d, v.culprits) == std::vector<std::string>{"Y"});
        CHECK(v.schedule.empty());
    }
}

TEST_CASE("analyze is deterministic") {
    for (unsigned long long seed : {11ULL, 12ULL, 13ULL}) {
        CausalDiagram d = testsupport::random_diagram(seed, 3, 8, 0.3, 0.2);
        Verdict v1 = analyze(d);
        Verdict v2 = analyze(d);
        CHECK(v1.kind == v2.kind);
        CHECK(v1.schedule == v2.schedule);
        CHECK(v1.culprits == v2.culprits);
        for (const auto& [target, cand] : v1.assignment.by_target) {
            CHECK(v2.assignment.by_target.at(target).members == cand.members);
        }
    }
}

TEST_CASE("schedule soundness") {
    for (unsigned long long seed = 400; seed < 430; ++seed) {
        CausalDiagram d = testsupport::random_diagram(seed, 3, 8, 0.3, 0.2);
        Verdict v = analyze(d);
        if (v.kind != VerdictKind::Identified) continue;

        // The schedule is a permutation of the dependence-graph nodes.
        std::vector<VarId> sorted_schedule = v.schedule;
        std::sort(sorted_schedule.begin(), sorted_schedule.end());
        std::vector<VarId> sorted_nodes = v.dependence.nodes;
        std::sort(sorted_nodes.begin(), sorted_nodes.end());
        CHECK(sorted_schedule == sorted_nodes);

        // Every recorded constraint is respected.
        std::vector<int> pos(d.num_variables(), -1);
        for (std::size_t i = 0; i < v.schedule.size(); ++i) pos[v.schedule[i]] = static_cast<int>(i);
        for (const DependenceEdge& e : v.dependence.edges) {
            CHECK(pos[e.from] < pos[e.to]);
        }

        // Every target with a nonempty Inc set got an auxiliary set of that size.
        for (VarId y : v.dependence.nodes) {
            const auto& cand = v.assignment.by_target.at(y);
            CHECK(cand.members.size() == inc_set(d, y, v.delta).size());
            CHECK(check_g_criterion(d, cand.witnesses, y, v.delta));
        }
    }
}

TEST_CASE("all-lower-depth assignments need no dependence edges") {
    // When every chosen member sits strictly below its target, the depth
    // order already sequences the systems and the fast path must not
    // backtrack.
    for (unsigned long long seed = 500; seed < 540; ++seed) {
        CausalDiagram d = testsupport::random_diagram(seed, 3, 8, 0.3, 0.2);
        Verdict v = analyze(d);
        if (v.kind != VerdictKind::Identified) continue;
        bool all_cond4 = true;
        for (const auto& [target, cand] : v.assignment.by_target) {
            all_cond4 = all_cond4 && cand.condition4;
        }
        if (all_cond4) {
            CHECK(v.dependence.edges.empty());
            CHECK_FALSE(v.backtracked);
        }
    }
}

TEST_CASE("analyze respects a caller-provided ordering") {
    CausalDiagram d = fixtures::smoke();
    AnalyzeOptions opts;
    opts.delta = ordering_delta(d, 99);
    Verdict v = analyze(d, opts);
    CHECK(v.kind == VerdictKind::Identified);
    CHECK(v.delta.order == opts.delta->order);
}

TEST_CASE("budget exhaustion reports inconclusive") {
    CausalDiagram d = fixtures::coll();
    AnalyzeOptions opts;
    opts.budget = 0;
    Verdict v = analyze(d, opts);
    CHECK(v.kind == VerdictKind::Inconclusive);
    REQUIRE(v.reason.has_value());
    CHECK(*v.reason == InconclusiveReason::CyclicDependence);
    CHECK_FALSE(v.diagnostics.empty());
}

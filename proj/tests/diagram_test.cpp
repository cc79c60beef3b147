#include <doctest.h>

#include <map>
#include <set>

#include "semid/diagram.hpp"
#include "support/fixtures.hpp"
#include "support/random_models.hpp"

using namespace semid;

namespace {

CausalDiagram diamond() {
    DiagramSpec spec;
    spec.variables = {"X", "A", "B", "C"};
    spec.directed = {{"X", "A", "p"}, {"X", "B", "q"}, {"A", "C", "r"}, {"B", "C", "s"}};
    return CausalDiagram::build(spec);
}

}  // namespace

TEST_CASE("build validates the diagram") {
    CausalDiagram d = fixtures::smoke();
    CHECK(d.num_variables() == 3);
    CHECK(d.num_edges() == 3);

    SUBCASE("single node") {
        DiagramSpec spec;
        spec.variables = {"X"};
        CHECK(CausalDiagram::build(spec).num_variables() == 1);
    }
    SUBCASE("directed cycle is rejected") {
        DiagramSpec spec;
        spec.variables = {"X", "Y"};
        spec.directed = {{"X", "Y", "p"}, {"Y", "X", "q"}};
        CHECK_THROWS_AS(CausalDiagram::build(spec), DirectedCycle);
    }
    SUBCASE("duplicate names") {
        DiagramSpec spec;
        spec.variables = {"X", "X"};
        CHECK_THROWS_AS(CausalDiagram::build(spec), DuplicateName);
    }
    SUBCASE("duplicate parameter names") {
        DiagramSpec spec;
        spec.variables = {"X", "Y", "Z"};
        spec.directed = {{"X", "Y", "p"}, {"Y", "Z", "p"}};
        CHECK_THROWS_AS(CausalDiagram::build(spec), DuplicateName);
    }
    SUBCASE("unknown endpoint") {
        DiagramSpec spec;
        spec.variables = {"X"};
        spec.directed = {{"X", "W", "p"}};
        CHECK_THROWS_AS(CausalDiagram::build(spec), UnknownVariable);
    }
    SUBCASE("duplicate edges") {
        DiagramSpec spec;
        spec.variables = {"X", "Y"};
        spec.directed = {{"X", "Y", "p"}, {"X", "Y", "q"}};
        CHECK_THROWS_AS(CausalDiagram::build(spec), DuplicateEdge);

        DiagramSpec arcs;
        arcs.variables = {"X", "Y"};
        arcs.bidirected = {{"X", "Y", "p"}, {"Y", "X", "q"}};
        CHECK_THROWS_AS(CausalDiagram::build(arcs), DuplicateEdge);
    }
    SUBCASE("variable limit") {
        DiagramSpec spec;
        for (int i = 0; i < 65; ++i) spec.variables.push_back("V" + std::to_string(i));
        CHECK_THROWS_AS(CausalDiagram::build(spec), DiagramTooLarge);
    }
}

TEST_CASE("depth") {
    CausalDiagram d = fixtures::smoke();
    CHECK(d.depth("X") == 0);
    CHECK(d.depth("Z") == 1);
    CHECK(d.depth("Y") == 2);
    CHECK(diamond().depth("C") == 2);
    CHECK_THROWS_AS(d.depth("nope"), UnknownVariable);

    SUBCASE("matches chain enumeration on random diagrams") {
        for (unsigned long long seed = 0; seed < 25; ++seed) {
            CausalDiagram r = testsupport::random_diagram(seed, 2, 7, 0.35, 0.2);
            for (VarId v = 0; v < r.num_variables(); ++v) {
                CHECK(r.depth(v) == testsupport::brute_force_depth(r, v));
            }
        }
    }
    SUBCASE("monotone along directed edges") {
        for (unsigned long long seed = 100; seed < 120; ++seed) {
            CausalDiagram r = testsupport::random_diagram(seed, 2, 7, 0.35, 0.2);
            for (const Edge& e : r.edges()) {
                if (e.kind == EdgeKind::Directed) CHECK(r.depth(e.b) >= r.depth(e.a) + 1);
            }
        }
    }
}

TEST_CASE("ordering_delta") {
    CausalDiagram d = fixtures::smoke();
    Ordering delta = ordering_delta(d);
    CHECK(delta.order == std::vector<VarId>{d.var("X"), d.var("Z"), d.var("Y")});

    SUBCASE("ties broken by declaration order") {
        DiagramSpec spec;
        spec.variables = {"B", "A"};
        CausalDiagram two = CausalDiagram::build(spec);
        Ordering o = ordering_delta(two);
        CHECK(two.name(o.order[0]) == "B");
        CHECK(two.name(o.order[1]) == "A");
    }
    SUBCASE("empty diagram") {
        DiagramSpec spec;
        CausalDiagram none = CausalDiagram::build(spec);
        CHECK(ordering_delta(none).order.empty());
    }
    SUBCASE("seeded tie shuffle stays depth compatible") {
        for (unsigned long long seed = 0; seed < 10; ++seed) {
            CausalDiagram r = testsupport::random_diagram(seed, 3, 7, 0.3, 0.2);
            Ordering o = ordering_delta(r, seed + 7);
            for (std::size_t i = 1; i < o.order.size(); ++i) {
                CHECK(r.depth(o.order[i - 1]) <= r.depth(o.order[i]));
            }
        }
    }
}

TEST_CASE("inc_set") {
    CausalDiagram d = fixtures::smoke();
    Ordering delta = ordering_delta(d);

    auto params_of = [&](VarId y) {
        std::set<std::string> out;
        for (EdgeId e : inc_set(d, y, delta)) out.insert(d.edge(e).param);
        return out;
    };
    CHECK(params_of(d.var("Y")) == std::set<std::string>{"b", "gamma"});
    CHECK(params_of(d.var("Z")) == std::set<std::string>{"a"});
    CHECK(inc_set(d, d.var("X"), delta).empty());

    SUBCASE("arc assigned to the later variable") {
        DiagramSpec spec;
        spec.variables = {"A", "B"};
        spec.bidirected = {{"A", "B", "p"}};
        CausalDiagram two = CausalDiagram::build(spec);
        Ordering o = ordering_delta(two);
        CHECK(inc_set(two, two.var("B"), o).size() == 1);
        CHECK(inc_set(two, two.var("A"), o).empty());
    }
    SUBCASE("Inc sets partition the edge set") {
        for (unsigned long long seed = 200; seed < 230; ++seed) {
            CausalDiagram r = testsupport::random_diagram(seed, 2, 7, 0.35, 0.25);
            Ordering o = ordering_delta(r);
            std::multiset<EdgeId> all;
            for (VarId y = 0; y < r.num_variables(); ++y) {
                for (EdgeId e : inc_set(r, y, o)) all.insert(e);
            }
            CHECK(static_cast<int>(all.size()) == r.num_edges());
            for (EdgeId e = 0; e < r.num_edges(); ++e) CHECK(all.count(e) == 1);
        }
    }
}

TEST_CASE("enumerate_unblocked_paths") {
    CausalDiagram d = fixtures::smoke();
    auto paths = enumerate_unblocked_paths(d, d.var("X"), d.var("Y"));
    REQUIRE(paths.size() == 2);
    // Canonical order: shorter path first.
    CHECK(paths[0].length() == 1);
    CHECK(d.edge(paths[0].steps[0].edge).param == "gamma");
    CHECK(paths[1].length() == 2);

    SUBCASE("single edge") {
        DiagramSpec spec;
        spec.variables = {"X", "Y"};
        spec.directed = {{"X", "Y", "p"}};
        CausalDiagram two = CausalDiagram::build(spec);
        CHECK(enumerate_unblocked_paths(two, 0, 1).size() == 1);
    }
    SUBCASE("disconnected pair") {
        DiagramSpec spec;
        spec.variables = {"X", "Y"};
        CausalDiagram two = CausalDiagram::build(spec);
        CHECK(enumerate_unblocked_paths(two, 0, 1).empty());
    }
    SUBCASE("chain has exactly one path") {
        DiagramSpec spec;
        for (int i = 0; i < 6; ++i) spec.variables.push_back("V" + std::to_string(i));
        for (int i = 0; i < 5; ++i) {
            spec.directed.push_back({spec.variables[i], spec.variables[i + 1],
                                     "p" + std::to_string(i)});
        }
        CausalDiagram chain = CausalDiagram::build(spec);
        CHECK(enumerate_unblocked_paths(chain, 0, 5).size() == 1);
    }
    SUBCASE("matches the brute-force enumerator on a complete 5-node DAG") {
        DiagramSpec spec;
        for (int i = 0; i < 5; ++i) spec.variables.push_back("V" + std::to_string(i));
        int next = 0;
        for (int i = 0; i < 5; ++i) {
            for (int j = i + 1; j < 5; ++j) {
                spec.directed.push_back({spec.variables[i], spec.variables[j],
                                         "p" + std::to_string(next++)});
            }
        }
        CausalDiagram full = CausalDiagram::build(spec);
        for (VarId x = 0; x < 5; ++x) {
            for (VarId y = 0; y < 5; ++y) {
                if (x == y) continue;
                auto ours = enumerate_unblocked_paths(full, x, y);
                auto brute = testsupport::brute_force_unblocked_paths(full, x, y);
                REQUIRE(ours.size() == brute.size());
                std::set<std::vector<EdgeId>> ours_set, brute_set;
                for (const Path& p : ours) {
                    std::vector<EdgeId> ids;
                    for (const PathStep& s : p.steps) ids.push_back(s.edge);
                    ours_set.insert(ids);
                }
                for (const Path& p : brute) {
                    std::vector<EdgeId> ids;
                    for (const PathStep& s : p.steps) ids.push_back(s.edge);
                    brute_set.insert(ids);
                }
                CHECK(ours_set == brute_set);
            }
        }
    }
    SUBCASE("matches the brute-force enumerator on random mixed graphs") {
        for (unsigned long long seed = 300; seed < 330; ++seed) {
            CausalDiagram r = testsupport::random_diagram(seed, 2, 6, 0.35, 0.25);
            for (VarId x = 0; x < r.num_variables(); ++x) {
                for (VarId y = x + 1; y < r.num_variables(); ++y) {
                    CHECK(enumerate_unblocked_paths(r, x, y).size() ==
                          testsupport::brute_force_unblocked_paths(r, x, y).size());
                }
            }
        }
    }
}

TEST_CASE("subpath and points_to") {
    CausalDiagram d = fixtures::smoke();
    auto paths = enumerate_unblocked_paths(d, d.var("X"), d.var("Y"));
    const Path& long_path = paths[1];  // X -> Z -> Y

    Path xz = subpath(d, long_path, d.var("X"), d.var("Z"));
    CHECK(xz.length() == 1);
    CHECK(points_to(d, xz, d.var("Z")));
    CHECK_FALSE(points_to(d, xz, d.var("X")));

    Path zz = subpath(d, long_path, d.var("Z"), d.var("Z"));
    CHECK(zz.empty());
    CHECK_FALSE(points_to(d, zz, d.var("Z")));

    CHECK_THROWS_AS(subpath(d, xz, d.var("Y"), d.var("X")), VariableNotOnPath);
    CHECK_THROWS_AS(points_to(d, long_path, d.var("Z")), NotAnEndpoint);

    SUBCASE("reversed orientation and arc arrowheads") {
        // Z <- X <-> Y read out of the unblocked Z..Y path.
        auto zy = enumerate_unblocked_paths(d, d.var("Z"), d.var("Y"));
        REQUIRE(zy.size() == 2);
        const Path& through_arc = zy[1];  // Z <- X <-> Y (length 2, via edges a, gamma)
        Path xy = subpath(d, through_arc, d.var("X"), d.var("Y"));
        CHECK(xy.length() == 1);
        CHECK(points_to(d, xy, d.var("X")));
        CHECK(points_to(d, xy, d.var("Y")));

        Path zx = subpath(d, through_arc, d.var("Z"), d.var("X"));
        Path xz_rev = subpath(d, through_arc, d.var("X"), d.var("Z"));
        CHECK(zx.steps[0].from == d.var("Z"));
        CHECK(xz_rev.steps[0].from == d.var("X"));
        CHECK(points_to(d, xz_rev, d.var("Z")));
    }
}

TEST_CASE("collider exclusion") {
    // X <-> Y <- Z has a collider at Y, so only the two-edge detour is out.
    CausalDiagram d = fixtures::smoke();
    auto paths = enumerate_unblocked_paths(d, d.var("X"), d.var("Z"));
    REQUIRE(paths.size() == 1);
    CHECK(d.edge(paths[0].steps[0].edge).param == "a");
}

TEST_CASE("Lemma 1: intermediate depth bound") {
    for (unsigned long long seed = 400; seed < 440; ++seed) {
        CausalDiagram r = testsupport::random_diagram(seed, 2, 7, 0.3, 0.2);
        for (VarId x = 0; x < r.num_variables(); ++x) {
            for (VarId y = x + 1; y < r.num_variables(); ++y) {
                for (const Path& p : enumerate_unblocked_paths(r, x, y)) {
                    std::vector<VarId> vars = p.vars();
                    for (std::size_t i = 1; i + 1 < vars.size(); ++i) {
                        CHECK(r.depth(vars[i]) < std::max(r.depth(x), r.depth(y)));
                    }
                }
            }
        }
    }
}

TEST_CASE("Lemma 2: Inc(Y) edge count per unblocked path") {
    for (unsigned long long seed = 500; seed < 540; ++seed) {
        CausalDiagram r = testsupport::random_diagram(seed, 2, 7, 0.3, 0.2);
        Ordering delta = ordering_delta(r);
        for (VarId y = 0; y < r.num_variables(); ++y) {
            std::set<EdgeId> inc;
            for (EdgeId e : inc_set(r, y, delta)) inc.insert(e);
            for (VarId z = 0; z < r.num_variables(); ++z) {
                if (z == y) continue;
                for (const Path& p : enumerate_unblocked_paths(r, z, y)) {
                    int used = 0;
                    for (const PathStep& s : p.steps) used += inc.count(s.edge);
                    CHECK(used <= 1);
                    // Exactly one for delta-earlier z (which implies
                    // depth(z) <= depth(y); the converse fails on depth ties
                    // broken against z, where the edge at y belongs to Inc(z)).
                    if (delta.before(z, y)) CHECK(used == 1);
                }
            }
        }
    }
}

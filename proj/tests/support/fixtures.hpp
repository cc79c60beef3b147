#pragma once

#include "semid/diagram.hpp"

namespace fixtures {

// X -> Z -> Y with a confounding arc X <-> Y.
inline semid::CausalDiagram smoke() {
    semid::DiagramSpec spec;
    spec.variables = {"X", "Z", "Y"};
    spec.directed = {{"X", "Z", "a"}, {"Z", "Y", "b"}};
    spec.bidirected = {{"X", "Y", "gamma"}};
    return semid::CausalDiagram::build(spec);
}

// Instrument U for the confounded edge W -> Y.
inline semid::CausalDiagram iv() {
    semid::DiagramSpec spec;
    spec.variables = {"U", "W", "Y"};
    spec.directed = {{"U", "W", "c"}, {"W", "Y", "lambda1"}};
    spec.bidirected = {{"W", "Y", "lambda2"}};
    return semid::CausalDiagram::build(spec);
}

// Collinear candidate rows: Z2 reaches Y only through Z1.
inline semid::CausalDiagram coll() {
    semid::DiagramSpec spec;
    spec.variables = {"Z2", "Z1", "X1", "X2", "Y"};
    spec.directed = {{"Z2", "Z1", "c"},
                     {"Z1", "X1", "a"},
                     {"Z1", "X2", "b"},
                     {"X1", "Y", "lambda1"},
                     {"X2", "Y", "lambda2"}};
    return semid::CausalDiagram::build(spec);
}

// Bow pattern: no candidate auxiliary set of size 2 exists.
inline semid::CausalDiagram bow() {
    semid::DiagramSpec spec;
    spec.variables = {"X", "Y"};
    spec.directed = {{"X", "Y", "lambda1"}};
    spec.bidirected = {{"X", "Y", "lambda2"}};
    return semid::CausalDiagram::build(spec);
}

}  // namespace fixtures

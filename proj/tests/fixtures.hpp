#pragma once

// Small builders shared by the unit tests.

#include <algorithm>
#include <string>
#include <vector>

#include "degen/enumeration.hpp"
#include "degen/graphs.hpp"

namespace fixtures {

using namespace degen;

inline WeightedGraph graph(Side side, std::size_t rank, std::vector<Vertex> vs, std::vector<Root> rs = {},
                           std::vector<Leg> ls = {}) {
    return {side, rank, std::move(vs), std::move(rs), std::move(ls)};
}

inline std::vector<int> labels_of(const WeightedGraph& g) {
    std::vector<int> out;
    for (const auto& l : g.legs) out.push_back(l.label);
    std::sort(out.begin(), out.end());
    return out;
}

inline AdmissibleTriple triple(WeightedGraph g1, WeightedGraph g2) {
    AdmissibleTriple t{std::move(g1), std::move(g2), {}};
    t.I = labels_of(t.gamma1);
    return t;
}

/// p2-point: s on Y1 glued to gamma on Y2 by one weight-1 root.
inline AdmissibleTriple p2_two_vertex() {
    return triple(graph(Side::Y1, 2, {{0, {1, 0}}}, {{0, 1}}), graph(Side::Y2, 1, {{0, {1}}}, {{0, 1}}));
}

inline std::vector<AdmissibleTriple> run(const BlowupGeometry& geom, int g, int k, Int b, Int c = 2) {
    return enumerate_triples(EnumerationRequest::for_class(g, k, LatticeVector{b}, ample_from_scale(geom, c)), geom);
}

}  // namespace fixtures

#pragma once

// Brute-force reference enumeration of admissible triples. Shares nothing
// with the engine's search beyond the graph validator: it walks coordinate
// boxes and arbitrary root/leg maps and keeps what validate_triple accepts.

#include <vector>

#include "degen/geometry.hpp"
#include "degen/graphs.hpp"

namespace degen {

struct OracleBounds {
    int max_vertices = 3;     ///< per side
    int max_coord = 3;        ///< |coordinate| of each vertex class
    int max_genus = 3;        ///< per vertex
    int max_root_weight = 3;
    int max_roots = 3;
};

/// Every admissible triple within bounds with the requested (g, k), whose
/// total classes push forward to beta and meet E with the total root
/// weight on both sides. Normalized, sorted by labeled_key.
///
/// BoundsError ("bounds too small") when a bound is not positive or an
/// accepted triple reaches a bound, since then triples past the bound may
/// have been missed.
std::vector<AdmissibleTriple> oracle_enumerate(int g, int k, const LatticeVector& beta, const BlowupGeometry& geom,
                                               const OracleBounds& bounds,
                                               Stability stability = Stability::contracted_components);

}  // namespace degen

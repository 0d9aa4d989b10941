#pragma once

// Admissible weighted graphs (edge-free graphs with ordered legs, ordered
// weighted roots, genus and curve-class weights) and admissible triples
// (Gamma1, Gamma2, I) gluing them root by root.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "degen/geometry.hpp"
#include "degen/lattice.hpp"

namespace degen {

struct Vertex {
    int genus = 0;
    LatticeVector cls;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A contact point with E of multiplicity `weight`.
struct Root {
    std::size_t vertex = 0;
    int weight = 1;

    friend bool operator==(const Root&, const Root&) = default;
};

/// An ordinary marked point; `label` is global, in 1..k.
struct Leg {
    std::size_t vertex = 0;
    int label = 1;

    friend bool operator==(const Leg&, const Leg&) = default;
};

struct WeightedGraph {
    Side side = Side::Y1;
    std::size_t rank = 0;  ///< rank of N_1 of the side, so empty graphs still have a total class
    std::vector<Vertex> vertices;
    std::vector<Root> roots;
    std::vector<Leg> legs;

    std::size_t roots_at(std::size_t v) const;
    std::size_t legs_at(std::size_t v) const;

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;
};

struct AdmissibleTriple {
    WeightedGraph gamma1;  ///< on Y1
    WeightedGraph gamma2;  ///< on Y2
    std::vector<int> I;    ///< leg labels carried by gamma1, sorted

    std::size_t root_count() const { return gamma1.roots.size(); }
    std::size_t vertex_count() const { return gamma1.vertices.size() + gamma2.vertices.size(); }

    friend bool operator==(const AdmissibleTriple&, const AdmissibleTriple&) = default;
};

/// Serialized form of a triple modulo simultaneous root reordering and
/// vertex relabeling.
struct TripleKey {
    std::string text;

    friend bool operator==(const TripleKey&, const TripleKey&) = default;
    friend auto operator<=>(const TripleKey&, const TripleKey&) = default;
};

/// Whether zero-class vertices must be stable (2g - 2 + #roots + #legs > 0).
/// Without it nothing changes for positive-class vertices; contracted
/// components with too few special points are admitted.
enum class Stability { contracted_components, off };

/// One failed clause of validate_triple.
struct Violation {
    std::string clause;  ///< e.g. "relative connectedness"
    std::string detail;
};

/// g(eta) = r + 1 - |V(Gamma1)| - |V(Gamma2)| + sum of vertex genera.
int genus_of(const AdmissibleTriple& t);

/// H1.b(Gamma1) + H2.b(Gamma2).
Int h_degree_of(const AdmissibleTriple& t, const AmpleData& amp);

/// Sum of vertex classes; the zero vector of the graph's rank when empty.
LatticeVector total_class(const WeightedGraph& g);

/// Product of Gamma1's root weights (1 when there are no roots).
Int multiplicity(const AdmissibleTriple& t);

/// Stability of a contracted (zero-class) vertex; positive-class vertices
/// always pass.
bool is_stable_vertex(const WeightedGraph& g, std::size_t v);

/// Empty iff t is an admissible triple for geom with g(eta) = g and legs
/// partitioning {1..k}. Per-graph clauses (what makes an admissible
/// weighted graph) are checked first; the gluing clauses are only examined
/// when both graphs pass them.
std::vector<Violation> validate_triple(const AdmissibleTriple& t, const BlowupGeometry& geom, int g, int k,
                                       Stability stability = Stability::contracted_components);

/// Same triple with vertices in canonical order for its fixed root order,
/// legs sorted by label and I sorted. Two triples are equal up to vertex
/// relabeling iff their normal forms are equal.
AdmissibleTriple normalized(const AdmissibleTriple& t);

/// Serialization of normalized(t); identifies a labeled triple.
std::string labeled_key(const AdmissibleTriple& t);

/// Root i of the result is root perm[i] of t, on both sides at once.
AdmissibleTriple permute_roots(const AdmissibleTriple& t, std::span<const std::size_t> perm);

/// Minimum labeled_key over all r! simultaneous root permutations.
TripleKey canonical_key(const AdmissibleTriple& t);

/// The root permutation of t that realizes canonical_key, normalized.
AdmissibleTriple canonical_representative(const AdmissibleTriple& t);

/// |Eq(eta)|: number of root permutations fixing t up to vertex relabeling.
Int symmetry_order(const AdmissibleTriple& t);

}  // namespace degen

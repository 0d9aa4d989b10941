#pragma once

// Enumeration of the admissible triples indexing the degeneration formula
// for a fixed curve class beta, or for every class of a fixed H-degree.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "degen/geometry.hpp"
#include "degen/graphs.hpp"
#include "degen/lattice.hpp"

namespace degen {

struct EnumerationRequest {
    int g = 0;
    int k = 0;
    /// A class beta in N_1(X) (class mode) or an H-degree d (degree mode).
    std::variant<LatticeVector, Int> target;
    /// Always required; in class mode it only bounds the search.
    AmpleData amp;
    Stability stability = Stability::contracted_components;
    /// Splittings are processed on up to this many threads.
    unsigned workers = 1;

    static EnumerationRequest for_class(int g, int k, LatticeVector beta, AmpleData amp);
    static EnumerationRequest for_degree(int g, int k, Int d, AmpleData amp);

    bool class_mode() const { return std::holds_alternative<LatticeVector>(target); }
    /// InputError unless in class mode.
    const LatticeVector& beta() const;
    /// InputError unless in degree mode.
    Int degree() const;
};

/// How a splitting sits relative to the coproduct display that
/// characterizes the index set: which display line it belongs to and
/// whether that line's literal conditions hold when ray bases are taken at
/// the apex (ray_decompose as is) or at the first non-apex lattice point.
struct DisplayConformance {
    enum class Line { zero_class = 0, both_sides = 1, y1_only = 2, y2_only = 3 };
    enum class Match { both, apex_only, non_apex_only, neither };

    Line line = Line::zero_class;
    RayDecomposition b1_non_apex;
    RayDecomposition b2_non_apex;
    bool literal_apex = false;
    bool literal_non_apex = false;
    /// Line 1 indexes only pairs with both ray bases nonzero.
    bool line1_index_apex = false;
    bool line1_index_non_apex = false;
    Match match = Match::neither;
};

std::string_view to_string(DisplayConformance::Match m);

/// A pair of total classes (b(Gamma1), b(Gamma2)) compatible with beta and
/// with equal contact E.b1 = E.b2 = mu.
struct Splitting {
    LatticeVector b1;
    LatticeVector b2;
    Int mu = 0;
    RayDecomposition ray1;  ///< b1 along gamma_Y1, apex convention
    RayDecomposition ray2;  ///< b2 along gamma_Y2, apex convention
    DisplayConformance display;
};

/// All splittings of beta; empty when beta is not effective. Class mode only.
std::vector<Splitting> enumerate_splittings(const EnumerationRequest& req, const BlowupGeometry& geom);

/// Admissible triples with b(Gamma1) = s.b1 and b(Gamma2) = s.b2, as
/// normalized labeled triples sorted by labeled_key.
std::vector<AdmissibleTriple> enumerate_triples_for(const EnumerationRequest& req, const BlowupGeometry& geom,
                                                    const Splitting& s);

/// The whole labeled set Omega_(g,k;beta). Class mode only.
std::vector<AdmissibleTriple> enumerate_triples(const EnumerationRequest& req, const BlowupGeometry& geom);

/// An element of the quotient by root reordering.
struct TripleClass {
    AdmissibleTriple representative;  ///< canonical_representative of the class
    TripleKey key;
    Int multiplicity = 1;  ///< m(eta)
    Int symmetry = 1;      ///< |Eq(eta)|
};

/// One entry per canonical key, sorted by key.
std::vector<TripleClass> reduce_to_classes(const std::vector<AdmissibleTriple>& triples);

/// C_(H,d): effective classes beta with L.beta = d, lexicographic.
std::vector<LatticeVector> degree_classes(const BlowupGeometry& geom, const AmpleData& amp, Int d);

/// Omega_(g,k;d) split by the class beta of each term. Degree mode only.
std::map<LatticeVector, std::vector<AdmissibleTriple>> enumerate_by_degree(const EnumerationRequest& req,
                                                                           const BlowupGeometry& geom);

struct HIndependenceReport {
    bool identical = true;
    std::vector<AmpleData> amples;
    std::vector<std::set<TripleKey>> key_sets;  ///< one per ample, same order
    /// "only under ample #i: <key>" lines, empty when identical.
    std::vector<std::string> differences;
};

/// Runs the class-mode enumeration under every AmpleData and compares the
/// canonical-key sets. InputError with fewer than two amples.
HIndependenceReport check_h_independence(int g, int k, const LatticeVector& beta, const BlowupGeometry& geom,
                                         const std::vector<AmpleData>& amples,
                                         Stability stability = Stability::contracted_components);

}  // namespace degen

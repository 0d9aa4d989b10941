#pragma once

// Lattice package of a blow-up degeneration W = Bl_{Z x 0}(X x A^1), whose
// central fiber is Y1 = Bl_Z X glued to Y2 = P(N_{Z/X} + O) along E.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "degen/lattice.hpp"

namespace degen {

enum class Side { Y1, Y2 };

std::string_view side_name(Side side);

/// Curve-class data of X, Y1 and Y2 with the pushforwards to X, the
/// pairings with E and the fiber line classes gamma. Only produced by the
/// loaders below, which check every invariant.
struct BlowupGeometry {
    std::string label;
    int codim = 0;

    std::vector<std::string> basis_X;
    std::vector<std::string> basis_Y1;
    std::vector<std::string> basis_Y2;

    ConeModel ne_X;
    ConeModel ne_Y1;
    ConeModel ne_Y2;

    LinearMap p1_push;  ///< N_1(Y1) -> N_1(X)
    LinearMap p2_push;  ///< N_1(Y2) -> N_1(X)

    LinearFunctional e_pair_Y1;  ///< E. on Y1, -1 on gamma_Y1
    LinearFunctional e_pair_Y2;  ///< E. on Y2, +1 on gamma_Y2

    LatticeVector gamma_Y1;
    LatticeVector gamma_Y2;

    /// The functional that --ample c scales: L = c * reference_ample.
    LinearFunctional reference_ample;
    /// L.(p2_* .) for the reference L; when absent it is reference_ample o p2_push.
    std::optional<LinearFunctional> reference_lz_push;

    std::size_t n1_X() const { return ne_X.rank(); }
    std::size_t n1_Y1() const { return ne_Y1.rank(); }
    std::size_t n1_Y2() const { return ne_Y2.rank(); }

    const ConeModel& cone(Side side) const { return side == Side::Y1 ? ne_Y1 : ne_Y2; }
    const LinearMap& push(Side side) const { return side == Side::Y1 ? p1_push : p2_push; }
    const LinearFunctional& e_pair(Side side) const { return side == Side::Y1 ? e_pair_Y1 : e_pair_Y2; }
    const LatticeVector& gamma(Side side) const { return side == Side::Y1 ? gamma_Y1 : gamma_Y2; }
    const std::vector<std::string>& basis(Side side) const { return side == Side::Y1 ? basis_Y1 : basis_Y2; }
};

/// Throws ValidationError naming the first failed invariant.
void validate_geometry(const BlowupGeometry& geom);

/// Restrictions of H = p^*L - Y2 to the two components of the central fiber.
struct AmpleData {
    LinearFunctional L;   ///< on N_1(X)
    LinearFunctional H1;  ///< on N_1(Y1): L o p1_* - E
    LinearFunctional H2;  ///< on N_1(Y2): L.(p2_* .) + E

    friend bool operator==(const AmpleData&, const AmpleData&) = default;
};

/// H1 := L o p1_push - e_pair_Y1, H2 := lz_push + e_pair_Y2. ModelError
/// ("L not sufficiently ample") if L, H1 or H2 fails to be strictly
/// positive on a generator of the matching cone.
AmpleData induce_ample(const BlowupGeometry& geom, const LinearFunctional& L, const LinearFunctional& lz_push);

/// L = c * reference_ample; LZ_push scaled the same way.
AmpleData ample_from_scale(const BlowupGeometry& geom, Int c);

/// A preset name ("p2-point", "p3-line") or a JSON geometry document.
BlowupGeometry load_geometry(std::string_view config_text);
BlowupGeometry load_geometry_file(const std::filesystem::path& path);

struct PresetInfo {
    std::string name;
    std::string description;
};

const std::vector<PresetInfo>& presets();
/// The JSON document a preset is built from; InputError for unknown names.
std::string_view preset_config(std::string_view name);
BlowupGeometry preset_geometry(std::string_view name);

}  // namespace degen

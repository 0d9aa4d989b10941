#pragma once

// The symbolic degeneration formula: one term per root-reordering class,
// coefficient m(eta)/|Eq(eta)|, relative invariants as named slots.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "degen/enumeration.hpp"
#include "degen/geometry.hpp"
#include "degen/graphs.hpp"

namespace degen {

/// Exact fraction kept in lowest terms, den > 0. The unreduced pair it was
/// built from is retained.
struct Rational {
    Int num = 0;
    Int den = 1;
    Int orig_num = 0;
    Int orig_den = 1;

    /// InputError for den == 0.
    static Rational of(Int num, Int den);
    bool is_integer() const { return den == 1; }
    /// "6", "1/2", "-3/4"
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Uninterpreted stand-in for a relative invariant factor; r is the
/// dimension marker of the contact space E^r.
struct PsiSlot {
    std::string symbol;
    std::size_t r = 0;

    friend bool operator==(const PsiSlot&, const PsiSlot&) = default;
};

struct FormulaTerm {
    AdmissibleTriple eta;  ///< canonical representative
    TripleKey key;
    LatticeVector beta;  ///< p1_* b(Gamma1) + p2_* b(Gamma2)
    Int multiplicity = 1;
    Int symmetry = 1;
    Rational coeff;
    PsiSlot psi1;  ///< Psi^{Y1 rel}_{Gamma1}
    PsiSlot psi2;  ///< Psi^{Y2 rel}_{Gamma2}

    std::size_t r() const { return eta.root_count(); }

    friend bool operator==(const FormulaTerm&, const FormulaTerm&) = default;
};

/// One term per class, in the order given (reduce_to_classes sorts by key).
std::vector<FormulaTerm> build_formula(const std::vector<TripleClass>& classes, const BlowupGeometry& geom);

struct FormulaRequest {
    int g = 0;
    int k = 0;
    std::optional<LatticeVector> beta;  ///< exactly one of beta and d
    std::optional<Int> d;
    std::vector<Int> ample_scales;  ///< c with L = c * reference ample

    friend bool operator==(const FormulaRequest&, const FormulaRequest&) = default;
};

struct FormulaDocument {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    std::string geometry_label;
    std::vector<std::string> basis_X;
    std::vector<std::string> basis_Y1;
    std::vector<std::string> basis_Y2;
    FormulaRequest request;
    std::vector<FormulaTerm> terms;

    friend bool operator==(const FormulaDocument&, const FormulaDocument&) = default;
};

/// Fills in label and bases from the geometry.
FormulaDocument make_document(const BlowupGeometry& geom, FormulaRequest request, std::vector<FormulaTerm> terms);

enum class Format { machine, latex, summary };

/// InputError for anything but machine, latex, summary.
Format parse_format(std::string_view name);

std::string emit(const FormulaDocument& doc, Format format);
std::string emit(const FormulaDocument& doc, std::string_view format);

/// Inverse of emit(doc, Format::machine). InputError on malformed text.
FormulaDocument parse_machine(std::string_view text);

/// c0*b0 + c1*b1 + ... in the given labels: "s-e", "2gamma+z", "0".
std::string symbolic_class(const LatticeVector& v, const std::vector<std::string>& basis);

}  // namespace degen

#pragma once

// Exact integer lattices of curve classes and the finitely generated
// semigroups (effective cones) living inside them.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace degen {

using Int = std::int64_t;

/// A curve class written in a fixed basis of N_1(.). All arithmetic is
/// checked; overflow throws OverflowError.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(std::vector<Int> coords);
    LatticeVector(std::initializer_list<Int> coords);

    static LatticeVector zero(std::size_t rank);

    std::size_t rank() const noexcept { return coords_.size(); }
    const std::vector<Int>& coords() const noexcept { return coords_; }
    Int operator[](std::size_t i) const { return coords_[i]; }
    bool is_zero() const noexcept;

    LatticeVector operator+(const LatticeVector& other) const;
    LatticeVector operator-(const LatticeVector& other) const;
    LatticeVector operator-() const;
    LatticeVector scaled(Int factor) const;

    /// "(1,0,-2)"
    std::string to_string() const;

    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
    friend auto operator<=>(const LatticeVector& a, const LatticeVector& b) {
        return a.coords_ <=> b.coords_;
    }

private:
    std::vector<Int> coords_;
};

LatticeVector operator*(Int factor, const LatticeVector& v);

class LinearMap;

/// An integer linear form on a lattice (E., H., L., ...).
class LinearFunctional {
public:
    LinearFunctional() = default;
    explicit LinearFunctional(std::vector<Int> coeffs);
    LinearFunctional(std::initializer_list<Int> coeffs);

    std::size_t rank() const noexcept { return coeffs_.size(); }
    const std::vector<Int>& coeffs() const noexcept { return coeffs_; }

    /// Exact dot product; InputError on rank mismatch.
    Int pair(const LatticeVector& v) const;

    LinearFunctional operator+(const LinearFunctional& other) const;
    LinearFunctional operator-(const LinearFunctional& other) const;
    LinearFunctional scaled(Int factor) const;

    /// this o map, a functional on the source lattice of map.
    LinearFunctional pullback(const LinearMap& map) const;

    std::string to_string() const;

    friend bool operator==(const LinearFunctional&, const LinearFunctional&) = default;

private:
    std::vector<Int> coeffs_;
};

/// Integer matrix between lattices, stored row-major with target_rank rows.
class LinearMap {
public:
    LinearMap() = default;
    LinearMap(std::size_t source_rank, std::size_t target_rank, std::vector<Int> row_major);

    static LinearMap from_rows(std::size_t source_rank, const std::vector<std::vector<Int>>& rows);

    std::size_t source_rank() const noexcept { return source_rank_; }
    std::size_t target_rank() const noexcept { return target_rank_; }
    Int at(std::size_t row, std::size_t col) const { return entries_[row * source_rank_ + col]; }

    LatticeVector apply(const LatticeVector& v) const;

    friend bool operator==(const LinearMap&, const LinearMap&) = default;

private:
    std::size_t source_rank_ = 0;
    std::size_t target_rank_ = 0;
    std::vector<Int> entries_;
};

/// The semigroup of all non-negative integer combinations of a finite list
/// of generators, together with a grading functional that is strictly
/// positive on every generator. The grading bounds every coefficient, which
/// makes membership and slice enumeration finite.
class ConeModel {
public:
    ConeModel() = default;
    /// ModelError if the grading is not strictly positive on some generator.
    ConeModel(std::size_t rank, std::vector<LatticeVector> generators, LinearFunctional grading);

    /// Same, with the grading found by a small search over integer functionals.
    /// ModelError if none with coefficients in [-16, 16] works.
    static ConeModel with_found_grading(std::size_t rank, std::vector<LatticeVector> generators);

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<LatticeVector>& generators() const noexcept { return generators_; }
    const LinearFunctional& grading() const noexcept { return grading_; }

    /// Index of the first generator on which h is not strictly positive, or npos.
    std::size_t first_nonpositive(const LinearFunctional& h) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t rank_ = 0;
    std::vector<LatticeVector> generators_;
    LinearFunctional grading_;
};

bool cone_contains(const ConeModel& cone, const LatticeVector& v);

/// All members v with 0 <= h.v <= bound, sorted lexicographically, no duplicates.
std::vector<LatticeVector> enumerate_slice(const ConeModel& cone, const LinearFunctional& h, Int bound);

struct RayDecomposition {
    LatticeVector base;  ///< v0, with v0 - gamma outside the cone
    Int steps = 0;       ///< l, the largest n with v - n*gamma in the cone

    friend bool operator==(const RayDecomposition&, const RayDecomposition&) = default;
};

/// v = base + steps*gamma. A v on the ray through the apex gives base = 0.
RayDecomposition ray_decompose(const ConeModel& cone, const LatticeVector& v, const LatticeVector& gamma);

}  // namespace degen

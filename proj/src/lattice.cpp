#include "degen/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include "degen/checked.hpp"
#include "degen/errors.hpp"

namespace degen {

namespace {

std::string join_ints(const std::vector<Int>& xs) {
    std::string out = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    out += ')';
    return out;
}

void require_same_rank(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw InputError(std::string("rank mismatch in ") + what + ": " + std::to_string(a) + " vs " +
                         std::to_string(b));
}

}  // namespace

// ---------------------------------------------------------------------------
// LatticeVector

LatticeVector::LatticeVector(std::vector<Int> coords) : coords_(std::move(coords)) {}

LatticeVector::LatticeVector(std::initializer_list<Int> coords) : coords_(coords) {}

LatticeVector LatticeVector::zero(std::size_t rank) { return LatticeVector(std::vector<Int>(rank, 0)); }

bool LatticeVector::is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](Int c) { return c == 0; });
}

LatticeVector LatticeVector::operator+(const LatticeVector& other) const {
    require_same_rank(rank(), other.rank(), "vector addition");
    std::vector<Int> out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = checked_add(coords_[i], other.coords_[i]);
    return LatticeVector(std::move(out));
}

LatticeVector LatticeVector::operator-(const LatticeVector& other) const {
    require_same_rank(rank(), other.rank(), "vector subtraction");
    std::vector<Int> out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = checked_sub(coords_[i], other.coords_[i]);
    return LatticeVector(std::move(out));
}

LatticeVector LatticeVector::operator-() const { return scaled(-1); }

LatticeVector LatticeVector::scaled(Int factor) const {
    std::vector<Int> out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = checked_mul(coords_[i], factor);
    return LatticeVector(std::move(out));
}

std::string LatticeVector::to_string() const { return join_ints(coords_); }

LatticeVector operator*(Int factor, const LatticeVector& v) { return v.scaled(factor); }

// ---------------------------------------------------------------------------
// LinearFunctional

LinearFunctional::LinearFunctional(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {}

LinearFunctional::LinearFunctional(std::initializer_list<Int> coeffs) : coeffs_(coeffs) {}

Int LinearFunctional::pair(const LatticeVector& v) const {
    require_same_rank(rank(), v.rank(), "pairing");
    Int acc = 0;
    for (std::size_t i = 0; i < rank(); ++i) acc = checked_add(acc, checked_mul(coeffs_[i], v[i]));
    return acc;
}

LinearFunctional LinearFunctional::operator+(const LinearFunctional& other) const {
    require_same_rank(rank(), other.rank(), "functional addition");
    std::vector<Int> out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = checked_add(coeffs_[i], other.coeffs_[i]);
    return LinearFunctional(std::move(out));
}

LinearFunctional LinearFunctional::operator-(const LinearFunctional& other) const {
    require_same_rank(rank(), other.rank(), "functional subtraction");
    std::vector<Int> out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = checked_sub(coeffs_[i], other.coeffs_[i]);
    return LinearFunctional(std::move(out));
}

LinearFunctional LinearFunctional::scaled(Int factor) const {
    std::vector<Int> out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = checked_mul(coeffs_[i], factor);
    return LinearFunctional(std::move(out));
}

LinearFunctional LinearFunctional::pullback(const LinearMap& map) const {
    require_same_rank(rank(), map.target_rank(), "pullback");
    std::vector<Int> out(map.source_rank(), 0);
    for (std::size_t col = 0; col < map.source_rank(); ++col)
        for (std::size_t row = 0; row < map.target_rank(); ++row)
            out[col] = checked_add(out[col], checked_mul(coeffs_[row], map.at(row, col)));
    return LinearFunctional(std::move(out));
}

std::string LinearFunctional::to_string() const { return join_ints(coeffs_); }

// ---------------------------------------------------------------------------
// LinearMap

LinearMap::LinearMap(std::size_t source_rank, std::size_t target_rank, std::vector<Int> row_major)
    : source_rank_(source_rank), target_rank_(target_rank), entries_(std::move(row_major)) {
    if (entries_.size() != source_rank_ * target_rank_)
        throw InputError("linear map needs " + std::to_string(source_rank_ * target_rank_) +
                         " entries, got " + std::to_string(entries_.size()));
}

LinearMap LinearMap::from_rows(std::size_t source_rank, const std::vector<std::vector<Int>>& rows) {
    std::vector<Int> flat;
    flat.reserve(rows.size() * source_rank);
    for (const auto& row : rows) {
        if (row.size() != source_rank)
            throw InputError("linear map row has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(source_rank));
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return LinearMap(source_rank, rows.size(), std::move(flat));
}

LatticeVector LinearMap::apply(const LatticeVector& v) const {
    require_same_rank(source_rank_, v.rank(), "linear map application");
    std::vector<Int> out(target_rank_, 0);
    for (std::size_t row = 0; row < target_rank_; ++row)
        for (std::size_t col = 0; col < source_rank_; ++col)
            out[row] = checked_add(out[row], checked_mul(at(row, col), v[col]));
    return LatticeVector(std::move(out));
}

// ---------------------------------------------------------------------------
// ConeModel

ConeModel::ConeModel(std::size_t rank, std::vector<LatticeVector> generators, LinearFunctional grading)
    : rank_(rank), generators_(std::move(generators)), grading_(std::move(grading)) {
    if (rank_ == 0) throw InputError("cone rank must be positive");
    require_same_rank(rank_, grading_.rank(), "cone grading");
    for (const auto& g : generators_) require_same_rank(rank_, g.rank(), "cone generator");
    // The zero vector is always a member; drop it from the generator list so
    // that every remaining generator has positive grading.
    std::erase_if(generators_, [](const LatticeVector& g) { return g.is_zero(); });
    std::sort(generators_.begin(), generators_.end());
    generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
    if (auto bad = first_nonpositive(grading_); bad != npos)
        throw ModelError("grading " + grading_.to_string() + " is not strictly positive on generator " +
                         generators_[bad].to_string() + "; enumeration would not terminate");
}

ConeModel ConeModel::with_found_grading(std::size_t rank, std::vector<LatticeVector> generators) {
    if (rank == 0) throw InputError("cone rank must be positive");
    for (const auto& g : generators) require_same_rank(rank, g.rank(), "cone generator");
    constexpr Int max_radius = 16;
    std::vector<Int> coeffs(rank);
    for (Int radius = 1; radius <= max_radius; ++radius) {
        // Odometer over the box [-radius, radius]^rank; only boxes' shells are new.
        std::fill(coeffs.begin(), coeffs.end(), -radius);
        while (true) {
            bool on_shell = std::any_of(coeffs.begin(), coeffs.end(),
                                        [radius](Int c) { return c == radius || c == -radius; });
            if (on_shell) {
                LinearFunctional h(coeffs);
                bool positive = std::all_of(generators.begin(), generators.end(), [&](const LatticeVector& g) {
                    return g.is_zero() || h.pair(g) > 0;
                });
                if (positive) return ConeModel(rank, std::move(generators), std::move(h));
            }
            std::size_t i = 0;
            while (i < rank && coeffs[i] == radius) coeffs[i++] = -radius;
            if (i == rank) break;
            ++coeffs[i];
        }
    }
    throw ModelError("no strictly positive grading found for cone; it may not be pointed");
}

std::size_t ConeModel::first_nonpositive(const LinearFunctional& h) const {
    require_same_rank(rank_, h.rank(), "functional on cone");
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (h.pair(generators_[i]) <= 0) return i;
    return npos;
}

bool cone_contains(const ConeModel& cone, const LatticeVector& v) {
    require_same_rank(cone.rank(), v.rank(), "cone membership");
    if (v.is_zero()) return true;
    const auto& gens = cone.generators();
    const LinearFunctional& h = cone.grading();
    Int budget = h.pair(v);
    if (budget <= 0 || gens.empty()) return false;

    std::vector<Int> weight(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) weight[i] = h.pair(gens[i]);

    // Each coefficient c_i satisfies c_i * weight[i] <= h.v, so the search is
    // finite. Residuals already shown unreachable from index i are memoized.
    std::set<std::pair<std::size_t, LatticeVector>> dead;
    std::function<bool(std::size_t, const LatticeVector&, Int)> search =
        [&](std::size_t i, const LatticeVector& residual, Int left) -> bool {
        if (residual.is_zero()) return true;
        if (left <= 0 || i == gens.size()) return false;
        if (i + 1 == gens.size()) {
            if (left % weight[i] != 0) return false;
            return residual == gens[i].scaled(left / weight[i]);
        }
        if (dead.contains({i, residual})) return false;
        for (Int c = left / weight[i]; c >= 0; --c) {
            if (search(i + 1, residual - gens[i].scaled(c), left - c * weight[i])) return true;
        }
        dead.insert({i, residual});
        return false;
    };
    return search(0, v, budget);
}

std::vector<LatticeVector> enumerate_slice(const ConeModel& cone, const LinearFunctional& h, Int bound) {
    if (auto bad = cone.first_nonpositive(h); bad != ConeModel::npos)
        throw ModelError("functional " + h.to_string() + " is not strictly positive on generator " +
                         cone.generators()[bad].to_string());
    std::set<LatticeVector> found;
    if (bound < 0) return {};
    const auto& gens = cone.generators();
    std::vector<Int> weight(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) weight[i] = h.pair(gens[i]);

    // Bound: sum_i c_i * weight[i] <= bound.
    std::function<void(std::size_t, const LatticeVector&, Int)> walk = [&](std::size_t i, const LatticeVector& acc,
                                                                          Int left) {
        if (i == gens.size()) {
            found.insert(acc);
            return;
        }
        LatticeVector cur = acc;
        for (Int c = 0; c * weight[i] <= left; ++c) {
            walk(i + 1, cur, left - c * weight[i]);
            cur = cur + gens[i];
        }
    };
    walk(0, LatticeVector::zero(cone.rank()), bound);
    return {found.begin(), found.end()};
}

RayDecomposition ray_decompose(const ConeModel& cone, const LatticeVector& v, const LatticeVector& gamma) {
    if (!cone_contains(cone, v)) throw InputError("ray_decompose: " + v.to_string() + " is not in the cone");
    if (gamma.is_zero() || !cone_contains(cone, gamma))
        throw InputError("ray_decompose: ray direction " + gamma.to_string() + " must be a nonzero cone member");
    const LinearFunctional& h = cone.grading();
    // Membership of v - n*gamma needs h.(v - n*gamma) >= 0.
    Int top = h.pair(v) / h.pair(gamma);
    for (Int n = top; n >= 0; --n) {
        LatticeVector base = v - gamma.scaled(n);
        if (cone_contains(cone, base)) return {std::move(base), n};
    }
    return {v, 0};  // unreachable: n = 0 gives v itself
}

}  // namespace degen

#include "degen/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <utility>

#include "degen/errors.hpp"

namespace degen {

namespace {

// Odometer over {0..base-1}^len; visit returns nothing, iteration is exhaustive.
template <class Visit>
void for_each_word(std::size_t len, std::size_t base, Visit&& visit) {
    if (len > 0 && base == 0) return;
    std::vector<std::size_t> w(len, 0);
    while (true) {
        visit(w);
        std::size_t i = 0;
        while (i < len && w[i] + 1 == base) w[i++] = 0;
        if (i == len) return;
        ++w[i];
    }
}

std::vector<LatticeVector> effective_box(const ConeModel& cone, int max_coord) {
    std::vector<LatticeVector> out;
    const std::size_t side = static_cast<std::size_t>(2 * max_coord + 1);
    for_each_word(cone.rank(), side, [&](const std::vector<std::size_t>& w) {
        std::vector<Int> coords(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) coords[i] = static_cast<Int>(w[i]) - max_coord;
        LatticeVector v(std::move(coords));
        if (cone_contains(cone, v)) out.push_back(std::move(v));
    });
    return out;
}

struct ClassTuple {
    std::vector<LatticeVector> classes;
    LatticeVector total;
};

std::vector<ClassTuple> class_tuples(const std::vector<LatticeVector>& box, std::size_t vertices, std::size_t rank) {
    std::vector<ClassTuple> out;
    for_each_word(vertices, box.size(), [&](const std::vector<std::size_t>& w) {
        ClassTuple t{{}, LatticeVector::zero(rank)};
        for (auto i : w) {
            t.classes.push_back(box[i]);
            t.total = t.total + box[i];
        }
        out.push_back(std::move(t));
    });
    return out;
}

// Necessary conditions read straight off the definitions, checked on the
// attachment maps alone so the genus and leg loops see fewer candidates.
bool attachments_plausible(const std::vector<std::size_t>& at1, std::size_t v1, const std::vector<std::size_t>& at2,
                           std::size_t v2) {
    auto covers = [](const std::vector<std::size_t>& at, std::size_t v) {
        if (v <= 1) return true;
        std::vector<bool> hit(v, false);
        for (auto a : at) hit[a] = true;
        return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    };
    if (!covers(at1, v1) || !covers(at2, v2)) return false;
    std::vector<std::size_t> comp(v1 + v2);
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = i;
    for (std::size_t i = 0; i < at1.size(); ++i) {
        std::size_t from = comp[at1[i]], to = comp[v1 + at2[i]];
        for (auto& c : comp)
            if (c == from) c = to;
    }
    return std::all_of(comp.begin(), comp.end(), [&](std::size_t c) { return c == comp[0]; });
}

bool reaches_bound(const AdmissibleTriple& t, const OracleBounds& b) {
    if (static_cast<int>(t.root_count()) >= b.max_roots) return true;
    for (const auto* g : {&t.gamma1, &t.gamma2}) {
        if (static_cast<int>(g->vertices.size()) >= b.max_vertices) return true;
        for (const auto& v : g->vertices) {
            if (v.genus >= b.max_genus) return true;
            for (Int c : v.cls.coords())
                if (std::llabs(c) >= b.max_coord) return true;
        }
        for (const auto& r : g->roots)
            if (r.weight >= b.max_root_weight) return true;
    }
    return false;
}

}  // namespace

std::vector<AdmissibleTriple> oracle_enumerate(int g, int k, const LatticeVector& beta, const BlowupGeometry& geom,
                                               const OracleBounds& bounds, Stability stability) {
    if (bounds.max_vertices <= 0 || bounds.max_coord <= 0 || bounds.max_genus <= 0 || bounds.max_root_weight <= 0 ||
        bounds.max_roots <= 0)
        throw BoundsError("bounds too small: every oracle bound must be positive");
    if (beta.rank() != geom.n1_X()) throw InputError("beta rank does not match N_1(X)");
    if (g < 0 || k < 0) throw InputError("g and k must be non-negative");

    const auto box1 = effective_box(geom.ne_Y1, bounds.max_coord);
    const auto box2 = effective_box(geom.ne_Y2, bounds.max_coord);
    std::map<std::string, AdmissibleTriple> found;

    for (int v1 = 0; v1 <= bounds.max_vertices; ++v1) {
        const auto tuples1 = class_tuples(box1, static_cast<std::size_t>(v1), geom.n1_Y1());
        for (int v2 = 0; v2 <= bounds.max_vertices; ++v2) {
            if (v1 + v2 == 0) continue;
            const auto tuples2 = class_tuples(box2, static_cast<std::size_t>(v2), geom.n1_Y2());
            // Join the two sides on (p2_* b2, E.b2).
            std::map<std::pair<LatticeVector, Int>, std::vector<const ClassTuple*>> by_image;
            for (const auto& t2 : tuples2)
                by_image[{geom.p2_push.apply(t2.total), geom.e_pair_Y2.pair(t2.total)}].push_back(&t2);

            const std::size_t nv = static_cast<std::size_t>(v1 + v2);
            for (const auto& t1 : tuples1) {
                const Int contact = geom.e_pair_Y1.pair(t1.total);
                if (contact < 0) continue;
                auto hit = by_image.find({beta - geom.p1_push.apply(t1.total), contact});
                if (hit == by_image.end()) continue;
                for (const ClassTuple* t2 : hit->second) {
                    // r edges cannot connect more than r + 1 vertices
                    for (int r = std::max(0, v1 + v2 - 1); r <= bounds.max_roots; ++r) {
                        const std::size_t ur = static_cast<std::size_t>(r);
                        for_each_word(ur, static_cast<std::size_t>(bounds.max_root_weight), [&](const auto& wts) {
                            Int total_weight = 0;
                            for (auto w : wts) total_weight += static_cast<Int>(w) + 1;
                            if (total_weight != contact) return;
                            for_each_word(ur, static_cast<std::size_t>(v1), [&](const auto& at1) {
                                for_each_word(ur, static_cast<std::size_t>(v2), [&](const auto& at2) {
                                    if (!attachments_plausible(at1, static_cast<std::size_t>(v1), at2,
                                                               static_cast<std::size_t>(v2)))
                                        return;
                                    for_each_word(nv, static_cast<std::size_t>(bounds.max_genus + 1), [&](const auto& gen) {
                                        int genus_sum = 0;
                                        for (auto x : gen) genus_sum += static_cast<int>(x);
                                        if (r + 1 - v1 - v2 + genus_sum != g) return;
                                        for_each_word(static_cast<std::size_t>(k), nv, [&](const auto& legs) {
                                            AdmissibleTriple t;
                                            t.gamma1 = {Side::Y1, geom.n1_Y1(), {}, {}, {}};
                                            t.gamma2 = {Side::Y2, geom.n1_Y2(), {}, {}, {}};
                                            for (int v = 0; v < v1; ++v)
                                                t.gamma1.vertices.push_back(
                                                    {static_cast<int>(gen[static_cast<std::size_t>(v)]),
                                                     t1.classes[static_cast<std::size_t>(v)]});
                                            for (int v = 0; v < v2; ++v)
                                                t.gamma2.vertices.push_back(
                                                    {static_cast<int>(gen[static_cast<std::size_t>(v1 + v)]),
                                                     t2->classes[static_cast<std::size_t>(v)]});
                                            for (std::size_t i = 0; i < ur; ++i) {
                                                int w = static_cast<int>(wts[i]) + 1;
                                                t.gamma1.roots.push_back({at1[i], w});
                                                t.gamma2.roots.push_back({at2[i], w});
                                            }
                                            for (std::size_t i = 0; i < legs.size(); ++i) {
                                                int label = static_cast<int>(i) + 1;
                                                if (legs[i] < static_cast<std::size_t>(v1)) {
                                                    t.gamma1.legs.push_back({legs[i], label});
                                                    t.I.push_back(label);
                                                } else {
                                                    t.gamma2.legs.push_back({legs[i] - static_cast<std::size_t>(v1), label});
                                                }
                                            }
                                            if (!validate_triple(t, geom, g, k, stability).empty()) return;
                                            t = normalized(t);
                                            found.emplace(labeled_key(t), std::move(t));
                                        });
                                    });
                                });
                            });
                        });
                    }
                }
            }
        }
    }

    std::vector<AdmissibleTriple> out;
    out.reserve(found.size());
    for (auto& [_, t] : found) {
        if (reaches_bound(t, bounds))
            throw BoundsError("bounds too small: accepted triple " + labeled_key(t) + " reaches an oracle bound");
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace degen

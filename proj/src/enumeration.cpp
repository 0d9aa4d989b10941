#include "degen/enumeration.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>
#include <utility>

#include "degen/checked.hpp"
#include "degen/errors.hpp"

namespace degen {

EnumerationRequest EnumerationRequest::for_class(int g, int k, LatticeVector beta, AmpleData amp) {
    EnumerationRequest r;
    r.g = g;
    r.k = k;
    r.target = std::move(beta);
    r.amp = std::move(amp);
    return r;
}

EnumerationRequest EnumerationRequest::for_degree(int g, int k, Int d, AmpleData amp) {
    EnumerationRequest r;
    r.g = g;
    r.k = k;
    r.target = d;
    r.amp = std::move(amp);
    return r;
}

const LatticeVector& EnumerationRequest::beta() const {
    if (!class_mode()) throw InputError("request is in degree mode; a curve class is required");
    return std::get<LatticeVector>(target);
}

Int EnumerationRequest::degree() const {
    if (class_mode()) throw InputError("request is in class mode; a degree is required");
    return std::get<Int>(target);
}

std::string_view to_string(DisplayConformance::Match m) {
    switch (m) {
        case DisplayConformance::Match::both: return "both";
        case DisplayConformance::Match::apex_only: return "apex";
        case DisplayConformance::Match::non_apex_only: return "non-apex";
        case DisplayConformance::Match::neither: return "neither";
    }
    return "neither";
}

namespace {

void check_request(const EnumerationRequest& req, const BlowupGeometry& geom) {
    if (req.g < 0) throw InputError("genus must be non-negative");
    if (req.k < 0) throw InputError("number of marked points must be non-negative");
    if (req.amp.L.rank() != geom.n1_X() || req.amp.H1.rank() != geom.n1_Y1() || req.amp.H2.rank() != geom.n1_Y2())
        throw InputError("ample data does not match the geometry's lattices");
    if (req.class_mode() && req.beta().rank() != geom.n1_X())
        throw InputError("beta has rank " + std::to_string(req.beta().rank()) + ", N_1(X) has rank " +
                         std::to_string(geom.n1_X()));
}

RayDecomposition non_apex(const RayDecomposition& apex, const LatticeVector& v, const LatticeVector& gamma) {
    if (apex.base.is_zero() && !v.is_zero()) return {gamma, apex.steps - 1};
    return apex;
}

bool literal_conditions(DisplayConformance::Line line, const Splitting& s, const RayDecomposition& r1,
                        const RayDecomposition& r2, const BlowupGeometry& geom) {
    using Line = DisplayConformance::Line;
    switch (line) {
        case Line::zero_class: return true;
        case Line::both_sides:
            // l1 + l2 = E.b1^0 and total root weight = l2.
            return r1.steps + r2.steps == geom.e_pair_Y1.pair(r1.base) && s.mu == r2.steps;
        case Line::y1_only: {
            // b1 = b1^0 + (E.b1^0) gamma with 0 != b1^0, E.b1^0 >= 0.
            Int e = geom.e_pair_Y1.pair(r1.base);
            return !r1.base.is_zero() && e >= 0 && r1.steps == e;
        }
        case Line::y2_only:
            // b2 = b2^0 with b2^0 != 0.
            return !r2.base.is_zero() && r2.steps == 0;
    }
    return false;
}

DisplayConformance classify(const Splitting& s, const BlowupGeometry& geom) {
    using Line = DisplayConformance::Line;
    using Match = DisplayConformance::Match;
    DisplayConformance d;
    bool z1 = s.b1.is_zero(), z2 = s.b2.is_zero();
    d.line = z1 && z2 ? Line::zero_class : !z1 && !z2 ? Line::both_sides : z2 ? Line::y1_only : Line::y2_only;
    d.b1_non_apex = non_apex(s.ray1, s.b1, geom.gamma_Y1);
    d.b2_non_apex = non_apex(s.ray2, s.b2, geom.gamma_Y2);
    d.literal_apex = literal_conditions(d.line, s, s.ray1, s.ray2, geom);
    d.literal_non_apex = literal_conditions(d.line, s, d.b1_non_apex, d.b2_non_apex, geom);
    bool both = d.line == Line::both_sides;
    d.line1_index_apex = both && !s.ray1.base.is_zero() && !s.ray2.base.is_zero();
    d.line1_index_non_apex = both && !d.b1_non_apex.base.is_zero() && !d.b2_non_apex.base.is_zero();
    d.match = d.literal_apex && d.literal_non_apex ? Match::both
              : d.literal_apex                     ? Match::apex_only
              : d.literal_non_apex                 ? Match::non_apex_only
                                                   : Match::neither;
    return d;
}

// Ordered compositions of n into positive parts.
void compositions(Int n, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& visit) {
    if (n == 0) {
        visit(cur);
        return;
    }
    for (Int part = 1; part <= n; ++part) {
        cur.push_back(static_cast<int>(part));
        compositions(n - part, cur, visit);
        cur.pop_back();
    }
}

// Set partitions of {0..n-1} as restricted growth strings: block[i] is the
// block of element i, blocks numbered by first occurrence.
void set_partitions(std::size_t n, const std::function<void(const std::vector<std::size_t>&, std::size_t)>& visit) {
    std::vector<std::size_t> block(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            visit(block, used);
            return;
        }
        for (std::size_t b = 0; b <= used; ++b) {
            block[i] = b;
            rec(i + 1, b == used ? used + 1 : used);
        }
    };
    if (n == 0) {
        visit(block, 0);
        return;
    }
    rec(0, 0);
}

// Ordered tuples (c_1..c_parts) of cone members summing to total. Every
// part has H-degree at most H.total, so the slice {H <= H.total} holds all
// candidates.
std::vector<std::vector<LatticeVector>> class_compositions(const ConeModel& cone, const LinearFunctional& h,
                                                           const LatticeVector& total, std::size_t parts) {
    std::vector<std::vector<LatticeVector>> out;
    if (parts == 0) {
        if (total.is_zero()) out.emplace_back();
        return out;
    }
    auto slice = enumerate_slice(cone, h, h.pair(total));
    std::set<LatticeVector> members(slice.begin(), slice.end());
    if (!members.contains(total)) return out;
    std::vector<LatticeVector> cur;
    std::function<void(const LatticeVector&)> rec = [&](const LatticeVector& left) {
        if (cur.size() + 1 == parts) {
            cur.push_back(left);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (const auto& c : slice) {
            LatticeVector rest = left - c;
            if (!members.contains(rest)) continue;
            cur.push_back(c);
            rec(rest);
            cur.pop_back();
        }
    };
    rec(total);
    return out;
}

// Weak compositions of budget into n parts.
void genus_splits(int budget, std::size_t n, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& visit) {
    if (cur.size() + 1 == n) {
        cur.push_back(budget);
        visit(cur);
        cur.pop_back();
        return;
    }
    for (int gv = 0; gv <= budget; ++gv) {
        cur.push_back(gv);
        genus_splits(budget - gv, n, cur, visit);
        cur.pop_back();
    }
}

bool blocks_connected(const std::vector<std::size_t>& block1, std::size_t v1, const std::vector<std::size_t>& block2,
                      std::size_t v2) {
    std::vector<std::size_t> parent(v1 + v2);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < block1.size(); ++i) parent[find(block1[i])] = find(v1 + block2[i]);
    for (std::size_t v = 1; v < v1 + v2; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

// Every assignment of leg labels 1..k to the vertices of t; the accepted
// triples go to sink.
void distribute_legs(const AdmissibleTriple& base, int k, const std::function<void(AdmissibleTriple)>& sink) {
    const std::size_t n1 = base.gamma1.vertices.size();
    const std::size_t n = base.vertex_count();
    if (n == 0) return;
    std::vector<std::size_t> where(static_cast<std::size_t>(k), 0);
    while (true) {
        AdmissibleTriple t = base;
        for (int label = 1; label <= k; ++label) {
            std::size_t v = where[static_cast<std::size_t>(label - 1)];
            if (v < n1) {
                t.gamma1.legs.push_back({v, label});
                t.I.push_back(label);
            } else {
                t.gamma2.legs.push_back({v - n1, label});
            }
        }
        sink(std::move(t));
        std::size_t i = 0;
        while (i < where.size() && where[i] + 1 == n) where[i++] = 0;
        if (i == where.size()) break;
        ++where[i];
    }
}

}  // namespace

std::vector<Splitting> enumerate_splittings(const EnumerationRequest& req, const BlowupGeometry& geom) {
    check_request(req, geom);
    const LatticeVector& beta = req.beta();
    if (!cone_contains(geom.ne_X, beta)) return {};
    const Int d = req.amp.L.pair(beta);

    // H1 and H2 are non-negative on the cones and H1.b1 + H2.b2 = L.beta for
    // any pair with matching contact, so both totals lie in the d-slices.
    auto slice1 = enumerate_slice(geom.ne_Y1, req.amp.H1, d);
    auto slice2 = enumerate_slice(geom.ne_Y2, req.amp.H2, d);

    std::vector<Splitting> out;
    for (const auto& b1 : slice1) {
        const LatticeVector rest = beta - geom.p1_push.apply(b1);
        const Int mu = geom.e_pair_Y1.pair(b1);
        if (mu < 0) continue;
        for (const auto& b2 : slice2) {
            if (geom.e_pair_Y2.pair(b2) != mu || geom.p2_push.apply(b2) != rest) continue;
            if (checked_add(req.amp.H1.pair(b1), req.amp.H2.pair(b2)) != d)
                throw ModelError("degree identity H1.b1 + H2.b2 = L.beta fails for " + b1.to_string() + ", " +
                                 b2.to_string() + "; LZ_push is inconsistent with p2_push");
            Splitting s{b1, b2, mu, ray_decompose(geom.ne_Y1, b1, geom.gamma_Y1),
                        ray_decompose(geom.ne_Y2, b2, geom.gamma_Y2), {}};
            s.display = classify(s, geom);
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<AdmissibleTriple> enumerate_triples_for(const EnumerationRequest& req, const BlowupGeometry& geom,
                                                    const Splitting& s) {
    std::map<std::string, AdmissibleTriple> found;
    auto accept = [&](AdmissibleTriple t) {
        if (!validate_triple(t, geom, req.g, req.k, req.stability).empty()) return;
        t = normalized(t);
        found.emplace(labeled_key(t), std::move(t));
    };
    const WeightedGraph empty1{Side::Y1, geom.n1_Y1(), {}, {}, {}};
    const WeightedGraph empty2{Side::Y2, geom.n1_Y2(), {}, {}, {}};

    if (s.mu == 0) {
        // No roots, so the glued graph is connected only with a single
        // vertex overall: one side is empty, the other a lone rootless vertex.
        if (s.b2.is_zero()) {
            AdmissibleTriple t{empty1, empty2, {}};
            t.gamma1.vertices.push_back({req.g, s.b1});
            distribute_legs(t, req.k, accept);
        }
        if (s.b1.is_zero()) {
            AdmissibleTriple t{empty1, empty2, {}};
            t.gamma2.vertices.push_back({req.g, s.b2});
            distribute_legs(t, req.k, accept);
        }
    } else {
        std::vector<int> cur;
        compositions(s.mu, cur, [&](const std::vector<int>& weights) {
            const std::size_t r = weights.size();
            // Relative connectedness with r >= 1 roots: the vertices of each
            // side are exactly the blocks of a set partition of the roots.
            set_partitions(r, [&](const std::vector<std::size_t>& block1, std::size_t v1) {
                auto classes1 = class_compositions(geom.ne_Y1, req.amp.H1, s.b1, v1);
                if (classes1.empty()) return;
                set_partitions(r, [&](const std::vector<std::size_t>& block2, std::size_t v2) {
                    if (!blocks_connected(block1, v1, block2, v2)) return;
                    // Genus budget from g(eta) = g.
                    const int budget = req.g + static_cast<int>(v1 + v2) - static_cast<int>(r) - 1;
                    if (budget < 0) return;
                    auto classes2 = class_compositions(geom.ne_Y2, req.amp.H2, s.b2, v2);
                    if (classes2.empty()) return;

                    AdmissibleTriple skeleton{empty1, empty2, {}};
                    for (std::size_t i = 0; i < r; ++i) {
                        skeleton.gamma1.roots.push_back({block1[i], weights[i]});
                        skeleton.gamma2.roots.push_back({block2[i], weights[i]});
                    }
                    std::vector<int> gcur;
                    for (const auto& c1 : classes1)
                        for (const auto& c2 : classes2)
                            genus_splits(budget, v1 + v2, gcur, [&](const std::vector<int>& genera) {
                                AdmissibleTriple t = skeleton;
                                for (std::size_t v = 0; v < v1; ++v) t.gamma1.vertices.push_back({genera[v], c1[v]});
                                for (std::size_t v = 0; v < v2; ++v)
                                    t.gamma2.vertices.push_back({genera[v1 + v], c2[v]});
                                distribute_legs(t, req.k, accept);
                            });
                });
            });
        });
    }

    std::vector<AdmissibleTriple> out;
    out.reserve(found.size());
    for (auto& [_, t] : found) out.push_back(std::move(t));
    return out;
}

std::vector<AdmissibleTriple> enumerate_triples(const EnumerationRequest& req, const BlowupGeometry& geom) {
    const auto splittings = enumerate_splittings(req, geom);
    std::vector<std::vector<AdmissibleTriple>> parts(splittings.size());

    const unsigned workers = std::max(1u, req.workers);
    if (workers == 1 || splittings.size() < 2) {
        for (std::size_t i = 0; i < splittings.size(); ++i) parts[i] = enumerate_triples_for(req, geom, splittings[i]);
    } else {
        // Each task owns its output slot; the geometry and request are read-only.
        std::size_t next = 0;
        while (next < splittings.size()) {
            std::vector<std::future<void>> batch;
            for (unsigned w = 0; w < workers && next < splittings.size(); ++w, ++next)
                batch.push_back(std::async(std::launch::async, [&, i = next] {
                    parts[i] = enumerate_triples_for(req, geom, splittings[i]);
                }));
            for (auto& f : batch) f.get();
        }
    }

    std::map<std::string, AdmissibleTriple> merged;
    for (auto& part : parts)
        for (auto& t : part) {
            std::string key = labeled_key(t);
            merged.emplace(std::move(key), std::move(t));
        }
    std::vector<AdmissibleTriple> out;
    out.reserve(merged.size());
    for (auto& [_, t] : merged) out.push_back(std::move(t));
    return out;
}

std::vector<TripleClass> reduce_to_classes(const std::vector<AdmissibleTriple>& triples) {
    std::map<TripleKey, TripleClass> classes;
    for (const auto& t : triples) {
        TripleKey key = canonical_key(t);
        if (classes.contains(key)) continue;
        TripleClass c{canonical_representative(t), key, multiplicity(t), symmetry_order(t)};
        classes.emplace(std::move(key), std::move(c));
    }
    std::vector<TripleClass> out;
    out.reserve(classes.size());
    for (auto& [_, c] : classes) out.push_back(std::move(c));
    return out;
}

std::vector<LatticeVector> degree_classes(const BlowupGeometry& geom, const AmpleData& amp, Int d) {
    std::vector<LatticeVector> out;
    for (auto& beta : enumerate_slice(geom.ne_X, amp.L, d))
        if (amp.L.pair(beta) == d) out.push_back(std::move(beta));
    return out;
}

std::map<LatticeVector, std::vector<AdmissibleTriple>> enumerate_by_degree(const EnumerationRequest& req,
                                                                           const BlowupGeometry& geom) {
    check_request(req, geom);
    std::map<LatticeVector, std::vector<AdmissibleTriple>> out;
    for (const auto& beta : degree_classes(geom, req.amp, req.degree())) {
        EnumerationRequest sub = req;
        sub.target = beta;
        out.emplace(beta, enumerate_triples(sub, geom));
    }
    return out;
}

HIndependenceReport check_h_independence(int g, int k, const LatticeVector& beta, const BlowupGeometry& geom,
                                         const std::vector<AmpleData>& amples, Stability stability) {
    if (amples.size() < 2) throw InputError("H-independence check needs at least two ample choices");
    HIndependenceReport report;
    report.amples = amples;
    for (const auto& amp : amples) {
        EnumerationRequest req = EnumerationRequest::for_class(g, k, beta, amp);
        req.stability = stability;
        std::set<TripleKey> keys;
        for (const auto& t : enumerate_triples(req, geom)) keys.insert(canonical_key(t));
        report.key_sets.push_back(std::move(keys));
    }
    const auto& reference = report.key_sets.front();
    for (std::size_t i = 1; i < report.key_sets.size(); ++i) {
        const auto& other = report.key_sets[i];
        for (const auto& key : other)
            if (!reference.contains(key))
                report.differences.push_back("only under ample #" + std::to_string(i) + ": " + key.text);
        for (const auto& key : reference)
            if (!other.contains(key))
                report.differences.push_back("missing under ample #" + std::to_string(i) + ": " + key.text);
    }
    report.identical = report.differences.empty();
    return report;
}

}  // namespace degen

#include "degen/graphs.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "degen/checked.hpp"
#include "degen/errors.hpp"

namespace degen {

std::size_t WeightedGraph::roots_at(std::size_t v) const {
    return static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [v](const Root& r) { return r.vertex == v; }));
}

std::size_t WeightedGraph::legs_at(std::size_t v) const {
    return static_cast<std::size_t>(std::count_if(legs.begin(), legs.end(), [v](const Leg& l) { return l.vertex == v; }));
}

int genus_of(const AdmissibleTriple& t) {
    int total = static_cast<int>(t.root_count()) + 1 - static_cast<int>(t.vertex_count());
    for (const auto* g : {&t.gamma1, &t.gamma2})
        for (const auto& v : g->vertices) total += v.genus;
    return total;
}

LatticeVector total_class(const WeightedGraph& g) {
    LatticeVector sum = LatticeVector::zero(g.rank);
    for (const auto& v : g.vertices) sum = sum + v.cls;
    return sum;
}

Int h_degree_of(const AdmissibleTriple& t, const AmpleData& amp) {
    return checked_add(amp.H1.pair(total_class(t.gamma1)), amp.H2.pair(total_class(t.gamma2)));
}

Int multiplicity(const AdmissibleTriple& t) {
    Int m = 1;
    for (const auto& r : t.gamma1.roots) m = checked_mul(m, r.weight);
    return m;
}

bool is_stable_vertex(const WeightedGraph& g, std::size_t v) {
    const Vertex& vert = g.vertices[v];
    if (!vert.cls.is_zero()) return true;
    return 2 * vert.genus - 2 + static_cast<int>(g.roots_at(v) + g.legs_at(v)) > 0;
}

namespace {

void check_graph(const WeightedGraph& g, Side expected, const BlowupGeometry& geom, Stability stability,
                 std::vector<Violation>& out) {
    std::string name = std::string(side_name(expected));
    auto add = [&](const char* clause, std::string detail) { out.push_back({clause, name + ": " + std::move(detail)}); };

    if (g.side != expected) add("side mismatch", "graph is tagged for the other side");
    const ConeModel& cone = geom.cone(expected);
    if (g.rank != cone.rank()) {
        add("rank mismatch", "graph rank " + std::to_string(g.rank) + ", lattice rank " + std::to_string(cone.rank()));
        return;
    }
    bool indices_ok = true;
    for (std::size_t i = 0; i < g.roots.size(); ++i) {
        if (g.roots[i].vertex >= g.vertices.size()) {
            add("root vertex out of range", "root " + std::to_string(i + 1));
            indices_ok = false;
        }
        if (g.roots[i].weight < 1) add("root weight", "root " + std::to_string(i + 1) + " has weight < 1");
    }
    for (const auto& leg : g.legs)
        if (leg.vertex >= g.vertices.size()) {
            add("leg vertex out of range", "leg " + std::to_string(leg.label));
            indices_ok = false;
        }
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const Vertex& vert = g.vertices[v];
        if (vert.genus < 0) add("negative genus", "vertex " + std::to_string(v));
        if (vert.cls.rank() != cone.rank()) {
            add("rank mismatch", "vertex " + std::to_string(v) + " class rank");
            continue;
        }
        if (!cone_contains(cone, vert.cls))
            add("class not effective", "vertex " + std::to_string(v) + " class " + vert.cls.to_string());
    }
    if (!indices_ok) return;

    if (g.vertices.size() != 1)
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            if (g.roots_at(v) == 0) {
                add("relative connectedness", "vertex " + std::to_string(v) + " has no root");
                break;
            }
    if (stability == Stability::contracted_components)
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            if (g.vertices[v].cls.rank() == cone.rank() && !is_stable_vertex(g, v))
                add("stability", "contracted vertex " + std::to_string(v) + " is unstable");
}

bool glued_connected(const AdmissibleTriple& t) {
    const std::size_t n1 = t.gamma1.vertices.size();
    const std::size_t n = t.vertex_count();
    if (n == 0) return false;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < t.root_count(); ++i)
        parent[find(t.gamma1.roots[i].vertex)] = find(n1 + t.gamma2.roots[i].vertex);
    std::size_t root = find(0);
    for (std::size_t v = 1; v < n; ++v)
        if (find(v) != root) return false;
    return true;
}

WeightedGraph normalized_graph(const WeightedGraph& g) {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    const std::size_t n = g.vertices.size();
    std::vector<std::size_t> first_root(n, none), first_leg(n, none);
    for (std::size_t i = 0; i < g.roots.size(); ++i) {
        auto v = g.roots[i].vertex;
        if (v < n) first_root[v] = std::min(first_root[v], i);
    }
    for (const auto& leg : g.legs)
        if (leg.vertex < n) first_leg[leg.vertex] = std::min(first_leg[leg.vertex], static_cast<std::size_t>(leg.label));

    // Rooted vertices are told apart by their first root, leg-carrying ones
    // by their first leg; two vertices tying on everything are identical.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(first_root[a], first_leg[a], g.vertices[a].genus, g.vertices[a].cls) <
               std::tie(first_root[b], first_leg[b], g.vertices[b].genus, g.vertices[b].cls);
    });
    std::vector<std::size_t> new_index(n);
    for (std::size_t i = 0; i < n; ++i) new_index[order[i]] = i;

    WeightedGraph out{g.side, g.rank, {}, g.roots, g.legs};
    for (std::size_t i = 0; i < n; ++i) out.vertices.push_back(g.vertices[order[i]]);
    for (auto& r : out.roots)
        if (r.vertex < n) r.vertex = new_index[r.vertex];
    for (auto& l : out.legs)
        if (l.vertex < n) l.vertex = new_index[l.vertex];
    std::sort(out.legs.begin(), out.legs.end(),
              [](const Leg& a, const Leg& b) { return std::tie(a.label, a.vertex) < std::tie(b.label, b.vertex); });
    return out;
}

void serialize_graph(const WeightedGraph& g, std::string& out) {
    out += side_name(g.side);
    out += "{V";
    for (const auto& v : g.vertices) out += "[" + std::to_string(v.genus) + ":" + v.cls.to_string() + "]";
    out += "R";
    for (const auto& r : g.roots) out += "[" + std::to_string(r.vertex) + "*" + std::to_string(r.weight) + "]";
    out += "L";
    for (const auto& l : g.legs) out += "[" + std::to_string(l.label) + "@" + std::to_string(l.vertex) + "]";
    out += "}";
}

}  // namespace

std::vector<Violation> validate_triple(const AdmissibleTriple& t, const BlowupGeometry& geom, int g, int k,
                                       Stability stability) {
    std::vector<Violation> out;
    check_graph(t.gamma1, Side::Y1, geom, stability, out);
    check_graph(t.gamma2, Side::Y2, geom, stability, out);
    if (!out.empty()) return out;

    const std::size_t r = t.gamma1.roots.size();
    if (t.gamma2.roots.size() != r) {
        out.push_back({"root count mismatch", std::to_string(r) + " vs " + std::to_string(t.gamma2.roots.size())});
    } else {
        for (std::size_t i = 0; i < r; ++i)
            if (t.gamma1.roots[i].weight != t.gamma2.roots[i].weight) {
                out.push_back({"root weight mismatch", "root " + std::to_string(i + 1) + ": " +
                                                           std::to_string(t.gamma1.roots[i].weight) + " vs " +
                                                           std::to_string(t.gamma2.roots[i].weight)});
                break;
            }
        if (!glued_connected(t)) out.push_back({"glued connectivity", "glued graph is not connected"});
    }

    std::vector<int> labels;
    for (const auto& l : t.gamma1.legs) labels.push_back(l.label);
    std::vector<int> mine = labels;
    for (const auto& l : t.gamma2.legs) labels.push_back(l.label);
    std::sort(labels.begin(), labels.end());
    std::vector<int> expected(static_cast<std::size_t>(std::max(k, 0)));
    std::iota(expected.begin(), expected.end(), 1);
    if (labels != expected) out.push_back({"leg partition", "leg labels must be exactly 1.." + std::to_string(k)});
    std::sort(mine.begin(), mine.end());
    if (mine != t.I) out.push_back({"I mismatch", "I must list exactly the leg labels of Gamma1"});

    if (int genus = genus_of(t); genus != g)
        out.push_back({"genus mismatch", "g(eta) = " + std::to_string(genus) + ", expected " + std::to_string(g)});
    return out;
}

AdmissibleTriple normalized(const AdmissibleTriple& t) {
    AdmissibleTriple out{normalized_graph(t.gamma1), normalized_graph(t.gamma2), t.I};
    std::sort(out.I.begin(), out.I.end());
    return out;
}

std::string labeled_key(const AdmissibleTriple& t) {
    AdmissibleTriple n = normalized(t);
    std::string out;
    serialize_graph(n.gamma1, out);
    serialize_graph(n.gamma2, out);
    out += "I[";
    for (std::size_t i = 0; i < n.I.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(n.I[i]);
    }
    out += "]";
    return out;
}

AdmissibleTriple permute_roots(const AdmissibleTriple& t, std::span<const std::size_t> perm) {
    if (t.gamma1.roots.size() != perm.size() || t.gamma2.roots.size() != perm.size())
        throw InputError("root permutation needs both graphs to have " + std::to_string(perm.size()) + " roots");
    AdmissibleTriple out = t;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        out.gamma1.roots[i] = t.gamma1.roots[perm[i]];
        out.gamma2.roots[i] = t.gamma2.roots[perm[i]];
    }
    return out;
}

namespace {

template <class Visit>
void for_each_root_permutation(const AdmissibleTriple& t, Visit&& visit) {
    std::vector<std::size_t> perm(t.root_count());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        visit(permute_roots(t, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

TripleKey canonical_key(const AdmissibleTriple& t) {
    std::string best;
    bool first = true;
    for_each_root_permutation(t, [&](const AdmissibleTriple& p) {
        std::string key = labeled_key(p);
        if (first || key < best) best = std::move(key);
        first = false;
    });
    return {best};
}

AdmissibleTriple canonical_representative(const AdmissibleTriple& t) {
    std::string best;
    AdmissibleTriple rep;
    bool first = true;
    for_each_root_permutation(t, [&](const AdmissibleTriple& p) {
        std::string key = labeled_key(p);
        if (first || key < best) {
            best = std::move(key);
            rep = normalized(p);
        }
        first = false;
    });
    return rep;
}

Int symmetry_order(const AdmissibleTriple& t) {
    const std::string self = labeled_key(t);
    Int count = 0;
    for_each_root_permutation(t, [&](const AdmissibleTriple& p) {
        if (labeled_key(p) == self) ++count;
    });
    return count;
}

}  // namespace degen

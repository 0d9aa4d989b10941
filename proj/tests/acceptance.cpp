// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "degen/enumeration.hpp"
#include "degen/errors.hpp"
#include "degen/formula.hpp"
#include "degen/geometry.hpp"
#include "degen/graphs.hpp"
#include "degen/oracle.hpp"

using namespace degen;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

const std::array<const char*, 2> kPresets = {"p2-point", "p3-line"};
const std::array<int, 3> kSmall = {0, 1, 2};

std::set<TripleKey> key_set(const std::vector<AdmissibleTriple>& ts) {
    std::set<TripleKey> out;
    for (const auto& t : ts) out.insert(canonical_key(t));
    return out;
}

std::vector<AdmissibleTriple> engine(const BlowupGeometry& geom, int g, int k, Int b, Int c) {
    return enumerate_triples(EnumerationRequest::for_class(g, k, LatticeVector{b}, ample_from_scale(geom, c)), geom);
}

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
    Outcome o;
    const auto geom = preset_geometry("p2-point");
    int points = 0;
    for (int g : kSmall)
        for (int k : kSmall)
            for (Int b : {0, 1, 2}) {
                auto mine = key_set(engine(geom, g, k, b, 2));
                std::set<TripleKey> theirs;
                try {
                    theirs = key_set(oracle_enumerate(g, k, LatticeVector{b}, geom, OracleBounds{}));
                } catch (const Error& e) {
                    o.pass = false;
                    o.detail += " oracle refused (" + std::to_string(g) + "," + std::to_string(k) + "," +
                                std::to_string(b) + "l): " + e.what() + ";";
                    continue;
                }
                ++points;
                if (mine != theirs) {
                    o.pass = false;
                    o.detail += " mismatch at (" + std::to_string(g) + "," + std::to_string(k) + "," +
                                std::to_string(b) + "l): engine " + std::to_string(mine.size()) + ", oracle " +
                                std::to_string(theirs.size()) + ";";
                }
            }
    auto n00 = key_set(engine(geom, 0, 0, 1, 2)).size();
    auto n01 = key_set(engine(geom, 0, 1, 1, 2)).size();
    if (n00 != 2 || n01 != 3) o.pass = false;
    o.detail = std::to_string(points) + "/27 grid points agree; |classes(0,0;l)|=" + std::to_string(n00) +
               " |classes(0,1;l)|=" + std::to_string(n01) + o.detail;
    return o;
}

Outcome h_independence() {
    Outcome o;
    int runs = 0;
    for (const char* name : kPresets) {
        const auto geom = preset_geometry(name);
        std::vector<AmpleData> amples;
        for (Int c : {2, 3, 5, 7}) amples.push_back(ample_from_scale(geom, c));
        for (int g : kSmall)
            for (int k : kSmall)
                for (Int b : {0, 1, 2}) {
                    auto rep = check_h_independence(g, k, LatticeVector{b}, geom, amples);
                    ++runs;
                    if (!rep.identical) {
                        o.pass = false;
                        o.detail += std::string(" ") + name + " (" + std::to_string(g) + "," + std::to_string(k) +
                                    "," + std::to_string(b) + "l) differs;";
                    }
                }
    }
    o.detail = std::to_string(runs) + " runs over c in {2,3,5,7}" + o.detail;
    return o;
}

Outcome degree_partition() {
    Outcome o;
    const auto geom = preset_geometry("p2-point");
    const auto amp = ample_from_scale(geom, 2);
    for (Int d = 0; d <= 4; ++d) {
        // C_(H,d) by scanning a coordinate window independently of the slice code.
        std::set<LatticeVector> expected_classes;
        for (Int b = -12; b <= 12; ++b)
            if (cone_contains(geom.ne_X, LatticeVector{b}) && amp.L.pair(LatticeVector{b}) == d)
                expected_classes.insert(LatticeVector{b});
        for (int g : kSmall)
            for (int k : kSmall) {
                auto parts = enumerate_by_degree(EnumerationRequest::for_degree(g, k, d, amp), geom);
                std::set<LatticeVector> got_classes;
                std::multiset<std::string> flat, united;
                for (const auto& [beta, ts] : parts) {
                    got_classes.insert(beta);
                    for (const auto& t : ts) flat.insert(labeled_key(t));
                }
                for (const auto& beta : expected_classes)
                    for (const auto& t : enumerate_triples(EnumerationRequest::for_class(g, k, beta, amp), geom))
                        united.insert(labeled_key(t));
                if (got_classes != expected_classes || flat != united) {
                    o.pass = false;
                    o.detail += " d=" + std::to_string(d) + " (" + std::to_string(g) + "," + std::to_string(k) +
                                ") differs;";
                }
            }
        o.detail = (d ? o.detail + " " : o.detail) + "d=" + std::to_string(d) + ":" +
                   std::to_string(expected_classes.size()) + " class(es)";
    }
    return o;
}

// Runs body over every emitted triple of both presets on the small grid,
// for c = 2 and c = 3, plus the g=0,k=0 runs up to 4l.
void for_each_emitted(const std::function<void(const BlowupGeometry&, const AmpleData&, const LatticeVector&, int,
                                               const AdmissibleTriple&)>& body) {
    for (const char* name : kPresets) {
        const auto geom = preset_geometry(name);
        for (Int c : {2, 3}) {
            const auto amp = ample_from_scale(geom, c);
            auto run = [&](int g, int k, Int b) {
                LatticeVector beta{b};
                for (const auto& t : enumerate_triples(EnumerationRequest::for_class(g, k, beta, amp), geom))
                    body(geom, amp, beta, g, t);
            };
            for (int g : kSmall)
                for (int k : kSmall)
                    for (Int b : {0, 1, 2}) run(g, k, b);
            for (Int b : {3, 4}) run(0, 0, b);
        }
    }
}

Outcome matching_and_degree() {
    Outcome o;
    long count = 0, bad = 0;
    for_each_emitted([&](const BlowupGeometry& geom, const AmpleData& amp, const LatticeVector& beta, int,
                         const AdmissibleTriple& t) {
        ++count;
        LatticeVector b1 = LatticeVector::zero(geom.n1_Y1()), b2 = LatticeVector::zero(geom.n1_Y2());
        for (const auto& v : t.gamma1.vertices) b1 = b1 + v.cls;
        for (const auto& v : t.gamma2.vertices) b2 = b2 + v.cls;
        Int mu = 0;
        for (const auto& r : t.gamma1.roots) mu += r.weight;
        bool ok = geom.e_pair_Y1.pair(b1) == mu && geom.e_pair_Y2.pair(b2) == mu &&
                  amp.H1.pair(b1) + amp.H2.pair(b2) == amp.L.pair(beta) &&
                  geom.p1_push.apply(b1) + geom.p2_push.apply(b2) == beta;
        if (!ok) {
            ++bad;
            if (bad <= 3) o.detail += " violated by " + labeled_key(t) + ";";
        }
    });
    o.pass = bad == 0 && count > 0;
    o.detail = std::to_string(count - bad) + "/" + std::to_string(count) + " triples" + o.detail;
    return o;
}

Outcome genus_function() {
    Outcome o;
    long count = 0, bad = 0;
    for_each_emitted([&](const BlowupGeometry&, const AmpleData&, const LatticeVector&, int g,
                         const AdmissibleTriple& t) {
        ++count;
        int total = static_cast<int>(t.gamma1.roots.size()) + 1 -
                    static_cast<int>(t.gamma1.vertices.size() + t.gamma2.vertices.size());
        for (const auto& v : t.gamma1.vertices) total += v.genus;
        for (const auto& v : t.gamma2.vertices) total += v.genus;
        if (total != g) {
            ++bad;
            if (bad <= 3) o.detail += " violated by " + labeled_key(t) + ";";
        }
    });
    o.pass = bad == 0 && count > 0;
    o.detail = std::to_string(count - bad) + "/" + std::to_string(count) + " triples" + o.detail;
    return o;
}

// Equal up to relabeling the vertices of each side, by trying every relabeling.
bool isomorphic(const AdmissibleTriple& a, const AdmissibleTriple& b) {
    if (a.I != b.I) return false;
    auto side_iso = [](const WeightedGraph& x, const WeightedGraph& y) {
        if (x.vertices.size() != y.vertices.size() || x.roots.size() != y.roots.size() || x.legs.size() != y.legs.size())
            return std::vector<std::vector<std::size_t>>{};
        std::vector<std::vector<std::size_t>> maps;
        std::vector<std::size_t> p(x.vertices.size());
        std::iota(p.begin(), p.end(), std::size_t{0});
        do {
            bool ok = true;
            for (std::size_t i = 0; ok && i < p.size(); ++i) ok = x.vertices[i] == y.vertices[p[i]];
            for (std::size_t i = 0; ok && i < x.roots.size(); ++i)
                ok = x.roots[i].weight == y.roots[i].weight && p[x.roots[i].vertex] == y.roots[i].vertex;
            std::set<std::pair<int, std::size_t>> lx, ly;
            for (const auto& l : x.legs) lx.insert({l.label, p[l.vertex]});
            for (const auto& l : y.legs) ly.insert({l.label, l.vertex});
            if (ok && lx == ly) maps.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return maps;
    };
    return !side_iso(a.gamma1, b.gamma1).empty() && !side_iso(a.gamma2, b.gamma2).empty();
}

Outcome coefficient_identities() {
    Outcome o;
    long classes = 0, bad = 0;
    std::size_t max_r = 0;
    for (const char* name : kPresets) {
        const auto geom = preset_geometry(name);
        const auto amp = ample_from_scale(geom, 2);
        auto run = [&](int g, int k, Int b) {
            auto cls = reduce_to_classes(
                enumerate_triples(EnumerationRequest::for_class(g, k, LatticeVector{b}, amp), geom));
            auto terms = build_formula(cls, geom);
            for (std::size_t i = 0; i < cls.size(); ++i) {
                const auto& t = cls[i].representative;
                const std::size_t r = t.root_count();
                if (r > 4) continue;
                ++classes;
                max_r = std::max(max_r, r);
                Int m = 1;
                for (const auto& root : t.gamma1.roots) m *= root.weight;
                std::vector<std::size_t> perm(r);
                std::iota(perm.begin(), perm.end(), std::size_t{0});
                Int stab = 0;
                do {
                    AdmissibleTriple p = t;
                    for (std::size_t j = 0; j < r; ++j) {
                        p.gamma1.roots[j] = t.gamma1.roots[perm[j]];
                        p.gamma2.roots[j] = t.gamma2.roots[perm[j]];
                    }
                    if (isomorphic(p, t)) ++stab;
                } while (std::next_permutation(perm.begin(), perm.end()));
                Int gcd = std::gcd(m, stab);
                const auto& q = terms[i].coeff;
                bool ok = cls[i].multiplicity == m && cls[i].symmetry == stab && q.num == m / gcd &&
                          q.den == stab / gcd && q.orig_num == m && q.orig_den == stab;
                if (!ok) {
                    ++bad;
                    if (bad <= 3) o.detail += " wrong for " + cls[i].key.text + ";";
                }
            }
        };
        for (int g : kSmall)
            for (int k : kSmall)
                for (Int b : {0, 1, 2}) run(g, k, b);
        for (Int b : {3, 4}) run(0, 0, b);
    }
    o.pass = bad == 0 && classes > 0;
    o.detail = std::to_string(classes - bad) + "/" + std::to_string(classes) + " classes, r up to " +
               std::to_string(max_r) + o.detail;
    return o;
}

Outcome geometry_invariants() {
    Outcome o;
    for (const char* name : kPresets) {
        try {
            const auto geom = preset_geometry(name);
            Int e1 = geom.e_pair_Y1.pair(geom.gamma_Y1), e2 = geom.e_pair_Y2.pair(geom.gamma_Y2);
            const auto amp = ample_from_scale(geom, 2);
            Int h2 = amp.H2.pair(geom.gamma_Y2);
            bool ok = e1 == -1 && e2 == 1 && geom.p1_push.apply(geom.gamma_Y1).is_zero() &&
                      geom.p2_push.apply(geom.gamma_Y2).is_zero() && h2 == 1;
            o.pass = o.pass && ok;
            o.detail += std::string(o.detail.empty() ? "" : "; ") + name + ": E.gamma = " + std::to_string(e1) +
                        " / +" + std::to_string(e2) + ", H2.gamma = " + std::to_string(h2) + " at c=2";
        } catch (const Error& e) {
            o.pass = false;
            o.detail += std::string(" ") + name + " failed to load: " + e.what();
        }
    }
    return o;
}

// The literal display conditions, with ray bases computed here.
struct Literal {
    bool apex = false;
    bool non_apex = false;
};

Literal literal_both_sides(const BlowupGeometry& geom, const LatticeVector& b1, const LatticeVector& b2, Int mu) {
    auto check = [&](RayDecomposition r1, RayDecomposition r2) {
        return r1.steps + r2.steps == geom.e_pair_Y1.pair(r1.base) && mu == r2.steps;
    };
    auto shift = [](RayDecomposition r, const LatticeVector& v, const LatticeVector& gamma) {
        if (r.base.is_zero() && !v.is_zero()) return RayDecomposition{gamma, r.steps - 1};
        return r;
    };
    auto r1 = ray_decompose(geom.ne_Y1, b1, geom.gamma_Y1);
    auto r2 = ray_decompose(geom.ne_Y2, b2, geom.gamma_Y2);
    return {check(r1, r2), check(shift(r1, b1, geom.gamma_Y1), shift(r2, b2, geom.gamma_Y2))};
}

Outcome display_conformance() {
    Outcome o;
    // p3-line: every emitted triple with both sides nonempty.
    {
        const auto geom = preset_geometry("p3-line");
        const auto amp = ample_from_scale(geom, 2);
        long count = 0, bad = 0;
        std::set<std::string> failures;
        for (int g : kSmall)
            for (int k : kSmall)
                for (Int b : {0, 1, 2})
                    for (const auto& t :
                         enumerate_triples(EnumerationRequest::for_class(g, k, LatticeVector{b}, amp), geom)) {
                        if (t.gamma1.vertices.empty() || t.gamma2.vertices.empty()) continue;
                        ++count;
                        auto b1 = total_class(t.gamma1), b2 = total_class(t.gamma2);
                        Int mu = 0;
                        for (const auto& r : t.gamma1.roots) mu += r.weight;
                        auto lit = literal_both_sides(geom, b1, b2, mu);
                        if (!lit.apex && !lit.non_apex) {
                            ++bad;
                            failures.insert("b1=" + symbolic_class(b1, geom.basis_Y1) +
                                            " b2=" + symbolic_class(b2, geom.basis_Y2) + " mu=" + std::to_string(mu));
                        }
                    }
        if (bad) o.pass = false;
        o.detail = "p3-line " + std::to_string(count - bad) + "/" + std::to_string(count) +
                   " two-sided triples meet the literal conditions";
        for (const auto& f : failures) o.detail += "; fails at " + f;
    }
    // p2-point: the conventions must be seen to disagree, and the engine's
    // per-splitting report must agree with the computation above.
    {
        const auto geom = preset_geometry("p2-point");
        const auto amp = ample_from_scale(geom, 2);
        std::set<std::string> diverging;
        long mismatched_reports = 0;
        for (Int b : {0, 1, 2}) {
            auto req = EnumerationRequest::for_class(0, 0, LatticeVector{b}, amp);
            for (const auto& s : enumerate_splittings(req, geom)) {
                if (s.display.line != DisplayConformance::Line::both_sides) continue;
                auto lit = literal_both_sides(geom, s.b1, s.b2, s.mu);
                if (lit.apex != s.display.literal_apex || lit.non_apex != s.display.literal_non_apex)
                    ++mismatched_reports;
                bool index_apex = !ray_decompose(geom.ne_Y1, s.b1, geom.gamma_Y1).base.is_zero() &&
                                  !ray_decompose(geom.ne_Y2, s.b2, geom.gamma_Y2).base.is_zero();
                // Divergence: the only convention meeting the weight equation
                // puts the splitting outside line 1's index.
                if (lit.apex != lit.non_apex || (lit.apex && !index_apex))
                    diverging.insert("b1=" + symbolic_class(s.b1, geom.basis_Y1) +
                                     " b2=" + symbolic_class(s.b2, geom.basis_Y2) + " (" +
                                     std::string(to_string(s.display.match)) + ")");
            }
        }
        bool detected = !diverging.empty() && mismatched_reports == 0;
        if (!detected) o.pass = false;
        o.detail += "; p2-point divergence " + std::string(detected ? "detected" : "NOT detected") + " at";
        for (const auto& d : diverging) o.detail += " " + d;
        if (mismatched_reports) o.detail += "; engine report disagrees " + std::to_string(mismatched_reports) + "x";
    }
    return o;
}

#ifndef DEGEN_CLI_PATH
#error "DEGEN_CLI_PATH must name the CLI executable"
#endif

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = std::string("\"") + DEGEN_CLI_PATH + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

Outcome cli_determinism() {
    Outcome o;
    struct Case {
        std::string args;
        int status;
        std::function<bool(const std::string&)> expect;
    };
    auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
    const std::vector<Case> cases = {
        {"enumerate --preset p2-point --g 0 --k 0 --beta 1 --ample 2 --format summary", 0,
         [&](const std::string& s) { return lines(s) == 2; }},
        {"check-h --preset p2-point --g 0 --k 1 --beta 1 --ample 2 --ample 3 --ample 5", 0,
         [](const std::string& s) { return s.rfind("identical\n", 0) == 0; }},
        {"enumerate --preset p2-point --g 0 --k 0 --beta -1 --ample 2", 0,
         [](const std::string& s) { return s.find("\"terms\": []") != std::string::npos; }},
        {"enumerate --preset p3-line --g 1 --k 2 --beta 2 --ample 3 --format latex --workers 4", 0,
         [](const std::string& s) { return !s.empty(); }},
        {"by-degree --preset p2-point --g 0 --k 1 --d 4 --ample 2", 0, [](const std::string& s) { return !s.empty(); }},
    };
    int good = 0;
    for (const auto& c : cases) {
        auto a = run_cli(c.args), b = run_cli(c.args);
        bool ok = a.status == c.status && b.status == c.status && a.out == b.out && c.expect(a.out);
        if (ok)
            ++good;
        else
            o.detail += "; differs or unexpected: " + c.args;
    }
    o.pass = good == static_cast<int>(cases.size());
    o.detail = std::to_string(good) + "/" + std::to_string(cases.size()) + " commands byte-identical" + o.detail;
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"oracle equivalence", oracle_equivalence},
        {"H-independence", h_independence},
        {"degree partition", degree_partition},
        {"matching and degree identities", matching_and_degree},
        {"genus function", genus_function},
        {"coefficient identities", coefficient_identities},
        {"geometry invariants", geometry_invariants},
        {"coproduct display conformance", display_conformance},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first << "): " << o.detail
             << " [" << secs << "s]";
        std::cout << line.str() << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed ? 1 : 0;
}

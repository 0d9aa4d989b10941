#include <sstream>

#include "degen/errors.hpp"
#include "degen/formula.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"

using namespace degen;

namespace {

FormulaDocument document_for(const char* preset, int g, int k, Int b, Int c = 2) {
    auto geom = preset_geometry(preset);
    auto classes = reduce_to_classes(fixtures::run(geom, g, k, b, c));
    return make_document(geom, {g, k, LatticeVector{b}, std::nullopt, {c}}, build_formula(classes, geom));
}

TripleClass class_of(const AdmissibleTriple& t) {
    auto cls = reduce_to_classes({t});
    REQUIRE(cls.size() == 1);
    return cls[0];
}

}  // namespace

TEST_CASE("rationals") {
    auto half = Rational::of(1, 2);
    CHECK(half.to_string() == "1/2");
    auto q = Rational::of(4, -6);
    CHECK(q.num == -2);
    CHECK(q.den == 3);
    CHECK(q.orig_num == 4);
    CHECK(q.orig_den == -6);
    CHECK(Rational::of(6, 1).to_string() == "6");
    CHECK(Rational::of(6, 3).is_integer());
    CHECK_THROWS_AS(Rational::of(1, 0), InputError);
}

TEST_CASE("symbolic classes use the basis labels") {
    std::vector<std::string> b{"s", "e"};
    CHECK(symbolic_class(LatticeVector{1, 0}, b) == "s");
    CHECK(symbolic_class(LatticeVector{1, -1}, b) == "s-e");
    CHECK(symbolic_class(LatticeVector{2, 3}, b) == "2s+3e");
    CHECK(symbolic_class(LatticeVector{0, -2}, b) == "-2e");
    CHECK(symbolic_class(LatticeVector{0, 0}, b) == "0");
    CHECK_THROWS_AS(symbolic_class(LatticeVector{1}, b), InputError);
}

TEST_CASE("terms for (0,0,l) on p2-point") {
    auto doc = document_for("p2-point", 0, 0, 1);
    REQUIRE(doc.terms.size() == 2);
    for (const auto& t : doc.terms) {
        CHECK(t.coeff == Rational::of(1, 1));
        CHECK(t.beta == LatticeVector{1});
        CHECK(t.psi1.r == t.r());
    }
    auto summary = emit(doc, Format::summary);
    CHECK(summary == "coeff=1 r=1 b(Γ₁)=s b(Γ₂)=gamma beta=l\ncoeff=1 r=0 b(Γ₁)=s+e b(Γ₂)=0 beta=l\n");
}

TEST_CASE("coefficients from weights and symmetry") {
    auto geom = preset_geometry("p2-point");
    using fixtures::graph;
    auto w23 = fixtures::triple(graph(Side::Y1, 2, {{0, {5, 0}}}, {{0, 2}, {0, 3}}),
                                graph(Side::Y2, 1, {{0, {2}}, {0, {3}}}, {{0, 2}, {1, 3}}));
    auto terms = build_formula({class_of(w23)}, geom);
    CHECK(terms[0].coeff.to_string() == "6");

    auto w11 = fixtures::triple(graph(Side::Y1, 2, {{0, {2, 0}}}, {{0, 1}, {0, 1}}),
                                graph(Side::Y2, 1, {{0, {2}}}, {{0, 1}, {0, 1}}));
    terms = build_formula({class_of(w11)}, geom);
    CHECK(terms[0].symmetry == 2);
    CHECK(terms[0].coeff.to_string() == "1/2");

    auto doc = make_document(geom, {0, 0, LatticeVector{5}, std::nullopt, {2}}, build_formula({class_of(w23)}, geom));
    auto tex = emit(doc, Format::latex);
    CHECK(tex.find("6 \\sum") != std::string::npos);
    auto half = make_document(geom, {0, 0, LatticeVector{2}, std::nullopt, {2}}, build_formula({class_of(w11)}, geom));
    CHECK(emit(half, Format::latex).find("\\frac{1}{2}") != std::string::npos);
}

TEST_CASE("empty term list") {
    auto doc = document_for("p2-point", 0, 0, -1);
    CHECK(doc.terms.empty());
    auto j = nlohmann::json::parse(emit(doc, Format::machine));
    CHECK(j["schema_version"] == 1);
    CHECK(j["geometry_label"] == "p2-point");
    CHECK(j["terms"].empty());
    CHECK(j["request"]["beta"] == nlohmann::json::array({-1}));
    CHECK(j["request"]["g"] == 0);
    CHECK(j["basis"]["X"] == nlohmann::json::array({"l"}));
    CHECK(emit(doc, Format::summary).empty());
    CHECK(emit(doc, Format::latex).find("= 0") != std::string::npos);
}

TEST_CASE("machine schema") {
    auto doc = document_for("p3-line", 0, 1, 2);
    auto j = nlohmann::json::parse(emit(doc, "machine"));
    REQUIRE(j["terms"].size() == doc.terms.size());
    for (const auto& t : j["terms"]) {
        CHECK(t["coeff"].contains("num"));
        CHECK(t["coeff"].contains("den"));
        CHECK(t["gamma1"].contains("vertices"));
        CHECK(t["gamma1"].contains("roots"));
        CHECK(t["gamma2"].contains("legs"));
        auto I = t["I"].get<std::vector<int>>();
        CHECK(std::is_sorted(I.begin(), I.end()));
    }
}

TEST_CASE("machine output round trips") {
    for (const char* preset : {"p2-point", "p3-line"})
        for (int k = 0; k <= 2; ++k) {
            auto doc = document_for(preset, 1, k, 2, 3);
            auto back = parse_machine(emit(doc, Format::machine));
            CHECK(back == doc);
            CHECK(emit(back, Format::machine) == emit(doc, Format::machine));
        }
    FormulaDocument by_degree = document_for("p2-point", 0, 0, 1);
    by_degree.request.beta.reset();
    by_degree.request.d = 2;
    CHECK(parse_machine(emit(by_degree, Format::machine)) == by_degree);
}

TEST_CASE("malformed machine text") {
    CHECK_THROWS_AS(parse_machine("[1,2"), InputError);
    CHECK_THROWS_AS(parse_machine("{}"), InputError);
    auto text = emit(document_for("p2-point", 0, 0, 1), Format::machine);
    auto j = nlohmann::json::parse(text);
    j["terms"][0]["coeff"]["num"] = 7;
    CHECK_THROWS_AS(parse_machine(j.dump()), InputError);
    j = nlohmann::json::parse(text);
    j["schema_version"] = 99;
    CHECK_THROWS_AS(parse_machine(j.dump()), InputError);
}

TEST_CASE("formats") {
    auto doc = document_for("p2-point", 0, 1, 1);
    CHECK(parse_format("latex") == Format::latex);
    CHECK_THROWS_AS((parse_format("yaml")), InputError);
    CHECK_THROWS_AS((emit(doc, "html")), InputError);
    for (auto f : {Format::machine, Format::latex, Format::summary}) CHECK(emit(doc, f) == emit(doc, f));
    auto tex = emit(doc, Format::latex);
    CHECK(tex.find("\\begin{tabular}") != std::string::npos);
    CHECK(tex.find("\\Psi^{Y_1^{\\mathrm{rel}}}") != std::string::npos);
    auto both = doc;
    both.request.d = 2;
    CHECK_THROWS_AS((emit(both, Format::summary)), InputError);
}

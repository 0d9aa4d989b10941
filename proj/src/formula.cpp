#include "degen/formula.hpp"

#include <numeric>
#include <sstream>

#include "degen/checked.hpp"
#include "degen/errors.hpp"
#include "json.hpp"

namespace degen {

using json = nlohmann::ordered_json;

Rational Rational::of(Int num, Int den) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rational q{num, den, num, den};
    if (q.den < 0) {
        q.num = checked_sub(0, q.num);
        q.den = checked_sub(0, q.den);
    }
    Int g = std::gcd(q.num, q.den);
    if (g > 1) {
        q.num /= g;
        q.den /= g;
    }
    return q;
}

std::string Rational::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string symbolic_class(const LatticeVector& v, const std::vector<std::string>& basis) {
    if (basis.size() != v.rank()) throw InputError("class " + v.to_string() + " does not match the basis size");
    std::string out;
    for (std::size_t i = 0; i < v.rank(); ++i) {
        Int c = v[i];
        if (c == 0) continue;
        if (c < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        Int a = c < 0 ? -c : c;
        if (a != 1) out += std::to_string(a);
        out += basis[i];
    }
    return out.empty() ? "0" : out;
}

std::vector<FormulaTerm> build_formula(const std::vector<TripleClass>& classes, const BlowupGeometry& geom) {
    std::vector<FormulaTerm> out;
    out.reserve(classes.size());
    std::size_t index = 0;
    for (const auto& c : classes) {
        ++index;
        FormulaTerm t;
        t.eta = c.representative;
        t.key = c.key;
        t.beta = geom.p1_push.apply(total_class(t.eta.gamma1)) + geom.p2_push.apply(total_class(t.eta.gamma2));
        t.multiplicity = c.multiplicity;
        t.symmetry = c.symmetry;
        t.coeff = Rational::of(c.multiplicity, c.symmetry);
        const std::size_t r = t.eta.root_count();
        t.psi1 = {"Psi[Y1^rel;Gamma1#" + std::to_string(index) + "]", r};
        t.psi2 = {"Psi[Y2^rel;Gamma2#" + std::to_string(index) + "]", r};
        out.push_back(std::move(t));
    }
    return out;
}

FormulaDocument make_document(const BlowupGeometry& geom, FormulaRequest request, std::vector<FormulaTerm> terms) {
    FormulaDocument doc;
    doc.geometry_label = geom.label;
    doc.basis_X = geom.basis_X;
    doc.basis_Y1 = geom.basis_Y1;
    doc.basis_Y2 = geom.basis_Y2;
    doc.request = std::move(request);
    doc.terms = std::move(terms);
    return doc;
}

Format parse_format(std::string_view name) {
    if (name == "machine") return Format::machine;
    if (name == "latex") return Format::latex;
    if (name == "summary") return Format::summary;
    throw InputError("unknown format '" + std::string(name) + "' (expected machine, latex or summary)");
}

namespace {

// ---------------------------------------------------------------------------
// machine

json graph_json(const WeightedGraph& g) {
    json vertices = json::array(), roots = json::array(), legs = json::array();
    for (const auto& v : g.vertices) vertices.push_back({{"genus", v.genus}, {"class", v.cls.coords()}});
    for (const auto& r : g.roots) roots.push_back({{"vertex", r.vertex}, {"weight", r.weight}});
    for (const auto& l : g.legs) legs.push_back({{"vertex", l.vertex}, {"label", l.label}});
    return {{"vertices", vertices}, {"roots", roots}, {"legs", legs}};
}

json term_json(const FormulaTerm& t) {
    return {
        {"key", t.key.text},
        {"beta", t.beta.coords()},
        {"coeff", {{"num", t.coeff.num}, {"den", t.coeff.den}}},
        {"multiplicity", t.multiplicity},
        {"symmetry", t.symmetry},
        {"r", t.r()},
        {"gamma1", graph_json(t.eta.gamma1)},
        {"gamma2", graph_json(t.eta.gamma2)},
        {"I", t.eta.I},
        {"psi", {{"Y1", t.psi1.symbol}, {"Y2", t.psi2.symbol}, {"contact_rank", t.psi1.r}}},
    };
}

std::string emit_machine(const FormulaDocument& doc) {
    json request = {{"g", doc.request.g}, {"k", doc.request.k}};
    if (doc.request.beta) request["beta"] = doc.request.beta->coords();
    if (doc.request.d) request["d"] = *doc.request.d;
    request["ample"] = doc.request.ample_scales;

    json terms = json::array();
    for (const auto& t : doc.terms) terms.push_back(term_json(t));

    json out = {
        {"schema_version", doc.schema_version},
        {"geometry_label", doc.geometry_label},
        {"basis", {{"X", doc.basis_X}, {"Y1", doc.basis_Y1}, {"Y2", doc.basis_Y2}}},
        {"request", request},
        // Slots left for downstream substitution; the engine never evaluates them.
        {"slots",
         {{"inputs", json::array({"alpha", "zeta"})}, {"splitting_index", "K_eta"}, {"bracket", "[.]_0"}, {"contact_space", "E^r"}}},
        {"terms", terms},
    };
    return out.dump(2) + "\n";
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw InputError(std::string("machine format: missing field ") + name);
    return j.at(name);
}

template <class T>
T get_as(const json& j, const char* name) {
    try {
        return field(j, name).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("machine format: bad value for ") + name);
    }
}

WeightedGraph graph_from(const json& j, Side side, std::size_t rank) {
    WeightedGraph g{side, rank, {}, {}, {}};
    for (const auto& v : field(j, "vertices")) {
        LatticeVector cls(get_as<std::vector<Int>>(v, "class"));
        if (cls.rank() != rank) throw InputError("machine format: vertex class rank does not match the basis");
        g.vertices.push_back({get_as<int>(v, "genus"), std::move(cls)});
    }
    for (const auto& r : field(j, "roots")) g.roots.push_back({get_as<std::size_t>(r, "vertex"), get_as<int>(r, "weight")});
    for (const auto& l : field(j, "legs")) g.legs.push_back({get_as<std::size_t>(l, "vertex"), get_as<int>(l, "label")});
    return g;
}

// ---------------------------------------------------------------------------
// latex

std::string tex_label(const std::string& s) { return "\\mathrm{" + s + "}"; }

std::string tex_class(const LatticeVector& v, const std::vector<std::string>& basis) {
    std::vector<std::string> tex;
    for (const auto& b : basis) tex.push_back(tex_label(b));
    return symbolic_class(v, tex);
}

std::string tex_coeff(const Rational& q) {
    if (q.is_integer()) return q.num == 1 ? "" : std::to_string(q.num) + " ";
    std::string sign = q.num < 0 ? "-" : "";
    Int a = q.num < 0 ? -q.num : q.num;
    return sign + "\\frac{" + std::to_string(a) + "}{" + std::to_string(q.den) + "} ";
}

void tex_graph_table(std::ostringstream& os, const WeightedGraph& g, const std::vector<std::string>& basis) {
    os << "  " << side_name(g.side) << ": vertices";
    if (g.vertices.empty()) os << " (none)";
    os << "\n";
    os << "  \\begin{tabular}{c|c|c|c|c}\n";
    os << "  vertex & $g(v)$ & $b(v)$ & roots & legs \\\\ \\hline\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        std::string roots, legs;
        for (std::size_t i = 0; i < g.roots.size(); ++i)
            if (g.roots[i].vertex == v) {
                if (!roots.empty()) roots += ", ";
                roots += "$\\mu_{" + std::to_string(i + 1) + "}=" + std::to_string(g.roots[i].weight) + "$";
            }
        for (const auto& l : g.legs)
            if (l.vertex == v) {
                if (!legs.empty()) legs += ", ";
                legs += std::to_string(l.label);
            }
        os << "  " << v << " & " << g.vertices[v].genus << " & $" << tex_class(g.vertices[v].cls, basis) << "$ & "
           << (roots.empty() ? "--" : roots) << " & " << (legs.empty() ? "--" : legs) << " \\\\\n";
    }
    os << "  \\end{tabular}\n";
}

std::string emit_latex(const FormulaDocument& doc) {
    std::ostringstream os;
    const auto& req = doc.request;
    std::string target = req.beta ? tex_class(*req.beta, doc.basis_X) : "d=" + std::to_string(*req.d);
    os << "% geometry " << doc.geometry_label << ", N_1(X) basis (";
    for (std::size_t i = 0; i < doc.basis_X.size(); ++i) os << (i ? "," : "") << doc.basis_X[i];
    os << "), schema " << doc.schema_version << "\n";
    os << "\\[\n  \\langle \\alpha \\mid \\zeta \\rangle^{X}_{" << req.g << "," << req.k << "," << target << "}\n  = ";
    if (doc.terms.empty()) os << "0";
    for (std::size_t n = 0; n < doc.terms.size(); ++n) {
        const auto& t = doc.terms[n];
        const std::string idx = std::to_string(n + 1);
        if (n) os << "\n  + ";
        os << tex_coeff(t.coeff) << "\\sum_{j \\in K_{\\eta_{" << idx << "}}} \\Big[ \\Psi^{Y_1^{\\mathrm{rel}}}_{\\Gamma_1^{("
           << idx << ")}} \\cdot_{E^{" << t.r() << "}} \\Psi^{Y_2^{\\mathrm{rel}}}_{\\Gamma_2^{(" << idx << ")}} \\Big]_0";
    }
    os << "\n\\]\n";
    for (std::size_t n = 0; n < doc.terms.size(); ++n) {
        const auto& t = doc.terms[n];
        os << "\n% term " << (n + 1) << "\n";
        os << "$\\eta_{" << (n + 1) << "}$: $\\beta = " << tex_class(t.beta, doc.basis_X) << "$, $r = " << t.r()
           << "$, $m(\\eta) = " << t.multiplicity << "$, $|\\mathrm{Eq}(\\eta)| = " << t.symmetry
           << "$, coefficient $" << t.coeff.to_string() << "$, $I = \\{";
        for (std::size_t i = 0; i < t.eta.I.size(); ++i) os << (i ? "," : "") << t.eta.I[i];
        os << "\\}$\n";
        tex_graph_table(os, t.eta.gamma1, doc.basis_Y1);
        tex_graph_table(os, t.eta.gamma2, doc.basis_Y2);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// summary

std::string emit_summary(const FormulaDocument& doc) {
    std::ostringstream os;
    for (const auto& t : doc.terms) {
        os << "coeff=" << t.coeff.to_string() << " r=" << t.r()
           << " b(Γ₁)=" << symbolic_class(total_class(t.eta.gamma1), doc.basis_Y1)
           << " b(Γ₂)=" << symbolic_class(total_class(t.eta.gamma2), doc.basis_Y2)
           << " beta=" << symbolic_class(t.beta, doc.basis_X) << "\n";
    }
    return os.str();
}

}  // namespace

std::string emit(const FormulaDocument& doc, Format format) {
    if (doc.request.beta.has_value() == doc.request.d.has_value())
        throw InputError("formula request needs exactly one of beta and d");
    switch (format) {
        case Format::machine: return emit_machine(doc);
        case Format::latex: return emit_latex(doc);
        case Format::summary: return emit_summary(doc);
    }
    throw InputError("unknown format");
}

std::string emit(const FormulaDocument& doc, std::string_view format) { return emit(doc, parse_format(format)); }

FormulaDocument parse_machine(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("machine format: ") + e.what());
    }
    FormulaDocument doc;
    doc.schema_version = get_as<int>(j, "schema_version");
    if (doc.schema_version != FormulaDocument::kSchemaVersion)
        throw InputError("machine format: unsupported schema_version " + std::to_string(doc.schema_version));
    doc.geometry_label = get_as<std::string>(j, "geometry_label");
    const json& basis = field(j, "basis");
    doc.basis_X = get_as<std::vector<std::string>>(basis, "X");
    doc.basis_Y1 = get_as<std::vector<std::string>>(basis, "Y1");
    doc.basis_Y2 = get_as<std::vector<std::string>>(basis, "Y2");

    const json& req = field(j, "request");
    doc.request.g = get_as<int>(req, "g");
    doc.request.k = get_as<int>(req, "k");
    if (req.contains("beta")) doc.request.beta = LatticeVector(get_as<std::vector<Int>>(req, "beta"));
    if (req.contains("d")) doc.request.d = get_as<Int>(req, "d");
    if (doc.request.beta.has_value() == doc.request.d.has_value())
        throw InputError("machine format: request needs exactly one of beta and d");
    doc.request.ample_scales = get_as<std::vector<Int>>(req, "ample");

    for (const auto& tj : field(j, "terms")) {
        FormulaTerm t;
        t.key = {get_as<std::string>(tj, "key")};
        t.beta = LatticeVector(get_as<std::vector<Int>>(tj, "beta"));
        t.multiplicity = get_as<Int>(tj, "multiplicity");
        t.symmetry = get_as<Int>(tj, "symmetry");
        t.coeff = Rational::of(t.multiplicity, t.symmetry);
        const json& coeff = field(tj, "coeff");
        if (get_as<Int>(coeff, "num") != t.coeff.num || get_as<Int>(coeff, "den") != t.coeff.den)
            throw InputError("machine format: coeff does not equal multiplicity/symmetry");
        t.eta.gamma1 = graph_from(field(tj, "gamma1"), Side::Y1, doc.basis_Y1.size());
        t.eta.gamma2 = graph_from(field(tj, "gamma2"), Side::Y2, doc.basis_Y2.size());
        t.eta.I = get_as<std::vector<int>>(tj, "I");
        if (get_as<std::size_t>(tj, "r") != t.eta.root_count())
            throw InputError("machine format: r does not match the root list");
        const json& psi = field(tj, "psi");
        const std::size_t r = get_as<std::size_t>(psi, "contact_rank");
        t.psi1 = {get_as<std::string>(psi, "Y1"), r};
        t.psi2 = {get_as<std::string>(psi, "Y2"), r};
        doc.terms.push_back(std::move(t));
    }
    return doc;
}

}  // namespace degen

#include "degen/geometry.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "degen/errors.hpp"

namespace degen {

using nlohmann::json;

std::string_view side_name(Side side) { return side == Side::Y1 ? "Y1" : "Y2"; }

namespace {

// ---------------------------------------------------------------------------
// JSON reading with strict field checking

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) throw ValidationError("unknown_field", "unknown field " + path + key);
    }
}

const json& field(const json& obj, const std::string& path, const char* name) {
    if (!obj.is_object()) throw ValidationError("schema", path + " must be an object");
    auto it = obj.find(name);
    if (it == obj.end()) throw ValidationError("missing_field", "missing field " + path + name);
    return *it;
}

std::vector<Int> int_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError("schema", where + " must be an integer array");
    std::vector<Int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw ValidationError("schema", where + " must contain only integers");
        out.push_back(x.get<Int>());
    }
    return out;
}

std::vector<std::string> label_array(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ValidationError("schema", where + " must be a nonempty string array");
    std::vector<std::string> out;
    for (const auto& x : j) {
        if (!x.is_string()) throw ValidationError("schema", where + " must contain only strings");
        out.push_back(x.get<std::string>());
    }
    std::set<std::string> distinct(out.begin(), out.end());
    if (distinct.size() != out.size()) throw ValidationError("basis_labels", where + " has repeated labels");
    return out;
}

LatticeVector vector_of_rank(const json& j, std::size_t rank, const std::string& where, const char* code) {
    auto coords = int_array(j, where);
    if (coords.size() != rank)
        throw ValidationError(code, where + " has " + std::to_string(coords.size()) + " entries, rank is " +
                                        std::to_string(rank));
    return LatticeVector(std::move(coords));
}

LinearFunctional functional_of_rank(const json& j, std::size_t rank, const std::string& where, const char* code) {
    return LinearFunctional(vector_of_rank(j, rank, where, code).coords());
}

ConeModel read_cone(const json& j, std::size_t rank, const std::string& path, const std::string& side) {
    reject_unknown(j, path, {"generators", "grading"});
    const json& gens_json = field(j, path, "generators");
    if (!gens_json.is_array()) throw ValidationError("schema", path + "generators must be an array");
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i < gens_json.size(); ++i)
        gens.push_back(vector_of_rank(gens_json[i], rank, path + "generators[" + std::to_string(i) + "]",
                                      "rank_mismatch"));
    try {
        if (j.contains("grading"))
            return ConeModel(rank, std::move(gens),
                             functional_of_rank(j["grading"], rank, path + "grading", "rank_mismatch"));
        return ConeModel::with_found_grading(rank, std::move(gens));
    } catch (const ModelError& e) {
        throw ValidationError("cone_grading_" + side, "NE(" + side + "): " + e.what());
    }
}

LinearMap read_push(const json& j, std::size_t source_rank, std::size_t target_rank, const std::string& where) {
    if (!j.is_array() || j.size() != target_rank)
        throw ValidationError("rank_mismatch", where + " must have " + std::to_string(target_rank) +
                                                   " rows (the rank of N_1(X))");
    std::vector<std::vector<Int>> rows;
    for (std::size_t r = 0; r < j.size(); ++r) {
        auto row = int_array(j[r], where + "[" + std::to_string(r) + "]");
        if (row.size() != source_rank)
            throw ValidationError("rank_mismatch", where + "[" + std::to_string(r) + "] must have " +
                                                       std::to_string(source_rank) + " entries");
        rows.push_back(std::move(row));
    }
    return LinearMap::from_rows(source_rank, rows);
}

BlowupGeometry parse_geometry(const json& doc) {
    if (!doc.is_object()) throw ValidationError("schema", "geometry document must be a JSON object");
    reject_unknown(doc, "", {"label", "notes", "codim", "X", "Y1", "Y2", "reference_ample", "reference_lz_push"});

    BlowupGeometry g;
    const json& label = field(doc, "", "label");
    if (!label.is_string()) throw ValidationError("schema", "label must be a string");
    g.label = label.get<std::string>();
    if (doc.contains("notes") && !doc["notes"].is_string()) throw ValidationError("schema", "notes must be a string");

    const json& codim = field(doc, "", "codim");
    if (!codim.is_number_integer()) throw ValidationError("schema", "codim must be an integer");
    g.codim = codim.get<int>();

    const json& x = field(doc, "", "X");
    reject_unknown(x, "X.", {"basis", "cone"});
    g.basis_X = label_array(field(x, "X.", "basis"), "X.basis");
    g.ne_X = read_cone(field(x, "X.", "cone"), g.basis_X.size(), "X.cone.", "X");

    auto read_side = [&](const char* name, std::vector<std::string>& basis, ConeModel& cone, LinearMap& push,
                         LinearFunctional& e_pair, LatticeVector& gamma) {
        std::string path = std::string(name) + ".";
        const json& y = field(doc, "", name);
        reject_unknown(y, path, {"basis", "cone", "push", "e_pair", "gamma"});
        basis = label_array(field(y, path, "basis"), path + "basis");
        std::size_t rank = basis.size();
        cone = read_cone(field(y, path, "cone"), rank, path + "cone.", name);
        push = read_push(field(y, path, "push"), rank, g.basis_X.size(), path + "push");
        e_pair = functional_of_rank(field(y, path, "e_pair"), rank, path + "e_pair", "rank_mismatch");
        gamma = vector_of_rank(field(y, path, "gamma"), rank, path + "gamma", "rank_mismatch");
    };
    read_side("Y1", g.basis_Y1, g.ne_Y1, g.p1_push, g.e_pair_Y1, g.gamma_Y1);
    read_side("Y2", g.basis_Y2, g.ne_Y2, g.p2_push, g.e_pair_Y2, g.gamma_Y2);

    g.reference_ample =
        functional_of_rank(field(doc, "", "reference_ample"), g.basis_X.size(), "reference_ample", "rank_mismatch");
    if (doc.contains("reference_lz_push"))
        g.reference_lz_push = functional_of_rank(doc["reference_lz_push"], g.basis_Y2.size(), "reference_lz_push",
                                                 "rank_mismatch");
    validate_geometry(g);
    return g;
}

// ---------------------------------------------------------------------------
// Presets. Derivations of the lattice data are in docs/presets.md.

constexpr std::string_view kP2Point = R"({
  "label": "p2-point",
  "notes": "X = P^2, Z = a point. Y1 = Bl_pt P^2 with s = strict transform of a line through the point, e = exceptional line; Y2 = P^2 with gamma = a line, E = the line at infinity.",
  "codim": 2,
  "X":  { "basis": ["l"], "cone": { "generators": [[1]], "grading": [1] } },
  "Y1": { "basis": ["s", "e"],
          "cone": { "generators": [[1, 0], [0, 1]], "grading": [1, 1] },
          "push": [[1, 0]], "e_pair": [1, -1], "gamma": [0, 1] },
  "Y2": { "basis": ["gamma"],
          "cone": { "generators": [[1]], "grading": [1] },
          "push": [[0]], "e_pair": [1], "gamma": [1] },
  "reference_ample": [1]
})";

constexpr std::string_view kP3Line = R"({
  "label": "p3-line",
  "notes": "X = P^3, Z = a line, N = O(1)+O(1). Y1 = Bl_Z P^3 with s = strict transform of a line meeting Z once, e = fiber of E over Z; Y2 = P(O(1)+O(1)+O) over Z with gamma = fiber line, z = zero section; NE(Y2) is spanned by gamma and the section z - gamma lying in E.",
  "codim": 2,
  "X":  { "basis": ["l"], "cone": { "generators": [[1]], "grading": [1] } },
  "Y1": { "basis": ["s", "e"],
          "cone": { "generators": [[1, 0], [0, 1]], "grading": [1, 1] },
          "push": [[1, 0]], "e_pair": [1, -1], "gamma": [0, 1] },
  "Y2": { "basis": ["gamma", "z"],
          "cone": { "generators": [[1, 0], [-1, 1]], "grading": [1, 2] },
          "push": [[0, 1]], "e_pair": [1, 0], "gamma": [1, 0] },
  "reference_ample": [1]
})";

}  // namespace

const std::vector<PresetInfo>& presets() {
    static const std::vector<PresetInfo> list = {
        {"p2-point", "X = P^2 blown up at a point (codim 2)"},
        {"p3-line", "X = P^3 blown up along a line (codim 2)"},
    };
    return list;
}

std::string_view preset_config(std::string_view name) {
    if (name == "p2-point") return kP2Point;
    if (name == "p3-line") return kP3Line;
    throw InputError("unknown preset '" + std::string(name) + "'");
}

BlowupGeometry preset_geometry(std::string_view name) { return load_geometry(preset_config(name)); }

void validate_geometry(const BlowupGeometry& g) {
    if (g.codim < 1) throw ValidationError("codim", "codim must be positive, got " + std::to_string(g.codim));
    if (g.basis_X.size() != g.n1_X() || g.basis_Y1.size() != g.n1_Y1() || g.basis_Y2.size() != g.n1_Y2())
        throw ValidationError("basis_labels", "basis label count does not match lattice rank");
    if (g.p1_push.source_rank() != g.n1_Y1() || g.p1_push.target_rank() != g.n1_X())
        throw ValidationError("rank_mismatch", "p1_push must map N_1(Y1) to N_1(X)");
    if (g.p2_push.source_rank() != g.n1_Y2() || g.p2_push.target_rank() != g.n1_X())
        throw ValidationError("rank_mismatch", "p2_push must map N_1(Y2) to N_1(X)");
    if (g.e_pair_Y1.rank() != g.n1_Y1() || g.gamma_Y1.rank() != g.n1_Y1() || g.e_pair_Y2.rank() != g.n1_Y2() ||
        g.gamma_Y2.rank() != g.n1_Y2() || g.reference_ample.rank() != g.n1_X())
        throw ValidationError("rank_mismatch", "pairing or gamma rank does not match its lattice");
    if (g.reference_lz_push && g.reference_lz_push->rank() != g.n1_Y2())
        throw ValidationError("rank_mismatch", "reference_lz_push must be a functional on N_1(Y2)");

    if (Int p = g.e_pair_Y1.pair(g.gamma_Y1); p != -1)
        throw ValidationError("gamma_Y1_pairing", "E·γ on Y₁ must be −1, got " + std::to_string(p));
    if (Int p = g.e_pair_Y2.pair(g.gamma_Y2); p != 1)
        throw ValidationError("gamma_Y2_pairing", "E·γ on Y₂ must be +1, got " + std::to_string(p));
    if (auto v = g.p1_push.apply(g.gamma_Y1); !v.is_zero())
        throw ValidationError("gamma_Y1_push", "p₁*γ must be 0, got " + v.to_string());
    if (auto v = g.p2_push.apply(g.gamma_Y2); !v.is_zero())
        throw ValidationError("gamma_Y2_push", "p₂*γ must be 0, got " + v.to_string());
    if (!cone_contains(g.ne_Y1, g.gamma_Y1))
        throw ValidationError("gamma_Y1_effective", "γ on Y₁ " + g.gamma_Y1.to_string() + " is not in NE(Y1)");
    if (!cone_contains(g.ne_Y2, g.gamma_Y2))
        throw ValidationError("gamma_Y2_effective", "γ on Y₂ " + g.gamma_Y2.to_string() + " is not in NE(Y2)");
    if (auto bad = g.ne_X.first_nonpositive(g.reference_ample); bad != ConeModel::npos)
        throw ValidationError("reference_ample_positive", "reference_ample " + g.reference_ample.to_string() +
                                                              " is not positive on generator " +
                                                              g.ne_X.generators()[bad].to_string() + " of NE(X)");
}

AmpleData induce_ample(const BlowupGeometry& geom, const LinearFunctional& L, const LinearFunctional& lz_push) {
    if (L.rank() != geom.n1_X()) throw InputError("L must be a functional on N_1(X)");
    if (lz_push.rank() != geom.n1_Y2()) throw InputError("LZ_push must be a functional on N_1(Y2)");
    AmpleData amp{L, L.pullback(geom.p1_push) - geom.e_pair_Y1, lz_push + geom.e_pair_Y2};

    auto check = [](const ConeModel& cone, const LinearFunctional& h, const char* name, const char* lattice) {
        if (auto bad = cone.first_nonpositive(h); bad != ConeModel::npos) {
            const auto& gen = cone.generators()[bad];
            throw ModelError(std::string("L not sufficiently ample: ") + name + " = " + h.to_string() + " gives " +
                             std::to_string(h.pair(gen)) + " on generator " + gen.to_string() + " of " + lattice);
        }
    };
    check(geom.ne_X, amp.L, "L", "NE(X)");
    check(geom.ne_Y1, amp.H1, "H1", "NE(Y1)");
    check(geom.ne_Y2, amp.H2, "H2", "NE(Y2)");
    return amp;
}

AmpleData ample_from_scale(const BlowupGeometry& geom, Int c) {
    LinearFunctional L = geom.reference_ample.scaled(c);
    LinearFunctional lz = geom.reference_lz_push ? geom.reference_lz_push->scaled(c) : L.pullback(geom.p2_push);
    return induce_ample(geom, L, lz);
}

BlowupGeometry load_geometry(std::string_view config_text) {
    for (const auto& p : presets())
        if (config_text == p.name) return load_geometry(preset_config(p.name));
    json doc;
    try {
        doc = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw ValidationError("parse", std::string("geometry config is not valid JSON: ") + e.what());
    }
    return parse_geometry(doc);
}

BlowupGeometry load_geometry_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open geometry config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return load_geometry(text.str());
}

}  // namespace degen

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "degen/enumeration.hpp"
#include "degen/errors.hpp"
#include "degen/formula.hpp"
#include "degen/geometry.hpp"

namespace degen::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string preset;
    std::string config;
    int g = 0;
    int k = 0;
    std::vector<Int> beta;
    std::optional<Int> d;
    std::vector<Int> ample;
    std::string format = "machine";
    std::string output;
    unsigned workers = 1;
    std::string stability = "contracted";
};

void add_source(CLI::App* sub, Options& o) {
    auto* p = sub->add_option("--preset", o.preset, "built-in geometry (see `presets`)");
    auto* c = sub->add_option("--config", o.config, "geometry config file (JSON)");
    p->excludes(c);
}

void add_request(CLI::App* sub, Options& o, bool class_mode) {
    sub->add_option("--g", o.g, "genus")->check(CLI::NonNegativeNumber);
    sub->add_option("--k", o.k, "number of marked points")->check(CLI::NonNegativeNumber);
    if (class_mode)
        sub->add_option("--beta", o.beta, "curve class in the basis of N_1(X), comma separated")
            ->delimiter(',')
            ->required()
            ->allow_extra_args(false);
    else
        sub->add_option("--d", o.d, "H-degree")->required();
    sub->add_option("--ample", o.ample, "scale c of the reference ample class (repeatable)")
        ->required()
        ->allow_extra_args(false);
    sub->add_option("--workers", o.workers, "threads for the splitting search")->check(CLI::PositiveNumber);
    sub->add_option("--stability", o.stability, "filter for contracted vertices")
        ->check(CLI::IsMember({"contracted", "off"}));
}

void add_emit(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "machine, latex or summary")
        ->check(CLI::IsMember({"machine", "latex", "summary"}));
    sub->add_option("--output", o.output, "write here instead of standard output");
}

BlowupGeometry geometry_of(const Options& o) {
    if (o.preset.empty() == o.config.empty()) throw UsageError("exactly one of --preset and --config is required");
    return o.preset.empty() ? load_geometry_file(o.config) : preset_geometry(o.preset);
}

Stability stability_of(const Options& o) { return o.stability == "off" ? Stability::off : Stability::contracted_components; }

Int single_ample(const Options& o) {
    if (o.ample.size() != 1) throw UsageError("exactly one --ample is expected here");
    return o.ample.front();
}

void write(const Options& o, const std::string& text, std::ostream& out) {
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw InputError("cannot write " + o.output);
    f << text;
    if (!f) throw InputError("failed writing " + o.output);
}

std::string basis_tuple(const std::vector<std::string>& basis) {
    std::string s = "(";
    for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? "," : "") + basis[i];
    return s + ")";
}

int cmd_enumerate(const Options& o, std::ostream& out) {
    const BlowupGeometry geom = geometry_of(o);
    const Int c = single_ample(o);
    LatticeVector beta(o.beta);
    auto req = EnumerationRequest::for_class(o.g, o.k, beta, ample_from_scale(geom, c));
    req.stability = stability_of(o);
    req.workers = o.workers;
    auto classes = reduce_to_classes(enumerate_triples(req, geom));
    auto doc = make_document(geom, {o.g, o.k, beta, std::nullopt, {c}}, build_formula(classes, geom));
    write(o, emit(doc, o.format), out);
    return 0;
}

int cmd_by_degree(const Options& o, std::ostream& out) {
    const BlowupGeometry geom = geometry_of(o);
    const Int c = single_ample(o);
    auto req = EnumerationRequest::for_degree(o.g, o.k, *o.d, ample_from_scale(geom, c));
    req.stability = stability_of(o);
    req.workers = o.workers;
    std::vector<TripleClass> classes;
    for (const auto& [beta, triples] : enumerate_by_degree(req, geom)) {
        auto part = reduce_to_classes(triples);
        classes.insert(classes.end(), part.begin(), part.end());
    }
    auto doc = make_document(geom, {o.g, o.k, std::nullopt, *o.d, {c}}, build_formula(classes, geom));
    write(o, emit(doc, o.format), out);
    return 0;
}

int cmd_check_h(const Options& o, std::ostream& out) {
    const BlowupGeometry geom = geometry_of(o);
    if (o.ample.size() < 2) throw UsageError("check-h needs at least two --ample values");
    std::vector<AmpleData> amples;
    for (Int c : o.ample) amples.push_back(ample_from_scale(geom, c));
    LatticeVector beta(o.beta);
    auto report = check_h_independence(o.g, o.k, beta, geom, amples, stability_of(o));

    std::ostringstream os;
    os << (report.identical ? "identical" : "different") << "\n";
    os << "beta=" << symbolic_class(beta, geom.basis_X) << " in basis " << basis_tuple(geom.basis_X) << ", c in {";
    for (std::size_t i = 0; i < o.ample.size(); ++i) os << (i ? "," : "") << o.ample[i];
    os << "}, classes";
    for (const auto& keys : report.key_sets) os << " " << keys.size();
    os << "\n";
    for (const auto& line : report.differences) os << line << "\n";
    write(o, os.str(), out);
    return report.identical ? 0 : 1;
}

int cmd_presets(std::ostream& out) {
    for (const auto& p : presets()) {
        const BlowupGeometry geom = preset_geometry(p.name);
        out << p.name << "  " << p.description << "  N_1(X)=" << basis_tuple(geom.basis_X)
            << " N_1(Y1)=" << basis_tuple(geom.basis_Y1) << " N_1(Y2)=" << basis_tuple(geom.basis_Y2) << "\n";
    }
    return 0;
}

int cmd_validate(const Options& o, std::ostream& out) {
    const BlowupGeometry geom = geometry_of(o);
    out << "ok " << geom.label << " codim=" << geom.codim << " N_1(X)=" << basis_tuple(geom.basis_X)
        << " N_1(Y1)=" << basis_tuple(geom.basis_Y1) << " N_1(Y2)=" << basis_tuple(geom.basis_Y2) << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Index sets of the blow-up degeneration formula", "degen"};
    app.require_subcommand(1);
    Options o;

    auto* enumerate = app.add_subcommand("enumerate", "admissible triples for a curve class, as a formula");
    add_source(enumerate, o);
    add_request(enumerate, o, true);
    add_emit(enumerate, o);

    auto* by_degree = app.add_subcommand("by-degree", "formula terms for every class of a given H-degree");
    add_source(by_degree, o);
    add_request(by_degree, o, false);
    add_emit(by_degree, o);

    auto* check_h = app.add_subcommand("check-h", "compare index sets across ample choices");
    add_source(check_h, o);
    add_request(check_h, o, true);
    check_h->add_option("--output", o.output, "write here instead of standard output");

    auto* list = app.add_subcommand("presets", "list built-in geometries");

    auto* validate = app.add_subcommand("validate-config", "load and check a geometry");
    add_source(validate, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (enumerate->parsed()) return cmd_enumerate(o, out);
        if (by_degree->parsed()) return cmd_by_degree(o, out);
        if (check_h->parsed()) return cmd_check_h(o, out);
        if (list->parsed()) return cmd_presets(out);
        if (validate->parsed()) return cmd_validate(o, out);
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error[validation/" << e.code() << "]: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error[" << e.kind() << "]: " << e.what() << "\n";
        return 1;
    }
    err << "usage: no subcommand\n";
    return 2;
}

}  // namespace degen::cli

#include <CLI11.hpp>

#include <filtra/dsl/machine.hpp>
#include <filtra/dsl/parser.hpp>
#include <filtra/dsl/printer.hpp>
#include <filtra/gr.hpp>
#include <filtra/jet.hpp>
#include <filtra/lifts.hpp>
#include <filtra/linearise.hpp>
#include <filtra/total_weight.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace filtra;

struct Options {
    std::string input;
    std::string object;
    std::string format = "dsl";
    std::string output;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const Options& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + opt.output + "'");
    out << text;
}

const FilteredBundleSpec& pick_bundle(const dsl::Document& doc, const Options& opt) {
    if (!opt.object.empty()) {
        const FilteredBundleSpec* b = doc.find_bundle(opt.object);
        if (!b)
            throw UsageError("no bundle named '" + opt.object + "' in the document");
        return *b;
    }
    if (doc.bundles.size() == 1)
        return doc.bundles.front();
    throw UsageError(doc.bundles.empty() ? "document declares no bundle"
                                         : "several bundles; pick one with --object");
}

const dsl::FiltrationDecl& pick_filtration(const dsl::Document& doc, const Options& opt) {
    if (!opt.object.empty()) {
        const dsl::FiltrationDecl* f = doc.find_filtration(opt.object);
        if (!f)
            throw UsageError("no filtration named '" + opt.object + "' in the document");
        return *f;
    }
    if (doc.filtrations.size() == 1)
        return doc.filtrations.front();
    throw UsageError(doc.filtrations.empty() ? "document declares no filtration"
                                             : "several filtrations; pick one with --object");
}

const AffineTowerSpec& pick_tower(const dsl::Document& doc, const Options& opt) {
    if (!opt.object.empty()) {
        const AffineTowerSpec* t = doc.find_tower(opt.object);
        if (!t)
            throw UsageError("no tower named '" + opt.object + "' in the document");
        return *t;
    }
    if (doc.towers.size() == 1)
        return doc.towers.front();
    throw UsageError(doc.towers.empty() ? "document declares no tower"
                                        : "several towers; pick one with --object");
}

// Validation verdicts for one object, as (name, report) pairs.
using Verdicts = std::vector<std::pair<std::string, ValidationReport>>;

ValidationReport filtration_report(const dsl::FiltrationDecl& decl) {
    ValidationReport rep;
    try {
        FiltrationAnalysis a = analyse_filtration(decl.presentation);
        std::string d = "d = (";
        for (std::size_t i = 0; i < a.ranks.size(); ++i)
            d += (i ? ", " : "") + std::to_string(a.ranks[i]);
        d += ")";
        rep.add("filtration", decl.name, true, d);
    } catch (const Error& e) {
        rep.add("filtration", decl.name, false, e.what());
    }
    return rep;
}

Verdicts check_document(const dsl::Document& doc, const Options& opt) {
    Verdicts out;
    bool selected = !opt.object.empty();
    bool found = false;
    for (const auto& b : doc.bundles)
        if (!selected || b.name == opt.object) {
            out.emplace_back(b.name, validate_bundle(b));
            found = true;
        }
    for (const auto& m : doc.morphisms)
        if (!selected || m.name == opt.object) {
            out.emplace_back(m.name, validate_morphism(m));
            found = true;
        }
    for (const auto& t : doc.towers)
        if (!selected || t.name == opt.object) {
            out.emplace_back(t.name, validate_tower(t));
            found = true;
        }
    for (const auto& f : doc.filtrations)
        if (!selected || f.name == opt.object) {
            out.emplace_back(f.name, filtration_report(f));
            found = true;
        }
    if (selected && !found)
        throw UsageError("no object named '" + opt.object + "' in the document");
    if (out.empty())
        throw UsageError("document declares no objects");
    return out;
}

int run_check(const dsl::Document& doc, const Options& opt) {
    Verdicts verdicts = check_document(doc, opt);
    bool all_pass = true;
    std::string text;
    dsl::json reports = dsl::json::array();
    for (const auto& [name, rep] : verdicts) {
        all_pass = all_pass && rep.pass();
        text += (rep.pass() ? "PASS " : "FAIL ") + name + "\n";
        for (const auto& f : rep.findings)
            if (!f.pass)
                text += "  " + f.check + " " + f.subject +
                        (f.detail.empty() ? "" : ": " + f.detail) + "\n";
        reports.push_back(dsl::report_json(name, rep));
    }
    if (opt.format == "machine")
        emit(opt, dsl::machine_dump({{"schema", dsl::machine_schema},
                                     {"kind", "report-set"},
                                     {"pass", all_pass},
                                     {"reports", reports}}));
    else
        emit(opt, text);
    return all_pass ? 0 : 1;
}

int emit_bundle_result(const FilteredBundleSpec& out, const Options& opt) {
    if (opt.format == "machine") {
        dsl::Document result;
        result.bundles.push_back(out);
        result.order.emplace_back(dsl::BlockKind::Bundle, 0);
        emit(opt, dsl::machine_dump(dsl::document_json(result)));
    } else {
        emit(opt, dsl::print_bundle(out));
    }
    return 0;
}

int run_functor(const dsl::Document& doc, const Options& opt,
                const std::function<FilteredBundleSpec(const FilteredBundleSpec&)>& f) {
    const FilteredBundleSpec& b = pick_bundle(doc, opt);
    ValidationReport rep = validate_bundle(b);
    if (!rep.pass()) {
        std::cerr << "input bundle '" << b.name << "' fails validation:\n" << rep.summary();
        return 1;
    }
    return emit_bundle_result(f(b), opt);
}

int run_rank(const dsl::Document& doc, const Options& opt) {
    const dsl::FiltrationDecl& decl = pick_filtration(doc, opt);
    std::vector<int> d = compute_rank(decl.presentation);
    if (opt.format == "machine") {
        emit(opt, dsl::machine_dump(dsl::rank_json(decl.name, d)));
        return 0;
    }
    std::string text = "(";
    for (std::size_t i = 0; i < d.size(); ++i)
        text += (i ? ", " : "") + std::to_string(d[i]);
    emit(opt, text + ")\n");
    return 0;
}

int run_gens(const dsl::Document& doc, const Options& opt) {
    const dsl::FiltrationDecl& decl = pick_filtration(doc, opt);
    auto gens = extract_homogeneous_generators(decl.presentation);
    if (opt.format == "machine") {
        emit(opt, dsl::machine_dump(dsl::generators_json(decl.name, gens, decl.vars)));
        return 0;
    }
    std::string text;
    for (const auto& g : gens)
        text += "weight " + std::to_string(g.weight) + ": " + g.poly.to_string(decl.vars) +
                "\n";
    emit(opt, text);
    return 0;
}

int run_tower_check(const dsl::Document& doc, const Options& opt) {
    const AffineTowerSpec& t = pick_tower(doc, opt);
    FilterabilityReport rep = check_filterable_atlas(t);
    if (opt.format == "machine") {
        dsl::json j{{"schema", dsl::machine_schema},
                    {"kind", "filterability"},
                    {"object", t.name},
                    {"pass", rep.pass()},
                    {"findings", dsl::findings_json(rep.report)},
                    {"induced", rep.induced ? dsl::bundle_json(*rep.induced) : dsl::json()}};
        emit(opt, dsl::machine_dump(j));
        return rep.pass() ? 0 : 1;
    }
    if (rep.pass()) {
        emit(opt, dsl::print_bundle(*rep.induced));
        return 0;
    }
    emit(opt, rep.report.summary());
    return 1;
}

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("input", opt.input, "document to read")->required();
    cmd->add_option("--object", opt.object, "name of the object to act on");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"dsl", "machine"}));
    cmd->add_option("-o,--output", opt.output, "write output to this file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symbolic engine for filtered bundles"};
    app.require_subcommand(1);

    Options opt;
    int jet_order = 1;

    CLI::App* check = app.add_subcommand("check", "validate the document's objects");
    CLI::App* gr = app.add_subcommand("gr", "associated graded bundle");
    CLI::App* tangent = app.add_subcommand("tangent", "tangent lift");
    CLI::App* vertical = app.add_subcommand("vertical", "vertical lift");
    CLI::App* dualvert = app.add_subcommand("dualvert", "dual vertical lift");
    CLI::App* lin = app.add_subcommand("lin", "linearisation");
    CLI::App* totw = app.add_subcommand("totw", "collapse to total weight");
    CLI::App* jet = app.add_subcommand("jet", "jet prolongation");
    CLI::App* rank = app.add_subcommand("rank", "filtration rank vector");
    CLI::App* gens = app.add_subcommand("gens", "homogeneous generators of a filtration");
    CLI::App* tower = app.add_subcommand("tower-check", "filterability of an affine tower");
    for (CLI::App* cmd : {check, gr, tangent, vertical, dualvert, lin, totw, jet, rank, gens,
                          tower})
        add_common(cmd, opt);
    jet->add_option("--order", jet_order, "prolongation order")->check(CLI::Range(1, 9));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        dsl::Document doc = dsl::parse(read_file(opt.input));
        if (check->parsed())
            return run_check(doc, opt);
        if (gr->parsed())
            return run_functor(doc, opt, gr_bundle);
        if (tangent->parsed())
            return run_functor(doc, opt, tangent_lift);
        if (vertical->parsed())
            return run_functor(doc, opt, vertical_lift);
        if (dualvert->parsed())
            return run_functor(doc, opt, dual_vertical_lift);
        if (lin->parsed())
            return run_functor(doc, opt, linearise);
        if (totw->parsed())
            return run_functor(doc, opt, total_weight);
        if (jet->parsed())
            return run_functor(doc, opt,
                               [&](const FilteredBundleSpec& b) {
                                   return jet_prolong(b, jet_order);
                               });
        if (rank->parsed())
            return run_rank(doc, opt);
        if (gens->parsed())
            return run_gens(doc, opt);
        if (tower->parsed())
            return run_tower_check(doc, opt);
        return 2;
    } catch (const SyntaxError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UndeclaredSymbol& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const FiberDenominator& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

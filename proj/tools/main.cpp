#include "nilgeom/catalog.hpp"
#include "nilgeom/cohomology.hpp"
#include "nilgeom/coordinate_model.hpp"
#include "nilgeom/notation.hpp"
#include "nilgeom/report.hpp"
#include "nilgeom/serialization.hpp"
#include "nilgeom/structures.hpp"
#include "nilgeom/verification.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

using namespace nilgeom;

enum ExitCode { Ok = 0, VerifyFailed = 1, ParseFailure = 2, InvalidAlgebra = 3, InternalBreach = 4 };

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

LieAlgebra algebra_from_text(const std::string& text)
{
    const std::string t = trim(text);
    if (!t.empty() && t.front() == '{')
        return algebra_from_json(parse_json_text(t));
    return parse_salamon(t);
}

/// Catalog name, Salamon string, path to a JSON or Salamon file, or "-" for stdin.
LieAlgebra load_algebra(const std::string& spec)
{
    if (spec == "-") {
        const std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
        return algebra_from_text(text);
    }
    const std::string t = trim(spec);
    if (!t.empty() && (t.front() == '(' || t.front() == '{'))
        return algebra_from_text(t);
    for (const auto& name : catalog_names())
        if (name == t)
            return get_example(name).algebra;
    if (std::filesystem::is_regular_file(t)) {
        std::ifstream in(t);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return algebra_from_text(buffer.str());
    }
    throw UnknownName("'" + t + "' is not a catalog name, a Salamon string or a readable file");
}

void print(const Json& j, bool as_json)
{
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << render_text(j);
}

int exit_code_for(const Error& e)
{
    const std::string& c = e.code();
    if (c == "SyntaxError" || c == "SchemaViolation" || c == "UnknownName" || c == "IndexOutOfRange")
        return ParseFailure;
    if (c == "InternalInvariant")
        return InternalBreach;
    return InvalidAlgebra;
}

int run_analyze(const std::string& spec, int height, const std::string& metric, const std::string& acs, bool json,
                bool quiet)
{
    const LieAlgebra algebra = load_algebra(spec);
    AnalyzeOptions options;
    options.height = height;
    if (!metric.empty())
        options.metric = metric_from_json(read_json_file(metric));
    if (!acs.empty())
        options.acs = acs_from_json(read_json_file(acs));
    const StructureReport report = analyze(algebra, options);
    if (quiet) {
        std::cout << report.salamon << " betti=" << detail::seq(report.invariants.betti)
                  << " symplectic=" << (report.symplectic.found ? "FOUND" : "NONE")
                  << " lcs=" << (report.lcs.applicable ? report.lcs.search.label() : "N/A")
                  << " kahler_admissible="
                  << (report.kahler.applicable ? (report.kahler.admissible ? "YES" : "NO") : "N/A") << "\n";
        return Ok;
    }
    print(report_to_json(report), json);
    return Ok;
}

int run_search_lcs(const std::string& spec, int height, bool json)
{
    const LieAlgebra algebra = load_algebra(spec);
    SearchConfig cfg;
    cfg.height_bound = height;
    const LcsSearchResult r = find_lcs(algebra, cfg);
    Json out{{"algebra", format_salamon(algebra)},
             {"status", r.label()},
             {"height", r.height},
             {"candidates_examined", r.candidates_examined},
             {"truncated", r.truncated}};
    if (r.witness) {
        out["omega"] = format_form(r.witness->omega);
        out["theta"] = format_form(r.witness->theta);
        out["genuine"] = r.witness->verdict.genuine;
        out["witness_volume"] = to_string(r.witness->verdict.witness_volume);
        const auto eta = twisted_exactness_witness(algebra, r.witness->omega, r.witness->theta);
        out["twisted_primitive"] = eta ? Json(format_form(*eta)) : Json(nullptr);
    } else {
        out["omega"] = nullptr;
    }
    out["gcs_symplectic"] = r.gcs_symplectic ? Json(format_form(*r.gcs_symplectic)) : Json(nullptr);
    print(out, json);
    return Ok;
}

int run_search_symplectic(const std::string& spec, bool json)
{
    const LieAlgebra algebra = load_algebra(spec);
    const NondegeneracySearch s = find_symplectic(algebra);
    Json out{{"algebra", format_salamon(algebra)},
             {"status", s.witness ? "FOUND" : (s.certain ? "NONE" : "NOT_FOUND_BY_SAMPLING")},
             {"certain", s.certain}};
    if (s.witness) {
        out["witness"] = format_form(*s.witness);
        out["volume"] = to_string(pfaffian_volume(algebra, *s.witness));
    } else {
        out["witness"] = nullptr;
    }
    print(out, json);
    return Ok;
}

int run_cohomology(const std::string& spec, const std::string& theta_text, bool json)
{
    const LieAlgebra algebra = load_algebra(spec);
    std::optional<KForm> theta;
    if (!theta_text.empty()) {
        const KForm t = parse_form(theta_text, algebra.dim(), 1);
        if (!t.is_zero())
            theta = t;
    }
    Json degrees = Json::array();
    std::vector<int> betti;
    for (int k = 0; k <= algebra.dim(); ++k) {
        const CohomologySpace h(algebra, k, theta);
        Json reps = Json::array();
        for (const auto& r : h.representatives())
            reps.push_back(format_form(r));
        degrees.push_back(Json{{"degree", k}, {"betti", h.betti()}, {"representatives", std::move(reps)}});
        betti.push_back(h.betti());
    }
    Json out{{"algebra", format_salamon(algebra)},
             {"theta", theta ? Json(format_form(*theta)) : Json(nullptr)},
             {"betti", betti},
             {"degrees", std::move(degrees)}};
    print(out, json);
    return Ok;
}

int run_verify(bool json, bool inject)
{
    VerifyOptions options;
    options.inject_sign_error = inject;
    const VerificationSummary s = verify_paper(options);
    if (json) {
        std::cout << summary_to_json(s).dump(2) << "\n";
    } else {
        for (const auto& a : s.assertions)
            std::cout << (a.passed ? "PASS  " : "FAIL  ") << "[" << a.criterion << "] " << a.name
                      << (a.detail.empty() ? "" : "  (" + a.detail + ")") << "\n";
        for (const auto& name : catalog_names())
            for (const auto& f : get_example(name).expected)
                if (!f.machine_checkable())
                    std::cout << "NOTE  " << name << ": " << f.name << " [" << to_string(f.provenance) << "]\n";
        std::cout << (s.passed() ? "PASS" : "FAIL") << ": " << s.assertions.size() << " assertions";
        if (const Assertion* f = s.first_failure())
            std::cout << ", first failure at \"" << f->name << "\"";
        std::cout << "\n";
    }
    return s.passed() ? Ok : VerifyFailed;
}

int run_model_check(bool json)
{
    const RealizationReport r = verify_realization();
    const RealizationCheck control = check_lattice_closure({1, 1, 1, 1}, "Z^4");
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    const bool ok = r.all_passed() && !control.passed;
    Json out{{"passed", ok},
             {"checks", std::move(checks)},
             {"negative_control", Json{{"lattice", "Z^4"}, {"closed", control.passed}, {"detail", control.detail}}}};
    print(out, json);
    return ok ? Ok : VerifyFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact invariants of nilpotent Lie algebras and their nilmanifolds"};
    app.require_subcommand(1);

    std::string spec;
    int height = 2;
    std::string metric;
    std::string acs;
    std::string theta;
    bool json = false;
    bool quiet = false;
    bool inject = false;
    const char* spec_help = "Salamon string, JSON file, catalog name, or - for stdin";

    auto* analyze_cmd = app.add_subcommand("analyze", "full structure report");
    analyze_cmd->add_option("spec", spec, spec_help)->required();
    analyze_cmd->add_option("--height", height, "coefficient height bound for the lcs search")
        ->check(CLI::NonNegativeNumber);
    analyze_cmd->add_option("--metric", metric, "JSON file {\"g\": [[...]], \"orientation\": 1}");
    analyze_cmd->add_option("--acs", acs, "JSON file {\"J\": [[...]]}, column i = J X_i");
    analyze_cmd->add_flag("--json", json, "emit JSON");
    analyze_cmd->add_flag("--quiet", quiet, "one summary line");

    auto* lcs_cmd = app.add_subcommand("search-lcs", "bounded search for a genuine lcs structure");
    lcs_cmd->add_option("spec", spec, spec_help)->required();
    lcs_cmd->add_option("--height", height, "coefficient height bound")->check(CLI::NonNegativeNumber);
    lcs_cmd->add_flag("--json", json, "emit JSON");

    auto* sym_cmd = app.add_subcommand("search-symplectic", "decide existence of a symplectic form");
    sym_cmd->add_option("spec", spec, spec_help)->required();
    sym_cmd->add_flag("--json", json, "emit JSON");

    auto* coh_cmd = app.add_subcommand("cohomology", "Betti numbers and representatives");
    coh_cmd->add_option("spec", spec, spec_help)->required();
    coh_cmd->add_option("--theta", theta, "closed 1-form for the twisted differential, e.g. x2");
    coh_cmd->add_flag("--json", json, "emit JSON");

    auto* verify_cmd = app.add_subcommand("verify-paper", "run the reproduction suite");
    verify_cmd->add_flag("--json", json, "emit JSON");
    verify_cmd->add_flag("--inject-sign-error", inject, "negative control: break the Leibniz signs of d");

    auto* model_cmd = app.add_subcommand("model-check", "verify the explicit group model and lattice");
    model_cmd->add_flag("--json", json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : ParseFailure;
    }

    try {
        if (*analyze_cmd)
            return run_analyze(spec, height, metric, acs, json, quiet);
        if (*lcs_cmd)
            return run_search_lcs(spec, height, json);
        if (*sym_cmd)
            return run_search_symplectic(spec, json);
        if (*coh_cmd)
            return run_cohomology(spec, theta, json);
        if (*verify_cmd)
            return run_verify(json, inject);
        if (*model_cmd)
            return run_model_check(json);
    } catch (const Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return InternalBreach;
    }
    return Ok;
}

// valring_cli: classify, evaluate and lift over C((t)) from the shell.
//
// Exit codes: 0 success, 1 input or domain error, 2 configuration error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "valring/valring.hpp"

using namespace valring;
using json = nlohmann::ordered_json;

namespace {

enum class Output { Text, Json };

struct Options {
    Output output = Output::Text;
    RunConfig run;
    std::vector<long> val_range{-3, 3};
    std::string formula, series, poly, rho, alpha;
    std::vector<std::string> points;
    long n = 2;
};

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.output == Output::Json) std::cout << j.dump(2) << "\n";
    else std::cout << text << "\n";
}

Series exact_point(const std::string& text) {
    Series s = parse_series(text);
    if (!s.is_exact()) fail(ErrorKind::InvalidArgument, "point '" + text + "' is not exact");
    return s;
}

int cmd_classify(const Options& o) {
    Formula phi = parse_formula(o.formula);
    Classification c = classify_formula(phi);
    emit(o, to_json(c),
         std::string(to_string(c.kind)) + "\nwitness: " + c.witness.to_string() +
             "\nin p_trans: " + (c.cofinite() ? "true" : "false"));
    return 0;
}

int cmd_member(const Options& o) {
    Formula phi = parse_formula(o.formula);
    if (phi.arity() > 1) fail(ErrorKind::ArityMismatch, "p_trans membership is for one-variable formulas");
    bool by_class = in_p_trans(phi);
    Truth by_point = evaluate(phi, fresh_point(suites::base_tower()).second);
    json j;
    j["in_p_trans"] = by_class;
    j["realization"] = to_string(by_point);
    j["agree"] = by_point == truth_of(by_class);
    emit(o, j, std::string(by_class ? "true" : "false"));
    return by_point == truth_of(by_class) ? 0 : 1;
}

int cmd_eval(const Options& o) {
    Formula phi = parse_formula(o.formula);
    std::vector<Series> point;
    for (const auto& p : o.points) point.push_back(exact_point(p));
    Truth t = evaluate(phi, point);
    json j;
    j["value"] = to_string(t);
    emit(o, j, to_string(t));
    return 0;
}

int cmd_root(const Options& o) {
    Series r = nth_root(parse_series(o.series), o.n, parse_residue(o.rho), o.run.prec);
    json j;
    j["root"] = r.to_string();
    emit(o, j, r.to_string());
    return 0;
}

int cmd_lift(const Options& o) {
    XPoly f = parse_xpoly(o.poly);
    Series r = hensel_lift(f.to_kpoly(), parse_series(o.alpha), o.run.prec);
    json j;
    j["root"] = r.to_string();
    emit(o, j, r.to_string());
    return 0;
}

int cmd_witness(const Options& o) {
    Series w = find_witness(parse_formula(o.formula));
    json j;
    j["witness"] = w.to_string();
    emit(o, j, w.to_string());
    return 0;
}

int report(const Options& o, const std::vector<SuiteResult>& results) {
    json j = suites::report(o.run, results);
    std::string text;
    for (const auto& r : results) {
        text += r.name + ": " + (r.pass() ? "pass" : "FAIL") + " (" + std::to_string(r.checked) + " checks";
        if (r.failures) text += ", " + std::to_string(r.failures) + " failures";
        text += ")\n";
        for (const auto& m : r.messages) text += "  " + m + "\n";
    }
    text += j["pass"].get<bool>() ? "all suites pass" : "some suites FAILED";
    emit(o, j, text);
    return j["pass"].get<bool>() ? 0 : 1;
}

int cmd_check(Options o) {
    o.run.val_lo = o.val_range[0];
    o.run.val_hi = o.val_range[1];
    o.run.validate();
    return report(o, suites::run_all(o.run));
}

int cmd_gl(Options o) {
    if (o.n < 1 || o.n > 3) throw ConfigError("unsupported dimension " + std::to_string(o.n) + " (expected 1, 2 or 3)");
    o.run.gl_translations = o.run.samples;
    o.run.gl_perturbations = o.run.samples;
    o.run.validate();
    return report(o, {suites::gl(o.run, static_cast<std::size_t>(o.n))});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decision procedures and Hensel lifting over C((t))"};
    app.require_subcommand(1);
    Options o;
    std::string output = "text";
    app.add_option("--output", output, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto seed = [&](CLI::App* c) {
        c->add_option("--seed", o.run.seed, "Random seed")->envname("VALRING_SEED");
    };

    auto* classify = app.add_subcommand("classify", "Classify a one-variable formula");
    classify->add_option("formula", o.formula)->required();

    auto* member = app.add_subcommand("member", "Decide membership in p_trans");
    member->add_option("formula", o.formula)->required();

    auto* eval = app.add_subcommand("eval", "Evaluate a formula at an exact point");
    eval->add_option("formula", o.formula)->required();
    eval->add_option("--x", o.points, "Coordinate (repeat for x1, x2, ...)")->required();

    auto* root = app.add_subcommand("root", "n-th root of a unit by Hensel lifting");
    root->add_option("series", o.series)->required();
    root->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
    root->add_option("--rho", o.rho, "Residue of the root")->required();
    root->add_option("--prec", o.run.prec)->check(CLI::PositiveNumber);

    auto* lift = app.add_subcommand("lift", "Hensel-lift a simple residue root");
    lift->add_option("poly", o.poly)->required();
    lift->add_option("--alpha", o.alpha, "Approximate root")->required();
    lift->add_option("--prec", o.run.prec)->check(CLI::PositiveNumber);

    auto* witness = app.add_subcommand("witness", "Rational point satisfying a res-cofinite formula");
    witness->add_option("formula", o.formula)->required();

    auto* check = app.add_subcommand("check", "Run all property and oracle suites");
    seed(check);
    check->add_option("--samples", o.run.samples);
    check->add_option("--prec", o.run.prec);
    check->add_option("--corpus-size", o.run.corpus_size);
    check->add_option("--max-degree", o.run.max_degree);
    check->add_option("--val-range", o.val_range)->expected(2);

    auto* gl = app.add_subcommand("gl", "Run the GL(n, O) suites");
    seed(gl);
    gl->add_option("--n", o.n)->required();
    gl->add_option("--samples", o.run.samples, "Translations and perturbations")->default_val(20);
    gl->add_option("--prec", o.run.prec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    o.output = output == "json" ? Output::Json : Output::Text;

    try {
        if (*classify) return cmd_classify(o);
        if (*member) return cmd_member(o);
        if (*eval) return cmd_eval(o);
        if (*root) return cmd_root(o);
        if (*lift) return cmd_lift(o);
        if (*witness) return cmd_witness(o);
        if (*check) return cmd_check(o);
        if (*gl) return cmd_gl(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

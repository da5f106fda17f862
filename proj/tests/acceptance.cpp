// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "valring/valring.hpp"

using namespace valring;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> suites;
    long expected_checks; ///< per suite; 0 when the count depends on the corpus
    double budget;        ///< seconds, per suite
};

} // namespace

int main() {
    RunConfig cfg; // seed 42, corpus 200, 50 samples, prec 32
    std::map<std::string, SuiteResult> by_name;
    for (auto& r : suites::run_all(cfg)) by_name.emplace(r.name, std::move(r));

    const long gl_checks_base = cfg.gl_pairs + (cfg.gl_translations + cfg.gl_perturbations) * cfg.gl_formulas;
    const std::vector<Criterion> criteria = {
        {1, "dichotomy: classify + sample_check agree", {"dichotomy"}, cfg.corpus_size, 60},
        {2, "oracle triangle: in_p_trans = evaluation at fresh constant", {"oracle_triangle"}, cfg.corpus_size, 30},
        {3, "definability: d_phi = in_p_trans per template", {"definability"}, 3 * cfg.templates_per_type, 30},
        {4, "translation invariance of p_trans", {"translation"}, cfg.translation_formulas * (cfg.shifts + cfg.units), 30},
        {5, "Hensel lifting and n-th roots", {"hensel"}, cfg.hensel_instances + cfg.root_instances, 30},
        {6, "n-th power quotient", {"nth_power"}, 4 * 13 * 10 + 4, 10},
        {7, "GL(n, O) homomorphism, invariance, domination", {"gl_n1", "gl_n2", "gl_n3"}, 0, 60},
        {8, "witness finding", {"witness"}, 0, 10},
    };

    bool all = true;
    for (const auto& c : criteria) {
        bool ok = true;
        std::string detail;
        for (const auto& name : c.suites) {
            auto it = by_name.find(name);
            if (it == by_name.end()) {
                ok = false;
                detail += " " + name + ": missing";
                continue;
            }
            const SuiteResult& r = it->second;
            long expected = c.expected_checks;
            if (name.rfind("gl_n", 0) == 0) expected = gl_checks_base + (name == "gl_n1" ? cfg.gl_formulas : 0);
            bool count_ok = expected == 0 ? r.checked > 0 : r.checked == expected;
            bool time_ok = r.seconds < c.budget;
            ok = ok && r.pass() && count_ok && time_ok;
            char buf[160];
            std::snprintf(buf, sizeof buf, " %s: %ld checks, %ld failures, %.2fs/%.0fs", name.c_str(), r.checked, r.failures,
                          r.seconds, c.budget);
            detail += buf;
            if (!count_ok) detail += " (expected " + std::to_string(expected) + " checks)";
            for (const auto& m : r.messages) detail += "\n    " + m;
        }
        std::printf("criterion %d %s: %s |%s\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), detail.c_str());
        all = all && ok;
    }
    std::printf("%s\n", all ? "all criteria pass" : "some criteria FAILED");
    return all ? 0 : 1;
}

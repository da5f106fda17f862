#pragma once

// Property and oracle suites shared by the command-line tool and the
// acceptance test. Every suite is a pure function of the run configuration.

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "valring/corpus.hpp"

namespace valring {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::uint64_t seed = 42;
    long samples = 50;
    long prec = 32;
    long corpus_size = 200;
    long max_degree = 4;
    long val_lo = -3;
    long val_hi = 3;

    // Suite sizes that are not exposed as flags.
    long templates_per_type = 100;
    long translation_formulas = 50;
    long shifts = 10;
    long units = 10;
    long hensel_instances = 100;
    long root_instances = 50;
    long gl_pairs = 50;
    long gl_formulas = 50;
    long gl_translations = 20;
    long gl_perturbations = 20;

    void validate() const {
        if (samples < 1) throw ConfigError("samples must be at least 1");
        if (prec < 1) throw ConfigError("prec must be at least 1");
        if (corpus_size < 1) throw ConfigError("corpus-size must be at least 1");
        if (max_degree < 0) throw ConfigError("max-degree must be non-negative");
        if (val_lo > val_hi) throw ConfigError("val-range lower bound exceeds upper bound");
        if (gl_translations < 1 || gl_perturbations < 1) throw ConfigError("GL sample counts must be at least 1");
    }

    CorpusConfig corpus_config() const {
        CorpusConfig c;
        c.max_degree = max_degree;
        c.val_lo = val_lo;
        c.val_hi = val_hi;
        return c;
    }
};

struct SuiteResult {
    std::string name;
    long checked = 0;
    long failures = 0;
    std::vector<std::string> messages; ///< first few failures
    double seconds = 0;                ///< not part of the report

    bool pass() const { return failures == 0 && checked > 0; }

    void record(bool ok, const std::function<std::string()>& what) {
        ++checked;
        if (ok) return;
        ++failures;
        if (messages.size() < 5) messages.push_back(what());
    }

    template <class F>
    void guarded(F&& fn, const std::function<std::string()>& what) {
        try {
            fn();
        } catch (const std::exception& e) {
            record(false, [&] { return what() + ": " + e.what(); });
        }
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["pass"] = pass();
        j["checked"] = checked;
        j["failures"] = failures;
        if (!messages.empty()) j["messages"] = messages;
        return j;
    }
};

namespace suites {

enum Stream : std::uint64_t {
    kCorpus = 1,
    kDichotomy,
    kDefinability,
    kTranslation,
    kHensel,
    kNthPower,
    kGl,
};

inline Rng stream(const RunConfig& cfg, Stream s, std::uint64_t sub = 0) {
    return Rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(s)) ^ (0xbf58476d1ce4e5b9ULL * (sub + 1)));
}

inline Tower base_tower() { return Tower().fresh().first; }

inline std::vector<Formula> corpus(const RunConfig& cfg) {
    Rng rng = stream(cfg, kCorpus);
    return gen::corpus(rng, cfg.corpus_config(), static_cast<std::size_t>(cfg.corpus_size));
}

template <class F>
SuiteResult timed(const std::string& name, F&& body) {
    SuiteResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::string label(std::size_t i, const Formula& phi) { return "#" + std::to_string(i) + " " + to_string(phi); }

/// classify_formula terminates and the sampling oracle agrees off Z.
inline SuiteResult dichotomy(const RunConfig& cfg, const std::vector<Formula>& corpus) {
    return timed("dichotomy", [&](SuiteResult& r) {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const Formula& phi = corpus[i];
            r.guarded(
                [&] {
                    Classification c = classify_formula(phi);
                    std::uint64_t seed = stream(cfg, kDichotomy, i).bits();
                    SampleReport rep = sample_check(phi, c, cfg.samples, seed);
                    r.record(rep.pass, [&] {
                        return label(i, phi) + ": " + std::to_string(rep.agree) + "/" +
                               std::to_string(rep.samples - rep.discarded) + " agree";
                    });
                },
                [&] { return label(i, phi); });
        }
    });
}

/// Classification against evaluation at a fresh transcendental constant.
inline SuiteResult oracle_triangle(const RunConfig&, const std::vector<Formula>& corpus) {
    return timed("oracle_triangle", [&](SuiteResult& r) {
        const Series generic = fresh_point(base_tower()).second;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const Formula& phi = corpus[i];
            r.guarded(
                [&] {
                    bool by_class = in_p_trans(phi);
                    Truth by_eval = evaluate(phi, generic);
                    r.record(by_eval == truth_of(by_class), [&] {
                        return label(i, phi) + ": classified " + (by_class ? "true" : "false") + ", evaluated " +
                               to_string(by_eval);
                    });
                },
                [&] { return label(i, phi); });
        }
    });
}

inline SuiteResult definability(const RunConfig& cfg) {
    return timed("definability", [&](SuiteResult& r) {
        const CorpusConfig cc = cfg.corpus_config();
        const std::pair<Template, const char*> kinds[] = {{Template::Eq, "eq"}, {Template::Div, "div"}, {Template::Pn, "pn"}};
        for (const auto& [t, name] : kinds) {
            Rng rng = stream(cfg, kDefinability, static_cast<std::uint64_t>(t));
            for (long i = 0; i < cfg.templates_per_type; ++i) {
                TemplateParams p = gen::template_params(rng, cc, t);
                Formula phi = instantiate(t, p);
                r.guarded(
                    [&] {
                        bool d = d_phi(t, p);
                        bool m = in_p_trans(phi);
                        r.record(d == m, [&] { return std::string(name) + " " + to_string(phi) + ": d_phi " +
                                                      (d ? "true" : "false"); });
                    },
                    [&] { return std::string(name) + " " + to_string(phi); });
            }
        }
    });
}

/// in_p_trans is unchanged by x -> x + a (a in O) and x -> b x (b a unit).
inline SuiteResult translation(const RunConfig& cfg, const std::vector<Formula>& corpus) {
    return timed("translation", [&](SuiteResult& r) {
        Rng rng = stream(cfg, kTranslation);
        const CorpusConfig cc = cfg.corpus_config();
        std::vector<Series> shifts, units;
        for (long i = 0; i < cfg.shifts; ++i) shifts.push_back(gen::o_element(rng, cc));
        for (long i = 0; i < cfg.units; ++i) units.push_back(gen::unit(rng, cc));
        const Series generic = fresh_point(base_tower()).second;
        const XPoly x = XPoly::var(0);
        std::size_t count = std::min(corpus.size(), static_cast<std::size_t>(cfg.translation_formulas));
        for (std::size_t i = 0; i < count; ++i) {
            const Formula& phi = corpus[i];
            bool base = false;
            try {
                base = in_p_trans(phi);
            } catch (const std::exception& e) {
                r.record(false, [&] { return label(i, phi) + ": " + e.what(); });
                continue;
            }
            for (const auto& a : shifts)
                r.guarded(
                    [&] {
                        bool shifted = in_p_trans(substitute(phi, {x + XPoly(a)}));
                        bool realized = evaluate(phi, generic + a) == truth_of(base);
                        r.record(shifted == base && realized, [&] { return label(i, phi) + " shifted by " + a.to_string(); });
                    },
                    [&] { return label(i, phi) + " shifted by " + a.to_string(); });
            for (const auto& b : units)
                r.guarded(
                    [&] {
                        bool scaled = in_p_trans(substitute(phi, {XPoly(b) * x}));
                        r.record(scaled == base, [&] { return label(i, phi) + " scaled by " + b.to_string(); });
                    },
                    [&] { return label(i, phi) + " scaled by " + b.to_string(); });
        }
    });
}

inline SuiteResult hensel(const RunConfig& cfg) {
    return timed("hensel", [&](SuiteResult& r) {
        Rng rng = stream(cfg, kHensel);
        const CorpusConfig cc = cfg.corpus_config();
        CorpusConfig qc = cc; // lifts over Q((t)); tower coefficients only in the root instances
        qc.tower_vars = 0;
        for (long i = 0; i < cfg.hensel_instances; ++i) {
            gen::HenselInstance inst = gen::hensel_instance(rng, qc);
            auto what = [&] { return "lift f = " + inst.f.to_string() + " at " + inst.alpha.to_string(); };
            r.guarded(
                [&] {
                    Series root = hensel_lift(inst.f, inst.alpha, cfg.prec);
                    bool ok = inst.f.eval(root).vanishes_below(cfg.prec) && root.residue() == inst.alpha.residue();
                    r.record(ok, what);
                },
                what);
        }
        for (long i = 0; i < cfg.root_instances; ++i) {
            long n = rng.range(2, 5);
            ResidueElem rho = rng.chance(1, 10) ? ResidueElem::u(1) : ResidueElem(rng.small_nonzero_rational());
            Series a = Series(rho.pow(n)) + Series::monomial(1, 1) * gen::o_element(rng, cc);
            auto what = [&] { return "root n = " + std::to_string(n) + " of " + a.to_string(); };
            r.guarded(
                [&] {
                    Series root = nth_root(a, n, rho, cfg.prec);
                    r.record((root.pow(n) - a).vanishes_below(cfg.prec) && root.residue() == rho, what);
                },
                what);
        }
    });
}

/// c t^j is an n-th power iff n | j, and the quotient has exactly n classes.
inline SuiteResult nth_power(const RunConfig& cfg) {
    return timed("nth_power", [&](SuiteResult& r) {
        Rng rng = stream(cfg, kNthPower);
        const CorpusConfig cc = cfg.corpus_config();
        for (long n = 2; n <= 5; ++n) {
            std::vector<Series> elems;
            std::vector<long> js;
            for (long j = -6; j <= 6; ++j)
                for (int i = 0; i < 10; ++i) {
                    Series a = gen::unit(rng, cc) * Series::monomial(1, j);
                    bool got = is_nth_power(a, n);
                    r.record(got == (j % n == 0), [&] {
                        return "is_nth_power(" + a.to_string() + ", " + std::to_string(n) + ") = " + (got ? "true" : "false");
                    });
                    if (i == 0) {
                        elems.push_back(a);
                        js.push_back(j);
                    }
                }
            // Classes of K*/P_n(K*): a ~ b iff a / b is an n-th power.
            std::vector<std::size_t> reps;
            for (std::size_t k = 0; k < elems.size(); ++k) {
                bool found = false;
                for (std::size_t rep : reps)
                    if (is_nth_power(elems[k] * s_inv(elems[rep], cfg.prec), n)) {
                        found = true;
                        break;
                    }
                if (!found) reps.push_back(k);
            }
            r.record(static_cast<long>(reps.size()) == n, [&] {
                return "n = " + std::to_string(n) + ": " + std::to_string(reps.size()) + " classes";
            });
        }
    });
}

inline SuiteResult gl(const RunConfig& cfg, std::size_t n) {
    return timed("gl_n" + std::to_string(n), [&](SuiteResult& r) {
        Rng rng = stream(cfg, kGl, n);
        const CorpusConfig cc = cfg.corpus_config();
        CorpusConfig mc = cc; // matrices have rational coefficients
        mc.tower_vars = 0;

        // (a) the residue map is a group homomorphism
        for (long i = 0; i < cfg.gl_pairs; ++i) {
            OMatrix a = gen::gl_any(rng, mc, n), b = gen::gl_any(rng, mc, n);
            auto what = [&] { return "pair " + a.to_string() + ", " + b.to_string(); };
            r.guarded(
                [&] {
                    bool mul = res_mat(mat_mul(a, b)) == res_mat(a) * res_mat(b);
                    bool inv = res_mat(mat_inv(a, cfg.prec)) == res_mat(a).inverse();
                    bool sec = res_mat(lift_mat(res_mat(a))) == res_mat(a);
                    r.record(mul && inv && sec, what);
                },
                what);
        }

        const GenericTuple gt = generic_gl(n, base_tower());
        std::vector<Formula> formulas;
        for (long i = 0; i < cfg.gl_formulas; ++i) formulas.push_back(gen::multi_atom(rng, cc, n));
        std::vector<int> base(formulas.size(), -1);
        for (std::size_t i = 0; i < formulas.size(); ++i)
            r.guarded([&] { base[i] = in_p_G(formulas[i], gt) ? 1 : 0; }, [&] { return label(i, formulas[i]); });

        // n = 1: the generic type of GL(1, O) is p_trans
        if (n == 1)
            for (std::size_t i = 0; i < formulas.size(); ++i)
                if (base[i] >= 0)
                    r.guarded([&] { r.record(in_p_trans(formulas[i]) == (base[i] == 1), [&] { return label(i, formulas[i]); }); },
                              [&] { return label(i, formulas[i]); });

        // (b) invariance under left translation
        for (long k = 0; k < cfg.gl_translations; ++k) {
            OMatrix h = gen::gl_exact(rng, mc, n);
            for (std::size_t i = 0; i < formulas.size(); ++i) {
                if (base[i] < 0) continue;
                auto what = [&] { return label(i, formulas[i]) + " translated by " + h.to_string(); };
                r.guarded([&] { r.record(in_p_G(left_translate(formulas[i], h), gt) == (base[i] == 1), what); }, what);
            }
        }

        // (c) domination: any lift of res(g*) has the same type
        for (long k = 0; k < cfg.gl_perturbations; ++k) {
            OMatrix m = gen::small_matrix(rng, n);
            OMatrix lifted = perturb(gt, m);
            for (std::size_t i = 0; i < formulas.size(); ++i) {
                if (base[i] < 0) continue;
                auto what = [&] { return label(i, formulas[i]) + " at perturbation " + m.to_string(); };
                r.guarded([&] { r.record(evaluate(formulas[i], lifted.entries()) == truth_of(base[i] == 1), what); }, what);
            }
        }
    });
}

/// find_witness yields a rational point satisfying each res-cofinite formula.
inline SuiteResult witness(const RunConfig&, const std::vector<Formula>& corpus) {
    return timed("witness", [&](SuiteResult& r) {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const Formula& phi = corpus[i];
            r.guarded(
                [&] {
                    if (!in_p_trans(phi)) return;
                    Series w = find_witness(phi);
                    bool rational = w.is_exact() && w.max_tower_var() == 0;
                    r.record(rational && evaluate(phi, w) == Truth::True, [&] { return label(i, phi) + " at " + w.to_string(); });
                },
                [&] { return label(i, phi); });
        }
    });
}

/// All suites, sorted by name.
inline std::vector<SuiteResult> run_all(const RunConfig& cfg) {
    cfg.validate();
    const std::vector<Formula> c = corpus(cfg);
    std::vector<SuiteResult> out;
    out.push_back(definability(cfg));
    out.push_back(dichotomy(cfg, c));
    for (std::size_t n = 1; n <= 3; ++n) out.push_back(gl(cfg, n));
    out.push_back(hensel(cfg));
    out.push_back(nth_power(cfg));
    out.push_back(oracle_triangle(cfg, c));
    out.push_back(translation(cfg, c));
    out.push_back(witness(cfg, c));
    return out;
}

inline nlohmann::ordered_json report(const RunConfig& cfg, const std::vector<SuiteResult>& results) {
    nlohmann::ordered_json j;
    j["seed"] = cfg.seed;
    bool all = true;
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (const auto& r : results) {
        s[r.name] = r.to_json();
        all = all && r.pass();
    }
    j["suites"] = s;
    j["pass"] = all;
    return j;
}

} // namespace suites
} // namespace valring

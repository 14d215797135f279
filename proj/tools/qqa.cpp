// qqa: evaluate, classify and measure digit functions with joining structure.
//
// Exit codes: 0 success, 2 flag/parse error, 3 precondition violation,
// 4 mathematical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qqa/catalog.hpp"
#include "qqa/errors.hpp"
#include "qqa/quasi.hpp"
#include "qqa/stats.hpp"

using nlohmann::json;
using namespace qqa;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QQA_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

Integer parse_integer(const std::string& s) {
    try {
        return Integer(s);
    } catch (const std::invalid_argument&) {
        throw PreconditionError("not an integer: " + s);
    }
}

json verdict_json(const Verdict& v) {
    json j;
    j["passed"] = v.passed;
    j["trials"] = v.trials;
    if (v.counterexample) {
        j["counterexample"] = {
            {"a", v.counterexample->a.get_str()},
            {"b", v.counterexample->b.get_str()},
            {"k", v.counterexample->k},
            {"joint", format_rational(v.counterexample->joint)},
            {"combined", format_rational(v.counterexample->combined)},
        };
    }
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"q-quasiadditive / q-quasimultiplicative digit function toolkit"};
    app.require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a catalog function");
    std::string eval_fn;
    std::string eval_n;
    eval_cmd->add_option("--fn", eval_fn, "catalog function name")->required();
    eval_cmd->add_option("--n", eval_n, "nonnegative integer argument")->required();

    // split
    auto* split_cmd = app.add_subcommand("split", "decompose the expansion at zero runs");
    std::string split_fn, split_n;
    split_cmd->add_option("--fn", split_fn, "catalog function name")->required();
    split_cmd->add_option("--n", split_n, "nonnegative integer argument")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "sample the joining identity");
    std::string verify_fn;
    unsigned verify_r = 0;
    bool verify_r_set = false;
    unsigned long verify_trials = 10000;
    std::uint64_t verify_seed = default_seed();
    bool verify_search = false;
    verify_cmd->add_option("--fn", verify_fn)->required();
    verify_cmd->add_option("--r", verify_r, "parameter (defaults to the declared one)")
        ->each([&](const std::string&) { verify_r_set = true; });
    verify_cmd->add_option("--trials", verify_trials);
    verify_cmd->add_option("--seed", verify_seed);
    verify_cmd->add_flag("--exhaustive", verify_search, "bounded exhaustive counterexample search instead of sampling");

    // classify-linrep
    auto* cl_cmd = app.add_subcommand("classify-linrep", "classify a linear representation file");
    std::string cl_file, cl_kind = "mult";
    unsigned cl_rmax = 8;
    bool cl_minimize = false;
    cl_cmd->add_option("--file", cl_file, "JSON representation")->required();
    cl_cmd->add_option("--kind", cl_kind, "mult | add")->check(CLI::IsMember({"mult", "add"}));
    cl_cmd->add_option("--rmax", cl_rmax);
    cl_cmd->add_flag("--minimize", cl_minimize, "minimize before classifying");

    // classify-transducer
    auto* ct_cmd = app.add_subcommand("classify-transducer", "check the reset-sequence condition");
    std::string ct_file;
    unsigned ct_r = 0;
    bool ct_r_set = false;
    unsigned ct_rmax = 8;
    ct_cmd->add_option("--file", ct_file, "JSON transducer")->required();
    ct_cmd->add_option("--r", ct_r, "single parameter to test")
        ->each([&](const std::string&) { ct_r_set = true; });
    ct_cmd->add_option("--rmax", ct_rmax, "search least passing r up to this bound");

    // constants
    auto* co_cmd = app.add_subcommand("constants", "limit-law constants");
    std::string co_fn, co_method = "exact";
    unsigned co_r = 0;
    bool co_r_set = false;
    unsigned co_L = 24, co_k = 1000, co_cutoff = 60;
    unsigned long co_samples = 10000;
    std::uint64_t co_seed = default_seed();
    co_cmd->add_option("--fn", co_fn)->required();
    co_cmd->add_option("--method", co_method)->check(CLI::IsMember({"exact", "truncated", "montecarlo", "runlength"}));
    co_cmd->add_option("--r", co_r)->each([&](const std::string&) { co_r_set = true; });
    co_cmd->add_option("--L", co_L, "truncation length for --method truncated");
    co_cmd->add_option("--cutoff", co_cutoff, "index cutoff for --method runlength");
    co_cmd->add_option("--k", co_k, "digit count for --method montecarlo");
    co_cmd->add_option("--samples", co_samples);
    co_cmd->add_option("--seed", co_seed);

    // experiment
    auto* ex_cmd = app.add_subcommand("experiment", "standardized sampling experiment");
    std::string ex_fn, ex_bound, ex_hist;
    unsigned ex_k = 64;
    unsigned long ex_samples = 100000;
    std::uint64_t ex_seed = default_seed();
    double ex_mu = 0, ex_sigma2 = 0;
    bool ex_have_mu = false, ex_have_sigma2 = false;
    ex_cmd->add_option("--fn", ex_fn)->required();
    ex_cmd->add_option("--k", ex_k, "digit count scale");
    ex_cmd->add_option("--bound", ex_bound, "integer bound scale (overrides --k)");
    ex_cmd->add_option("--samples", ex_samples);
    ex_cmd->add_option("--seed", ex_seed);
    ex_cmd->add_option("--mu", ex_mu, "reference constant (default: computed)")
        ->each([&](const std::string&) { ex_have_mu = true; });
    ex_cmd->add_option("--sigma2", ex_sigma2, "reference constant (default: computed)")
        ->each([&](const std::string&) { ex_have_sigma2 = true; });
    ex_cmd->add_option("--hist", ex_hist, "write histogram CSV to this path");

    // catalog
    auto* cat_cmd = app.add_subcommand("catalog", "list catalog entries");
    std::string cat_export, cat_what = "transducer";
    cat_cmd->add_option("--export", cat_export, "write the named entry's evaluator to stdout");
    cat_cmd->add_option("--what", cat_what)->check(CLI::IsMember({"transducer", "linrep"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help exits cleanly, bad flags exit 2
    }

    if (*eval_cmd) {
        const auto& f = catalog_entry(eval_fn);
        std::cout << format_rational(f.evaluator(parse_integer(eval_n))) << "\n";
        return 0;
    }

    if (*split_cmd) {
        const auto& f = catalog_entry(split_fn);
        Integer n = parse_integer(split_n);
        SplitDecomposition d = split(n, f.base, f.parameter);
        json j;
        j["n"] = n.get_str();
        j["q"] = d.base;
        j["r"] = d.parameter;
        json parts = json::array(), reduced = json::array(), blocks = json::array();
        for (const auto& p : d.parts) parts.push_back(p.get_str());
        for (const auto& m : d.reduced) reduced.push_back(m.get_str());
        for (const auto& b : d.blocks) {
            std::string s;
            for (int digit : b) s += static_cast<char>('0' + digit);
            blocks.push_back(s);
        }
        j["blocks"] = blocks;
        j["parts"] = parts;
        j["reduced"] = reduced;
        j["split_value"] = format_rational(split_evaluate(f, n));
        j["direct_value"] = format_rational(f.evaluator(n));
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    if (*verify_cmd) {
        const auto& f = catalog_entry(verify_fn);
        unsigned r = verify_r_set ? verify_r : f.parameter;
        if (verify_search) {
            auto cx = find_counterexample(f, r);
            Verdict v;
            v.passed = !cx.has_value();
            v.counterexample = cx;
            json j = verdict_json(v);
            j["mode"] = "exhaustive";
            j["r"] = r;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        Verdict v = verify_definition(f, r, verify_trials, verify_seed);
        json j = verdict_json(v);
        j["mode"] = "sampled";
        j["r"] = r;
        j["seed"] = verify_seed;
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    if (*cl_cmd) {
        LinearRepresentation rep = load_linrep(cl_file);
        if (cl_minimize) rep = minimize(stabilize(rep));
        Kind kind = cl_kind == "mult" ? Kind::multiplicative : Kind::additive;
        json j;
        j["file"] = cl_file;
        j["kind"] = cl_kind;
        j["dimension"] = rep.dim;
        j["zero_insensitive"] = is_zero_insensitive(rep);
        auto r = min_parameter(rep, kind, cl_rmax);
        if (r) j["r"] = *r; else j["r"] = nullptr;
        if (kind == Kind::additive) {
            j["certificate"] = {{"dim_U", affine_closure_u(rep).dim()},
                                {"dim_V", affine_closure_v(rep).dim()},
                                {"u_dot_v", format_rational(dot(rep.u, rep.v))}};
        } else if (r) {
            j["certificate"] = {{"matrix_condition", "M_0^" + std::to_string(*r) + " = v u^t"}};
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    if (*ct_cmd) {
        Transducer t = load_transducer(ct_file);
        json j;
        j["file"] = ct_file;
        auto report_json = [](unsigned r, const ResetReport& rep) {
            json rj;
            rj["r"] = r;
            rj["condition1"] = rep.condition1;
            rj["condition2"] = rep.condition2;
            rj["condition3"] = rep.condition3;
            rj["pass"] = rep.pass();
            rj["has_reset"] = rep.has_reset;
            if (rep.has_reset) rj["target"] = rep.target;
            return rj;
        };
        if (ct_r_set) {
            j["report"] = report_json(ct_r, check_reset_condition(t, ct_r));
        } else {
            json reports = json::array();
            std::optional<unsigned> least;
            for (unsigned r = 0; r <= ct_rmax; ++r) {
                ResetReport rep = check_reset_condition(t, r);
                reports.push_back(report_json(r, rep));
                if (!least && rep.pass()) least = r;
            }
            j["reports"] = reports;
            if (least) j["least_passing_r"] = *least; else j["least_passing_r"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    if (*co_cmd) {
        const auto& f = catalog_entry(co_fn);
        std::optional<unsigned> r;
        if (co_r_set) r = co_r;
        ConstantsResult c;
        if (co_method == "exact") {
            c = exact_constants_additive(f, r);
        } else if (co_method == "truncated") {
            c = truncated_constants(f, r.value_or(std::max(f.parameter, 1u)), co_L);
        } else if (co_method == "montecarlo") {
            c = monte_carlo_constants(f, co_k, co_samples, co_seed);
        } else {
            if (co_fn != "runlength_jacobsthal")
                throw PreconditionError("constants --method runlength supports the run length transform entries only");
            c = runlength_constants(jacobsthal_sequence(), co_cutoff);
        }
        std::cout << to_json(c) << "\n";
        return 0;
    }

    if (*ex_cmd) {
        const auto& f = catalog_entry(ex_fn);
        Scale scale = ex_bound.empty() ? Scale::power(ex_k) : Scale::upto(parse_integer(ex_bound));
        double mu = ex_mu, sigma2 = ex_sigma2;
        if (!ex_have_mu || !ex_have_sigma2) {
            if (f.kind == Kind::additive && (f.transducer || f.representation)) {
                ConstantsResult c = exact_constants_additive(f);
                if (!ex_have_mu) mu = c.mu;
                if (!ex_have_sigma2) sigma2 = c.sigma2;
            } else {
                ConstantsResult c = monte_carlo_constants(f, 256, 4000, ex_seed + 1);
                if (!ex_have_mu) mu = c.mu;
                if (!ex_have_sigma2) sigma2 = c.sigma2;
            }
        }
        ExperimentResult e = clt_experiment(f, scale, ex_samples, ex_seed, mu, sigma2);
        if (!ex_hist.empty()) {
            std::ofstream out(ex_hist);
            if (!out) throw PreconditionError("cannot write file: " + ex_hist);
            out << histogram_csv(e);
        }
        std::cout << to_json(e) << "\n";
        return 0;
    }

    if (*cat_cmd) {
        if (!cat_export.empty()) {
            const auto& f = catalog_entry(cat_export);
            if (cat_what == "transducer") {
                if (!f.transducer) throw PreconditionError(cat_export + " has no transducer");
                std::cout << to_json(*f.transducer) << "\n";
            } else {
                if (!f.representation) throw PreconditionError(cat_export + " has no linear representation");
                std::cout << to_json(*f.representation) << "\n";
            }
            return 0;
        }
        json entries = json::array();
        for (const auto& f : catalog_entries()) {
            entries.push_back(json{
                {"name", f.name},
                {"q", f.base},
                {"kind", f.kind == Kind::additive ? "additive" : "multiplicative"},
                {"parameter", f.parameter},
                {"growth", f.growth == GrowthClass::logarithmic ? "logarithmic" : "polynomial"},
                {"has_linrep", f.representation.has_value()},
                {"has_transducer", f.transducer.has_value()},
            });
        }
        std::cout << entries.dump(2) << "\n";
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 3;
    } catch (const MathError& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

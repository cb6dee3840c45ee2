// fp: finite parts of divergent volume-form integrals on complex projective
// space, by symbolic term expansion, closed-form gamma series, and numeric
// quadrature, with cross-checks between the routes.

#include <fp/gamma.hpp>
#include <fp/grassmann.hpp>
#include <fp/json_io.hpp>
#include <fp/pipeline.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <iostream>

using namespace fp;
using json = nlohmann::json;

namespace {

QuadratureSpec spec_from(unsigned long long seed, double tol, bool serial) {
    QuadratureSpec s;
    s.seed           = seed;
    s.target_rel_tol = tol;
    s.parallel       = !serial;
    return s;
}

void print_result(const FinitePartResult& r, bool as_json) {
    if (as_json) {
        std::cout << r.to_json_string() << "\n";
        return;
    }
    std::printf("n=%d route=%s\n", r.n, route_name(r.route).c_str());
    if (r.has_exact) std::printf("  exact: %s\n", r.exact.str().c_str());
    std::printf("  value: %.17g\n", r.float_value);
    std::printf("  est_error: %.3g  converged: %s\n", r.error_estimate,
                r.all_converged ? "yes" : "no");
    for (const auto& t : r.per_term)
        std::printf("    %-22s % .12e  %s%s\n", t.id.c_str(), t.value,
                    t.exact ? "exact" : "quad", t.converged ? "" : "  NOT CONVERGED");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite parts of divergent integrals on projective space"};
    app.require_subcommand(1);

    unsigned long long seed = 20240811ull;
    double tol              = 1e-10;
    bool   as_json          = false;
    bool   serial           = false;
    app.add_option("--seed", seed, "seed for the 3-D quadrature shifts")->capture_default_str();
    app.add_option("--tol", tol, "target relative tolerance")->capture_default_str();
    app.add_flag("--json", as_json, "emit JSON");
    app.add_flag("--serial", serial, "disable OpenMP node evaluation");

    // ---- run ----
    auto* run = app.add_subcommand("run", "compute the finite part by one or all routes");
    int run_n = 2;
    std::string run_route = "all";
    std::string cache_dir;
    run->add_option("--n", run_n, "projective dimension")->required();
    run->add_option("--route", run_route, "pipeline|closed-form|fit|all")->capture_default_str();
    run->add_option("--cache-dir", cache_dir, "advisory JSON result cache directory");

    // ---- closed-form ----
    auto* cf = app.add_subcommand("closed-form", "gamma-series closed form of the finite part");
    int cf_n = 2, cf_trunc = -1;
    cf->add_option("--n", cf_n, "projective dimension")->required();
    cf->add_option("--trunc", cf_trunc, "series truncation order (default n+6)");

    // ---- expand ----
    auto* ex = app.add_subcommand("expand", "emit the term list of the degree-zero expansion");
    int  ex_n      = 2;
    bool ex_reduce = false;
    ex->add_option("--n", ex_n, "projective dimension")->required();
    ex->add_flag("--reduce", ex_reduce, "also reduce each class to integrable terms");

    // ---- verify-conjecture ----
    auto* vc = app.add_subcommand("verify-conjecture", "pointwise volume-form decomposition check");
    int vc_n = 2, vc_points = 100;
    double vc_tol = 1e-9;
    unsigned long long vc_seed = 20240811ull;
    vc->add_option("--n", vc_n)->required();
    vc->add_option("--points", vc_points)->capture_default_str();
    vc->add_option("--seed", vc_seed)->capture_default_str();
    vc->add_option("--tol", vc_tol)->capture_default_str();

    // ---- sample-zeta ----
    auto* sz = app.add_subcommand("sample-zeta", "quadrature sample of the sampling function");
    int sz_n = 1;
    double sz_lambda = 1.0;
    sz->add_option("--n", sz_n)->required();
    sz->add_option("--lambda", sz_lambda)->required();

    // ---- fit ----
    auto* ft = app.add_subcommand("fit", "Laurent coefficients from zeta-function samples");
    int ft_n = 1;
    std::string ft_grid = "0.05:0.6:12";
    int ft_degree = 6;
    ft->add_option("--n", ft_n)->required();
    ft->add_option("--grid", ft_grid, "lo:hi:count sample grid")->capture_default_str();
    ft->add_option("--degree", ft_degree, "fit polynomial degree")->capture_default_str();

    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();
    CLI11_PARSE(app, argc, argv);
    QuadratureSpec spec = spec_from(seed, tol, serial);

    try {
        if (*run) {
            if (run_route == "all") {
                auto rep = cross_check(run_n, spec, cache_dir);
                if (as_json) {
                    std::cout << rep.to_json_string() << "\n";
                } else {
                    for (const auto& r : rep.results) print_result(r, false);
                    for (const auto& c : rep.comparisons)
                        std::printf("  %s vs %s: dev %.3e (%s tol %.1e)  %s\n", c.route_a.c_str(),
                                    c.route_b.c_str(), c.deviation,
                                    c.absolute_mode ? "abs" : "rel", c.tol,
                                    c.pass ? "PASS" : "FAIL");
                    std::printf("cross-check: %s\n", rep.pass ? "PASS" : "FAIL");
                }
                return rep.pass ? 0 : 1;
            }
            auto route = route_from_name(run_route);
            if (!route) {
                std::cerr << "unknown route: " << run_route << "\n";
                return 2;
            }
            print_result(finite_part(run_n, *route, spec, cache_dir), as_json);
            return 0;
        }

        if (*cf) {
            auto r = closed_form_fp(cf_n, cf_trunc);
            if (as_json) {
                json j;
                j["n"]           = cf_n;
                j["finite_part"] = json::parse(r.finite_part.to_json_string());
                j["finite_part_str"] = r.finite_part.str();
                j["float_value"] = r.finite_part.is_zero() ? 0.0 : r.finite_part.eval();
                j["series"]      = series_to_json(r.series);
                json series_str  = json::array();
                for (int k = 0; k <= r.series.trunc_order(); ++k)
                    series_str.push_back(r.series.coeff(k).str());
                j["series_str"] = series_str;
                std::cout << j.dump(2) << "\n";
            } else {
                std::printf("fp on P^%d = %s\n", cf_n, r.finite_part.str().c_str());
                std::printf("          = %.17g\n",
                            r.finite_part.is_zero() ? 0.0 : r.finite_part.eval());
                std::printf("series F(x) = x^n Gamma(x)^{n+1} / Gamma((n+1)x):\n");
                for (int k = 0; k <= r.series.trunc_order(); ++k)
                    std::printf("  [x^%d] %s\n", k, r.series.coeff(k).str().c_str());
            }
            return 0;
        }

        if (*ex) {
            auto classes = symmetry_reduce(generate_terms(ex_n));
            if (as_json) {
                json j;
                j["n"]       = ex_n;
                json terms   = json::array();
                for (const auto& c : classes) {
                    json t = json::parse(c.to_json_string());
                    if (ex_reduce) {
                        json rts = json::array();
                        for (const auto& rt : reduce_term(c))
                            rts.push_back(json::parse(rt.to_json_string()));
                        t["reduced"] = rts;
                    }
                    terms.push_back(t);
                }
                j["classes"] = terms;
                std::cout << j.dump(2) << "\n";
            } else {
                std::printf("%zu symmetry classes on P^%d\n", classes.size(), ex_n);
                for (const auto& c : classes) {
                    std::printf("  fs=%d l'=%d comp=[", c.fs_power, c.log_power);
                    for (size_t i = 0; i < c.composition.size(); ++i)
                        std::printf("%s%d", i ? "," : "", c.composition[i]);
                    std::printf("] mult=%s\n", rational_str(c.multiplicity).c_str());
                    if (ex_reduce)
                        for (const auto& rt : reduce_term(c))
                            std::printf("    -> %s\n", rt.to_json_string().c_str());
                }
            }
            return 0;
        }

        if (*vc) {
            auto rep = check_conjecture(vc_n, vc_points, vc_seed, vc_tol);
            if (as_json) {
                json j;
                j["n"]           = rep.n;
                j["points"]      = rep.points;
                j["seed"]        = rep.seed;
                j["tol"]         = rep.tol;
                j["max_rel_dev"] = rep.max_rel_dev;
                j["pass"]        = rep.pass;
                std::cout << j.dump(2) << "\n";
            } else {
                std::printf("n=%d points=%d seed=%llu max_rel_dev=%.3e tol=%.1e  %s\n", rep.n,
                            rep.points, rep.seed, rep.max_rel_dev, rep.tol,
                            rep.pass ? "PASS" : "FAIL");
            }
            return rep.pass ? 0 : 1;
        }

        if (*sz) {
            auto zs = sample_zeta(sz_n, sz_lambda, spec);
            if (as_json) {
                json j;
                j["n"]         = zs.n;
                j["lambda"]    = zs.lambda;
                j["value"]     = zs.value;
                j["est_error"] = zs.est_error;
                j["converged"] = zs.converged;
                j["spec"]      = json::parse(spec.to_json_string());
                std::cout << j.dump(2) << "\n";
            } else {
                std::printf("Z(%g) on P^%d = %.15g  (est err %.2e)\n", zs.lambda, zs.n, zs.value,
                            zs.est_error);
            }
            return 0;
        }

        if (*ft) {
            double lo = 0.05, hi = 0.6;
            int count = 12;
            if (std::sscanf(ft_grid.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3) {
                std::cerr << "bad --grid, expected lo:hi:count\n";
                return 2;
            }
            std::vector<ZetaSample> samples;
            for (int i = 0; i < count; ++i) {
                double lam = (count == 1) ? lo : lo + (hi - lo) * i / (count - 1);
                samples.push_back(sample_zeta(ft_n, lam, spec));
            }
            auto fit = fit_laurent(samples, ft_n, ft_degree);
            if (as_json) {
                json j;
                j["n"]      = ft_n;
                j["grid"]   = ft_grid;
                j["degree"] = ft_degree;
                j["series"] = series_to_json(fit.series);
                j["condition"]       = fit.condition;
                j["ill_conditioned"] = fit.ill_conditioned;
                j["max_residual"]    = fit.max_residual;
                j["spec"]            = json::parse(spec.to_json_string());
                std::cout << j.dump(2) << "\n";
            } else {
                std::printf("fit on P^%d, grid %s, degree %d (cond %.2e%s)\n", ft_n,
                            ft_grid.c_str(), ft_degree, fit.condition,
                            fit.ill_conditioned ? ", ILL-CONDITIONED" : "");
                for (int k = fit.series.min_order(); k <= fit.series.trunc_order(); ++k)
                    std::printf("  coeff[%+d] = %.12g\n", k, fit.series.coeff(k));
            }
            return fit.ill_conditioned ? 1 : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

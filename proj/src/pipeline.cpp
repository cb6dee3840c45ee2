#include <fp/pipeline.hpp>

#include <fp/gamma.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fp {

using json = nlohmann::json;

std::string route_name(Route r) {
    switch (r) {
        case Route::pipeline: return "pipeline";
        case Route::closed_form: return "closed_form";
        case Route::quadrature_fit: return "quadrature_fit";
    }
    return "?";
}

std::optional<Route> route_from_name(const std::string& s) {
    if (s == "pipeline") return Route::pipeline;
    if (s == "closed_form" || s == "closed-form") return Route::closed_form;
    if (s == "quadrature_fit" || s == "fit") return Route::quadrature_fit;
    return std::nullopt;
}

std::string FinitePartResult::to_json_string() const {
    json j;
    j["n"]              = n;
    j["route"]          = route_name(route);
    j["exact"]          = has_exact ? json::parse(exact.to_json_string()) : json();
    j["exact_str"]      = has_exact ? exact.str() : "";
    j["float_value"]    = float_value;
    j["error_estimate"] = error_estimate;
    j["all_converged"]  = all_converged;
    json terms = json::array();
    for (const auto& t : per_term) {
        terms.push_back({{"id", t.id},
                         {"value", t.value},
                         {"est_error", t.est_error},
                         {"exact", t.exact},
                         {"converged", t.converged}});
    }
    j["per_term"] = terms;
    j["spec"]     = spec_echo.empty() ? json() : json::parse(spec_echo);
    return j.dump(2);
}

FinitePartResult FinitePartResult::from_json_string(const std::string& s) {
    json j = json::parse(s);
    FinitePartResult r;
    r.n           = j.at("n").get<int>();
    r.route       = route_from_name(j.at("route").get<std::string>()).value();
    r.has_exact   = !j.at("exact").is_null();
    if (r.has_exact) r.exact = ZetaExpr::from_json_string(j.at("exact").dump());
    r.float_value    = j.at("float_value").get<double>();
    r.error_estimate = j.at("error_estimate").get<double>();
    r.all_converged  = j.at("all_converged").get<bool>();
    for (const auto& t : j.at("per_term")) {
        PerTermValue p;
        p.id        = t.at("id").get<std::string>();
        p.value     = t.at("value").get<double>();
        p.est_error = t.at("est_error").get<double>();
        p.exact     = t.at("exact").get<bool>();
        p.converged = t.at("converged").get<bool>();
        r.per_term.push_back(std::move(p));
    }
    if (!j.at("spec").is_null()) r.spec_echo = j.at("spec").dump();
    return r;
}

namespace {

std::string class_label(const Term& cls) {
    std::ostringstream os;
    os << "fs" << cls.fs_power << "_lp" << cls.log_power << "_c";
    for (int l : cls.composition) os << (l < 0 ? "m" : "") << std::abs(l);
    return os.str();
}

std::filesystem::path cache_path(const std::string& dir, int n, Route route,
                                 const QuadratureSpec& spec) {
    std::ostringstream os;
    os << "fp_n" << n << "_" << route_name(route) << "_" << std::hex << spec.hash() << ".json";
    return std::filesystem::path(dir) / os.str();
}

FinitePartResult run_pipeline(int n, const QuadratureSpec& spec) {
    if (n < 1 || n > 3) throw std::invalid_argument("finite_part: pipeline route requires n <= 3");
    FinitePartResult out;
    out.n         = n;
    out.route     = Route::pipeline;
    out.spec_echo = spec.to_json_string();
    out.has_exact = true;

    auto classes = symmetry_reduce(generate_terms(n));
    for (const auto& cls : classes) {
        auto rts = reduce_term(cls);
        int idx  = 0;
        for (const auto& rt : rts) {
            auto v = eval_reduced_term(rt, spec);
            PerTermValue p;
            p.id        = class_label(cls) + "_t" + std::to_string(idx++);
            p.value     = v.value;
            p.est_error = v.est_error;
            p.exact     = v.exact;
            p.converged = v.converged;
            out.per_term.push_back(p);
            if (v.exact) {
                out.exact += v.exact_value;
            } else {
                out.has_exact = false;
                out.all_converged = out.all_converged && v.converged;
            }
            out.error_estimate += v.est_error;
        }
    }
    double total = 0.0;
    for (const auto& p : out.per_term) total += p.value;
    out.float_value = total;
    if (!out.has_exact) out.exact = ZetaExpr();
    return out;
}

FinitePartResult run_closed_form(int n) {
    FinitePartResult out;
    out.n           = n;
    out.route       = Route::closed_form;
    out.has_exact   = true;
    auto r          = closed_form_fp(n);
    out.exact       = r.finite_part;
    out.float_value = r.finite_part.is_zero() ? 0.0 : r.finite_part.eval();
    return out;
}

FinitePartResult run_fit(int n, const QuadratureSpec& spec) {
    if (n < 1 || n > 2) throw std::invalid_argument("finite_part: fit route requires n <= 2");
    FinitePartResult out;
    out.n         = n;
    out.route     = Route::quadrature_fit;
    out.spec_echo = spec.to_json_string();

    std::vector<ZetaSample> samples;
    for (int i = 1; i <= 12; ++i) samples.push_back(sample_zeta(n, 0.05 * i, spec));
    // degree 6 on the 12-point grid: the bare 2n fit leaves ~16% (n=2) resp.
    // ~0.11 absolute (n=1) model truncation on the lambda^0 coefficient;
    // degree 6 brings both inside the documented tolerances
    auto fit        = fit_laurent(samples, n, 6);
    out.float_value = fit.series.coeff(0);
    out.error_estimate = fit.max_residual + (fit.ill_conditioned ? 1e300 : 0.0);
    out.all_converged  = !fit.ill_conditioned;
    return out;
}

}  // namespace

FinitePartResult finite_part(int n, Route route, const QuadratureSpec& spec,
                             const std::string& cache_dir) {
    if (!cache_dir.empty()) {
        auto p = cache_path(cache_dir, n, route, spec);
        if (std::filesystem::exists(p)) {
            std::ifstream in(p);
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                return FinitePartResult::from_json_string(ss.str());
            } catch (...) {
                // stale or foreign cache entry: recompute
            }
        }
    }
    FinitePartResult out;
    switch (route) {
        case Route::pipeline: out = run_pipeline(n, spec); break;
        case Route::closed_form: out = run_closed_form(n); break;
        case Route::quadrature_fit: out = run_fit(n, spec); break;
    }
    if (!cache_dir.empty()) {
        std::filesystem::create_directories(cache_dir);
        std::ofstream f(cache_path(cache_dir, n, route, spec));
        f << out.to_json_string() << "\n";
    }
    return out;
}

std::string CrossCheckReport::to_json_string() const {
    json j;
    j["n"]    = n;
    j["pass"] = pass;
    json res  = json::array();
    for (const auto& r : results) res.push_back(json::parse(r.to_json_string()));
    j["results"] = res;
    json cmp     = json::array();
    for (const auto& c : comparisons) {
        cmp.push_back({{"route_a", c.route_a},
                       {"route_b", c.route_b},
                       {"deviation", c.deviation},
                       {"tol", c.tol},
                       {"absolute", c.absolute_mode},
                       {"pass", c.pass}});
    }
    j["comparisons"] = cmp;
    return j.dump(2);
}

CrossCheckReport cross_check(int n, const QuadratureSpec& spec, const std::string& cache_dir) {
    CrossCheckReport rep;
    rep.n = n;
    auto closed = finite_part(n, Route::closed_form, spec, cache_dir);
    rep.results.push_back(closed);

    auto compare = [&](const FinitePartResult& a, double tol, bool absolute) {
        RouteComparison c;
        c.route_a       = route_name(a.route);
        c.route_b       = "closed_form";
        c.tol           = tol;
        c.absolute_mode = absolute;
        double diff     = std::abs(a.float_value - closed.float_value);
        c.deviation     = absolute ? diff : diff / std::abs(closed.float_value);
        c.pass          = c.deviation <= tol;
        rep.comparisons.push_back(c);
        rep.pass = rep.pass && c.pass;
    };

    if (n <= 3) {
        auto pipe = finite_part(n, Route::pipeline, spec, cache_dir);
        rep.results.push_back(pipe);
        // n=1 vanishes identically, so the comparison is absolute there
        if (n == 1) compare(pipe, 1e-6, true);
        else if (n == 2) compare(pipe, 1e-4, false);
        else compare(pipe, 1e-2, false);
    }
    if (n <= 2) {
        auto fit = finite_part(n, Route::quadrature_fit, spec, cache_dir);
        rep.results.push_back(fit);
        // the fitted constant coefficient carries model-truncation error from
        // approximating a transcendental function by a polynomial through a
        // pole; for n=1 the target is 0 and the comparison stays absolute
        if (n == 1) compare(fit, 2e-2, true);
        else compare(fit, 2e-2, false);
    }
    return rep;
}

}  // namespace fp

#pragma once

#include <fp/quadrature.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fp {

enum class Route { pipeline, closed_form, quadrature_fit };

std::string route_name(Route r);
std::optional<Route> route_from_name(const std::string& s);

struct PerTermValue {
    std::string id;       // class label plus reduced-term index
    double value     = 0.0;
    double est_error = 0.0;
    bool   exact     = false;
    bool   converged = true;
};

struct FinitePartResult {
    int n = 0;
    Route route = Route::closed_form;
    bool has_exact = false;       // every contribution took an exact path
    ZetaExpr exact;               // meaningful iff has_exact
    double float_value    = 0.0;
    double error_estimate = 0.0;
    bool   all_converged  = true;
    std::vector<PerTermValue> per_term;  // pipeline route only
    std::string spec_echo;

    std::string to_json_string() const;
    static FinitePartResult from_json_string(const std::string& s);
};

// End-to-end finite part of the quasi-meromorphic volume form on P^n by the
// requested route.  Pipeline requires n <= 3, closed_form n <= 12,
// quadrature_fit n <= 2.  `cache_dir`, when nonempty, holds advisory JSON
// result files keyed by (n, route, spec hash).
FinitePartResult finite_part(int n, Route route, const QuadratureSpec& spec,
                             const std::string& cache_dir = "");

struct RouteComparison {
    std::string route_a, route_b;
    double deviation = 0.0;  // relative unless absolute_mode
    double tol       = 0.0;
    bool   absolute_mode = false;
    bool   pass      = false;
};

struct CrossCheckReport {
    int n = 0;
    std::vector<FinitePartResult> results;
    std::vector<RouteComparison> comparisons;
    bool pass = true;
    std::string to_json_string() const;
};

// Runs every route admissible for n and compares the values pairwise against
// the configured tolerances; failures are reported, not thrown.
CrossCheckReport cross_check(int n, const QuadratureSpec& spec, const std::string& cache_dir = "");

}  // namespace fp

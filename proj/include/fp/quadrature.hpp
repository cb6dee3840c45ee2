#pragma once

#include <fp/expansion.hpp>
#include <fp/laurent.hpp>
#include <fp/zring.hpp>

#include <functional>
#include <string>
#include <vector>

namespace fp {

// Deterministic quadrature configuration.  dim 1 and 2 use tanh-sinh
// (tensorized for 2); dim 3 uses seeded shift-randomized low-discrepancy
// points with a smoothing map, stratified into independent replicates that
// double as the error estimate.
struct QuadratureSpec {
    int    dim            = 1;
    int    max_level      = 11;      // 1-D tanh-sinh refinement cap
    int    max_level_2d   = 8;
    double target_rel_tol = 1e-10;
    int    points_3d      = 1 << 16; // per replicate
    int    replicates_3d  = 8;
    unsigned long long seed = 20240811ull;
    bool   parallel       = true;

    std::string to_json_string() const;
    uint64_t    hash() const;
};

struct QuadResult {
    double value     = 0.0;
    double est_error = 0.0;
    bool   converged = false;
    int    level     = 0;  // refinement level reached, or points used
};

// integrand over the open d-simplex; x has d entries, x0 = 1 - sum(x) is
// passed separately (computed in a cancellation-free way near the faces)
using SimplexFn = std::function<double(const double* x, double x0)>;

QuadResult integrate_simplex(int dim, const SimplexFn& f, const QuadratureSpec& spec);

// plain 1-D integral over (0,1); u and 1-u both supplied
QuadResult integrate_01(const std::function<double(double u, double one_minus_u)>& f,
                        const QuadratureSpec& spec);

// deterministic pairwise summation (bit-stable regardless of thread count)
double pairwise_sum(const double* v, size_t n);

// fills out[i] = f(i), OpenMP-parallel when requested; the reduction order of
// any subsequent sum is unaffected
void fill_values(size_t n, bool parallel, const std::function<double(size_t)>& f, double* out);

struct ZetaSample {
    int    n       = 0;
    double lambda  = 0.0;
    double value   = 0.0;
    double est_error = 0.0;
    bool   converged = true;
};

// Z(lambda) = int_{P^n} ||s||^{2 lambda} omega by quadrature of
// pi^n int_{R+^n} (t_1..t_n)^{lambda-1} (1+sum t)^{-(n+1) lambda} dt
// after the per-axis substitution x = t/(1+t).
ZetaSample sample_zeta(int n, double lambda, const QuadratureSpec& spec);

struct TermValue {
    bool     exact = false;
    ZetaExpr exact_value;       // set when exact
    double   value = 0.0;       // float value (eval of exact when exact)
    double   est_error = 0.0;
    bool     converged = true;
    int      level = 0;
};

// Evaluates one reduced term.  Ambient dimension <= 1 takes the exact path
// through beta_log_integral unless force_numeric is set; higher dimensions
// integrate the Grassmann-evaluated density over the simplex.
TermValue eval_reduced_term(const ReducedTerm& rt, const QuadratureSpec& spec,
                            bool force_numeric = false);

struct FitResult {
    LaurentSeries<double> series{0, 0, {0.0}};
    double condition      = 0.0;
    bool   ill_conditioned = false;
    double max_residual   = 0.0;
};

// Least-squares polynomial fit of lambda^n Z(lambda) of the given degree;
// returns the Laurent window [-n, degree-n].  Ill conditioning is reported,
// never silently ignored.
FitResult fit_laurent(const std::vector<ZetaSample>& samples, int pole_order, int degree,
                      double cond_threshold = 1e8);

}  // namespace fp

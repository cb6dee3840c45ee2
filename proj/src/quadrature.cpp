#include <fp/quadrature.hpp>

#include <fp/gamma.hpp>
#include <fp/grassmann.hpp>

#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace fp {

using json = nlohmann::json;

std::string QuadratureSpec::to_json_string() const {
    json j;
    j["dim"]            = dim;
    j["max_level"]      = max_level;
    j["max_level_2d"]   = max_level_2d;
    j["target_rel_tol"] = target_rel_tol;
    j["points_3d"]      = points_3d;
    j["replicates_3d"]  = replicates_3d;
    j["seed"]           = seed;
    j["parallel"]       = parallel;
    return j.dump();
}

uint64_t QuadratureSpec::hash() const {
    // FNV-1a over the canonical JSON echo; `parallel` does not change values
    // (bit-stable reduction) but participates anyway for transparency
    std::string s = to_json_string();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// ---------------------------------------------------------------------------
// tanh-sinh nodes
// ---------------------------------------------------------------------------

namespace {

struct TsNode {
    double x;    // in (0, 1/2], node is symmetric about 1/2
    double omx;  // 1 - x computed without cancellation
    double w;
};

// Nodes of the tanh-sinh rule on (0,1) at step h = 2^-level, positive half;
// t=0 is stored once in level 0's list.  Each level stores only the odd
// multiples of its step so levels can be accumulated.
const std::vector<TsNode>& ts_level(int level) {
    static std::vector<std::vector<TsNode>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<int>(cache.size()) <= level) {
        int l = static_cast<int>(cache.size());
        double h = std::ldexp(1.0, -l);
        std::vector<TsNode> nodes;
        int k = (l == 0) ? 0 : 1;
        int step = (l == 0) ? 1 : 2;
        for (;; k += step) {
            double t = k * h;
            double u = 0.5 * M_PI * std::sinh(t);
            // stop just short of denormal x; integrable endpoint power
            // singularities (x^(lambda-1) down to lambda ~ 0.05) still get
            // their full tail this way
            if (u > 345.0) break;
            TsNode nd;
            nd.x   = 1.0 / (1.0 + std::exp(2.0 * u));  // this is 1 - x(t) = x(-t)
            nd.omx = 1.0 / (1.0 + std::exp(-2.0 * u));
            double sech = 2.0 / (std::exp(u) + std::exp(-u));
            nd.w = 0.25 * M_PI * h * std::cosh(t) * sech * sech;
            if (nd.w == 0.0 || nd.x == 0.0) break;
            nodes.push_back(nd);
        }
        cache.push_back(std::move(nodes));
    }
    return cache[static_cast<size_t>(level)];
}

// Flat list of all nodes up to a level, both halves, with total weight scale.
struct TsGrid {
    std::vector<TsNode> nodes;  // x in (0,1), weights for step h = 2^-level
};

TsGrid ts_grid(int level) {
    TsGrid g;
    for (int l = 0; l <= level; ++l) {
        for (const auto& nd : ts_level(l)) {
            TsNode a = nd;
            a.w = nd.w * std::ldexp(1.0, -(level - l));
            g.nodes.push_back(a);  // x side
            if (nd.x != nd.omx) {
                TsNode b{nd.omx, nd.x, a.w};
                g.nodes.push_back(b);
            }
        }
    }
    return g;
}

}  // namespace

double pairwise_sum(const double* v, size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

void fill_values(size_t n, bool parallel, const std::function<double(size_t)>& f, double* out) {
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            out[static_cast<size_t>(i)] = f(static_cast<size_t>(i));
        return;
    }
#endif
    (void)parallel;
    for (size_t i = 0; i < n; ++i) out[i] = f(i);
}

QuadResult integrate_01(const std::function<double(double, double)>& f, const QuadratureSpec& spec) {
    QuadResult res;
    double prev = 0.0;
    for (int level = 3; level <= spec.max_level; ++level) {
        TsGrid g = ts_grid(level);
        std::vector<double> vals(g.nodes.size());
        fill_values(g.nodes.size(), spec.parallel,
                    [&](size_t i) { return g.nodes[i].w * f(g.nodes[i].x, g.nodes[i].omx); },
                    vals.data());
        double cur = pairwise_sum(vals.data(), vals.size());
        res.level = level;
        if (level > 3) {
            res.est_error = std::abs(cur - prev);
            res.value     = cur;
            if (res.est_error <= spec.target_rel_tol * std::max(1e-300, std::abs(cur))) {
                res.converged = true;
                return res;
            }
        }
        prev = cur;
    }
    res.value = prev;
    return res;
}

QuadResult integrate_simplex(int dim, const SimplexFn& f, const QuadratureSpec& spec) {
    // Terms live in L^1 with log-power and inverse-square-root singularities
    // only, so the mass inside a 1e-40 margin is ~1e-18, far below every
    // tolerance in play; dropping those nodes keeps the intermediate
    // x0^-(d+1) jacobian factors of the densities inside double range.
    auto guarded = [&f, dim](const double* x, double x0) -> double {
        if (x0 < 1e-40) return 0.0;
        for (int i = 0; i < dim; ++i)
            if (x[i] < 1e-40) return 0.0;
        return f(x, x0);
    };
    if (dim == 1) {
        auto g = [&](double u, double omu) { return guarded(&u, omu); };
        return integrate_01(g, spec);
    }
    if (dim == 2) {
        QuadResult res;
        double prev = 0.0;
        for (int level = 3; level <= spec.max_level_2d; ++level) {
            TsGrid g = ts_grid(level);
            size_t m = g.nodes.size();
            std::vector<double> rows(m);
            // x1 = u, x2 = (1-u) v, x0 = (1-u)(1-v); each row summed pairwise
            fill_values(m, spec.parallel,
                        [&](size_t i) {
                            const TsNode& a = g.nodes[i];
                            std::vector<double> vals(m);
                            for (size_t j = 0; j < m; ++j) {
                                const TsNode& b = g.nodes[j];
                                double x[2] = {a.x, a.omx * b.x};
                                double x0   = a.omx * b.omx;
                                vals[j]     = b.w * guarded(x, x0) * a.omx;
                            }
                            return a.w * pairwise_sum(vals.data(), m);
                        },
                        rows.data());
            double cur = pairwise_sum(rows.data(), m);
            res.level = level;
            if (level > 3) {
                res.est_error = std::abs(cur - prev);
                res.value     = cur;
                if (res.est_error <= spec.target_rel_tol * std::max(1e-300, std::abs(cur))) {
                    res.converged = true;
                    return res;
                }
            }
            prev = cur;
        }
        res.value = prev;
        return res;
    }
    if (dim != 3) throw std::invalid_argument("integrate_simplex: dim must be 1..3");

    // Seeded shift-randomized Halton points, one independent shift per
    // replicate; the replicate spread is the error estimate.  A quintic
    // smoothstep per axis flattens the integrable face singularities.
    auto halton = [](uint64_t i, uint32_t base) {
        double f = 1.0, r = 0.0;
        for (uint64_t n = i + 1; n > 0; n /= base) {
            f /= base;
            r += f * static_cast<double>(n % base);
        }
        return r;
    };
    std::vector<double> means(static_cast<size_t>(spec.replicates_3d));
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const uint32_t bases[3] = {2, 3, 5};
    for (int r = 0; r < spec.replicates_3d; ++r) {
        double shift[3] = {unif(rng), unif(rng), unif(rng)};
        size_t n = static_cast<size_t>(spec.points_3d);
        std::vector<double> vals(n);
        fill_values(n, spec.parallel,
                    [&](size_t i) {
                        double u[3], omu[3], jac = 1.0;
                        for (int d = 0; d < 3; ++d) {
                            double v = halton(i, bases[d]) + shift[d];
                            v -= std::floor(v);
                            // quintic smoothstep and its derivative
                            double s  = v * v * v * (10.0 + v * (-15.0 + 6.0 * v));
                            double ds = 30.0 * v * v * (1.0 - v) * (1.0 - v);
                            u[d]   = s;
                            omu[d] = 1.0 - s;
                            jac *= ds;
                        }
                        if (jac == 0.0) return 0.0;
                        double x[3] = {u[0], omu[0] * u[1], omu[0] * omu[1] * u[2]};
                        double x0   = omu[0] * omu[1] * omu[2];
                        if (x[0] <= 0 || x[1] <= 0 || x[2] <= 0 || x0 <= 0) return 0.0;
                        double jac_simplex = omu[0] * omu[0] * omu[1];
                        return guarded(x, x0) * jac * jac_simplex;
                    },
                    vals.data());
        means[static_cast<size_t>(r)] = pairwise_sum(vals.data(), n) / static_cast<double>(n);
    }
    QuadResult res;
    res.level = spec.points_3d * spec.replicates_3d;
    res.value = pairwise_sum(means.data(), means.size()) / static_cast<double>(spec.replicates_3d);
    double var = 0.0;
    for (double m : means) var += (m - res.value) * (m - res.value);
    var /= std::max(1, spec.replicates_3d - 1);
    res.est_error = 3.0 * std::sqrt(var / spec.replicates_3d);
    res.converged = res.est_error <= 1e-3 * std::max(1e-300, std::abs(res.value));
    return res;
}

// ---------------------------------------------------------------------------
// zeta-function sampling
// ---------------------------------------------------------------------------

ZetaSample sample_zeta(int n, double lambda, const QuadratureSpec& spec) {
    if (n < 1 || n > 3) throw std::invalid_argument("sample_zeta: n must be 1..3");
    if (lambda <= 0.0) throw std::invalid_argument("sample_zeta: lambda must be positive");

    // axes substituted x = t/(1+t); the integrand in x per axis is
    // x^(lambda-1) (1-x)^(-1-lambda), coupled through (1+T)^(-(n+1) lambda).
    // The log form is essential: the per-axis factors overflow near the
    // upper corners even though weight times value stays small.
    auto log_integrand = [n, lambda](const double* x, const double* omx) {
        double logprod = 0.0;
        double log_t_max = -1e300;
        double tail = 0.0;  // 1 + T computed via the largest t factored out
        for (int d = 0; d < n; ++d) {
            logprod += (lambda - 1.0) * std::log(x[d]) - (1.0 + lambda) * std::log(omx[d]);
            double lt = std::log(x[d]) - std::log(omx[d]);
            log_t_max = std::max(log_t_max, lt);
        }
        for (int d = 0; d < n; ++d)
            tail += std::exp(std::log(x[d]) - std::log(omx[d]) - log_t_max);
        double log1pT = (log_t_max > 0) ? log_t_max + std::log(tail + std::exp(-log_t_max))
                                        : std::log1p(std::exp(log_t_max) * tail);
        logprod -= (n + 1) * lambda * log1pT;
        return logprod;
    };
    auto integrand = [log_integrand](const double* x, const double* omx) {
        return std::exp(log_integrand(x, omx));
    };

    QuadResult q;
    if (n == 1) {
        q = integrate_01([&](double u, double omu) { return integrand(&u, &omu); }, spec);
    } else if (n == 2) {
        // direct tensor over (0,1)^2, not the simplex map: axes are independent
        QuadResult res;
        double prev = 0.0;
        for (int level = 3; level <= spec.max_level_2d; ++level) {
            TsGrid g = ts_grid(level);
            size_t m = g.nodes.size();
            std::vector<double> rows(m);
            fill_values(m, spec.parallel,
                        [&](size_t i) {
                            const TsNode& a = g.nodes[i];
                            std::vector<double> vals(m);
                            double log_wa = std::log(a.w);
                            for (size_t j = 0; j < m; ++j) {
                                const TsNode& b = g.nodes[j];
                                double x[2]   = {a.x, b.x};
                                double omx[2] = {a.omx, b.omx};
                                vals[j] = std::exp(log_integrand(x, omx) + log_wa + std::log(b.w));
                            }
                            return pairwise_sum(vals.data(), m);
                        },
                        rows.data());
            double cur = pairwise_sum(rows.data(), m);
            res.level = level;
            if (level > 3) {
                res.est_error = std::abs(cur - prev);
                res.value     = cur;
                if (res.est_error <= spec.target_rel_tol * std::abs(cur)) {
                    res.converged = true;
                    break;
                }
            }
            prev = cur;
        }
        if (!res.converged) res.value = prev;
        q = res;
    } else {
        // cube low-discrepancy with the same smoothing as integrate_simplex
        auto halton = [](uint64_t i, uint32_t base) {
            double f = 1.0, r = 0.0;
            for (uint64_t k = i + 1; k > 0; k /= base) {
                f /= base;
                r += f * static_cast<double>(k % base);
            }
            return r;
        };
        std::vector<double> means(static_cast<size_t>(spec.replicates_3d));
        std::mt19937_64 rng(spec.seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const uint32_t bases[3] = {2, 3, 5};
        for (int r = 0; r < spec.replicates_3d; ++r) {
            double shift[3] = {unif(rng), unif(rng), unif(rng)};
            size_t cnt = static_cast<size_t>(spec.points_3d);
            std::vector<double> vals(cnt);
            fill_values(cnt, spec.parallel,
                        [&](size_t i) {
                            double x[3], omx[3], jac = 1.0;
                            for (int d = 0; d < 3; ++d) {
                                double v = halton(i, bases[d]) + shift[d];
                                v -= std::floor(v);
                                double s  = v * v * v * (10.0 + v * (-15.0 + 6.0 * v));
                                double ds = 30.0 * v * v * (1.0 - v) * (1.0 - v);
                                x[d]   = s;
                                omx[d] = 1.0 - s;
                                jac *= ds;
                            }
                            if (jac == 0.0 || x[0] <= 0 || x[1] <= 0 || x[2] <= 0) return 0.0;
                            if (omx[0] <= 0 || omx[1] <= 0 || omx[2] <= 0) return 0.0;
                            return integrand(x, omx) * jac;
                        },
                        vals.data());
            means[static_cast<size_t>(r)] = pairwise_sum(vals.data(), cnt) / static_cast<double>(cnt);
        }
        q.level = spec.points_3d * spec.replicates_3d;
        q.value = pairwise_sum(means.data(), means.size()) / static_cast<double>(spec.replicates_3d);
        double var = 0.0;
        for (double m : means) var += (m - q.value) * (m - q.value);
        var /= std::max(1, spec.replicates_3d - 1);
        q.est_error = 3.0 * std::sqrt(var / spec.replicates_3d);
        q.converged = q.est_error <= 1e-3 * std::abs(q.value);
    }

    ZetaSample out;
    out.n         = n;
    out.lambda    = lambda;
    out.value     = std::pow(M_PI, n) * q.value;
    out.est_error = std::pow(M_PI, n) * q.est_error;
    out.converged = q.converged;
    return out;
}

// ---------------------------------------------------------------------------
// reduced-term evaluation
// ---------------------------------------------------------------------------

namespace {

int i_power_sign(int i_pow) {
    switch (((i_pow % 4) + 4) % 4) {
        case 0: return 1;
        case 2: return -1;
        default: throw std::logic_error("i_power_sign: odd power of i in a real value");
    }
}

}  // namespace

TermValue eval_reduced_term(const ReducedTerm& rt, const QuadratureSpec& spec, bool force_numeric) {
    int d = rt.ambient_dim();
    if (d < 0 || d > 3) throw std::invalid_argument("eval_reduced_term: ambient dimension out of range");

    // surviving homogeneous indices, sorted; local chart coordinate k of the
    // sub-projective space corresponds to survivors[k]
    std::vector<int> survivors;
    for (int j = 0; j <= rt.n; ++j)
        if (!std::binary_search(rt.restricted.begin(), rt.restricted.end(), j)) survivors.push_back(j);
    auto local_of = [&](int global) {
        return static_cast<int>(std::lower_bound(survivors.begin(), survivors.end(), global) -
                                survivors.begin());
    };

    TermValue out;
    if (d == 0) {
        // single reduced point, ||Z||^2 = 1 there: any log factor kills the term
        out.exact       = true;
        out.exact_value = rt.log_pow.empty()
                              ? ZetaExpr::monomial(ZetaMonomial{0, rt.pi_pow, {}}, rt.coef) *
                                    ZetaExpr(i_power_sign(rt.i_pow))
                              : ZetaExpr();
        out.value = out.exact_value.is_zero() ? 0.0 : out.exact_value.eval();
        return out;
    }

    if (d == 1 && !force_numeric) {
        // exact route: local coordinate x = ||W_1||^2, 1-x = ||W_0||^2, and
        // both the omega_FS and the mixed dbar^d densities are exactly 1
        int k = 0, m = 0;
        for (const auto& [j, p] : rt.log_pow) (local_of(j) == 1 ? k : m) += p;
        ZetaExpr beta = beta_log_integral(0, 0, k, m);
        ZetaExpr pref = ZetaExpr::monomial(ZetaMonomial{0, rt.pi_pow + 1, {}}, rt.coef);
        ZetaExpr val;
        if (rt.fs_power == 1) {
            val = pref * beta * ZetaExpr(i_power_sign(rt.i_pow));
        } else {
            // one dbar^d pair; value = prefactor * (-2 pi i) * int
            val = pref * beta * ZetaExpr(-2) * ZetaExpr(i_power_sign(rt.i_pow + 1));
        }
        out.exact       = true;
        out.exact_value = val;
        out.value       = val.is_zero() ? 0.0 : val.eval();
        return out;
    }

    // numeric route: density from the Grassmann evaluation at the real point
    // z = (sqrt(t_1), ..., sqrt(t_d)), t = x / x0
    Complex pref = std::pow(M_PI, rt.pi_pow) * rational_to_double(rt.coef);
    switch (((rt.i_pow % 4) + 4) % 4) {
        case 1: pref *= Complex(0, 1); break;
        case 2: pref *= -1.0; break;
        case 3: pref *= Complex(0, -1); break;
        default: break;
    }
    Complex two_pi_i_pow = 1.0;
    for (int i = 0; i < d; ++i) two_pi_i_pow *= Complex(0, -2.0 * M_PI);

    std::vector<std::pair<int, int>> logs_local;  // (local index, power)
    for (const auto& [j, p] : rt.log_pow) logs_local.emplace_back(local_of(j), p);
    std::vector<int> dbar_local, del_local;
    for (int c : rt.dbar_marks) dbar_local.push_back(local_of(c));
    for (int a : rt.del_marks) del_local.push_back(local_of(a));

    SimplexFn fn = [&](const double* x, double x0) -> double {
        double logs = 1.0;
        for (const auto& [loc, p] : logs_local) {
            double lg = std::log(loc == 0 ? x0 : x[loc - 1]);
            for (int q = 0; q < p; ++q) logs *= lg;
        }
        Complex density;
        if (dbar_local.empty() && rt.fs_power == d) {
            // pure omega_FS^d top coefficient d! (i/2)^d s^{d+1} with s = x0;
            // written directly to keep the hot path cheap
            double fact = 1.0;
            for (int i = 2; i <= d; ++i) fact *= i;
            density = fact * std::pow(x0, d + 1);
            Complex ihalf_pow = 1.0;
            for (int i = 0; i < d; ++i) ihalf_pow *= Complex(0, 0.5);
            density *= ihalf_pow;
        } else {
            std::vector<Complex> z(static_cast<size_t>(d));
            for (int kk = 1; kk <= d; ++kk) z[static_cast<size_t>(kk - 1)] = std::sqrt(x[kk - 1] / x0);
            MultiVector acc = MultiVector::scalar(d, 1.0);
            for (int c : dbar_local) acc = wedge(acc, eval_form({FormField::dbar_log_norm_sq, c}, z));
            for (int a : del_local) acc = wedge(acc, eval_form({FormField::d_log_norm_sq, a}, z));
            if (rt.fs_power > 0) {
                MultiVector fs = eval_form({FormField::fubini_study, 0}, z);
                for (int i = 0; i < rt.fs_power; ++i) acc = wedge(acc, fs);
            }
            density = acc.top_coeff();
        }
        // dt = dx / x0^(d+1)
        double jac = std::pow(x0, -(d + 1));
        Complex v = pref * two_pi_i_pow * density * logs * jac;
        return v.real();
    };

    QuadResult q = integrate_simplex(d, fn, spec);
    out.exact     = false;
    out.value     = q.value;
    out.est_error = q.est_error;
    out.converged = q.converged || q.est_error <= spec.target_rel_tol * std::max(1.0, std::abs(q.value));
    out.level     = q.level;
    return out;
}

// ---------------------------------------------------------------------------
// Laurent coefficient fitting
// ---------------------------------------------------------------------------

FitResult fit_laurent(const std::vector<ZetaSample>& samples, int pole_order, int degree,
                      double cond_threshold) {
    size_t rows = samples.size();
    size_t cols = static_cast<size_t>(degree + 1);
    if (rows < cols) throw std::invalid_argument("fit_laurent: need at least degree+1 samples");

    // h_i = lambda_i^n * Z_i, design matrix A[i][j] = lambda_i^j
    std::vector<std::vector<double>> A(rows, std::vector<double>(cols));
    std::vector<double> h(rows);
    for (size_t i = 0; i < rows; ++i) {
        double lam = samples[i].lambda;
        double p   = 1.0;
        for (size_t j = 0; j < cols; ++j) {
            A[i][j] = p;
            p *= lam;
        }
        h[i] = std::pow(lam, pole_order) * samples[i].value;
    }

    // Householder QR
    std::vector<double> rhs = h;
    for (size_t j = 0; j < cols; ++j) {
        double norm = 0.0;
        for (size_t i = j; i < rows; ++i) norm += A[i][j] * A[i][j];
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::domain_error("fit_laurent: rank-deficient design matrix");
        double alpha = (A[j][j] > 0) ? -norm : norm;
        std::vector<double> v(rows, 0.0);
        v[j] = A[j][j] - alpha;
        for (size_t i = j + 1; i < rows; ++i) v[i] = A[i][j];
        double vtv = 0.0;
        for (size_t i = j; i < rows; ++i) vtv += v[i] * v[i];
        if (vtv > 0) {
            for (size_t c = j; c < cols; ++c) {
                double dot = 0.0;
                for (size_t i = j; i < rows; ++i) dot += v[i] * A[i][c];
                double f = 2.0 * dot / vtv;
                for (size_t i = j; i < rows; ++i) A[i][c] -= f * v[i];
            }
            double dot = 0.0;
            for (size_t i = j; i < rows; ++i) dot += v[i] * rhs[i];
            double f = 2.0 * dot / vtv;
            for (size_t i = j; i < rows; ++i) rhs[i] -= f * v[i];
        }
    }
    std::vector<double> beta(cols);
    for (size_t j = cols; j-- > 0;) {
        double s = rhs[j];
        for (size_t c = j + 1; c < cols; ++c) s -= A[j][c] * beta[c];
        beta[j] = s / A[j][j];
    }

    FitResult fit;
    double dmax = 0.0, dmin = 1e300;
    for (size_t j = 0; j < cols; ++j) {
        dmax = std::max(dmax, std::abs(A[j][j]));
        dmin = std::min(dmin, std::abs(A[j][j]));
    }
    fit.condition       = dmax / dmin;
    fit.ill_conditioned = fit.condition > cond_threshold;
    std::vector<double> coeffs(cols);
    for (size_t j = 0; j < cols; ++j) coeffs[j] = beta[j];
    fit.series = LaurentSeries<double>(-pole_order, degree - pole_order, std::move(coeffs));
    for (size_t i = 0; i < rows; ++i) {
        double pred = 0.0, p = 1.0;
        for (size_t j = 0; j < cols; ++j) {
            pred += beta[j] * p;
            p *= samples[i].lambda;
        }
        fit.max_residual = std::max(fit.max_residual, std::abs(pred - h[i]));
    }
    return fit;
}

}  // namespace fp

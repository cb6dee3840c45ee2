#include <fp/grassmann.hpp>

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fp {

MultiVector MultiVector::scalar(int n, Complex c) {
    MultiVector m(n);
    m.add_term(0, c);
    return m;
}

MultiVector MultiVector::generator(int n, int gen, Complex c) {
    if (gen < 0 || gen >= 2 * n) throw std::invalid_argument("MultiVector::generator: index");
    MultiVector m(n);
    m.add_term(1u << gen, c);
    return m;
}

Complex MultiVector::coeff(uint32_t word) const {
    auto it = comps_.find(word);
    return it == comps_.end() ? Complex(0.0) : it->second;
}

MultiVector& MultiVector::add_term(uint32_t word, Complex c) {
    if (c == Complex(0.0)) return *this;
    auto [it, inserted] = comps_.emplace(word, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0)) comps_.erase(it);
    }
    return *this;
}

int wedge_sign(uint32_t a, uint32_t b) {
    int swaps = 0;
    for (uint32_t m = b; m != 0; m &= m - 1) {
        int g = std::countr_zero(m);
        swaps += std::popcount(a >> (g + 1));
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("wedge: dimension mismatch");
    MultiVector r(a.n_);
    for (const auto& [wa, ca] : a.comps_) {
        for (const auto& [wb, cb] : b.comps_) {
            if (wa & wb) continue;  // repeated generator
            r.add_term(wa | wb, static_cast<double>(wedge_sign(wa, wb)) * ca * cb);
        }
    }
    return r;
}

MultiVector operator+(const MultiVector& a, const MultiVector& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("MultiVector: dimension mismatch");
    MultiVector r = a;
    for (const auto& [w, c] : b.comps_) r.add_term(w, c);
    return r;
}

MultiVector operator*(const MultiVector& a, Complex c) {
    MultiVector r(a.n_);
    for (const auto& [w, cc] : a.comps_) r.add_term(w, cc * c);
    return r;
}

// ---------------------------------------------------------------------------
// Form catalog on the chart {Z_0 != 0}
// ---------------------------------------------------------------------------

double norm_sq(int j, const std::vector<Complex>& z) {
    double s = 1.0;
    for (const auto& zk : z) s += std::norm(zk);
    if (j == 0) return 1.0 / s;
    return std::norm(z.at(static_cast<size_t>(j - 1))) / s;
}

namespace {

void require_point(const FormField& f, const std::vector<Complex>& z) {
    int n = static_cast<int>(z.size());
    if (f.kind == FormField::volume) {
        for (const auto& zk : z)
            if (zk == Complex(0.0)) throw std::domain_error("eval_form: point on singular locus");
        return;
    }
    if (f.kind == FormField::fubini_study) return;
    if (f.j < 0 || f.j > n) throw std::invalid_argument("eval_form: index out of range");
    if (f.j >= 1 && z[static_cast<size_t>(f.j - 1)] == Complex(0.0))
        throw std::domain_error("eval_form: point on singular locus");
}

MultiVector d_log(int n, int j, const std::vector<Complex>& z, double s) {
    MultiVector m(n);
    if (j >= 1) m.add_term(1u << (2 * (j - 1)), 1.0 / z[static_cast<size_t>(j - 1)]);
    for (int k = 0; k < n; ++k) m.add_term(1u << (2 * k), -s * std::conj(z[static_cast<size_t>(k)]));
    return m;
}

MultiVector dbar_log(int n, int j, const std::vector<Complex>& z, double s) {
    MultiVector m(n);
    if (j >= 1) m.add_term(1u << (2 * (j - 1) + 1), 1.0 / std::conj(z[static_cast<size_t>(j - 1)]));
    for (int k = 0; k < n; ++k) m.add_term(1u << (2 * k + 1), -s * z[static_cast<size_t>(k)]);
    return m;
}

}  // namespace

MultiVector eval_form(const FormField& f, const std::vector<Complex>& z) {
    int n = static_cast<int>(z.size());
    require_point(f, z);
    double denom = 1.0;
    for (const auto& zk : z) denom += std::norm(zk);
    double s = 1.0 / denom;
    const Complex ihalf(0.0, 0.5);

    switch (f.kind) {
        case FormField::log_norm_sq:
            return MultiVector::scalar(n, std::log(norm_sq(f.j, z)));
        case FormField::d_log_norm_sq:
            return d_log(n, f.j, z, s);
        case FormField::dbar_log_norm_sq:
            return dbar_log(n, f.j, z, s);
        case FormField::elementary:
            return wedge(d_log(n, f.j, z, s), dbar_log(n, f.j, z, s)) * ihalf;
        case FormField::fubini_study: {
            MultiVector m(n);
            for (int k = 0; k < n; ++k) m.add_term((1u << (2 * k)) | (1u << (2 * k + 1)), ihalf * s);
            MultiVector du(n), dubar(n);
            for (int k = 0; k < n; ++k) {
                du.add_term(1u << (2 * k), std::conj(z[static_cast<size_t>(k)]));
                dubar.add_term(1u << (2 * k + 1), z[static_cast<size_t>(k)]);
            }
            return m + wedge(du, dubar) * (-ihalf * s * s);
        }
        case FormField::volume: {
            Complex c = 1.0;
            for (int k = 0; k < n; ++k) c *= ihalf / std::norm(z[static_cast<size_t>(k)]);
            MultiVector m(n);
            m.add_term(m.top_word(), c);
            return m;
        }
    }
    throw std::logic_error("eval_form: unreachable");
}

// ---------------------------------------------------------------------------
// Pointwise identity checks
// ---------------------------------------------------------------------------

PointCheckReport check_poincare_lelong_smooth(int j, const std::vector<Complex>& z, double tol) {
    int n = static_cast<int>(z.size());
    if (j >= 1 && z.at(static_cast<size_t>(j - 1)) == Complex(0.0))
        throw std::domain_error("check_poincare_lelong_smooth: point on divisor");

    double denom = 1.0;
    for (const auto& zk : z) denom += std::norm(zk);
    double s = 1.0 / denom;

    // u = ||Z_j||^2 with independent quotient-rule partials
    double u = norm_sq(j, z);
    std::vector<Complex> du(static_cast<size_t>(n));   // du/dz_i
    std::vector<std::vector<Complex>> dd(static_cast<size_t>(n),
                                         std::vector<Complex>(static_cast<size_t>(n)));
    auto zb = [&](int i) { return std::conj(z[static_cast<size_t>(i)]); };
    auto zz = [&](int i) { return z[static_cast<size_t>(i)]; };
    if (j == 0) {
        for (int i = 0; i < n; ++i) du[static_cast<size_t>(i)] = -zb(i) * s * s;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                dd[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                    ((i == k) ? -s * s : Complex(0.0)) + 2.0 * zb(i) * zz(k) * s * s * s;
    } else {
        int jj = j - 1;
        double t = std::norm(z[static_cast<size_t>(jj)]);
        for (int i = 0; i < n; ++i)
            du[static_cast<size_t>(i)] = ((i == jj) ? zb(jj) * s : Complex(0.0)) - t * zb(i) * s * s;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                Complex v = 0.0;
                if (i == jj && k == jj) v += s;
                if (i == jj) v -= zb(jj) * zz(k) * s * s;
                if (k == jj) v -= zz(jj) * zb(i) * s * s;
                if (i == k) v -= t * s * s;
                v += 2.0 * t * zb(i) * zz(k) * s * s * s;
                dd[static_cast<size_t>(i)][static_cast<size_t>(k)] = v;
            }
    }

    // (i/2) d dbar log u = (i/2) sum [u_{ik} / u - u_i ubar_k / u^2] dz_i ^ dzbar_k
    MultiVector lhs(n);
    const Complex ihalf(0.0, 0.5);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Complex c = dd[static_cast<size_t>(i)][static_cast<size_t>(k)] / u -
                        du[static_cast<size_t>(i)] * std::conj(du[static_cast<size_t>(k)]) / (u * u);
            lhs.add_term((1u << (2 * i)) | (1u << (2 * k + 1)), ihalf * c *
                         static_cast<double>(wedge_sign(1u << (2 * i), 1u << (2 * k + 1))));
        }

    MultiVector rhs = eval_form({FormField::fubini_study, 0}, z) * Complex(-1.0);

    PointCheckReport rep;
    rep.tol = tol;
    double scale = 0.0;
    for (const auto& [w, c] : rhs.components()) scale = std::max(scale, std::abs(c));
    std::map<uint32_t, Complex> all;
    for (const auto& [w, c] : lhs.components()) all[w] += c;
    for (const auto& [w, c] : rhs.components()) all[w] -= c;
    for (const auto& [w, c] : all) rep.max_rel_dev = std::max(rep.max_rel_dev, std::abs(c) / scale);
    rep.pass = rep.max_rel_dev <= tol;
    return rep;
}

std::vector<Complex> random_annulus_point(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> rad(0.2, 5.0), ang(0.0, 2.0 * M_PI);
    std::vector<Complex> z(static_cast<size_t>(n));
    for (auto& zk : z) zk = std::polar(rad(rng), ang(rng));
    return z;
}

ConjectureReport check_conjecture(int n, int points, unsigned long long seed, double tol) {
    if (n < 1 || n > 5) throw std::invalid_argument("check_conjecture: n out of range");
    ConjectureReport rep;
    rep.n      = n;
    rep.points = points;
    rep.tol    = tol;
    rep.seed   = seed;
    std::mt19937_64 rng(seed);
    std::vector<double> factorial(static_cast<size_t>(n + 1), 1.0);
    for (int i = 1; i <= n; ++i) factorial[static_cast<size_t>(i)] = factorial[static_cast<size_t>(i - 1)] * i;

    for (int p = 0; p < points; ++p) {
        auto z = random_annulus_point(n, rng);
        Complex lhs = eval_form({FormField::volume, 0}, z).top_coeff();

        MultiVector esum(n);
        for (int k = 0; k <= n; ++k) esum = esum + eval_form({FormField::elementary, k}, z);
        MultiVector fs = eval_form({FormField::fubini_study, 0}, z);

        Complex rhs = 0.0;
        for (int l = 0; l <= n; ++l) {
            MultiVector acc = MultiVector::scalar(n, 1.0);
            for (int i = 0; i < l; ++i) acc = wedge(acc, fs);
            for (int i = 0; i < n - l; ++i) acc = wedge(acc, esum);
            rhs += acc.top_coeff() * (static_cast<double>(l + 1) / factorial[static_cast<size_t>(n - l)]);
        }
        double dev = std::abs(lhs - rhs) / std::abs(lhs);
        rep.max_rel_dev = std::max(rep.max_rel_dev, dev);
    }
    rep.pass = rep.max_rel_dev <= tol;
    return rep;
}

}  // namespace fp

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace fp {

using Complex = std::complex<double>;

// Element of the exterior algebra on C^n with generators dz_1..dz_n,
// dzbar_1..dzbar_n and complex coefficients.  Basis words are bitmasks over
// 2n bits with the canonical generator order dz_1 < dzbar_1 < dz_2 < ... ;
// coordinate k (0-based) owns bits 2k (dz) and 2k+1 (dzbar).  The word with
// all bits set is dz_1^dzbar_1^...^dz_n^dzbar_n, so its coefficient is read
// directly against the standard volume ordering.
class MultiVector {
public:
    explicit MultiVector(int n) : n_(n) {}
    static MultiVector scalar(int n, Complex c);
    static MultiVector generator(int n, int gen, Complex c = 1.0);
    static MultiVector dz(int n, int k, Complex c = 1.0) { return generator(n, 2 * k, c); }
    static MultiVector dzbar(int n, int k, Complex c = 1.0) { return generator(n, 2 * k + 1, c); }

    int dim() const { return n_; }
    uint32_t top_word() const { return (n_ >= 16) ? ~0u : ((1u << (2 * n_)) - 1u); }
    Complex coeff(uint32_t word) const;
    Complex top_coeff() const { return coeff(top_word()); }
    const std::map<uint32_t, Complex>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    MultiVector& add_term(uint32_t word, Complex c);
    friend MultiVector wedge(const MultiVector& a, const MultiVector& b);
    friend MultiVector operator+(const MultiVector& a, const MultiVector& b);
    friend MultiVector operator*(const MultiVector& a, Complex c);

private:
    int n_;
    std::map<uint32_t, Complex> comps_;
};

// Sign of concatenating two disjoint canonical words (shuffle parity); not
// meaningful for overlapping words.
int wedge_sign(uint32_t a, uint32_t b);

// Catalog of concrete forms on the chart {Z_0 != 0} of P^n with the
// Fubini-Study metric, ||Z_j||^2 = |Z_j|^2 / |Z|^2.  Index j refers to the
// homogeneous coordinate Z_j, 0 <= j <= n; the evaluation point carries the
// affine coordinates z_k = Z_k/Z_0.
struct FormField {
    enum Kind {
        fubini_study,    // omega_FS = (i/2) d dbar log(1+|z|^2)
        d_log_norm_sq,   // (1,0)-form  d log||Z_j||^2
        dbar_log_norm_sq,
        elementary,      // (i/2) d log||Z_j||^2 ^ dbar log||Z_j||^2
        volume,          // (i/2)^n dz^dzbar / |z_1...z_n|^2
        log_norm_sq      // scalar log||Z_j||^2
    };
    Kind kind;
    int j = 0;
};

MultiVector eval_form(const FormField& f, const std::vector<Complex>& z);

// ||Z_j||^2 at the point, and the scalar log of it.
double norm_sq(int j, const std::vector<Complex>& z);

struct PointCheckReport {
    double max_rel_dev = 0.0;
    double tol         = 0.0;
    bool   pass        = false;
};

// Off the divisor, (i/2) d dbar log||Z_j||^2 = -omega_FS; the left side is
// evaluated by an independent quotient-rule differentiation of ||Z_j||^2.
PointCheckReport check_poincare_lelong_smooth(int j, const std::vector<Complex>& z,
                                              double tol = 1e-10);

struct ConjectureReport {
    int    n      = 0;
    int    points = 0;
    double tol    = 0.0;
    double max_rel_dev = 0.0;
    bool   pass   = false;
    unsigned long long seed = 0;
};

// Pointwise verification of the volume-form decomposition
//   (i/2)^n dz^dzbar / |z_1..z_n|^2
//     = sum_l (l+1)/(n-l)! omega_FS^l ^ (sum_k omega_k)^(n-l)
// at seeded random points off the coordinate hyperplanes.
ConjectureReport check_conjecture(int n, int points, unsigned long long seed, double tol);

// Seeded sample point in the annulus 0.2 <= |z_k| <= 5 per coordinate.
std::vector<Complex> random_annulus_point(int n, std::mt19937_64& rng);

}  // namespace fp

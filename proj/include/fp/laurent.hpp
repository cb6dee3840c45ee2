#pragma once

#include <fp/rational.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace fp {

inline bool coeff_is_zero(double c) { return c == 0.0; }
template <class C>
bool coeff_is_zero(const C& c) { return c.is_zero(); }

// Truncated Laurent series in one variable over an exact or float coefficient
// ring.  A series knows its coefficients on the window [min_order(),
// trunc_order()]; everything above trunc_order() is undetermined (O(x^{t+1}))
// and reading there is a hard error, never a silent zero.  Arithmetic tracks
// the truncation pessimistically: the result window is the largest window on
// which the result is fully determined by the operands.  The leading stored
// coefficient is nonzero except for the zero series, which keeps its full
// window of explicit zeros.
template <class C>
class LaurentSeries {
public:
    LaurentSeries() : lo_(0), coeffs_{C{}} {}

    LaurentSeries(int min_order, int trunc_order, std::vector<C> coeffs)
        : lo_(min_order), coeffs_(std::move(coeffs)) {
        if (trunc_order < min_order)
            throw std::invalid_argument("LaurentSeries: trunc_order < min_order");
        if (coeffs_.size() != static_cast<size_t>(trunc_order - min_order + 1))
            throw std::invalid_argument("LaurentSeries: coefficient count does not match window");
        normalize();
    }

    static LaurentSeries zero(int trunc_order, int min_order = 0) {
        if (trunc_order < min_order) std::swap(trunc_order, min_order);
        return LaurentSeries(min_order, trunc_order,
                             std::vector<C>(static_cast<size_t>(trunc_order - min_order + 1)));
    }

    static LaurentSeries monomial(int order, C coeff, int trunc_order) {
        std::vector<C> v(static_cast<size_t>(trunc_order - order + 1));
        v[0] = std::move(coeff);
        return LaurentSeries(order, trunc_order, std::move(v));
    }

    int min_order() const { return lo_; }
    int trunc_order() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!coeff_is_zero(c)) return false;
        return true;
    }

    const C& coeff(int j) const {
        if (j < lo_ || j > trunc_order())
            throw std::out_of_range("LaurentSeries::coeff: order " + std::to_string(j) +
                                    " outside window [" + std::to_string(lo_) + "," +
                                    std::to_string(trunc_order()) + "]");
        return coeffs_[static_cast<size_t>(j - lo_)];
    }

    const C& leading_coeff() const { return coeffs_.front(); }

    // Exponent window shifted by k, coefficients unchanged (multiply by x^k).
    LaurentSeries shifted(int k) const {
        LaurentSeries r = *this;
        r.lo_ += k;
        return r;
    }

    // Substitution x -> m*x: coefficient of x^j picks up m^j.
    LaurentSeries scaled_arg(long long m) const {
        if (m == 0) throw std::invalid_argument("scaled_arg: zero scale");
        LaurentSeries r = *this;
        for (int j = r.lo_; j <= r.trunc_order(); ++j) {
            Rational p = 1;
            for (int i = 0; i < std::abs(j); ++i) p *= m;
            if (j < 0) p = 1 / p;
            r.coeffs_[static_cast<size_t>(j - r.lo_)] = scale(r.coeffs_[static_cast<size_t>(j - r.lo_)], p);
        }
        r.normalize();
        return r;
    }

    LaurentSeries truncated(int new_trunc) const {
        if (new_trunc < lo_) throw std::invalid_argument("truncated: window would be empty");
        int keep = std::min(new_trunc, trunc_order()) - lo_ + 1;
        std::vector<C> v(coeffs_.begin(), coeffs_.begin() + keep);
        return LaurentSeries(lo_, lo_ + keep - 1, std::move(v));
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        int lo = std::min(a.lo_, b.lo_);
        int hi = std::min(a.trunc_order(), b.trunc_order());
        if (hi < lo) throw std::domain_error("LaurentSeries: sum window is empty");
        std::vector<C> v(static_cast<size_t>(hi - lo + 1));
        for (int j = lo; j <= hi; ++j) {
            C s{};
            if (j >= a.lo_ && j <= a.trunc_order()) s = s + a.coeff(j);
            if (j >= b.lo_ && j <= b.trunc_order()) s = s + b.coeff(j);
            v[static_cast<size_t>(j - lo)] = s;
        }
        return LaurentSeries(lo, hi, std::move(v));
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return a + b.negated();
    }

    LaurentSeries negated() const {
        LaurentSeries r = *this;
        for (auto& c : r.coeffs_) c = C{} - c;
        return r;
    }

    // Cauchy convolution with pessimistic window tracking:
    // min orders add, trunc = min(ta + mb, tb + ma).
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        int lo = a.lo_ + b.lo_;
        int hi = std::min(a.trunc_order() + b.lo_, b.trunc_order() + a.lo_);
        if (hi < lo) throw std::domain_error("LaurentSeries: product window is empty");
        std::vector<C> v(static_cast<size_t>(hi - lo + 1));
        for (int i = a.lo_; i <= a.trunc_order(); ++i) {
            if (coeff_is_zero(a.coeff(i))) continue;
            for (int j = b.lo_; j <= b.trunc_order(); ++j) {
                int l = i + j;
                if (l > hi) break;
                v[static_cast<size_t>(l - lo)] = v[static_cast<size_t>(l - lo)] + a.coeff(i) * b.coeff(j);
            }
        }
        return LaurentSeries(lo, hi, std::move(v));
    }

    LaurentSeries scaled(const C& c) const {
        LaurentSeries r = *this;
        for (auto& x : r.coeffs_) x = x * c;
        r.normalize();
        return r;
    }

    bool operator==(const LaurentSeries& o) const = default;

private:
    int lo_;
    std::vector<C> coeffs_;

    static C scale(const C& c, const Rational& r);

    // Strip leading zeros so the invariant "leading coefficient nonzero"
    // holds; the identically-zero series keeps its window.
    void normalize() {
        while (coeffs_.size() > 1 && coeff_is_zero(coeffs_.front()) && !is_zero()) {
            coeffs_.erase(coeffs_.begin());
            ++lo_;
        }
    }
};

// exp of a series with no polar or constant part, truncated at the input's
// truncation order.  Realizes the (1/l!) (log ...)^l reweighting factors as
// multiplication by a single exponential series.
template <class C>
LaurentSeries<C> exp_series(const LaurentSeries<C>& a) {
    int hi = a.trunc_order();
    if (!a.is_zero() && a.min_order() < 1)
        throw std::domain_error("exp_series: operand has polar or constant part");
    // dense polynomial exp on [0, hi]; term_k = a^k / k! accumulated in place
    std::vector<C> acc(static_cast<size_t>(hi + 1));
    std::vector<C> av(static_cast<size_t>(hi + 1));
    for (int j = std::max(a.min_order(), 1); j <= hi; ++j) av[static_cast<size_t>(j)] = a.coeff(j);
    acc[0] = C{} + C(1);
    std::vector<C> term = acc;
    int min_nonzero = a.is_zero() ? hi + 1 : a.min_order();
    for (int k = 1; k * min_nonzero <= hi; ++k) {
        std::vector<C> next(static_cast<size_t>(hi + 1));
        for (int i = 0; i <= hi; ++i) {
            if (coeff_is_zero(term[static_cast<size_t>(i)])) continue;
            for (int j = 1; i + j <= hi; ++j)
                next[static_cast<size_t>(i + j)] =
                    next[static_cast<size_t>(i + j)] + term[static_cast<size_t>(i)] * av[static_cast<size_t>(j)];
        }
        for (auto& c : next) c = div_by_int(c, k);
        term = std::move(next);
        for (int i = 0; i <= hi; ++i) acc[static_cast<size_t>(i)] = acc[static_cast<size_t>(i)] + term[static_cast<size_t>(i)];
    }
    return LaurentSeries<C>(0, hi, std::move(acc));
}

// Exact equality of two series on the overlap of their windows.
template <class C>
bool agree_on_common_window(const LaurentSeries<C>& a, const LaurentSeries<C>& b) {
    int lo = std::max(a.min_order(), b.min_order());
    int hi = std::min(a.trunc_order(), b.trunc_order());
    for (int j = lo; j <= hi; ++j)
        if (!coeff_is_zero(a.coeff(j) - b.coeff(j))) return false;
    return true;
}

template <>
inline double LaurentSeries<double>::scale(const double& c, const Rational& r) {
    return c * rational_to_double(r);
}

template <class C>
C LaurentSeries<C>::scale(const C& c, const Rational& r) {
    return c * C(r);
}

}  // namespace fp

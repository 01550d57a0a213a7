#include "mayer/series.hpp"

#include <algorithm>

namespace mayer {

Series::Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Rational(0));
}

Series Series::zero(int order) {
    return Series(std::vector<Rational>(static_cast<size_t>(order) + 1, Rational(0)));
}

Series Series::one(int order) { return constant(Rational(1), order); }

Series Series::constant(const Rational& a0, int order) {
    Series s = zero(order);
    s.coeffs_[0] = a0;
    return s;
}

Series Series::x(int order) {
    Series s = zero(order);
    if (order < 1) throw IndexOutOfRange("Series::x needs order >= 1");
    s.coeffs_[1] = 1;
    return s;
}

Series Series::geometric(int order) {
    return Series(std::vector<Rational>(static_cast<size_t>(order) + 1, Rational(1)));
}

const Rational& Series::operator[](int n) const {
    if (n < 0 || n > order()) throw IndexOutOfRange("series coefficient index out of range");
    return coeffs_[static_cast<size_t>(n)];
}

Rational& Series::coeff(int n) {
    if (n < 0 || n > order()) throw IndexOutOfRange("series coefficient index out of range");
    return coeffs_[static_cast<size_t>(n)];
}

Series Series::truncated(int order) const {
    if (order < 0 || order > this->order())
        throw IndexOutOfRange("truncation order out of range");
    return Series(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Series add(const Series& a, const Series& b) {
    const int m = std::min(a.order(), b.order());
    Series r = Series::zero(m);
    for (int n = 0; n <= m; ++n) r.coeff(n) = a[n] + b[n];
    return r;
}

Series sub(const Series& a, const Series& b) {
    const int m = std::min(a.order(), b.order());
    Series r = Series::zero(m);
    for (int n = 0; n <= m; ++n) r.coeff(n) = a[n] - b[n];
    return r;
}

Series neg(const Series& a) {
    Series r = Series::zero(a.order());
    for (int n = 0; n <= a.order(); ++n) r.coeff(n) = -a[n];
    return r;
}

Series mul(const Series& a, const Series& b) {
    const int m = std::min(a.order(), b.order());
    Series r = Series::zero(m);
    for (int i = 0; i <= m; ++i) {
        if (i > a.order() || a[i] == 0) continue;
        for (int j = 0; i + j <= m; ++j) r.coeff(i + j) += a[i] * b[j];
    }
    return r;
}

Series pow_int(const Series& a, unsigned n) {
    Series r = Series::one(a.order());
    for (unsigned i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

Series mul_inverse(const Series& a) {
    if (a[0] == 0) throw ZeroConstantTerm("multiplicative inverse needs a_0 != 0");
    const int m = a.order();
    Series r = Series::zero(m);
    const Rational inv0 = Rational(1) / a[0];
    r.coeff(0) = inv0;
    for (int n = 1; n <= m; ++n) {
        Rational s(0);
        for (int k = 1; k <= n; ++k) s += a[k] * r[n - k];
        r.coeff(n) = -inv0 * s;
    }
    return r;
}

Series compose(const Series& a, const Series& b) {
    if (b[0] != 0) throw NonzeroInnerConstant("composition needs inner constant term zero");
    const int m = std::min(a.order(), b.order());
    const Series bt = b.truncated(m);
    // Horner evaluation at the series b, everything truncated to order m.
    Series r = Series::constant(a[std::min(a.order(), m)], m);
    for (int k = std::min(a.order(), m) - 1; k >= 0; --k) {
        r = mul(r, bt);
        r.coeff(0) += a[k];
    }
    return r;
}

Series derivative(const Series& a) {
    const int m = std::max(a.order() - 1, 0);
    Series r = Series::zero(m);
    for (int n = 0; n + 1 <= a.order(); ++n) r.coeff(n) = Rational(n + 1) * a[n + 1];
    return r;
}

Rational generalized_binomial(const Rational& r, unsigned n) {
    Rational p(1);
    for (unsigned i = 0; i < n; ++i) p *= r - Rational(static_cast<long>(i));
    return p / Rational(factorial(n));
}

Series binomial_series(const Rational& r, int order) {
    Series s = Series::zero(order);
    for (int n = 0; n <= order; ++n) s.coeff(n) = generalized_binomial(r, static_cast<unsigned>(n));
    return s;
}

Series real_power(const Series& a, const Rational& r) {
    if (a[0] != 1) throw ConstantTermNotOne("real_power needs constant term 1");
    Series u = a;
    u.coeff(0) = 0;
    return compose(binomial_series(r, a.order()), u);
}

Rational bell_ordinary(int m, int k, std::span<const Rational> b) {
    if (k < 1 || k > m) throw IndexOutOfRange("bell_ordinary needs 1 <= k <= m");
    if (static_cast<int>(b.size()) < m - k + 1)
        throw IndexOutOfRange("bell_ordinary: too few arguments");
    // B^_{i,j} = sum_t b_t B^_{i-t,j-1}
    std::vector<std::vector<Rational>> tbl(m + 1, std::vector<Rational>(k + 1, Rational(0)));
    tbl[0][0] = 1;
    for (int j = 1; j <= k; ++j)
        for (int i = j; i <= m; ++i)
            for (int t = 1; t <= i - j + 1 && t <= static_cast<int>(b.size()); ++t)
                tbl[i][j] += b[static_cast<size_t>(t - 1)] * tbl[i - t][j - 1];
    return tbl[m][k];
}

Rational bell_exponential(int n, int k, std::span<const Rational> b) {
    if (k < 1 || k > n) throw IndexOutOfRange("bell_exponential needs 1 <= k <= n");
    if (static_cast<int>(b.size()) < n - k + 1)
        throw IndexOutOfRange("bell_exponential: too few arguments");
    // B_{i,j} = sum_t C(i-1, t-1) b_t B_{i-t,j-1}
    std::vector<std::vector<Rational>> tbl(n + 1, std::vector<Rational>(k + 1, Rational(0)));
    tbl[0][0] = 1;
    for (int j = 1; j <= k; ++j)
        for (int i = j; i <= n; ++i)
            for (int t = 1; t <= i - j + 1 && t <= static_cast<int>(b.size()); ++t)
                tbl[i][j] += Rational(binomial_uint(static_cast<unsigned long>(i - 1),
                                                    static_cast<unsigned long>(t - 1))) *
                             b[static_cast<size_t>(t - 1)] * tbl[i - t][j - 1];
    return tbl[n][k];
}

namespace {

/// b = X * btilde(X); returns btilde at order b.order() - 1.
Series shifted_down(const Series& b) {
    std::vector<Rational> c(b.coeffs().begin() + 1, b.coeffs().end());
    return Series(std::move(c));
}

void check_invertible_form(const Series& b) {
    if (b[0] != 0 || b.order() < 1 || b[1] == 0)
        throw NotInvertibleForm("compositional inverse needs b_0 = 0 and b_1 != 0");
}

}  // namespace

Series lagrange_inverse(const Series& b) {
    check_invertible_form(b);
    const int m = b.order();
    const Series inv = mul_inverse(shifted_down(b));  // btilde^{-1}, order m-1
    Series r = Series::zero(m);
    Series p = Series::one(m - 1);
    for (int k = 1; k <= m; ++k) {
        p = mul(p, inv);  // btilde^{-k}
        r.coeff(k) = p[k - 1] / Rational(k);
    }
    return r;
}

Rational lagrange_compose_coeff(const Series& c, const Series& b, int k) {
    check_invertible_form(b);
    if (k < 1 || k > b.order() || k > c.order())
        throw IndexOutOfRange("lagrange_compose_coeff: k out of range");
    const Series inv = mul_inverse(shifted_down(b)).truncated(k - 1);
    Series p = Series::one(k - 1);
    for (int i = 0; i < k; ++i) p = mul(p, inv);
    const Series q = mul(derivative(c).truncated(k - 1), p);
    return q[k - 1] / Rational(k);
}

Rational EgfView::exp_coeff(int n) const {
    return series_[n] * Rational(factorial(static_cast<unsigned>(n)));
}

std::vector<Rational> EgfView::exp_coeffs() const {
    std::vector<Rational> r;
    r.reserve(static_cast<size_t>(series_.order()) + 1);
    for (int n = 0; n <= series_.order(); ++n) r.push_back(exp_coeff(n));
    return r;
}

EgfView EgfView::from_exp_coeffs(const std::vector<Rational>& a) {
    std::vector<Rational> c;
    c.reserve(a.size());
    for (size_t n = 0; n < a.size(); ++n)
        c.push_back(a[n] / Rational(factorial(static_cast<unsigned>(n))));
    return EgfView(Series(std::move(c)));
}

}  // namespace mayer

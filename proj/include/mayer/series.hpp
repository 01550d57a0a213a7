#pragma once

#include <span>
#include <vector>

#include "mayer/errors.hpp"
#include "mayer/rational.hpp"

namespace mayer {

/// Truncated formal power series with exact rational coefficients.
///
/// A Series of order N stores the ordinary coefficients a_0..a_N of
/// a_0 + a_1 X + ... + a_N X^N.  Every operation truncates its result to the
/// minimum order of its inputs; nothing ever extends the order silently.
class Series {
public:
    Series() : coeffs_{Rational(0)} {}
    explicit Series(std::vector<Rational> coeffs);

    static Series zero(int order);
    static Series one(int order);
    static Series constant(const Rational& a0, int order);
    static Series x(int order);
    /// 1 + X + X^2 + ... + X^order.
    static Series geometric(int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& operator[](int n) const;
    Rational& coeff(int n);
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    /// Copy truncated to a lower (or equal) order.
    Series truncated(int order) const;

    bool operator==(const Series&) const = default;

private:
    std::vector<Rational> coeffs_;  // size = order + 1
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series neg(const Series& a);

/// Convolution product, truncated to min(order a, order b).
Series mul(const Series& a, const Series& b);

/// Repeated convolution; pow_int(a, 0) = 1 at a's order.
Series pow_int(const Series& a, unsigned n);

/// Multiplicative inverse; requires a_0 != 0 (throws ZeroConstantTerm).
Series mul_inverse(const Series& a);

/// Composition a(b(X)); requires b_0 = 0 (throws NonzeroInnerConstant).
Series compose(const Series& a, const Series& b);

/// Term-wise derivative; the result has order max(N-1, 0).
Series derivative(const Series& a);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return neg(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

/// Generalized binomial coefficient r(r-1)...(r-n+1)/n!, equal to 1 at n = 0.
Rational generalized_binomial(const Rational& r, unsigned n);

/// The binomial series (1+X)^r truncated at `order`, for any rational r.
Series binomial_series(const Rational& r, int order);

/// a^r for rational r; requires a_0 = 1 (throws ConstantTermNotOne).
/// Computed as the composition of (1+X)^r with a - 1.
Series real_power(const Series& a, const Rational& r);

/// Partial ordinary Bell polynomial B^_{m,k}(b_1, ..., b_{m-k+1}):
/// the sum over compositions j_1 + ... + j_k = m, j_i >= 1, of b_{j_1}...b_{j_k}.
/// Requires 1 <= k <= m (throws IndexOutOfRange).  b[0] holds b_1.
Rational bell_ordinary(int m, int k, std::span<const Rational> b);

/// Partial exponential Bell polynomial B_{n,k}(b_1, ..., b_{n-k+1}).
/// Requires 1 <= k <= n (throws IndexOutOfRange).  b[0] holds b_1.
Rational bell_exponential(int n, int k, std::span<const Rational> b);

/// Compositional inverse of b, where b = X * btilde with btilde(0) != 0.
/// Coefficients come from the Lagrange inversion formula
///   [X^k] b^dagger = (1/k) [X^{k-1}] btilde^{-k},
/// so only inversion and powers of a unit-constant-term series are needed.
/// Throws NotInvertibleForm unless b_0 = 0 and b_1 != 0.
Series lagrange_inverse(const Series& b);

/// [X^k] of c composed with the compositional inverse of b, evaluated
/// without constructing the inverse:  k [X^k] (c o b^dagger) = [X^{k-1}] c' btilde^{-k}.
Rational lagrange_compose_coeff(const Series& c, const Series& b, int k);

/// Exponential-coefficient view of a Series: the n-th exponential
/// coefficient is n! times the ordinary one.
class EgfView {
public:
    explicit EgfView(Series s) : series_(std::move(s)) {}

    const Series& series() const { return series_; }
    Rational exp_coeff(int n) const;
    std::vector<Rational> exp_coeffs() const;

    /// Build the underlying ordinary series from exponential coefficients.
    static EgfView from_exp_coeffs(const std::vector<Rational>& a);

private:
    Series series_;
};

}  // namespace mayer

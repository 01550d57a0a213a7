#pragma once

#include <optional>
#include <vector>

#include "mayer/cluster.hpp"
#include "mayer/errors.hpp"
#include "mayer/rational.hpp"

namespace mayer {

/// Coefficients t_n = [x^n] B of the tree sum B(x) = Psi(x B(x)), solved
/// order by order.  ghat[k] holds the normalized vertex weight for k >= 1
/// (ghat[0] is ignored); missing orders count as zero.
template <typename F>
std::vector<F> tree_sum_functional_coeffs(const std::vector<F>& ghat, int order);

/// The same coefficients by direct summation over vertex-degree sequences
/// with the Cayley multinomial.  Independent of the functional route; the
/// cost grows quickly, so order <= 10.
template <typename F>
std::vector<F> tree_sum_degree_coeffs(const std::vector<F>& ghat, int order);

/// Coefficients of T = 1 - 1/B, the unsplittable-tree series, from the
/// coefficients of B (B[0] must be 1).
template <typename F>
std::vector<F> t_pen1_coeffs(const std::vector<F>& b);

/// Tree sum B evaluated in the dimensionless variable x = r C(beta).
struct TreeSum {
    enum class Source { FunctionalEquation, DegreeSum };

    std::vector<double> coeffs;  // coeffs[n] = [x^n] B, coeffs[0] = 1
    double c_beta = 0;
    Source source = Source::FunctionalEquation;
    /// When present, certifies coeffs[n] <= tail_ratio^n, so the truncation
    /// error at x < 1/tail_ratio is below the geometric remainder.
    std::optional<double> tail_ratio;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    /// Truncated polynomial value at raw fugacity r.
    double evaluate(double r) const;
    /// Truncated value plus the certified geometric tail (infinite at and
    /// beyond the certified radius).
    double evaluate_upper(double r) const;
};

TreeSum tree_sum_functional(const VertexCoefficients& vc, int order, PsiMode mode);
TreeSum tree_sum_degrees(const VertexCoefficients& vc, int order, PsiMode mode);

/// beta_{n+1} from the cluster coefficients via Bell polynomials:
///   beta_{n+1} = sum_k binom(-n,k) k! B_{n,k}(b_2, ..., b_{n-k+2}).
/// b2up[i] holds b_{i+2}; b_1 = 1 is implicit.  Throws
/// InsufficientCoefficients when fewer than n entries are supplied.
Rational virial_from_cluster_bell(const std::vector<Rational>& b2up, int n);

/// The same coefficient via Lagrange inversion,
///   beta_{n+1}/(n+1)! = 1/(n+1) [X^n] (bhat')^{-n},
/// evaluated with exact series arithmetic.  Must agree with the Bell route.
Rational virial_from_cluster_lagrange(const std::vector<Rational>& b2up, int n);

struct GrtBound {
    double r_hat = 0;    // smallest solution of r T1'(r) - T1(r) = 1
    double t1_at_rhat = 0;
    double r_grt = 0;    // (1/C) r_hat / (1 + T1(r_hat))
    double tail_bound = 0;  // certified truncation error on r_grt
    int terms = 0;
};

/// The Groeneveld-Ramawadth-Tate virial bound from the unit-weight
/// unsplittable series T1(r) = r + sum n^n r^{n+1}/(n+1)!.
/// Throws TruncationInsufficient when the series tail at r_hat is not
/// negligible for the requested number of terms.
GrtBound grt_bound(double c_beta, int terms = 400);

/// Classical Lebowitz-Penrose virial constant for repulsive interactions.
inline double lp_classical_bound(double c_beta) { return 0.144766998 / c_beta; }

struct MStarResult {
    double value = 0;  // sup over [0, mu*] of mu / (2 Psi(mu) - 1)
    double mu_arg = 0;
};

/// Efficient certified virial-radius bound M*.  mu_star caps the search.
MStarResult m_star(const PsiFunction& psi_fn, double mu_star);

struct RStarVirialResult {
    double value = 0;  // sup over [0, r_cap] of r B(r) / (2 B(r) - 1)
    double r_arg = 0;
    bool certified = false;
};

/// Virial-radius bound from the tree sum.  Certified mode requires a tail
/// ratio on B and evaluates the upper envelope (which can only shrink the
/// result); estimate mode uses the bare truncation, which inflates it.
RStarVirialResult r_star_virial(const TreeSum& b, double r_cap, bool certified);

struct VirialTermBound {
    double value = 0;            // bound on |beta_{n+1}| / (n+1)!
    double inf_tree_form = 0;    // inf of 2/r - 1/(r B(r))
    double inf_unsplittable = 0; // inf of (1 + T(r))/r, same truncation
};

/// Bound on the general virial term: (1/(n+1)) [inf (2/r - 1/(r B(r)))]^n,
/// with the equivalent unsplittable-series form exposed alongside.
VirialTermBound virial_term_bound(const TreeSum& b, int n, double r_cap);

struct VirialReport {
    double c_beta = 0;
    bool infinite_radius = false;

    double m_star_certified = 0, m_star_estimate = 0;
    double m_star_mu = 0;
    double r_star_virial_estimate = 0;
    std::optional<double> r_star_virial_certified;
    double r_grt = 0;
    double r_lp_classical = 0;
    std::optional<std::vector<double>> beta_over_factorial;  // beta_n/n! when b_n is known

    int truncation = 0;
};

VirialReport make_virial_report(const VertexCoefficients& vc, const ClusterReport& cluster,
                                int tree_order = 14);

}  // namespace mayer

#include "mayer/virial.hpp"

#include <cmath>

#include "mayer/numerics.hpp"
#include "mayer/series.hpp"

namespace mayer {

template <typename F>
std::vector<F> tree_sum_functional_coeffs(const std::vector<F>& ghat, int order) {
    if (order < 0) throw Error("tree_sum: order >= 0");
    auto g_of = [&](int k) { return k < static_cast<int>(ghat.size()) ? ghat[static_cast<size_t>(k)] : F(0); };
    // psi_k = ghat(k)/k!
    std::vector<F> psi_k(static_cast<size_t>(order) + 1, F(0));
    F fact(1);
    for (int k = 1; k <= order; ++k) {
        fact *= F(k);
        psi_k[static_cast<size_t>(k)] = g_of(k) / fact;
    }
    std::vector<F> t(static_cast<size_t>(order) + 1, F(0));
    t[0] = F(1);
    for (int n = 1; n <= order; ++n) {
        // [x^n] Psi(x B) = sum_k psi_k [x^{n-k}] B^k, using only t_0..t_{n-1}
        F acc(0);
        std::vector<F> bk(static_cast<size_t>(n), F(0));  // B^k truncated below order n
        bk[0] = F(1);
        for (int k = 1; k <= n; ++k) {
            std::vector<F> nxt(static_cast<size_t>(n), F(0));
            for (int i = 0; i < n; ++i) {
                if (bk[static_cast<size_t>(i)] == F(0)) continue;
                for (int j = 0; i + j < n; ++j)
                    nxt[static_cast<size_t>(i + j)] += bk[static_cast<size_t>(i)] * t[static_cast<size_t>(j)];
            }
            bk = std::move(nxt);
            if (psi_k[static_cast<size_t>(k)] != F(0))
                acc += psi_k[static_cast<size_t>(k)] * bk[static_cast<size_t>(n - k)];
        }
        t[static_cast<size_t>(n)] = acc;
    }
    return t;
}

template <typename F>
std::vector<F> tree_sum_degree_coeffs(const std::vector<F>& ghat, int order) {
    if (order > 10) throw TooLarge("tree_sum_degree_coeffs: order <= 10");
    auto g_of = [&](int k) {
        if (k == 0) return F(1);
        return k < static_cast<int>(ghat.size()) ? ghat[static_cast<size_t>(k)] : F(0);
    };
    std::vector<F> g_over_fact(static_cast<size_t>(order) + 1);  // g(e)/e!
    F fact(1);
    g_over_fact[0] = F(1);
    for (int e = 1; e <= order; ++e) {
        fact *= F(e);
        g_over_fact[static_cast<size_t>(e)] = g_of(e) / fact;
    }

    std::vector<F> t(static_cast<size_t>(order) + 1, F(0));
    t[0] = F(1);
    for (int n = 1; n <= order; ++n) {
        // t_n = (1/n) sum_{d0 >= 1} g(d0)/(d0-1)! *
        //       sum over (e_1..e_n >= 0, sum = n - d0) of prod g(e_i)/e_i!
        F total(0);
        for (int d0 = 1; d0 <= n; ++d0) {
            F inner(0);
            auto rec = [&](auto&& self, int slot, int remaining, F prod) -> void {
                if (prod == F(0)) return;
                if (slot == n) {
                    if (remaining == 0) inner += prod;
                    return;
                }
                // a tail of zeros is always allowed; cap e by what remains
                for (int e = 0; e <= remaining; ++e)
                    self(self, slot + 1, remaining - e, prod * g_over_fact[static_cast<size_t>(e)]);
            };
            rec(rec, 0, n - d0, F(1));
            F head = g_of(d0);
            F f(1);
            for (int i = 2; i < d0; ++i) f *= F(i);
            total += head / f * inner;
        }
        t[static_cast<size_t>(n)] = total / F(n);
    }
    return t;
}

template <typename F>
std::vector<F> t_pen1_coeffs(const std::vector<F>& b) {
    if (b.empty() || b[0] != F(1)) throw Error("t_pen1_coeffs: B(0) = 1 required");
    const int n = static_cast<int>(b.size()) - 1;
    std::vector<F> inv(static_cast<size_t>(n) + 1, F(0));
    inv[0] = F(1);
    for (int m = 1; m <= n; ++m) {
        F s(0);
        for (int k = 1; k <= m; ++k) s += b[static_cast<size_t>(k)] * inv[static_cast<size_t>(m - k)];
        inv[static_cast<size_t>(m)] = -s;
    }
    std::vector<F> t(static_cast<size_t>(n) + 1, F(0));
    for (int m = 1; m <= n; ++m) t[static_cast<size_t>(m)] = -inv[static_cast<size_t>(m)];
    return t;
}

template std::vector<double> tree_sum_functional_coeffs<double>(const std::vector<double>&, int);
template std::vector<Rational> tree_sum_functional_coeffs<Rational>(const std::vector<Rational>&,
                                                                    int);
template std::vector<double> tree_sum_degree_coeffs<double>(const std::vector<double>&, int);
template std::vector<Rational> tree_sum_degree_coeffs<Rational>(const std::vector<Rational>&, int);
template std::vector<double> t_pen1_coeffs<double>(const std::vector<double>&);
template std::vector<Rational> t_pen1_coeffs<Rational>(const std::vector<Rational>&);

namespace {

std::vector<double> ghat_vector(const VertexCoefficients& vc, int order, PsiMode mode) {
    std::vector<double> g(static_cast<size_t>(order) + 1, 0.0);
    for (int k = 1; k <= order; ++k) {
        if (vc.has(k))
            g[static_cast<size_t>(k)] = mode == PsiMode::Upper ? vc.upper(k) : vc.point(k);
        else if (mode == PsiMode::Upper && !vc.zero_tail())
            g[static_cast<size_t>(k)] = 1.0;  // classical envelope
    }
    return g;
}

std::optional<double> certified_tail_ratio(const VertexCoefficients& vc, PsiMode mode) {
    if (mode != PsiMode::Upper) return std::nullopt;
    const RStarResult rs = optimize_r_star(PsiFunction(vc, PsiMode::Upper));
    return 1.0 / (rs.r_star * vc.c_beta());  // in x = r C units
}

}  // namespace

double TreeSum::evaluate(double r) const {
    const double x = r * c_beta;
    double v = 0;
    for (int n = order(); n >= 0; --n) v = v * x + coeffs[static_cast<size_t>(n)];
    return v;
}

double TreeSum::evaluate_upper(double r) const {
    if (!tail_ratio) throw Error("TreeSum: no certified tail available");
    const double qx = *tail_ratio * r * c_beta;
    if (qx >= 1.0) return std::numeric_limits<double>::infinity();
    return evaluate(r) + std::pow(qx, order() + 1) / (1.0 - qx);
}

TreeSum tree_sum_functional(const VertexCoefficients& vc, int order, PsiMode mode) {
    TreeSum b;
    b.coeffs = tree_sum_functional_coeffs<double>(ghat_vector(vc, order, mode), order);
    b.c_beta = vc.c_beta();
    b.source = TreeSum::Source::FunctionalEquation;
    b.tail_ratio = certified_tail_ratio(vc, mode);
    return b;
}

TreeSum tree_sum_degrees(const VertexCoefficients& vc, int order, PsiMode mode) {
    TreeSum b;
    b.coeffs = tree_sum_degree_coeffs<double>(ghat_vector(vc, order, mode), order);
    b.c_beta = vc.c_beta();
    b.source = TreeSum::Source::DegreeSum;
    b.tail_ratio = certified_tail_ratio(vc, mode);
    return b;
}

Rational virial_from_cluster_bell(const std::vector<Rational>& b2up, int n) {
    if (n < 0) throw Error("virial_from_cluster_bell: n >= 0");
    if (n == 0) return Rational(1);
    if (static_cast<int>(b2up.size()) < n)
        throw InsufficientCoefficients("need the cluster coefficients b_2..b_{n+1}");
    Rational beta(0);
    for (int k = 1; k <= n; ++k)
        beta += generalized_binomial(Rational(-n), static_cast<unsigned>(k)) *
                Rational(factorial(static_cast<unsigned>(k))) * bell_exponential(n, k, b2up);
    return beta;
}

Rational virial_from_cluster_lagrange(const std::vector<Rational>& b2up, int n) {
    if (n < 0) throw Error("virial_from_cluster_lagrange: n >= 0");
    if (n == 0) return Rational(1);
    if (static_cast<int>(b2up.size()) < n)
        throw InsufficientCoefficients("need the cluster coefficients b_2..b_{n+1}");
    // bhat'(X) = 1 + sum_{m >= 1} b_{m+1} X^m / m!
    Series bprime = Series::one(n);
    Rational fact(1);
    for (int m = 1; m <= n; ++m) {
        fact *= Rational(m);
        bprime.coeff(m) = b2up[static_cast<size_t>(m - 1)] / fact;
    }
    const Series pw = real_power(bprime, Rational(-n));
    return pw[n] * Rational(factorial(static_cast<unsigned>(n)));
}

GrtBound grt_bound(double c_beta, int terms) {
    if (c_beta <= 0) throw Error("grt_bound: C(beta) > 0");
    if (terms < 16) throw Error("grt_bound: need at least 16 terms");
    std::vector<double> log_n(static_cast<size_t>(terms) + 1, 0.0);
    std::vector<double> lg_fact(static_cast<size_t>(terms) + 1, 0.0);  // lgamma(n+2)
    for (int n = 1; n <= terms; ++n) {
        log_n[static_cast<size_t>(n)] = std::log(static_cast<double>(n));
        lg_fact[static_cast<size_t>(n)] = std::lgamma(static_cast<double>(n) + 2.0);
    }
    // f(r) = r T1'(r) - T1(r) - 1 = sum n^{n+1} r^{n+1}/(n+1)! - 1
    auto f = [&](double r) {
        const double lr = std::log(r);
        KahanSum s;
        for (int n = 1; n <= terms; ++n)
            s.add(std::exp((n + 1) * (log_n[static_cast<size_t>(n)] + lr) -
                           lg_fact[static_cast<size_t>(n)]));
        return s.value() - 1.0;
    };
    auto t1 = [&](double r) {
        const double lr = std::log(r);
        KahanSum s;
        s.add(r);
        for (int n = 1; n <= terms; ++n)
            s.add(std::exp(n * log_n[static_cast<size_t>(n)] + (n + 1) * lr -
                           lg_fact[static_cast<size_t>(n)]));
        return s.value();
    };

    constexpr double kInvE = 0.36787944117144233;
    GrtBound out;
    out.terms = terms;
    out.r_hat = bisect_increasing(f, 1e-6, kInvE * (1 - 1e-9), 1e-12);
    out.t1_at_rhat = t1(out.r_hat);
    out.r_grt = out.r_hat / (c_beta * (1.0 + out.t1_at_rhat));

    // geometric tail bounds from n^n/n! <= e^n/sqrt(2 pi n)
    const double re = out.r_hat * std::exp(1.0);
    if (re >= 1.0 - 1e-9)
        throw TruncationInsufficient("grt_bound: root too close to 1/e for a geometric tail");
    const double geo = std::pow(re, terms + 1) / (1.0 - re);
    const double tail_f = out.r_hat * geo / std::sqrt(2.0 * 3.141592653589793 * (terms + 1));
    const double tail_t1 = tail_f / (terms + 1);
    // df/dr at the root, for the root-shift bound
    const double h = 1e-6;
    const double dfdr = (f(out.r_hat + h) - f(out.r_hat - h)) / (2 * h);
    const double dr = tail_f / std::max(dfdr, 1.0);
    // R is stationary in r_hat at the root, so the T1 tail dominates
    out.tail_bound =
        (out.r_hat * tail_t1 / ((1 + out.t1_at_rhat) * (1 + out.t1_at_rhat)) + dr * dr) / c_beta;
    if (out.tail_bound > 1e-6)
        throw TruncationInsufficient("grt_bound: truncation error above 1e-6; raise `terms`");
    return out;
}

MStarResult m_star(const PsiFunction& psi_fn, double mu_star) {
    if (mu_star <= 0) throw Error("m_star: mu_star > 0");
    auto objective = [&](double mu) {
        return mu <= 0 ? 0.0 : mu / (2.0 * psi_fn(mu) - 1.0);
    };
    const MaxResult m = maximize_scan_golden(objective, mu_star);
    return MStarResult{m.value, m.arg};
}

RStarVirialResult r_star_virial(const TreeSum& b, double r_cap, bool certified) {
    if (r_cap <= 0) throw DomainEmpty("r_star_virial: r_cap must be positive");
    if (certified && !b.tail_ratio)
        throw Error("r_star_virial: certified mode needs a tree sum with a tail ratio");
    auto h = [&](double r) {
        if (r <= 0) return 0.0;
        const double bv = certified ? b.evaluate_upper(r) : b.evaluate(r);
        if (std::isinf(bv)) return r / 2.0;
        return r * bv / (2.0 * bv - 1.0);
    };
    const MaxResult m = maximize_scan_golden(h, r_cap);
    return RStarVirialResult{m.value, m.arg, certified};
}

VirialTermBound virial_term_bound(const TreeSum& b, int n, double r_cap) {
    if (r_cap <= 0) throw DomainEmpty("virial_term_bound: r_cap must be positive");
    if (n < 0) throw Error("virial_term_bound: n >= 0");
    const bool use_tail = b.tail_ratio.has_value();
    auto a_form = [&](double r) {
        const double bv = use_tail ? b.evaluate_upper(r) : b.evaluate(r);
        if (std::isinf(bv)) return 2.0 / r;
        return 2.0 / r - 1.0 / (r * bv);
    };
    const std::vector<double> tc = t_pen1_coeffs<double>(b.coeffs);
    auto t_form = [&](double r) {
        const double x = r * b.c_beta;
        double t = 0;
        for (int m = static_cast<int>(tc.size()) - 1; m >= 0; --m)
            t = t * x + tc[static_cast<size_t>(m)];
        return (1.0 + t) / r;
    };
    const MaxResult ma = maximize_scan_golden([&](double r) { return r <= 0 ? -1e300 : -a_form(r); }, r_cap);
    const MaxResult mt = maximize_scan_golden([&](double r) { return r <= 0 ? -1e300 : -t_form(r); }, r_cap);
    VirialTermBound out;
    out.inf_tree_form = -ma.value;
    out.inf_unsplittable = -mt.value;
    out.value = std::pow(out.inf_tree_form, n) / (n + 1);
    return out;
}

VirialReport make_virial_report(const VertexCoefficients& vc, const ClusterReport& cluster,
                                int tree_order) {
    VirialReport rep;
    rep.c_beta = vc.c_beta();
    rep.truncation = tree_order;
    if (cluster.infinite_radius) {
        rep.infinite_radius = true;
        return rep;
    }

    const PsiFunction upper(vc, PsiMode::Upper);
    const PsiFunction lower(vc, PsiMode::Lower);
    const MStarResult mc = m_star(upper, cluster.mu_star_certified);
    const MStarResult me = m_star(lower, cluster.mu_star_estimate);
    rep.m_star_certified = mc.value;
    rep.m_star_estimate = me.value;
    rep.m_star_mu = mc.mu_arg;

    const TreeSum b_est = tree_sum_functional(vc, tree_order, PsiMode::Lower);
    rep.r_star_virial_estimate = r_star_virial(b_est, cluster.r_star_estimate, false).value;
    const TreeSum b_cert = tree_sum_functional(vc, tree_order, PsiMode::Upper);
    rep.r_star_virial_certified = r_star_virial(b_cert, cluster.r_star_certified, true).value;

    rep.r_grt = grt_bound(vc.c_beta()).r_grt;
    rep.r_lp_classical = lp_classical_bound(vc.c_beta());
    return rep;
}

}  // namespace mayer

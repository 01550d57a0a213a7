#include "mayer/cluster.hpp"

#include <cmath>

#include "mayer/numerics.hpp"
#include "mayer/rational.hpp"

namespace mayer {

double classical_bound(double c_beta) {
    if (c_beta <= 0) throw Error("classical_bound: C(beta) > 0");
    return 1.0 / (std::exp(1.0) * c_beta);
}

double lambert_pressure_bound(double z_abs, double c_beta) {
    if (c_beta <= 0) throw Error("lambert_pressure_bound: C(beta) > 0");
    if (z_abs < 0 || z_abs > classical_bound(c_beta) * (1 + 1e-12))
        throw OutOfDomain("lambert_pressure_bound: |z| must not exceed 1/(e C)");
    return -lambert_w0(-c_beta * z_abs) / c_beta;
}

FirstCorrectionBound first_correction_bound(double c_beta, double g2) {
    if (c_beta <= 0) throw Error("first_correction_bound: C(beta) > 0");
    if (g2 <= 0 || g2 > c_beta * c_beta * (1 + 1e-12))
        throw InvalidG2("first_correction_bound: need 0 < g2 <= C^2");
    const double sq = std::sqrt(g2);
    FirstCorrectionBound out;
    out.r2 = 1.0 / (sq * std::exp(1.0) + (c_beta - sq) * std::sinh(1.0));
    out.delta = sq / c_beta;
    out.ratio_to_classical =
        1.0 / (out.delta + (1.0 - out.delta) / 2.0 * (1.0 - std::exp(-2.0)));
    return out;
}

RStarResult optimize_r_star(const PsiFunction& psi_fn, double mu_cap) {
    const double c = psi_fn.c_beta();
    if (c <= 0) throw Error("optimize_r_star: C(beta) > 0; the ideal gas has infinite radius");
    if (mu_cap <= 0) mu_cap = 10.0 / c;
    auto objective = [&](double mu) { return mu <= 0 ? 0.0 : mu / psi_fn(mu); };

    MaxResult m = maximize_scan_golden(objective, mu_cap);
    RStarResult out;
    if (m.at_upper_bound) {
        out.cap_raised = true;
        m = maximize_scan_golden(objective, 10.0 * mu_cap);
        if (m.at_upper_bound)
            throw NoInteriorMax("optimize_r_star: maximum still at the raised cap");
    }
    out.r_star = m.value;
    out.mu_star = m.arg;
    out.iterations = m.iterations;
    return out;
}

double fixed_point_mu_z(double z_abs, const PsiFunction& psi_fn, const RStarResult& rs) {
    if (z_abs < 0) throw Error("fixed_point_mu_z: |z| >= 0");
    if (z_abs == 0) return 0.0;
    const double c = psi_fn.c_beta();
    if (z_abs > rs.r_star * (1 + 1e-12))
        throw NoConvergence("fixed_point_mu_z: |z| exceeds r*, no fixed point below mu*");
    const double tol = c > 0 ? 1e-12 / c : 1e-12;

    double mu = 0.0;
    for (long it = 0; it < 1000000; ++it) {
        const double next = z_abs * psi_fn(mu);
        if (next > rs.mu_star * (1 + 1e-9))
            throw NoConvergence("fixed_point_mu_z: iteration escaped past mu*");
        if (std::abs(next - mu) < tol) {
            mu = next;
            break;
        }
        mu = next;
    }
    // The ascent stalls near a tangency (|z| close to r*), so always polish
    // by bisecting mu - |z| Psi(mu), which is concave with its only sign
    // change on [mu, mu*].
    {
        double lo = mu, hi = rs.mu_star;
        for (int it = 0; it < 200 && hi - lo > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            (mid - z_abs * psi_fn(mid) >= 0 ? hi : lo) = mid;
        }
        mu = 0.5 * (lo + hi);
    }

    // safety net: the descending iteration from mu* must land at the same
    // fixed point (it stops early near a tangency, hence the loose tolerance)
    double down = rs.mu_star;
    for (long it = 0; it < 100000; ++it) {
        const double next = z_abs * psi_fn(down);
        if (std::abs(next - down) < tol) {
            down = next;
            break;
        }
        down = next;
    }
    if (std::abs(down - mu) > 1e-6 * (1 + rs.mu_star))
        throw NoConvergence("fixed_point_mu_z: ascending and descending limits disagree");
    return mu;
}

double fixed_point_mu_z(double z_abs, const PsiFunction& psi_fn) {
    return fixed_point_mu_z(z_abs, psi_fn, optimize_r_star(psi_fn));
}

std::vector<double> pi_iteration_sequence(double z_abs, const PsiFunction& psi_fn, double mu0,
                                          int k) {
    if (k < 1) throw Error("pi_iteration_sequence: k >= 1");
    if (z_abs * psi_fn(mu0) > mu0 * (1 + 1e-12))
        throw PreconditionViolated("pi_iteration_sequence: |z| Psi(mu0) must not exceed mu0");
    std::vector<double> seq;
    seq.reserve(static_cast<size_t>(k));
    double mu = mu0;
    for (int i = 0; i < k; ++i) {
        mu = z_abs * psi_fn(mu);
        seq.push_back(mu);
    }
    return seq;
}

double penrose_upper_bound(const std::vector<double>& b, int n) {
    if (n < 2) throw Error("penrose_upper_bound: n >= 2");
    if (static_cast<int>(b.size()) <= n)
        throw Error("penrose_upper_bound: coefficient b_n missing");
    const double bn = b[static_cast<size_t>(n)];
    if (bn == 0) throw ZeroCoefficient("penrose_upper_bound: b_n = 0");
    if (n == 2) return 1.0 / std::abs(bn);
    const double nf = to_double(Rational(factorial(static_cast<unsigned>(n))));
    return std::pow(n / ((n - 1) * (std::abs(bn) / nf)), 1.0 / (n - 1));
}

ClusterReport make_cluster_report(const VertexCoefficients& vc, std::optional<double> z_abs) {
    ClusterReport rep;
    rep.c_beta = vc.c_beta();
    rep.truncation = vc.order();
    if (vc.c_beta() <= 0.0) {
        rep.infinite_radius = true;
        return rep;
    }

    rep.r_classical = classical_bound(vc.c_beta());
    rep.penrose_upper_n2 = 1.0 / vc.c_beta();

    const PsiFunction upper(vc, PsiMode::Upper);
    const PsiFunction lower(vc, PsiMode::Lower);
    const RStarResult cert = optimize_r_star(upper);
    const RStarResult est = optimize_r_star(lower);
    rep.r_star_certified = cert.r_star;
    rep.mu_star_certified = cert.mu_star;
    rep.r_star_estimate = est.r_star;
    rep.mu_star_estimate = est.mu_star;
    rep.optimizer_iterations = cert.iterations + est.iterations;

    if (vc.has(2) && vc.point(2) > 0) {
        const double c = vc.c_beta();
        rep.first_correction = first_correction_bound(c, vc.upper(2) * c * c);
    }

    if (z_abs) {
        rep.z_abs = z_abs;
        rep.z_at_endpoint = std::abs(*z_abs - cert.r_star) <= 1e-9 * cert.r_star;
        rep.mu_z = fixed_point_mu_z(*z_abs, upper, cert);
        rep.pressure_bound = rep.mu_z;
    }
    return rep;
}

}  // namespace mayer

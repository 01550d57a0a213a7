#pragma once

#include <optional>
#include <vector>

#include "mayer/potentials.hpp"

namespace mayer {

enum class PsiMode { Lower, Upper };

/// Callable view of a vertex sum: mu -> Psi(mu) in the chosen mode.
/// Upper is the certified evaluation (inflated entries plus tail); Lower is
/// the optimistic point-estimate truncation.
class PsiFunction {
public:
    PsiFunction(const VertexCoefficients& vc, PsiMode mode) : vc_(&vc), mode_(mode) {}
    double operator()(double mu) const {
        const PsiBounds b = psi(*vc_, mu);
        return mode_ == PsiMode::Upper ? b.upper : b.lower;
    }
    double c_beta() const { return vc_->c_beta(); }
    PsiMode mode() const { return mode_; }
    const VertexCoefficients& coefficients() const { return *vc_; }

private:
    const VertexCoefficients* vc_;
    PsiMode mode_;
};

/// The classical cluster-radius bound 1/(e C).
double classical_bound(double c_beta);

/// Pressure bound -W(-C |z|)/C for |z| <= 1/(e C); throws OutOfDomain beyond.
double lambert_pressure_bound(double z_abs, double c_beta);

struct FirstCorrectionBound {
    double r2 = 0;                 // radius bound using g(2)
    double ratio_to_classical = 0; // r2 / r1
    double delta = 0;              // sqrt(g2)/C
};

/// First correction to the classical bound from the two-point integral g(2)
/// (raw units, 0 < g2 <= C^2; throws InvalidG2 otherwise).
FirstCorrectionBound first_correction_bound(double c_beta, double g2);

struct RStarResult {
    double r_star = 0;
    double mu_star = 0;
    int iterations = 0;
    bool cap_raised = false;
};

/// r* = max over mu >= 0 of mu/Psi(mu), with its maximizer mu*.
/// Scan + golden section on [0, mu_cap] (default 10/C); if the maximum sits
/// on the cap the cap is raised once, then NoInteriorMax is thrown.
RStarResult optimize_r_star(const PsiFunction& psi_fn, double mu_cap = 0);

/// Smallest solution of |z| Psi(mu) = mu for |z| <= r*.  Monotone ascent
/// from 0, switching to bisection near the tangency; the descending
/// iteration from mu* cross-checks the limit.  Throws NoConvergence when
/// z_abs exceeds r*.
double fixed_point_mu_z(double z_abs, const PsiFunction& psi_fn, const RStarResult& rs);
/// Convenience overload that computes (r*, mu*) itself.
double fixed_point_mu_z(double z_abs, const PsiFunction& psi_fn);

/// The iterates Pi_z^1(mu0), ..., Pi_z^k(mu0) with Pi_z(x) = |z| Psi(x).
/// Requires |z| Psi(mu0) <= mu0 (throws PreconditionViolated), which makes
/// the sequence nonincreasing.
std::vector<double> pi_iteration_sequence(double z_abs, const PsiFunction& psi_fn, double mu0,
                                          int k);

/// Rigorous upper bound on the cluster radius from the n-th coefficient:
/// [n/((n-1) |b_n|/n!)]^{1/(n-1)}, strengthened to 1/|b_2| at n = 2.
/// b[i] holds b_i (entries below index 2 are ignored).
double penrose_upper_bound(const std::vector<double>& b, int n);

struct ClusterReport {
    double c_beta = 0;
    bool infinite_radius = false;  // C(beta) = 0: the series is entire

    double r_classical = 0;
    double r_star_certified = 0, mu_star_certified = 0;
    double r_star_estimate = 0, mu_star_estimate = 0;
    double penrose_upper_n2 = 0;  // 1/C
    std::optional<FirstCorrectionBound> first_correction;

    std::optional<double> z_abs;
    std::optional<double> mu_z;
    std::optional<double> pressure_bound;  // |z| B(|z|) <= mu_z
    bool z_at_endpoint = false;

    int truncation = 0;
    int optimizer_iterations = 0;
};

/// Runs the whole cluster-bound pipeline for a vertex sequence.
ClusterReport make_cluster_report(const VertexCoefficients& vc,
                                  std::optional<double> z_abs = std::nullopt);

}  // namespace mayer

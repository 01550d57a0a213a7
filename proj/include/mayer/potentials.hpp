#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mayer/errors.hpp"

namespace mayer {

enum class PotentialKind { HardSphere, PowerLaw, Tabulated, Ideal };

/// Repulsive radial two-body potential phi(r) >= 0 at inverse temperature
/// beta in dimension d.  The Mayer magnitude f(r) = 1 - exp(-beta phi(r))
/// always lies in [0,1].
class PairPotential {
public:
    static PairPotential hard_sphere(double radius, int dim, double beta = 1.0);
    static PairPotential power_law(double epsilon, double sigma, double exponent, int dim,
                                   double beta = 1.0);
    /// Radial grid (r, phi(r)); phi is interpolated linearly, clamped to the
    /// first value below the grid and zero beyond it.
    static PairPotential tabulated(std::vector<double> r, std::vector<double> phi, int dim,
                                   double beta = 1.0);
    static PairPotential ideal(int dim, double beta = 1.0);

    PotentialKind kind() const { return kind_; }
    int dimension() const { return dim_; }
    double beta() const { return beta_; }
    double radius() const { return radius_; }
    double epsilon() const { return epsilon_; }
    double sigma() const { return sigma_; }
    double exponent() const { return exponent_; }
    const std::vector<double>& grid_r() const { return grid_r_; }
    const std::vector<double>& grid_phi() const { return grid_phi_; }

    /// phi(r); +infinity inside a hard core.
    double phi(double r) const;
    /// exp(-beta phi(r)), the pair Boltzmann factor.
    double boltzmann(double r) const;
    /// 1 - exp(-beta phi(r)), the Mayer magnitude.
    double mayer_f(double r) const;
    /// Radius beyond which f vanishes (or a safe cutoff for sampling).
    double support_radius() const;

private:
    PairPotential() = default;
    PotentialKind kind_ = PotentialKind::Ideal;
    int dim_ = 3;
    double beta_ = 1.0;
    double radius_ = 0, epsilon_ = 0, sigma_ = 0, exponent_ = 0;
    std::vector<double> grid_r_, grid_phi_;
};

/// Volume of the d-dimensional ball of radius a.
double ball_volume(int dim, double a);
/// Surface area of the unit sphere in d dimensions.
double sphere_surface(int dim);

/// Temperedness constant C(beta) = integral of |e^{-beta phi} - 1| over R^d.
/// Closed forms for hard spheres and power laws (throws NotTempered when the
/// power-law exponent does not exceed the dimension); quadrature otherwise.
double c_beta(const PairPotential& p);
/// Independent numerical route: adaptive radial quadrature for every kind.
double c_beta_quadrature(const PairPotential& p, double tol = 1e-10);

/// Normalized vertex integral ghat(n) = g(n)/C(beta)^n when a closed form is
/// known: n = 1 for every potential; hard spheres d=1 for all n; the zero
/// tail beyond the packing degree for hard spheres d <= 2.
std::optional<double> g_exact_normalized(const PairPotential& p, int n);

struct GEstimate {
    double value = 0;     // g(n), raw units
    double std_err = 0;   // standard error of the mean, raw units
    double normalized = 0;        // g(n)/C^n
    double normalized_err = 0;    // std err of the normalized mean
};

/// Importance-sampling Monte Carlo for g(n), n >= 2: each point is drawn
/// from the density f(0,x)/C(beta) and the sampled pair Boltzmann product is
/// averaged.  Deterministic for a given seed; the sample budget is divided
/// over 64 fixed logical streams so the result does not depend on the worker
/// count.  Throws DegenerateSampler when f vanishes identically.
GEstimate g_monte_carlo(const PairPotential& p, int n, std::uint64_t samples,
                        std::uint64_t seed, int workers = 1);

enum class Provenance { Exact, MonteCarlo, Bound };

struct VertexEntry {
    double value = 0;     // normalized ghat(n) in [0,1]
    double std_err = 0;   // zero unless Monte Carlo
    Provenance provenance = Provenance::Bound;
    bool set = false;
};

/// The sequence ghat(1..N) with per-entry provenance, plus C(beta).
/// ghat(1) = 1 always (g(1) = C(beta) exactly).
class VertexCoefficients {
public:
    VertexCoefficients(double c_beta, int order);

    double c_beta() const { return c_beta_; }
    int order() const { return static_cast<int>(entries_.size()); }
    bool has(int n) const;
    const VertexEntry& entry(int n) const;

    void set_exact(int n, double ghat);
    void set_monte_carlo(int n, double ghat, double std_err);
    void set_bound(int n, double ghat);

    /// Point estimate of ghat(n).
    double point(int n) const;
    /// Certified upper value: min(value + 3 std_err, 1).
    double upper(int n) const;

    /// When true, ghat(n) = 0 exactly for all n beyond order().
    bool zero_tail() const { return zero_tail_; }
    void set_zero_tail(bool z) { zero_tail_ = z; }

    /// Only g(1) known: the classical envelope Psi <= exp(mu C).
    static VertexCoefficients classical_only(double c_beta);
    /// Exact / reference coefficients for hard spheres in d = 1, 2.
    static VertexCoefficients hard_sphere_reference(const PairPotential& p);

private:
    double c_beta_;
    bool zero_tail_ = false;
    std::vector<VertexEntry> entries_;  // index 0 <-> n = 1
};

/// Fills every missing ghat(n), n <= up_to, with the smallest product
/// upper(n1) upper(n2) over decompositions n = n1 + n2 (capped at 1).
VertexCoefficients pad_submultiplicative(VertexCoefficients vc, int up_to);

struct PsiBounds {
    double lower = 1;  // point estimates, truncated
    double upper = 1;  // inflated entries plus the exp(mu C) tail
};

/// Vertex sum Psi(mu) = 1 + sum mu^n g(n)/n!, as a lower (point-estimate)
/// and a certified upper evaluation.  For a zero-tail sequence the upper
/// value has no remainder term beyond the stored degree.
PsiBounds psi(const VertexCoefficients& vc, double mu);

}  // namespace mayer

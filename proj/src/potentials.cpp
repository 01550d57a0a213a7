#include "mayer/potentials.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "mayer/numerics.hpp"

namespace mayer {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kStreams = 64;
}  // namespace

PairPotential PairPotential::hard_sphere(double radius, int dim, double beta) {
    if (radius <= 0 || dim < 1) throw Error("hard_sphere: need radius > 0 and dim >= 1");
    PairPotential p;
    p.kind_ = PotentialKind::HardSphere;
    p.radius_ = radius;
    p.dim_ = dim;
    p.beta_ = beta;
    return p;
}

PairPotential PairPotential::power_law(double epsilon, double sigma, double exponent, int dim,
                                       double beta) {
    if (epsilon <= 0 || sigma <= 0 || exponent <= 0 || dim < 1)
        throw Error("power_law: parameters must be positive");
    PairPotential p;
    p.kind_ = PotentialKind::PowerLaw;
    p.epsilon_ = epsilon;
    p.sigma_ = sigma;
    p.exponent_ = exponent;
    p.dim_ = dim;
    p.beta_ = beta;
    return p;
}

PairPotential PairPotential::tabulated(std::vector<double> r, std::vector<double> phi, int dim,
                                       double beta) {
    if (r.size() != phi.size() || r.size() < 2) throw Error("tabulated: need matching grids");
    if (!std::is_sorted(r.begin(), r.end())) throw Error("tabulated: r grid must be sorted");
    for (double v : phi)
        if (v < 0) throw Error("tabulated: repulsive potentials only (phi >= 0)");
    PairPotential p;
    p.kind_ = PotentialKind::Tabulated;
    p.grid_r_ = std::move(r);
    p.grid_phi_ = std::move(phi);
    p.dim_ = dim;
    p.beta_ = beta;
    return p;
}

PairPotential PairPotential::ideal(int dim, double beta) {
    PairPotential p;
    p.kind_ = PotentialKind::Ideal;
    p.dim_ = dim;
    p.beta_ = beta;
    return p;
}

double PairPotential::phi(double r) const {
    switch (kind_) {
        case PotentialKind::HardSphere:
            return r <= radius_ ? std::numeric_limits<double>::infinity() : 0.0;
        case PotentialKind::PowerLaw:
            return epsilon_ * std::pow(sigma_ / r, exponent_);
        case PotentialKind::Tabulated: {
            if (r <= grid_r_.front()) return grid_phi_.front();
            if (r >= grid_r_.back()) return 0.0;
            const auto it = std::upper_bound(grid_r_.begin(), grid_r_.end(), r);
            const size_t hi = static_cast<size_t>(it - grid_r_.begin());
            const double t = (r - grid_r_[hi - 1]) / (grid_r_[hi] - grid_r_[hi - 1]);
            return grid_phi_[hi - 1] + t * (grid_phi_[hi] - grid_phi_[hi - 1]);
        }
        case PotentialKind::Ideal:
            return 0.0;
    }
    return 0.0;
}

double PairPotential::boltzmann(double r) const { return std::exp(-beta_ * phi(r)); }

double PairPotential::mayer_f(double r) const { return -std::expm1(-beta_ * phi(r)); }

double PairPotential::support_radius() const {
    switch (kind_) {
        case PotentialKind::HardSphere:
            return radius_;
        case PotentialKind::Tabulated:
            return grid_r_.back();
        default:
            return 0.0;  // unbounded support
    }
}

double ball_volume(int dim, double a) {
    switch (dim) {
        case 1: return 2.0 * a;
        case 2: return kPi * a * a;
        case 3: return 4.0 / 3.0 * kPi * a * a * a;
        default: return std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0) * std::pow(a, dim);
    }
}

double sphere_surface(int dim) {
    return 2.0 * std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0);
}

double c_beta(const PairPotential& p) {
    const int d = p.dimension();
    switch (p.kind()) {
        case PotentialKind::HardSphere:
            return ball_volume(d, p.radius());
        case PotentialKind::PowerLaw: {
            const double nu = p.exponent();
            if (nu <= d) throw NotTempered("power-law exponent must exceed the dimension");
            const double a = p.beta() * p.epsilon() * std::pow(p.sigma(), nu);
            return sphere_surface(d) * std::pow(a, d / nu) * std::tgamma(1.0 - d / nu) / d;
        }
        case PotentialKind::Tabulated:
            return c_beta_quadrature(p);
        case PotentialKind::Ideal:
            return 0.0;
    }
    return 0.0;
}

double c_beta_quadrature(const PairPotential& p, double tol) {
    const int d = p.dimension();
    const double surf = sphere_surface(d);
    auto radial = [&](double r) { return p.mayer_f(r) * std::pow(r, d - 1); };
    switch (p.kind()) {
        case PotentialKind::HardSphere:
            return surf * adaptive_simpson(radial, 0.0, p.radius(), tol);
        case PotentialKind::Tabulated:
            return surf * adaptive_simpson(radial, 0.0, p.grid_r().back(), tol);
        case PotentialKind::Ideal:
            return 0.0;
        case PotentialKind::PowerLaw: {
            const double nu = p.exponent();
            if (nu <= d) throw NotTempered("power-law exponent must exceed the dimension");
            const double a = p.beta() * p.epsilon() * std::pow(p.sigma(), nu);
            const double r0 = std::pow(a, 1.0 / nu);  // phi scale: beta phi(r0) = 1
            const double inner = adaptive_simpson(radial, 0.0, r0, tol / 2);
            // tail via t = 1/r: integrand (1 - e^{-a t^nu}) t^{-d-1} on (0, 1/r0];
            // the head below delta is taken from the two-term expansion of 1 - e^{-x}.
            const double tmax = 1.0 / r0;
            const double delta = tmax * 1e-2;
            const double head = a * std::pow(delta, nu - d) / (nu - d) -
                                a * a * std::pow(delta, 2 * nu - d) / (2 * (2 * nu - d));
            auto tail_integrand = [&](double t) {
                return -std::expm1(-a * std::pow(t, nu)) * std::pow(t, -d - 1.0);
            };
            const double tail = adaptive_simpson(tail_integrand, delta, tmax, tol / 2);
            return surf * (inner + head + tail);
        }
    }
    return 0.0;
}

std::optional<double> g_exact_normalized(const PairPotential& p, int n) {
    if (n < 1) throw Error("g_exact: n >= 1");
    if (n == 1) return 1.0;
    if (p.kind() == PotentialKind::HardSphere) {
        if (p.dimension() == 1) return n == 2 ? 0.25 : 0.0;
        if (p.dimension() == 2 && n > 5) return 0.0;
    }
    if (p.kind() == PotentialKind::Ideal) return 0.0;
    return std::nullopt;
}

namespace {

/// Draws a radius from the density proportional to f(r) r^{d-1}.
/// Hard spheres invert the power CDF exactly; soft potentials use exact
/// rejection under the envelope min(1, beta phi(r)) applied to 1 - e^{-beta phi}.
class RadialSampler {
public:
    explicit RadialSampler(const PairPotential& p) : p_(&p), d_(p.dimension()) {
        switch (p.kind()) {
            case PotentialKind::HardSphere:
                break;
            case PotentialKind::PowerLaw: {
                nu_ = p.exponent();
                a_ = p.beta() * p.epsilon() * std::pow(p.sigma(), nu_);
                r0_ = std::pow(a_, 1.0 / nu_);
                const double m1 = 1.0 / d_;          // branch mass / r0^d
                const double m2 = 1.0 / (nu_ - d_);  // tail branch mass / r0^d
                p_inner_ = m1 / (m1 + m2);
                break;
            }
            case PotentialKind::Tabulated:
                rmax_ = p.support_radius();
                break;
            case PotentialKind::Ideal:
                throw DegenerateSampler("ideal gas has no Mayer mass to sample");
        }
    }

    double draw(std::mt19937_64& gen) const {
        switch (p_->kind()) {
            case PotentialKind::HardSphere:
                return p_->radius() * std::pow(u01(gen), 1.0 / d_);
            case PotentialKind::PowerLaw:
                for (long tries = 0; tries < 100000000; ++tries) {
                    double r, ratio;
                    if (u01(gen) < p_inner_) {
                        r = r0_ * std::pow(u01(gen), 1.0 / d_);
                        ratio = -std::expm1(-a_ * std::pow(r, -nu_));
                    } else {
                        r = r0_ * std::pow(1.0 - u01(gen), -1.0 / (nu_ - d_));
                        const double x = a_ * std::pow(r, -nu_);
                        ratio = -std::expm1(-x) / x;
                    }
                    if (u01(gen) < ratio) return r;
                }
                throw DegenerateSampler("power-law rejection sampler failed to accept");
            case PotentialKind::Tabulated:
                for (long tries = 0; tries < 100000000; ++tries) {
                    const double r = rmax_ * std::pow(u01(gen), 1.0 / d_);
                    if (u01(gen) < p_->mayer_f(r)) return r;
                }
                throw DegenerateSampler("tabulated potential has (numerically) no Mayer mass");
            case PotentialKind::Ideal:
                break;
        }
        throw DegenerateSampler("no sampler for this potential");
    }

private:
    const PairPotential* p_;
    int d_;
    double nu_ = 0, a_ = 0, r0_ = 0, p_inner_ = 0, rmax_ = 0;
};

void sample_direction(std::mt19937_64& gen, int d, double* out) {
    if (d == 1) {
        out[0] = u01(gen) < 0.5 ? -1.0 : 1.0;
        return;
    }
    if (d == 2) {
        const double th = 2.0 * kPi * u01(gen);
        out[0] = std::cos(th);
        out[1] = std::sin(th);
        return;
    }
    if (d == 3) {
        const double z = 2.0 * u01(gen) - 1.0;
        const double th = 2.0 * kPi * u01(gen);
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        out[0] = s * std::cos(th);
        out[1] = s * std::sin(th);
        out[2] = z;
        return;
    }
    // general d: normalized Gaussian vector via Box-Muller
    double norm2 = 0;
    for (int i = 0; i < d; i += 2) {
        const double u = u01(gen), v = u01(gen);
        const double rad = std::sqrt(-2.0 * std::log(u));
        out[i] = rad * std::cos(2.0 * kPi * v);
        if (i + 1 < d) out[i + 1] = rad * std::sin(2.0 * kPi * v);
    }
    for (int i = 0; i < d; ++i) norm2 += out[i] * out[i];
    const double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < d; ++i) out[i] *= inv;
}

}  // namespace

GEstimate g_monte_carlo(const PairPotential& p, int n, std::uint64_t samples,
                        std::uint64_t seed, int workers) {
    if (n < 2) throw Error("g_monte_carlo handles n >= 2; g(1) = C(beta) exactly");
    if (samples == 0) throw Error("g_monte_carlo: need samples > 0");
    const double c = c_beta(p);
    if (c <= 0.0) throw DegenerateSampler("C(beta) = 0: nothing to sample");
    const RadialSampler sampler(p);
    const int d = p.dimension();
    if (d > 16) throw Error("g_monte_carlo: dimension too large");

    struct StreamAcc {
        KahanSum sum, sum_sq;
    };
    std::vector<StreamAcc> acc(kStreams);
    std::atomic<int> next{0};

    auto run_stream = [&](int s) {
        std::mt19937_64 gen(derive_seed(seed, static_cast<std::uint64_t>(s)));
        const std::uint64_t base = samples / kStreams;
        const std::uint64_t count = base + (static_cast<std::uint64_t>(s) < samples % kStreams);
        std::vector<double> pts(static_cast<size_t>(n) * static_cast<size_t>(d));
        double dir[16];
        for (std::uint64_t it = 0; it < count; ++it) {
            for (int i = 0; i < n; ++i) {
                const double r = sampler.draw(gen);
                sample_direction(gen, d, dir);
                for (int k = 0; k < d; ++k) pts[static_cast<size_t>(i * d + k)] = r * dir[k];
            }
            double w = 1.0;
            for (int i = 0; i < n && w != 0.0; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double dist2 = 0;
                    for (int k = 0; k < d; ++k) {
                        const double diff = pts[static_cast<size_t>(i * d + k)] -
                                            pts[static_cast<size_t>(j * d + k)];
                        dist2 += diff * diff;
                    }
                    w *= p.boltzmann(std::sqrt(dist2));
                    if (w == 0.0) break;
                }
            acc[static_cast<size_t>(s)].sum.add(w);
            acc[static_cast<size_t>(s)].sum_sq.add(w * w);
        }
    };

    workers = std::clamp(workers, 1, kStreams);
    if (workers == 1) {
        for (int s = 0; s < kStreams; ++s) run_stream(s);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int s = next.fetch_add(1); s < kStreams; s = next.fetch_add(1)) run_stream(s);
            });
        for (auto& t : pool) t.join();
    }

    KahanSum total, total_sq;
    for (const StreamAcc& a : acc) {
        total.add(a.sum.value());
        total_sq.add(a.sum_sq.value());
    }
    const double nn = static_cast<double>(samples);
    const double mean = total.value() / nn;
    const double var =
        samples > 1 ? std::max(0.0, (total_sq.value() - nn * mean * mean) / (nn - 1.0)) : 0.0;
    const double se = std::sqrt(var / nn);

    GEstimate g;
    g.normalized = mean;
    g.normalized_err = se;
    const double cn = std::pow(c, n);
    g.value = mean * cn;
    g.std_err = se * cn;
    return g;
}

VertexCoefficients::VertexCoefficients(double c_beta, int order) : c_beta_(c_beta) {
    if (order < 1) throw Error("VertexCoefficients: order >= 1");
    if (c_beta < 0) throw Error("VertexCoefficients: C(beta) >= 0");
    entries_.resize(static_cast<size_t>(order));
    entries_[0] = VertexEntry{1.0, 0.0, Provenance::Exact, true};
}

bool VertexCoefficients::has(int n) const {
    return n >= 1 && n <= order() && entries_[static_cast<size_t>(n - 1)].set;
}

const VertexEntry& VertexCoefficients::entry(int n) const {
    if (!has(n)) throw Error("VertexCoefficients: entry not set");
    return entries_[static_cast<size_t>(n - 1)];
}

namespace {
void check_ghat(int n, double ghat) {
    if (n < 2) throw Error("VertexCoefficients: ghat(1) = 1 is fixed");
    if (ghat < 0 || ghat > 1.0 + 1e-12)
        throw Error("VertexCoefficients: ghat must lie in [0, 1]");
}
}  // namespace

void VertexCoefficients::set_exact(int n, double ghat) {
    check_ghat(n, ghat);
    if (n > order()) entries_.resize(static_cast<size_t>(n));
    entries_[static_cast<size_t>(n - 1)] = VertexEntry{ghat, 0.0, Provenance::Exact, true};
}

void VertexCoefficients::set_monte_carlo(int n, double ghat, double std_err) {
    check_ghat(n, ghat);
    if (n > order()) entries_.resize(static_cast<size_t>(n));
    entries_[static_cast<size_t>(n - 1)] = VertexEntry{ghat, std_err, Provenance::MonteCarlo, true};
}

void VertexCoefficients::set_bound(int n, double ghat) {
    check_ghat(n, ghat);
    if (n > order()) entries_.resize(static_cast<size_t>(n));
    entries_[static_cast<size_t>(n - 1)] = VertexEntry{ghat, 0.0, Provenance::Bound, true};
}

double VertexCoefficients::point(int n) const { return entry(n).value; }

double VertexCoefficients::upper(int n) const {
    const VertexEntry& e = entry(n);
    const double inflated =
        e.provenance == Provenance::MonteCarlo ? e.value + 3.0 * e.std_err : e.value;
    return std::min(inflated, 1.0);
}

VertexCoefficients VertexCoefficients::classical_only(double c_beta) {
    return VertexCoefficients(c_beta, 1);
}

VertexCoefficients VertexCoefficients::hard_sphere_reference(const PairPotential& p) {
    if (p.kind() != PotentialKind::HardSphere)
        throw Error("hard_sphere_reference: hard spheres only");
    const double c = ball_volume(p.dimension(), p.radius());
    if (p.dimension() == 1) {
        VertexCoefficients vc(c, 2);
        vc.set_exact(2, 0.25);
        vc.set_zero_tail(true);
        return vc;
    }
    if (p.dimension() == 2) {
        // ghat(2) is the exact disk overlap integral; ghat(3..5) are published
        // reference values for the packing-limited overlap volumes.
        VertexCoefficients vc(c, 5);
        vc.set_exact(2, 3.0 * std::sqrt(3.0) / (4.0 * kPi));
        vc.set_monte_carlo(3, 0.0589, 0.0);
        vc.set_monte_carlo(4, 0.00013, 0.0);
        vc.set_monte_carlo(5, 0.0001, 0.0);
        vc.set_zero_tail(true);
        return vc;
    }
    throw Error("hard_sphere_reference: no reference coefficients beyond d = 2");
}

VertexCoefficients pad_submultiplicative(VertexCoefficients vc, int up_to) {
    const int old_order = vc.order();
    const bool zero_tail = vc.zero_tail();
    for (int n = 2; n <= up_to; ++n) {
        if (vc.has(n)) continue;
        if (zero_tail && n > old_order) {
            vc.set_exact(n, 0.0);
            continue;
        }
        double best = 1.0;
        for (int n1 = 1; n1 < n; ++n1) {
            const int n2 = n - n1;
            if (!vc.has(n1) || !vc.has(n2)) continue;
            best = std::min(best, vc.upper(n1) * vc.upper(n2));
        }
        vc.set_bound(n, best);
    }
    vc.set_zero_tail(zero_tail);
    return vc;
}

PsiBounds psi(const VertexCoefficients& vc, double mu) {
    if (mu < 0) throw Error("psi: mu >= 0");
    const double alpha = mu * vc.c_beta();
    PsiBounds out;
    double term = 1.0;  // alpha^n / n!
    double lower = 1.0, upper = 1.0;
    for (int n = 1; n <= vc.order(); ++n) {
        term *= alpha / n;
        if (vc.has(n)) {
            lower += term * vc.point(n);
            upper += term * vc.upper(n);
        } else {
            upper += term;  // classical envelope ghat <= 1
        }
    }
    if (!vc.zero_tail()) {
        // sum_{n > N} alpha^n / n!
        double t = term;
        for (int n = vc.order() + 1; n < vc.order() + 4000; ++n) {
            t *= alpha / n;
            upper += t;
            if (t < 1e-18 * std::max(upper, 1.0)) break;
        }
    }
    out.lower = lower;
    out.upper = upper;
    return out;
}

}  // namespace mayer

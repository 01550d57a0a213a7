#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace mayer {

/// Principal branch of Lambert's W (inverse of x e^x) on [-1/e, inf).
/// Halley iteration to 1e-14; near the branch point the square-root
/// expansion in p = sqrt(2(1 + e x)) seeds the iteration, so the endpoint
/// x = -1/e returns exactly -1.
double lambert_w0(double x);

struct MaxResult {
    double arg = 0;
    double value = 0;
    int iterations = 0;
    bool at_upper_bound = false;
};

/// Maximizes f over [0, hi]: a 64-point log-spaced bracketing scan followed
/// by golden-section refinement to relative tolerance rel_tol on the argument.
MaxResult maximize_scan_golden(const std::function<double(double)>& f, double hi,
                               int scan_points = 64, double rel_tol = 1e-10);

/// Root of an increasing function on [lo, hi] by bisection (absolute x tolerance).
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double tol);

/// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

/// Compensated accumulator; order-independent enough to keep parallel
/// reductions reproducible when combined in a fixed stream order.
struct KahanSum {
    double sum = 0;
    double carry = 0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// splitmix64 hash used to derive independent per-stream seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in the open interval (0,1), identical across platforms.
inline double u01(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace mayer

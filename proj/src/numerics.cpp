#include "mayer/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mayer/errors.hpp"

namespace mayer {

double lambert_w0(double x) {
    constexpr double kInvE = 0.36787944117144233;
    if (std::isnan(x) || x < -kInvE - 1e-15) throw OutOfDomain("lambert_w0: x < -1/e");
    if (x == 0.0) return 0.0;

    double w;
    const double p2 = 2.0 * (1.0 + std::exp(1.0) * x);
    if (p2 <= 0.0) return -1.0;  // at (or within rounding of) the branch point
    if (p2 < 0.5) {
        // branch-point expansion
        const double p = std::sqrt(p2);
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (x < 2.0) {
        w = x * (1.0 + x * (-1.0 + x * (1.5 - 8.0 / 3.0 * x)));
        if (w < -0.9) w = -0.9;
    } else {
        const double l = std::log(x);
        const double ll = std::log(l);
        w = l - ll + ll / l;
    }
    for (int it = 0; it < 64; ++it) {
        const double ew = std::exp(w);
        const double r = w * ew - x;
        const double denom = ew * (w + 1.0) - (w + 2.0) * r / (2.0 * w + 2.0);
        const double dw = r / denom;
        w -= dw;
        if (std::abs(dw) <= 1e-14 * (1.0 + std::abs(w))) break;
    }
    return w;
}

MaxResult maximize_scan_golden(const std::function<double(double)>& f, double hi,
                               int scan_points, double rel_tol) {
    if (!(hi > 0)) throw std::invalid_argument("maximize_scan_golden: hi must be positive");
    std::vector<double> xs{0.0};
    for (int i = 0; i < scan_points; ++i) {
        const double t = static_cast<double>(i) / (scan_points - 1);
        xs.push_back(hi * std::pow(10.0, -3.0 * (1.0 - t)));
    }
    int best = 0;
    double fbest = f(0.0);
    std::vector<double> fx{fbest};
    for (size_t i = 1; i < xs.size(); ++i) {
        fx.push_back(f(xs[i]));
        if (fx.back() > fbest) {
            fbest = fx.back();
            best = static_cast<int>(i);
        }
    }
    MaxResult res;
    res.at_upper_bound = best == static_cast<int>(xs.size()) - 1;

    double a = xs[static_cast<size_t>(std::max(best - 1, 0))];
    double b = xs[static_cast<size_t>(std::min<int>(best + 1, static_cast<int>(xs.size()) - 1))];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    int iters = 0;
    while (b - a > rel_tol * std::max(b, 1e-300)) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        if (++iters > 400) break;
    }
    res.arg = (a + b) / 2;
    res.value = f(res.arg);
    res.iterations = iters;
    // the scan maximum wins if refinement landed on a worse point
    if (fbest > res.value) {
        res.arg = xs[static_cast<size_t>(best)];
        res.value = fbest;
    }
    return res;
}

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double tol) {
    double flo = f(lo);
    if (flo > 0) return lo;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace mayer

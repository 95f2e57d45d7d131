#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>

#include "hypcc/errors.hpp"

namespace hypcc {

inline constexpr double kProjectiveTol = 1e-10;  // on ||X ^ Y|| of normalized reps
inline constexpr double kNullTol = 1e-12;        // |<X,X>| for ideal points
inline constexpr double kRepresentationTol = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// arccosh with a log1p expansion near 1; stable for very large arguments.
inline double acosh_stable(double x) {
    if (x < 1.0) {
        if (x > 1.0 - kRepresentationTol) return 0.0;
        throw RepresentationError("acosh argument " + std::to_string(x) + " below 1");
    }
    const double d = x - 1.0;
    if (d < 0.5) return std::log1p(d + std::sqrt(d * (d + 2.0)));
    if (x > 1e154) return std::log(2.0) + std::log(x);  // avoid x*x overflow
    return std::log(x + std::sqrt(x * x - 1.0));
}

/// Geometric-tail (Aitken) extrapolation of a convergent sequence tail.
inline double aitken_extrapolate(double p1, double p2, double p3) {
    const double d1 = p2 - p1;
    const double d2 = p3 - p2;
    const double denom = d1 - d2;
    if (std::abs(denom) < 1e-14 || std::abs(d1) < 1e-14) return p3;
    const double r = d2 / d1;
    if (!(r > 0.0 && r < 0.95)) return p3;
    return p3 + d2 * r / (1.0 - r);
}

/// Richardson extrapolation for an O(1/m^2) sequence sampled at m and 2m.
inline double richardson_h2(double coarse, double fine) {
    return fine + (fine - coarse) / 3.0;
}

/// Bisection on a bracketing interval; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double xtol = 1e-13, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw ConvergenceError("bisection bracket does not straddle a root", lo, hi);
    for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Deterministic random stream. All harness sampling goes through this so the
/// byte stream depends only on the seed, not on libstdc++ distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
    double normal() {
        // Marsaglia polar method, deterministic given the stream.
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double k = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * k;
        has_spare_ = true;
        return u * k;
    }
    std::uint64_t integer() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace hypcc

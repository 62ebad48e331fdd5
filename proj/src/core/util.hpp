#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace thinhomog {

/// Deterministic pseudo-random stream. Wraps a fixed 64-bit generator and
/// hand-rolled distributions so that sequences are identical across platforms
/// and standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a over a byte string; used for config provenance hashes.
inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Fixed, locale-independent floating-point formatting for CSV/SVG output.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Composite Simpson with n subintervals (n is rounded up to even).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

struct QuadratureResult {
    double value = 0.0;
    int points = 0;     // subinterval count of the accepted pass
    bool converged = false;
};

/// Composite Simpson with dyadic refinement until two successive values agree
/// to rel_tol (relative to the magnitude of the result), starting from n0
/// subintervals and capped at max_points.
inline QuadratureResult simpson_refined(const std::function<double(double)>& f, double a, double b,
                                        double rel_tol, int n0 = 64, int max_points = (1 << 20)) {
    int n = n0;
    double prev = simpson(f, a, b, n);
    while (n < max_points) {
        n *= 2;
        const double cur = simpson(f, a, b, n);
        const double scale = std::max({std::fabs(cur), std::fabs(prev), 1e-300});
        if (std::fabs(cur - prev) <= rel_tol * scale) {
            return {cur, n, true};
        }
        prev = cur;
    }
    return {prev, n, false};
}

/// Golden-section maximization of f on [a, b]; assumes f is unimodal there.
inline double golden_max(const std::function<double(double)>& f, double a, double b, int iters = 80) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

/// Scans f on [a, b] with n samples, then polishes the best bracket.
/// Returns the maximum value found.
inline double sampled_max(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i <= n; ++i) {
        const double x = a + (b - a) * i / n;
        const double v = f(x);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double h = (b - a) / n;
    const double lo = std::max(a, a + (best_i - 1) * h);
    const double hi = std::min(b, a + (best_i + 1) * h);
    return std::max(best, golden_max(f, lo, hi));
}

} // namespace thinhomog

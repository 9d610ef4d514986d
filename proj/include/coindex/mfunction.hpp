#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace coindex {

/// Real-valued function sampled on a uniform 1-d grid. Sample i sits at
/// x0 + i * dx. Invariants: dx > 0 and all samples finite; enforced where
/// instances are built (discretize, file loaders) and by binary ops.
struct MFunction {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double x_at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
};

/// Real-valued field sampled on a uniform 2-d grid, row-major:
/// samples[y * width + x]. Pixel spacing is dx by dy.
struct MField2D {
    std::size_t width = 0;
    std::size_t height = 0;
    double dx = 1.0;
    double dy = 1.0;
    std::vector<double> samples;

    double at(std::size_t x, std::size_t y) const { return samples[y * width + x]; }
    double& at(std::size_t x, std::size_t y) { return samples[y * width + x]; }
};

/// Samples f over [x0, x1] with n uniformly spaced points including both
/// endpoints. Requires n >= 2 and x1 > x0.
template <typename F>
MFunction discretize(F&& f, double x0, double x1, std::size_t n) {
    if (n < 2) throw std::invalid_argument("discretize: need at least 2 samples");
    if (!(x1 > x0)) throw std::invalid_argument("discretize: empty interval");
    MFunction out;
    out.x0 = x0;
    out.dx = (x1 - x0) / static_cast<double>(n - 1);
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.samples[i] = f(out.x_at(i));
    return out;
}

namespace detail {

inline double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace detail

/// Signed pointwise overlap: sign(u) * sign(v) * min(|u|, |v|). Positive
/// where the values agree in sign, negative where they oppose, zero where
/// either vanishes.
inline double signed_min(double u, double v) {
    return detail::sign_of(u) * detail::sign_of(v) * std::min(std::fabs(u), std::fabs(v));
}

/// Pointwise reach of either function: max(|u|, |v|).
inline double abs_max(double u, double v) {
    return std::max(std::fabs(u), std::fabs(v));
}

namespace detail {

inline void require_common_support(const MFunction& f, const MFunction& g,
                                   const char* who) {
    if (!(f.dx > 0.0) || !(g.dx > 0.0))
        throw std::invalid_argument(std::string(who) + ": sample spacing must be > 0");
    if (f.size() != g.size())
        throw std::invalid_argument(std::string(who) + ": sample counts differ");
    const double dx_tol = 1e-9 * std::max(f.dx, g.dx);
    if (std::fabs(f.dx - g.dx) > dx_tol)
        throw std::invalid_argument(std::string(who) + ": sample spacings differ");
    const double x0_tol = 1e-9 * std::max({1.0, std::fabs(f.x0), std::fabs(g.x0)});
    if (std::fabs(f.x0 - g.x0) > x0_tol)
        throw std::invalid_argument(std::string(who) + ": grid origins differ");
}

inline void require_common_support(const MField2D& f, const MField2D& g,
                                   const char* who) {
    if (!(f.dx > 0.0) || !(f.dy > 0.0) || !(g.dx > 0.0) || !(g.dy > 0.0))
        throw std::invalid_argument(std::string(who) + ": pixel spacing must be > 0");
    if (f.width != g.width || f.height != g.height)
        throw std::invalid_argument(std::string(who) + ": grid shapes differ");
    if (std::fabs(f.dx - g.dx) > 1e-9 * std::max(f.dx, g.dx) ||
        std::fabs(f.dy - g.dy) > 1e-9 * std::max(f.dy, g.dy))
        throw std::invalid_argument(std::string(who) + ": pixel spacings differ");
}

/// Trapezoid endpoint weight for index i of n samples.
inline double trapezoid_weight(std::size_t i, std::size_t n) {
    return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

}  // namespace detail

/// Trapezoid-rule integral of a sampled function. A single sample spans a
/// zero-length interval and integrates to 0.
inline double integral(const MFunction& f) {
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    double sum = 0.5 * (f.samples.front() + f.samples.back());
    for (std::size_t i = 1; i + 1 < n; ++i) sum += f.samples[i];
    return sum * f.dx;
}

/// Trapezoid-rule integral of kernel(f_i, g_i) over the common support.
template <typename Kernel>
double integral_combined(const MFunction& f, const MFunction& g, Kernel kernel,
                         const char* who = "integral_combined") {
    detail::require_common_support(f, g, who);
    const std::size_t n = f.size();
    if (n < 2) return 0.0;
    double sum = 0.5 * (kernel(f.samples.front(), g.samples.front()) +
                        kernel(f.samples.back(), g.samples.back()));
    for (std::size_t i = 1; i + 1 < n; ++i) sum += kernel(f.samples[i], g.samples[i]);
    return sum * f.dx;
}

/// 2-d trapezoid-rule integral of a sampled field. Degenerate single-row
/// or single-column fields span zero area and integrate to 0.
inline double integral(const MField2D& f) {
    if (f.width < 2 || f.height < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t y = 0; y < f.height; ++y) {
        const double wy = detail::trapezoid_weight(y, f.height);
        double row = 0.0;
        for (std::size_t x = 0; x < f.width; ++x)
            row += detail::trapezoid_weight(x, f.width) * f.at(x, y);
        sum += wy * row;
    }
    return sum * f.dx * f.dy;
}

/// 2-d trapezoid-rule integral of kernel(f_xy, g_xy).
template <typename Kernel>
double integral_combined(const MField2D& f, const MField2D& g, Kernel kernel,
                         const char* who = "integral_combined") {
    detail::require_common_support(f, g, who);
    if (f.width < 2 || f.height < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t y = 0; y < f.height; ++y) {
        const double wy = detail::trapezoid_weight(y, f.height);
        double row = 0.0;
        for (std::size_t x = 0; x < f.width; ++x)
            row += detail::trapezoid_weight(x, f.width) * kernel(f.at(x, y), g.at(x, y));
        sum += wy * row;
    }
    return sum * f.dx * f.dy;
}

}  // namespace coindex

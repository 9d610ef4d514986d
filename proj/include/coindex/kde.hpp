#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "coindex/mfunction.hpp"
#include "coindex/parallel.hpp"

namespace coindex {

struct GridSpec1D {
    double x0 = 0.0;
    double x1 = 1.0;
    std::size_t n = 2;
};

struct GridSpec2D {
    double x0 = 0.0;
    double x1 = 1.0;
    std::size_t nx = 2;
    double y0 = 0.0;
    double y1 = 1.0;
    std::size_t ny = 2;
};

namespace detail {

inline void require_axis(double lo, double hi, std::size_t n, const char* who) {
    if (n < 2 || !(hi > lo))
        throw std::invalid_argument(std::string(who) + ": degenerate grid");
}

inline void require_bandwidth(double h, const char* who) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument(std::string(who) + ": bandwidth must be finite and > 0");
}

inline double population_sd(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return std::sqrt(var / static_cast<double>(v.size()));
}

}  // namespace detail

/// Gaussian kernel density estimate on a uniform grid. The result
/// integrates to about 1 when the grid comfortably covers the points.
inline MFunction kde_1d(const std::vector<double>& points, const GridSpec1D& grid,
                        double bandwidth) {
    if (points.empty()) throw std::invalid_argument("kde_1d: no points");
    detail::require_axis(grid.x0, grid.x1, grid.n, "kde_1d");
    detail::require_bandwidth(bandwidth, "kde_1d");
    MFunction out;
    out.x0 = grid.x0;
    out.dx = (grid.x1 - grid.x0) / static_cast<double>(grid.n - 1);
    out.samples.assign(grid.n, 0.0);
    const double norm = 1.0 / (static_cast<double>(points.size()) * bandwidth *
                               std::sqrt(2.0 * std::numbers::pi));
    const double inv2h2 = 1.0 / (2.0 * bandwidth * bandwidth);
    parallel_for(grid.n, [&](std::size_t i) {
        const double x = out.x_at(i);
        double acc = 0.0;
        for (double p : points) {
            const double d = x - p;
            acc += std::exp(-d * d * inv2h2);
        }
        out.samples[i] = norm * acc;
    });
    return out;
}

/// Gaussian kernel density estimate on a uniform 2-d grid with one
/// isotropic bandwidth for both axes.
inline MField2D kde_2d(const std::vector<std::array<double, 2>>& points,
                       const GridSpec2D& grid, double bandwidth) {
    if (points.empty()) throw std::invalid_argument("kde_2d: no points");
    detail::require_axis(grid.x0, grid.x1, grid.nx, "kde_2d");
    detail::require_axis(grid.y0, grid.y1, grid.ny, "kde_2d");
    detail::require_bandwidth(bandwidth, "kde_2d");
    MField2D out;
    out.width = grid.nx;
    out.height = grid.ny;
    out.dx = (grid.x1 - grid.x0) / static_cast<double>(grid.nx - 1);
    out.dy = (grid.y1 - grid.y0) / static_cast<double>(grid.ny - 1);
    out.samples.assign(grid.nx * grid.ny, 0.0);
    const double norm = 1.0 / (static_cast<double>(points.size()) * 2.0 *
                               std::numbers::pi * bandwidth * bandwidth);
    const double inv2h2 = 1.0 / (2.0 * bandwidth * bandwidth);
    parallel_for(grid.ny, [&](std::size_t iy) {
        const double y = grid.y0 + out.dy * static_cast<double>(iy);
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x0 + out.dx * static_cast<double>(ix);
            double acc = 0.0;
            for (const auto& p : points) {
                const double ddx = x - p[0];
                const double ddy = y - p[1];
                acc += std::exp(-(ddx * ddx + ddy * ddy) * inv2h2);
            }
            out.at(ix, iy) = norm * acc;
        }
    });
    return out;
}

/// Silverman's rule-of-thumb bandwidth, 1.06 * sd * n^(-1/5), with the
/// population standard deviation. Throws when the points have no spread.
inline double silverman_bandwidth(const std::vector<double>& points) {
    if (points.empty()) throw std::invalid_argument("silverman_bandwidth: no points");
    const double sd = detail::population_sd(points);
    if (!(sd > 0.0))
        throw std::domain_error("silverman_bandwidth: points have zero dispersion");
    return 1.06 * sd * std::pow(static_cast<double>(points.size()), -0.2);
}

/// 2-d rule-of-thumb: the rms of the per-axis deviations scaled by
/// n^(-1/6), the bivariate analogue of the rule above.
inline double silverman_bandwidth(const std::vector<std::array<double, 2>>& points) {
    if (points.empty()) throw std::invalid_argument("silverman_bandwidth: no points");
    std::vector<double> xs(points.size());
    std::vector<double> ys(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        xs[i] = points[i][0];
        ys[i] = points[i][1];
    }
    const double sx = detail::population_sd(xs);
    const double sy = detail::population_sd(ys);
    const double sd = std::sqrt(0.5 * (sx * sx + sy * sy));
    if (!(sd > 0.0))
        throw std::domain_error("silverman_bandwidth: points have zero dispersion");
    return sd * std::pow(static_cast<double>(points.size()), -1.0 / 6.0);
}

}  // namespace coindex

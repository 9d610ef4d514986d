#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "coindex/kde.hpp"
#include "coindex/mfunction.hpp"
#include "coindex/parallel.hpp"
#include "coindex/rng.hpp"
#include "coindex/set_indices.hpp"

namespace coindex {

/// Signed intersection measure of two real functions on one support: the
/// integral of sign(f) * sign(g) * min(|f|, |g|). Regions of agreeing
/// sign add, opposing sign subtract.
inline double signed_intersection(const MFunction& f, const MFunction& g) {
    return integral_combined(f, g, [](double u, double v) { return signed_min(u, v); },
                             "signed_intersection");
}

inline double signed_intersection(const MField2D& f, const MField2D& g) {
    return integral_combined(f, g, [](double u, double v) { return signed_min(u, v); },
                             "signed_intersection");
}

/// Magnitude union measure: the integral of max(|f|, |g|).
inline double abs_union(const MFunction& f, const MFunction& g) {
    return integral_combined(f, g, [](double u, double v) { return abs_max(u, v); },
                             "abs_union");
}

inline double abs_union(const MField2D& f, const MField2D& g) {
    return integral_combined(f, g, [](double u, double v) { return abs_max(u, v); },
                             "abs_union");
}

namespace detail {

inline double field_jaccard_from(double si, double au) {
    if (au == 0.0) return kBothEmptyIndex;  // both functions identically zero
    return si / au;
}

template <typename FG>
void require_non_negative(const FG& f, const FG& g, const char* who) {
    auto check = [&](const auto& h) {
        for (double v : h.samples)
            if (v < 0.0)
                throw std::invalid_argument(std::string(who) +
                                            ": requires non-negative functions");
    };
    check(f);
    check(g);
}

}  // namespace detail

/// Similarity of two real functions: signed_intersection / abs_union.
/// Lies in [-1, 1]; 1 means identical, -1 means exact negation. Two
/// identically zero functions compare as identical.
inline double field_jaccard(const MFunction& f, const MFunction& g) {
    return detail::field_jaccard_from(signed_intersection(f, g), abs_union(f, g));
}

inline double field_jaccard(const MField2D& f, const MField2D& g) {
    return detail::field_jaccard_from(signed_intersection(f, g), abs_union(f, g));
}

/// Containment degree of two non-negative functions: the overlap mass
/// over the smaller total mass. Signed input is rejected.
inline double field_interiority(const MFunction& f, const MFunction& g) {
    detail::require_non_negative(f, g, "field_interiority");
    const double denom = std::min(integral(f), integral(g));
    if (denom == 0.0) return kBothEmptyIndex;
    return signed_intersection(f, g) / denom;
}

inline double field_interiority(const MField2D& f, const MField2D& g) {
    detail::require_non_negative(f, g, "field_interiority");
    const double denom = std::min(integral(f), integral(g));
    if (denom == 0.0) return kBothEmptyIndex;
    return signed_intersection(f, g) / denom;
}

/// Geometric-mean coincidence of two non-negative functions.
inline double field_coincidence(const MFunction& f, const MFunction& g) {
    detail::require_non_negative(f, g, "field_coincidence");
    return std::sqrt(field_jaccard(f, g) * field_interiority(f, g));
}

inline double field_coincidence(const MField2D& f, const MField2D& g) {
    detail::require_non_negative(f, g, "field_coincidence");
    return std::sqrt(field_jaccard(f, g) * field_interiority(f, g));
}

/// Similarity profile of f against g shifted by each lag: the value at
/// lag y is field_jaccard of f and g(. - y) over their overlapping
/// support. Requires matching sample spacing; each lag and the origin
/// difference must be whole multiples of it, so shifted grids align
/// exactly. Lags must be given in increasing uniformly spaced order (a
/// single lag is fine). An empty or zero-mass overlap scores 0: shifted
/// apart means nothing shared. Self-comparison peaks at lag 0 with
/// value 1.
inline MFunction mconvolution(const MFunction& f, const MFunction& g,
                              const std::vector<double>& lags) {
    if (!(f.dx > 0.0) || !(g.dx > 0.0))
        throw std::invalid_argument("mconvolution: sample spacing must be > 0");
    const double dx_tol = 1e-9 * std::max(f.dx, g.dx);
    if (std::fabs(f.dx - g.dx) > dx_tol)
        throw std::invalid_argument("mconvolution: sample spacings differ");
    if (lags.empty()) throw std::invalid_argument("mconvolution: no lags");
    const double dx = f.dx;
    auto to_steps = [&](double value, const char* what) {
        const double steps = value / dx;
        const auto k = static_cast<long long>(std::llround(steps));
        if (std::fabs(value - static_cast<double>(k) * dx) >
            1e-9 * std::max(dx, std::fabs(value)))
            throw std::invalid_argument(std::string("mconvolution: ") + what +
                                        " is not a whole multiple of dx");
        return k;
    };
    const long long origin_steps = to_steps(f.x0 - g.x0, "grid origin difference");
    std::vector<long long> lag_steps(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) lag_steps[i] = to_steps(lags[i], "lag");
    for (std::size_t i = 1; i < lag_steps.size(); ++i) {
        if (lag_steps[i] - lag_steps[i - 1] != lag_steps[1] - lag_steps[0] ||
            lag_steps[i] <= lag_steps[i - 1])
            throw std::invalid_argument(
                "mconvolution: lags must be increasing and uniformly spaced");
    }

    MFunction out;
    // snap the lag grid to whole steps so the output spacing is exact
    out.x0 = static_cast<double>(lag_steps.front()) * dx;
    out.dx = lags.size() >= 2
                 ? static_cast<double>(lag_steps[1] - lag_steps[0]) * dx
                 : dx;
    out.samples.resize(lags.size());
    const auto nf = static_cast<long long>(f.size());
    const auto ng = static_cast<long long>(g.size());
    parallel_for(lags.size(), [&](std::size_t li) {
        // f sample i aligns with g sample j = i + shift at this lag
        const long long shift = origin_steps - lag_steps[li];
        const long long lo = std::max(0LL, -shift);
        const long long hi = std::min(nf - 1, ng - 1 - shift);
        if (hi - lo < 1) {  // overlap spans zero length
            out.samples[li] = 0.0;
            return;
        }
        double si = 0.0;
        double au = 0.0;
        for (long long i = lo; i <= hi; ++i) {
            const double w = (i == lo || i == hi) ? 0.5 : 1.0;
            const double u = f.samples[static_cast<std::size_t>(i)];
            const double v = g.samples[static_cast<std::size_t>(i + shift)];
            si += w * signed_min(u, v);
            au += w * abs_max(u, v);
        }
        out.samples[li] = au == 0.0 ? 0.0 : si / au;
    });
    return out;
}

/// One sample pair of a joint-variation scatterplot. The identity line
/// splits the plane: region 'U' holds pairs with b > a, 'D' pairs with
/// b < a, and 'I' pairs exactly on the line.
struct ScatterPoint {
    double a = 0.0;
    double b = 0.0;
    char region = 'I';
};

/// Paired samples (f_i, g_i) of two functions on one support, tagged by
/// which side of the identity line they fall on.
inline std::vector<ScatterPoint> scatter_pairs(const MFunction& f, const MFunction& g) {
    detail::require_common_support(f, g, "scatter_pairs");
    std::vector<ScatterPoint> points(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = f.samples[i];
        const double b = g.samples[i];
        points[i] = {a, b, b > a ? 'U' : (b < a ? 'D' : 'I')};
    }
    return points;
}

/// Deterministic grayscale test image in [0, 1]: two Gaussian blobs over
/// a smooth sinusoidal background, clamped. Useful as a reproducible
/// stand-in for a photograph.
inline MField2D synthetic_image(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0)
        throw std::invalid_argument("synthetic_image: empty shape");
    MField2D img;
    img.width = width;
    img.height = height;
    img.samples.resize(width * height);
    const double w = static_cast<double>(width);
    const double h = static_cast<double>(height);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const double u = (static_cast<double>(x) + 0.5) / w;
            const double v = (static_cast<double>(y) + 0.5) / h;
            const double waves = 0.3 * std::sin(2.0 * std::numbers::pi * 3.0 * u) *
                                 std::cos(2.0 * std::numbers::pi * 2.0 * v);
            const double blob1 =
                0.35 * std::exp(-((u - 0.30) * (u - 0.30) + (v - 0.40) * (v - 0.40)) /
                                (2.0 * 0.18 * 0.18));
            const double blob2 =
                -0.25 * std::exp(-((u - 0.75) * (u - 0.75) + (v - 0.70) * (v - 0.70)) /
                                 (2.0 * 0.12 * 0.12));
            img.at(x, y) = std::clamp(0.5 + waves + blob1 + blob2, 0.0, 1.0);
        }
    }
    return img;
}

struct NoisyImageResult {
    MField2D noisy;
    double jaccard = 1.0;
};

/// Perturbs every pixel with uniform noise in [-amplitude, amplitude]
/// (one seeded draw per pixel, row-major) and reports the similarity of
/// the noisy image to the original. Amplitude 0 reproduces the image and
/// scores exactly 1; the score decays as the amplitude grows.
inline NoisyImageResult noisy_image_experiment(const MField2D& img, double amplitude,
                                               std::uint64_t seed) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw std::invalid_argument("noisy_image_experiment: amplitude must be >= 0");
    NoisyImageResult result;
    result.noisy = img;
    SplitMix64 rng(seed);
    for (double& s : result.noisy.samples) s += rng.next_symmetric(amplitude);
    result.jaccard = field_jaccard(img, result.noisy);
    return result;
}

/// Separation score of two labelled point clouds: the similarity of
/// their kernel density estimates on a shared grid. Near 1 means the
/// clusters occupy the same region; near 0 means they are well apart.
inline double cluster_separation(const std::vector<std::array<double, 2>>& cluster_a,
                                 const std::vector<std::array<double, 2>>& cluster_b,
                                 const GridSpec2D& grid, double bandwidth) {
    if (cluster_a.empty() || cluster_b.empty())
        throw std::invalid_argument("cluster_separation: empty cluster");
    const MField2D da = kde_2d(cluster_a, grid, bandwidth);
    const MField2D db = kde_2d(cluster_b, grid, bandwidth);
    return field_jaccard(da, db);
}

}  // namespace coindex

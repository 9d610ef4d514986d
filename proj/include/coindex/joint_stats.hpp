#pragma once

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

/// Centers and scales a sample to zero mean and unit spread using the
/// population standard deviation (divisor N). Needs at least 2 values and
/// nonzero variance.
inline std::vector<double> standardize(const std::vector<double>& values) {
    if (values.size() < 2)
        throw std::invalid_argument("standardize: need at least 2 values");
    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= n;
    if (!(var > 0.0)) throw std::domain_error("standardize: zero variance");
    const double inv_sd = 1.0 / std::sqrt(var);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mean) * inv_sd;
    return out;
}

namespace detail {

inline void require_paired(const std::vector<double>& xs, const std::vector<double>& ys,
                           const char* who) {
    if (xs.size() != ys.size())
        throw std::invalid_argument(std::string(who) + ": sample lengths differ");
    if (xs.size() < 2)
        throw std::invalid_argument(std::string(who) + ": need at least 2 pairs");
}

}  // namespace detail

/// Pearson correlation, computed as the mean product of the standardized
/// samples (population normalization, divisor N).
inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    detail::require_paired(xs, ys, "pearson");
    const std::vector<double> sx = standardize(xs);
    const std::vector<double> sy = standardize(ys);
    double acc = 0.0;
    for (std::size_t i = 0; i < sx.size(); ++i) acc += sx[i] * sy[i];
    return acc / static_cast<double>(sx.size());
}

/// Overlap-based correlation: both samples are standardized, then each
/// pair contributes its signed pointwise overlap against its magnitude
/// reach, exactly as in the continuous field index. Lies in [-1, 1]; more
/// sensitive to disagreement than pearson() because mismatched magnitudes
/// dilute the numerator even when signs agree.
inline double jaccard_correlation(const std::vector<double>& xs,
                                  const std::vector<double>& ys) {
    detail::require_paired(xs, ys, "jaccard_correlation");
    const std::vector<double> sx = standardize(xs);
    const std::vector<double> sy = standardize(ys);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < sx.size(); ++i) {
        num += signed_min(sx[i], sy[i]);
        den += abs_max(sx[i], sy[i]);
    }
    if (den == 0.0) return kBothEmptyIndex;
    return num / den;
}

/// Draws n pairs from a bivariate standard normal with correlation rho,
/// via the Cholesky construction x = z0, y = rho * z0 + sqrt(1 - rho^2)
/// * z1 over Box-Muller draws from a SplitMix64 stream.
inline std::vector<std::array<double, 2>> correlated_normal_pairs(double rho,
                                                                  std::size_t n,
                                                                  std::uint64_t seed) {
    if (!(rho > -1.0 && rho < 1.0))
        throw std::invalid_argument("correlated_normal_pairs: rho must lie in (-1, 1)");
    if (n < 2)
        throw std::invalid_argument("correlated_normal_pairs: need at least 2 pairs");
    SplitMix64 rng(seed);
    const double mix = std::sqrt(1.0 - rho * rho);
    std::vector<std::array<double, 2>> pairs(n);
    for (auto& p : pairs) {
        const NormalPair z = next_normal_pair(rng);
        p = {z.z0, rho * z.z0 + mix * z.z1};
    }
    return pairs;
}

struct SweepRow {
    double rho = 0.0;
    double pearson = 0.0;
    double jaccard_correlation = 0.0;
};

/// Empirical comparison of the two correlation measures across target
/// correlations. Each rho gets its own derived PRNG stream
/// (SplitMix64::child_seed(seed, i)), so rows are independent of each
/// other and of evaluation order, and the whole sweep is reproducible
/// from one seed.
inline std::vector<SweepRow> gaussian_sweep(const std::vector<double>& rhos,
                                            std::size_t n, std::uint64_t seed) {
    if (rhos.empty()) throw std::invalid_argument("gaussian_sweep: no rho values");
    std::vector<SweepRow> rows(rhos.size());
    parallel_for(rhos.size(), [&](std::size_t i) {
        const auto pairs =
            correlated_normal_pairs(rhos[i], n, SplitMix64::child_seed(seed, i));
        std::vector<double> xs(n);
        std::vector<double> ys(n);
        for (std::size_t k = 0; k < n; ++k) {
            xs[k] = pairs[k][0];
            ys[k] = pairs[k][1];
        }
        rows[i] = {rhos[i], pearson(xs, ys), jaccard_correlation(xs, ys)};
    });
    return rows;
}

}  // namespace coindex

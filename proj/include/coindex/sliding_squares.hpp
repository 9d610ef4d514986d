#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coindex/parallel.hpp"
#include "coindex/set_indices.hpp"

namespace coindex {

/// Benchmark geometry: an axis-aligned square A of side `side` and a
/// smaller square B of side `size_ratio * side`, both centered on the
/// same horizontal axis. B starts centered inside A and slides right by
/// `offset`. offset = (side - b) / 2 is the last position with B fully
/// inside A; offset = (side + b) / 2 is the first with no overlap.
struct SlidingSquaresConfig {
    double side = 1.0;        // a > 0
    double size_ratio = 1.0;  // r in (0, 1]
    double offset = 0.0;      // x >= 0, slide distance of B
};

inline void validate(const SlidingSquaresConfig& cfg) {
    if (!(cfg.side > 0.0) || !std::isfinite(cfg.side))
        throw std::invalid_argument("sliding squares: side must be finite and > 0");
    if (!(cfg.size_ratio > 0.0) || cfg.size_ratio > 1.0)
        throw std::invalid_argument("sliding squares: size_ratio must lie in (0, 1]");
    if (!(cfg.offset >= 0.0) || !std::isfinite(cfg.offset))
        throw std::invalid_argument("sliding squares: offset must be finite and >= 0");
}

struct OverlapAreas {
    double intersection = 0.0;
    double union_area = 0.0;
};

/// Closed-form overlap of the two squares. The linear expression below
/// equals the overlap area in the partial-overlap regime; clamping to
/// [0, b^2] extends it to full containment and full separation.
inline OverlapAreas overlap_areas(const SlidingSquaresConfig& cfg) {
    validate(cfg);
    const double a = cfg.side;
    const double r = cfg.size_ratio;
    const double b2 = (r * a) * (r * a);
    const double linear = 0.5 * (a * a * r * (1.0 + r) - 2.0 * r * a * cfg.offset);
    OverlapAreas out;
    out.intersection = std::clamp(linear, 0.0, b2);
    out.union_area = a * a * (1.0 + r * r) - out.intersection;
    return out;
}

/// The similarity surfaces the benchmark can trace over (offset, ratio).
enum class IndexKind {
    Jaccard,
    Interiority,
    Coincidence,
    AdditiveJaccard,
    AdditiveCoincidence,
};

inline IndexKind index_kind_from_string(const std::string& name) {
    if (name == "jaccard") return IndexKind::Jaccard;
    if (name == "interiority") return IndexKind::Interiority;
    if (name == "coincidence") return IndexKind::Coincidence;
    if (name == "additive_jaccard") return IndexKind::AdditiveJaccard;
    if (name == "additive_coincidence") return IndexKind::AdditiveCoincidence;
    throw std::invalid_argument("unknown index kind '" + name + "'");
}

inline const char* to_string(IndexKind kind) {
    switch (kind) {
        case IndexKind::Jaccard: return "jaccard";
        case IndexKind::Interiority: return "interiority";
        case IndexKind::Coincidence: return "coincidence";
        case IndexKind::AdditiveJaccard: return "additive_jaccard";
        case IndexKind::AdditiveCoincidence: return "additive_coincidence";
    }
    throw std::invalid_argument("unknown index kind");
}

/// Similarity of the two squares under the chosen index. Areas play the
/// role of cardinalities; B is never larger than A, so its area is the
/// containment reference.
inline double index_at(const SlidingSquaresConfig& cfg, IndexKind kind) {
    const OverlapAreas areas = overlap_areas(cfg);
    const double a2 = cfg.side * cfg.side;
    // Same rounding as the clamp bound in overlap_areas, so the contained
    // regime divides two identical doubles and lands on exactly 1.
    const double b2 = (cfg.size_ratio * cfg.side) * (cfg.size_ratio * cfg.side);
    const double jac = areas.intersection / areas.union_area;
    const double inter = areas.intersection / b2;
    const double additive = 2.0 * areas.intersection / (a2 + b2);
    switch (kind) {
        case IndexKind::Jaccard: return jac;
        case IndexKind::Interiority: return inter;
        case IndexKind::Coincidence: return std::sqrt(jac * inter);
        case IndexKind::AdditiveJaccard: return additive;
        case IndexKind::AdditiveCoincidence: return std::sqrt(additive * inter);
    }
    throw std::invalid_argument("unknown index kind");
}

/// Index values sampled over an (offset, ratio) grid. Offsets span
/// [0, side] inclusive; ratios are k / ratio_samples for k = 1..n, so 0
/// is excluded and 1 included. values is row-major with one row per
/// ratio: values[ri * offset_samples + xi].
struct IndexField {
    std::vector<double> offsets;
    std::vector<double> ratios;
    std::vector<double> values;
};

inline IndexField index_field(double side, std::size_t offset_samples,
                              std::size_t ratio_samples, IndexKind kind) {
    if (offset_samples < 2 || ratio_samples < 2)
        throw std::invalid_argument("index_field: need at least 2 samples per axis");
    validate({side, 1.0, 0.0});
    IndexField field;
    field.offsets.resize(offset_samples);
    for (std::size_t i = 0; i < offset_samples; ++i)
        field.offsets[i] =
            side * static_cast<double>(i) / static_cast<double>(offset_samples - 1);
    field.ratios.resize(ratio_samples);
    for (std::size_t k = 0; k < ratio_samples; ++k)
        field.ratios[k] =
            static_cast<double>(k + 1) / static_cast<double>(ratio_samples);
    field.values.resize(offset_samples * ratio_samples);
    parallel_for(ratio_samples, [&](std::size_t ri) {
        for (std::size_t xi = 0; xi < offset_samples; ++xi)
            field.values[ri * offset_samples + xi] =
                index_at({side, field.ratios[ri], field.offsets[xi]}, kind);
    });
    return field;
}

/// One constant-ratio profile: the small square's side b and the index
/// value at each sampled offset.
struct IndexSlice {
    double small_side = 0.0;
    std::vector<double> offsets;
    std::vector<double> values;
};

/// Index profiles along the offset axis for chosen small-square sides.
/// Each b must lie in (0, side].
inline std::vector<IndexSlice> index_slices(double side,
                                            const std::vector<double>& small_sides,
                                            std::size_t offset_samples,
                                            IndexKind kind) {
    if (offset_samples < 2)
        throw std::invalid_argument("index_slices: need at least 2 offset samples");
    validate({side, 1.0, 0.0});
    if (small_sides.empty())
        throw std::invalid_argument("index_slices: need at least one small side");
    std::vector<IndexSlice> slices;
    slices.reserve(small_sides.size());
    for (double b : small_sides) {
        if (!(b > 0.0) || b > side)
            throw std::invalid_argument("index_slices: small side must lie in (0, side]");
        IndexSlice slice;
        slice.small_side = b;
        slice.offsets.resize(offset_samples);
        slice.values.resize(offset_samples);
        for (std::size_t i = 0; i < offset_samples; ++i) {
            const double x =
                side * static_cast<double>(i) / static_cast<double>(offset_samples - 1);
            slice.offsets[i] = x;
            slice.values[i] = index_at({side, b / side, x}, kind);
        }
        slices.push_back(std::move(slice));
    }
    return slices;
}

}  // namespace coindex

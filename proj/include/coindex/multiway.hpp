#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coindex/set_expr.hpp"
#include "coindex/set_indices.hpp"

namespace coindex {

using SetFamily = std::vector<Set>;

namespace detail {

inline void require_family(const SetFamily& family, std::size_t min_size,
                           const char* who) {
    if (family.size() < min_size)
        throw std::invalid_argument(std::string(who) + ": needs at least " +
                                    std::to_string(min_size) + " sets");
}

/// Member indices ordered by (cardinality, position). The position
/// tie-break makes results deterministic when cardinalities repeat.
inline std::vector<std::size_t> by_cardinality(const SetFamily& family) {
    std::vector<std::size_t> order(family.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return family[i].size() < family[j].size();
    });
    return order;
}

inline Set family_intersection(const SetFamily& family) {
    Set acc = family.front();
    for (std::size_t i = 1; i < family.size(); ++i)
        acc = set_intersection(acc, family[i]);
    return acc;
}

inline Set family_union(const SetFamily& family) {
    Set acc = family.front();
    for (std::size_t i = 1; i < family.size(); ++i) acc = set_union(acc, family[i]);
    return acc;
}

}  // namespace detail

/// Shared fraction of n sets: |intersection of all| / |union of all|.
/// Non-increasing as members are added. All-empty yields kBothEmptyIndex.
inline double jaccard_n(const SetFamily& family) {
    detail::require_family(family, 2, "jaccard_n");
    const std::size_t uni = detail::family_union(family).size();
    if (uni == 0) return kBothEmptyIndex;
    const std::size_t inter = detail::family_intersection(family).size();
    return static_cast<double>(inter) / static_cast<double>(uni);
}

/// Layered containment degrees of an n-set family: the common
/// intersection's size divided by each member's cardinality, taken in
/// increasing (cardinality, position) order with the largest member
/// excluded. Layer k reports how fully the common core fills the k-th
/// smallest set. An empty denominator yields kBothEmptyIndex for that
/// layer. Returns n - 1 values.
inline std::vector<double> interiority_layers(const SetFamily& family) {
    detail::require_family(family, 2, "interiority_layers");
    const auto inter = static_cast<double>(detail::family_intersection(family).size());
    const std::vector<std::size_t> order = detail::by_cardinality(family);
    std::vector<double> layers;
    layers.reserve(family.size() - 1);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const auto denom = static_cast<double>(family[order[k]].size());
        layers.push_back(denom == 0.0 ? kBothEmptyIndex : inter / denom);
    }
    return layers;
}

/// The two containment layers of a 3-set family: core over the smallest
/// cardinality, and core over the second-smallest.
inline std::pair<double, double> interiority_3_layers(const Set& a, const Set& b,
                                                      const Set& c) {
    const std::vector<double> layers = interiority_layers({a, b, c});
    return {layers[0], layers[1]};
}

/// Scalar n-set containment: the product of all containment layers.
inline double interiority_n(const SetFamily& family) {
    const std::vector<double> layers = interiority_layers(family);
    double p = 1.0;
    for (double v : layers) p *= v;
    return p;
}

inline double interiority_3(const Set& a, const Set& b, const Set& c) {
    return interiority_n({a, b, c});
}

/// n-set coincidence: the plain product interiority_n * jaccard_n. Unlike
/// the pairwise form no root is taken, so nesting and sharing deficits
/// compound.
inline double coincidence_n(const SetFamily& family) {
    return interiority_n(family) * jaccard_n(family);
}

inline double coincidence_3(const Set& a, const Set& b, const Set& c) {
    return coincidence_n({a, b, c});
}

/// Indirect association of A and C through the reference set B: how much
/// of B is claimed by its overlaps with A and C, discounted by any direct
/// overlap of A and C. Symmetric in A and C. B must be nonempty.
///
/// min_overlap gates weak links: when min(J(A,B), J(B,C)) falls below it
/// the chain is considered broken and the index is 0.
inline double chaining(const Set& a, const Set& b, const Set& c,
                       double min_overlap = 0.0) {
    if (b.empty())
        throw std::invalid_argument("chaining: reference set must be nonempty");
    if (!(min_overlap >= 0.0) || min_overlap > 1.0)
        throw std::invalid_argument("chaining: min_overlap must lie in [0, 1]");
    if (min_overlap > 0.0 &&
        std::min(jaccard(a, b), jaccard(b, c)) < min_overlap)
        return 0.0;
    const Set bridge = set_union(set_intersection(a, b), set_intersection(b, c));
    return jaccard(b, bridge) * (1.0 - jaccard(a, c));
}

/// Jaccard index of two derived sets given as expressions over a common
/// environment of named sets (see eval_set_expr for the grammar).
inline double composite_jaccard(std::string_view expr_a, std::string_view expr_b,
                                const std::map<std::string, Set>& env) {
    return jaccard(eval_set_expr(expr_a, env), eval_set_expr(expr_b, env));
}

}  // namespace coindex

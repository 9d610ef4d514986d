#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coindex {

using ElementId = std::string;

/// Value returned by every ratio index when both operands are empty.
/// Two empty collections are indistinguishable, so they are treated as
/// identical rather than raising an error. Callers that want another
/// convention can test for emptiness first.
inline constexpr double kBothEmptyIndex = 1.0;

/// Finite set of opaque element identifiers. Iteration order is the
/// identifiers' lexicographic order, which keeps derived output stable.
class Set {
public:
    Set() = default;
    Set(std::initializer_list<ElementId> elems) : elements_(elems) {}

    void insert(ElementId e) { elements_.insert(std::move(e)); }
    bool contains(const ElementId& e) const { return elements_.count(e) != 0; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const std::set<ElementId>& elements() const { return elements_; }

    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

    friend bool operator==(const Set&, const Set&) = default;

private:
    std::set<ElementId> elements_;
};

inline Set set_union(const Set& a, const Set& b) {
    Set out = a;
    for (const auto& e : b) out.insert(e);
    return out;
}

inline Set set_intersection(const Set& a, const Set& b) {
    Set out;
    for (const auto& e : a)
        if (b.contains(e)) out.insert(e);
    return out;
}

inline Set set_difference(const Set& a, const Set& b) {
    Set out;
    for (const auto& e : a)
        if (!b.contains(e)) out.insert(e);
    return out;
}

inline std::size_t intersection_size(const Set& a, const Set& b) {
    const Set& small = a.size() <= b.size() ? a : b;
    const Set& large = a.size() <= b.size() ? b : a;
    std::size_t n = 0;
    for (const auto& e : small)
        if (large.contains(e)) ++n;
    return n;
}

inline std::size_t union_size(const Set& a, const Set& b) {
    return a.size() + b.size() - intersection_size(a, b);
}

/// Collection with real-valued multiplicities. Invariant: every stored
/// multiplicity is finite and strictly positive; absent means zero.
class Multiset {
public:
    Multiset() = default;
    Multiset(std::initializer_list<std::pair<const ElementId, double>> entries) {
        for (const auto& [e, m] : entries) set_count(e, m);
    }

    /// Sets the multiplicity of e. Zero erases, negative or non-finite throws.
    void set_count(const ElementId& e, double multiplicity) {
        if (!(multiplicity >= 0.0) || !std::isfinite(multiplicity))
            throw std::invalid_argument("Multiset: multiplicity must be finite and >= 0");
        if (multiplicity == 0.0)
            entries_.erase(e);
        else
            entries_[e] = multiplicity;
    }

    void add(const ElementId& e, double multiplicity = 1.0) {
        set_count(e, count(e) + multiplicity);
    }

    double count(const ElementId& e) const {
        auto it = entries_.find(e);
        return it == entries_.end() ? 0.0 : it->second;
    }

    /// Sum of all multiplicities (the collection's cardinality).
    double total() const {
        double t = 0.0;
        for (const auto& [e, m] : entries_) t += m;
        return t;
    }

    std::size_t support_size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::map<ElementId, double>& entries() const { return entries_; }

    friend bool operator==(const Multiset&, const Multiset&) = default;

private:
    std::map<ElementId, double> entries_;
};

/// Set whose elements carry strictly positive weights.
class WeightedSet {
public:
    WeightedSet() = default;
    WeightedSet(std::initializer_list<std::pair<const ElementId, double>> entries) {
        for (const auto& [e, w] : entries) set_weight(e, w);
    }

    void set_weight(const ElementId& e, double weight) {
        if (!(weight > 0.0) || !std::isfinite(weight))
            throw std::invalid_argument("WeightedSet: weight must be finite and > 0");
        entries_[e] = weight;
    }

    bool contains(const ElementId& e) const { return entries_.count(e) != 0; }
    double weight(const ElementId& e) const {
        auto it = entries_.find(e);
        if (it == entries_.end())
            throw std::out_of_range("WeightedSet: element not present");
        return it->second;
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::map<ElementId, double>& entries() const { return entries_; }

private:
    std::map<ElementId, double> entries_;
};

/// Dense matrix of non-negative finite reals, used as a 2-d multiset.
class NonNegativeMatrix {
public:
    NonNegativeMatrix() = default;
    NonNegativeMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
        check_value(fill);
        std::fill(data_.begin(), data_.end(), fill);
    }

    static NonNegativeMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty() || rows.front().empty())
            throw std::invalid_argument("NonNegativeMatrix: empty shape");
        NonNegativeMatrix m(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_)
                throw std::invalid_argument("NonNegativeMatrix: ragged rows");
            for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
        }
        return m;
    }

    void set(std::size_t r, std::size_t c, double v) {
        check_value(v);
        data_.at(r * cols_ + c) = v;
    }

    double at(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double>& data() const { return data_; }

private:
    static void check_value(double v) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("NonNegativeMatrix: entries must be finite and >= 0");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

namespace detail {

/// Walks the union support of two multiplicity maps in element order and
/// calls f(count_in_a, count_in_b) once per element.
template <typename F>
void for_each_union_support(const std::map<ElementId, double>& a,
                            const std::map<ElementId, double>& b, F&& f) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            f(ia->second, 0.0);
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            f(0.0, ib->second);
            ++ib;
        } else {
            f(ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
}

}  // namespace detail

/// Shared-fraction similarity: |A n B| / |A u B|. Empty-vs-empty yields
/// kBothEmptyIndex.
inline double jaccard(const Set& a, const Set& b) {
    const std::size_t uni = union_size(a, b);
    if (uni == 0) return kBothEmptyIndex;
    return static_cast<double>(intersection_size(a, b)) / static_cast<double>(uni);
}

/// Metric companion of jaccard(): 1 - jaccard(a, b).
inline double jaccard_distance(const Set& a, const Set& b) {
    return 1.0 - jaccard(a, b);
}

/// Generalization |A n B|^p / |A u B|. p = 1 recovers jaccard(). Values
/// may exceed 1 for p > 1. A non-positive exponent with an empty
/// intersection has no value and throws std::domain_error.
inline double jaccard_power(const Set& a, const Set& b, double p) {
    if (!std::isfinite(p))
        throw std::invalid_argument("jaccard_power: exponent must be finite");
    const auto inter = static_cast<double>(intersection_size(a, b));
    if (inter == 0.0 && p <= 0.0)
        throw std::domain_error("jaccard_power: exponent <= 0 with empty intersection");
    const std::size_t uni = union_size(a, b);
    if (uni == 0) return kBothEmptyIndex;
    return std::pow(inter, p) / static_cast<double>(uni);
}

/// Multiset form: sum of element-wise minima over sum of maxima.
inline double multiset_jaccard(const Multiset& a, const Multiset& b) {
    double num = 0.0;
    double den = 0.0;
    detail::for_each_union_support(a.entries(), b.entries(), [&](double ma, double mb) {
        num += std::min(ma, mb);
        den += std::max(ma, mb);
    });
    if (den == 0.0) return kBothEmptyIndex;
    return num / den;
}

/// Matrix form: double sums of entry-wise minima and maxima. Shapes must
/// match exactly.
inline double matrix_jaccard(const NonNegativeMatrix& a, const NonNegativeMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix_jaccard: shape mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        num += std::min(a.data()[i], b.data()[i]);
        den += std::max(a.data()[i], b.data()[i]);
    }
    if (den == 0.0) return kBothEmptyIndex;
    return num / den;
}

/// Containment degree: |A n B| / min(|A|, |B|). Equals 1 exactly when one
/// operand is contained in the other; an empty operand is vacuously
/// contained, so a zero denominator yields kBothEmptyIndex.
inline double interiority(const Set& a, const Set& b) {
    const std::size_t denom = std::min(a.size(), b.size());
    if (denom == 0) return kBothEmptyIndex;
    return static_cast<double>(intersection_size(a, b)) / static_cast<double>(denom);
}

/// Multiset containment: sum of minima over the smaller total cardinality.
inline double interiority(const Multiset& a, const Multiset& b) {
    const double denom = std::min(a.total(), b.total());
    if (denom == 0.0) return kBothEmptyIndex;
    double num = 0.0;
    detail::for_each_union_support(a.entries(), b.entries(), [&](double ma, double mb) {
        num += std::min(ma, mb);
    });
    return num / denom;
}

/// Which combination of sharing and containment coincidence() reports:
/// the geometric mean (default) or the plain product, which penalizes
/// partial overlap more strongly.
enum class CoincidenceForm { SqrtProduct, Product };

/// Balanced similarity combining jaccard() and interiority().
inline double coincidence(const Set& a, const Set& b,
                          CoincidenceForm form = CoincidenceForm::SqrtProduct) {
    const double p = jaccard(a, b) * interiority(a, b);
    return form == CoincidenceForm::SqrtProduct ? std::sqrt(p) : p;
}

inline double coincidence(const Multiset& a, const Multiset& b,
                          CoincidenceForm form = CoincidenceForm::SqrtProduct) {
    const double p = multiset_jaccard(a, b) * interiority(a, b);
    return form == CoincidenceForm::SqrtProduct ? std::sqrt(p) : p;
}

/// Weighted-element form: total weight of the intersection over total
/// weight of the union. Elements present in both operands must carry the
/// same weight; a disagreement is a modelling error and throws.
inline double weighted_jaccard(const WeightedSet& a, const WeightedSet& b) {
    double inter = 0.0;
    double uni = 0.0;
    detail::for_each_union_support(a.entries(), b.entries(), [&](double wa, double wb) {
        if (wa > 0.0 && wb > 0.0) {
            if (wa != wb)
                throw std::invalid_argument(
                    "weighted_jaccard: element carries conflicting weights");
            inter += wa;
            uni += wa;
        } else {
            uni += wa + wb;
        }
    });
    if (uni == 0.0) return kBothEmptyIndex;
    return inter / uni;
}

/// Weighted multiset form: weights scale each element's contribution to
/// both the minima and maxima sums. Every element in either operand must
/// have a positive weight.
inline double weighted_multiset_jaccard(const Multiset& a, const Multiset& b,
                                        const std::map<ElementId, double>& weights) {
    double num = 0.0;
    double den = 0.0;
    auto ia = a.entries().begin();
    auto ib = b.entries().begin();
    auto weight_of = [&](const ElementId& e) {
        auto it = weights.find(e);
        if (it == weights.end())
            throw std::invalid_argument("weighted_multiset_jaccard: missing weight for " + e);
        if (!(it->second > 0.0) || !std::isfinite(it->second))
            throw std::invalid_argument("weighted_multiset_jaccard: weight must be > 0 for " + e);
        return it->second;
    };
    while (ia != a.entries().end() || ib != b.entries().end()) {
        double ma = 0.0;
        double mb = 0.0;
        const ElementId* e = nullptr;
        if (ib == b.entries().end() ||
            (ia != a.entries().end() && ia->first < ib->first)) {
            e = &ia->first;
            ma = ia->second;
            ++ia;
        } else if (ia == a.entries().end() || ib->first < ia->first) {
            e = &ib->first;
            mb = ib->second;
            ++ib;
        } else {
            e = &ia->first;
            ma = ia->second;
            mb = ib->second;
            ++ia;
            ++ib;
        }
        const double w = weight_of(*e);
        num += w * std::min(ma, mb);
        den += w * std::max(ma, mb);
    }
    if (den == 0.0) return kBothEmptyIndex;
    return num / den;
}

/// Additive form: 2 * sum of minima over the sum of both cardinalities.
/// Uses the mean of the operand sizes as the reference instead of the
/// union, so equal multisets score 1 and the value never exceeds 1.
inline double additive_multiset_jaccard(const Multiset& a, const Multiset& b) {
    const double den = a.total() + b.total();
    if (den == 0.0) return kBothEmptyIndex;
    double num = 0.0;
    detail::for_each_union_support(a.entries(), b.entries(), [&](double ma, double mb) {
        num += std::min(ma, mb);
    });
    return 2.0 * num / den;
}

/// Geometric mean of the additive form and multiset containment.
inline double additive_coincidence(const Multiset& a, const Multiset& b) {
    return std::sqrt(additive_multiset_jaccard(a, b) * interiority(a, b));
}

}  // namespace coindex

#pragma once

#include "jv/rational.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace jv {

/// Derivative multi-index of dimension n: one non-negative count per base
/// coordinate.  Ordered by total order first, then lexicographically, so
/// enumerations and printed output are deterministic.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int n) : entries_(n, 0) {}
    MultiIndex(std::initializer_list<int> e);

    static MultiIndex unit(int n, int lambda);

    int size() const { return static_cast<int>(entries_.size()); }
    int order() const;
    int operator[](int k) const { return entries_[static_cast<size_t>(k)]; }

    MultiIndex plus(int lambda) const;
    MultiIndex plus(const MultiIndex& other) const;
    /// Componentwise difference, or nullopt if any entry would go negative.
    std::optional<MultiIndex> minus(const MultiIndex& other) const;
    bool contains(const MultiIndex& other) const;

    /// Product of componentwise binomial coefficients (upper over lower).
    static Rational choose(const MultiIndex& upper, const MultiIndex& lower);

    std::strong_ordering operator<=>(const MultiIndex& other) const;
    bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

    const std::vector<int>& entries() const { return entries_; }

private:
    std::vector<int> entries_;
};

std::vector<MultiIndex> multi_indices_of_order(int n, int k);
std::vector<MultiIndex> multi_indices_up_to(int n, int max_order);

} // namespace jv

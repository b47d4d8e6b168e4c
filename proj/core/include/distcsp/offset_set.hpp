#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "distcsp/checked.hpp"

namespace distcsp {

/// A binary relation over the integers described by the differences it
/// admits: the set S stands for {(x, x + k) : k in S}. Either FULL (all of
/// Z^2) or a finite, strictly increasing list of offsets. The empty finite
/// set is the unsatisfiable relation.
class OffsetSet {
public:
    /// The empty set.
    OffsetSet() = default;
    OffsetSet(std::initializer_list<Offset> values);
    explicit OffsetSet(std::vector<Offset> values);

    static OffsetSet full();
    static OffsetSet empty() { return {}; }
    /// All integers in [lo, hi].
    static OffsetSet range(Offset lo, Offset hi);

    bool is_full() const { return full_; }
    bool is_empty() const { return !full_ && elements_.empty(); }
    bool is_finite() const { return !full_; }
    bool contains(Offset k) const;

    /// Number of elements; only meaningful for finite sets.
    std::size_t size() const { return elements_.size(); }
    /// Sorted elements; empty for FULL.
    std::span<const Offset> elements() const { return elements_; }
    Offset min() const;
    Offset max() const;

    /// "FULL" or "{a,b,...}".
    std::string to_string() const;

    friend bool operator==(const OffsetSet&, const OffsetSet&) = default;

private:
    bool full_ = false;
    std::vector<Offset> elements_;
};

/// Composition of offset relations: the sumset {s + t}. The empty set
/// annihilates everything (FULL included); otherwise FULL absorbs.
OffsetSet offsetset_sum(const OffsetSet& a, const OffsetSet& b);

/// Set intersection with FULL as the identity.
OffsetSet offsetset_intersect(const OffsetSet& a, const OffsetSet& b);

/// {-s : s in S}; the converse relation.
OffsetSet offsetset_invert(const OffsetSet& a);

/// True iff `sub` is a subset of `super`.
bool offsetset_subset(const OffsetSet& sub, const OffsetSet& super);

} // namespace distcsp

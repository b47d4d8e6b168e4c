#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "distcsp/model.hpp"

namespace distcsp {

/// The d-modular median. If x, y, z are pairwise congruent mod d it is their
/// median; if exactly two are congruent it is the first of those two in
/// argument order; otherwise x. Requires d >= 1.
Offset modular_median(Offset d, Offset x, Offset y, Offset z);

/// Three member tuples of a relation whose componentwise image is not a member.
struct MedianCounterexample {
    std::array<Tuple, 3> inputs;
    Tuple image;
};

struct PreservationResult {
    bool preserved = true;
    /// FULL or EMPTY body: preserved without enumeration.
    bool trivial = false;
    /// Base-shift bound B actually enumerated (0 for trivial bodies).
    Offset window = 0;
    std::optional<MedianCounterexample> counterexample;
};

/// 6 * (max_abs_offset + d) + 1.
Offset default_preservation_window(Offset d, const RelationDef& rel);

/// Exhaustive closure check of `rel` under m_d: every triple of stored tuples,
/// first base point pinned at 0, the other two ranging over [-window, window].
/// The window defaults to default_preservation_window(d, rel).
PreservationResult preserves_relation(Offset d, const RelationDef& rel,
                                      std::optional<Offset> window = std::nullopt);

/// Random falsification of the same closure property with all three base
/// points drawn from [-max_shift, max_shift] on a log-uniform magnitude scale.
/// Returns the first counterexample found.
std::optional<MedianCounterexample> falsify_preservation(Offset d, const RelationDef& rel,
                                                         std::uint64_t trials, Offset max_shift,
                                                         std::uint64_t seed);

struct PolymorphismFinding {
    Offset modulus = 1;
    Offset verified_window = 1;
    std::uint64_t randomized_trials = 0;
};

struct PolymorphismSearchOptions {
    /// Overrides the per-relation default window when set.
    std::optional<Offset> window;
    /// Randomized falsification trials per relation after a windowed success.
    std::uint64_t randomized_trials = 0;
    Offset randomized_max_shift = 1'000'000;
    std::uint64_t seed = 0x5eed;
};

/// Smallest d in [1, d_max] for which m_d preserves every relation of `t`.
/// A randomized falsification that contradicts a windowed verdict raises
/// InternalError.
std::optional<PolymorphismFinding> find_modular_median(const Template& t, Offset d_max,
                                                       const PolymorphismSearchOptions& opts = {});

/// 2 * D, at least 1.
Offset default_modulus_bound(const Template& t);

struct DecompositionResult {
    bool decomposable = true;
    /// Arity < 3, or a FULL/EMPTY body.
    bool trivial = false;
    Offset window = 0;
    /// A tuple (first coordinate 0) all of whose 2-element projections
    /// extend to members, but which is not itself a member.
    std::optional<Tuple> counterexample;
};

/// arity * max_abs_offset + 1.
Offset default_decomposition_window(const RelationDef& rel);

/// Windowed check that `rel` equals the join of its binary projections.
DecompositionResult check_two_decomposable(const RelationDef& rel,
                                           std::optional<Offset> window = std::nullopt);

} // namespace distcsp

#pragma once

#include <optional>

#include "distcsp/model.hpp"

namespace distcsp {

struct BruteOptions {
    /// Refuse components whose search-space estimate exceeds this many nodes.
    double max_nodes = 1e8;
};

/// Upper bound on search nodes summed over components: per component, the
/// product over non-root variables of min(window size, |parent projection|).
double brute_search_estimate(const Instance& inst, const Template& t);

/// Complete backtracking search. Each connected component has its root
/// pinned at 0 and every value in [-(n-1)D, (n-1)D]; values are tried in
/// ascending order along a breadth-first variable order, so the first
/// witness found is the least one under that order. nullopt is a complete
/// refutation. Throws RefusalError when the estimate exceeds the cap.
std::optional<Assignment> brute_solve(const Instance& inst, const Template& t,
                                      const BruteOptions& opts = {});

struct VerifyResult {
    bool ok = true;
    std::optional<std::size_t> failing_constraint;
};

/// Checks every constraint with tuple_in_relation. Throws InputError when
/// the assignment length differs from num_vars.
VerifyResult verify_assignment(const Instance& inst, const Template& t, const Assignment& a);

} // namespace distcsp

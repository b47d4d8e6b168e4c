#pragma once

#include <optional>
#include <string>
#include <vector>

#include "distcsp/model.hpp"

namespace distcsp {

/// An eventually periodic self-map of Z:
///   e(x) = base_values[x mod p] + drift * p * floor(x / p).
/// drift 0 encodes a finite-range map.
struct PeriodicMapSpec {
    Offset period = 1;
    std::vector<Offset> base_values{0};
    int drift = 1;

    friend bool operator==(const PeriodicMapSpec&, const PeriodicMapSpec&) = default;
};

/// Throws InputError unless period >= 1, |base_values| == period and drift in {-1, 0, 1}.
void validate_spec(const PeriodicMapSpec& spec);

Offset eval_periodic_map(const PeriodicMapSpec& spec, Offset x);

/// x -> x + c or x -> -x + c.
bool is_isometry(const PeriodicMapSpec& spec);
bool is_identity(const PeriodicMapSpec& spec);

/// outer o inner as a spec of period lcm(p_outer, p_inner).
PeriodicMapSpec compose_specs(const PeriodicMapSpec& outer, const PeriodicMapSpec& inner);

struct EndoCounterexample {
    std::string relation;
    Tuple source;
    Tuple image;
};

struct EndoCheck {
    bool is_endomorphism = true;
    std::optional<EndoCounterexample> counterexample;
};

/// Complete check: one period of base points per stored tuple suffices,
/// since shifting the base by p shifts the image uniformly by drift * p.
EndoCheck is_endomorphism(const PeriodicMapSpec& spec, const Template& t);

enum class EndoKind { FiniteRange, Periodic };

struct EndoClassification {
    EndoKind kind = EndoKind::FiniteRange;
    /// +1 or -1 for Periodic, 0 for FiniteRange.
    int direction = 0;
    /// Every stable q in [1, stable_search_cap].
    std::vector<Offset> stable_numbers;
    std::optional<Offset> minimal_stable;
    Offset stable_search_cap = 0;
};

/// True iff e(v + q) - e(v) is the same value in {q, -q} for every v.
bool is_stable(const PeriodicMapSpec& spec, Offset q);

/// Throws DomainError when `spec` is not an endomorphism of `t`. For a
/// connected template, a minimal stable number that does not divide the
/// largest distance raises InternalError.
EndoClassification classify_endomorphism(const PeriodicMapSpec& spec, const Template& t);

/// Keeps the tuples whose components are all multiples of q, divided by q.
/// Relations left without tuples become EMPTY.
Template reduce_template(const Template& t, Offset q);

struct EndoSearchOptions {
    Offset max_period = 1;
    Offset value_window = 1;
    /// Drifts to try; enumerated in ascending order.
    std::vector<int> drifts{-1, 0, 1};
};

/// First spec in the order (period, drift, base_values) with base values in
/// [-value_window, value_window] that is an endomorphism and not an isometry.
/// Absence only refutes within the bounds.
std::optional<PeriodicMapSpec> search_periodic_endomorphism(const Template& t,
                                                            const EndoSearchOptions& opts);

} // namespace distcsp

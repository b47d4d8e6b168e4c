#include "distcsp/polymorphism.hpp"

#include <algorithm>
#include <random>

#include "distcsp/analysis.hpp"

namespace distcsp {

Offset modular_median(Offset d, Offset x, Offset y, Offset z) {
    if (d < 1)
        throw DomainError("modular median requires d >= 1");
    const Offset rx = floor_mod(x, d);
    const Offset ry = floor_mod(y, d);
    const Offset rz = floor_mod(z, d);
    if (rx == ry && ry == rz)
        return std::max(std::min(x, y), std::min(std::max(x, y), z));
    if (rx == ry || rx == rz)
        return x;
    if (ry == rz)
        return y;
    return x;
}

namespace {

// Full Z-tuple (0, v...) for a stored offset tuple.
Tuple pinned(const Tuple& v) {
    Tuple f;
    f.reserve(v.size() + 1);
    f.push_back(0);
    f.insert(f.end(), v.begin(), v.end());
    return f;
}

class MedianProbe {
public:
    MedianProbe(Offset d, const RelationDef& rel) : d_(d), rel_(rel), image_(rel.arity()) {
        diff_.resize(rel.arity() - 1);
    }

    // Applies m_d componentwise to the three shifted tuples and tests the image.
    bool image_member(const Tuple& f1, Offset a1, const Tuple& f2, Offset a2, const Tuple& f3,
                      Offset a3) {
        for (std::size_t c = 0; c < f1.size(); ++c)
            image_[c] = modular_median(d_, checked_add(a1, f1[c]), checked_add(a2, f2[c]),
                                       checked_add(a3, f3[c]));
        for (std::size_t c = 1; c < image_.size(); ++c)
            diff_[c - 1] = checked_sub(image_[c], image_[0]);
        return rel_.contains_offsets(diff_);
    }

    MedianCounterexample witness(const Tuple& f1, Offset a1, const Tuple& f2, Offset a2,
                                 const Tuple& f3, Offset a3) const {
        auto shift = [](const Tuple& f, Offset a) {
            Tuple t(f);
            for (auto& x : t)
                x = checked_add(x, a);
            return t;
        };
        return {{shift(f1, a1), shift(f2, a2), shift(f3, a3)}, image_};
    }

private:
    Offset d_;
    const RelationDef& rel_;
    Tuple image_;
    Tuple diff_;
};

} // namespace

Offset default_preservation_window(Offset d, const RelationDef& rel) {
    return checked_add(checked_mul(6, checked_add(rel.max_abs_offset(), d)), 1);
}

PreservationResult preserves_relation(Offset d, const RelationDef& rel, std::optional<Offset> window) {
    if (d < 1)
        throw DomainError("modular median requires d >= 1");
    PreservationResult result;
    if (!rel.has_tuples()) {
        result.trivial = true;
        return result;
    }
    const Offset b = window.value_or(default_preservation_window(d, rel));
    if (b < 1)
        throw DomainError("preservation window must be at least 1");
    result.window = b;

    std::vector<Tuple> members;
    for (const auto& v : rel.offset_tuples())
        members.push_back(pinned(v));

    MedianProbe probe(d, rel);
    for (const auto& f1 : members) {
        for (const auto& f2 : members) {
            for (const auto& f3 : members) {
                for (Offset a2 = -b; a2 <= b; ++a2) {
                    for (Offset a3 = -b; a3 <= b; ++a3) {
                        if (!probe.image_member(f1, 0, f2, a2, f3, a3)) {
                            result.preserved = false;
                            result.counterexample = probe.witness(f1, 0, f2, a2, f3, a3);
                            return result;
                        }
                    }
                }
            }
        }
    }
    return result;
}

std::optional<MedianCounterexample> falsify_preservation(Offset d, const RelationDef& rel,
                                                         std::uint64_t trials, Offset max_shift,
                                                         std::uint64_t seed) {
    if (!rel.has_tuples() || trials == 0)
        return std::nullopt;
    std::mt19937_64 rng(seed);
    std::vector<Tuple> members;
    for (const auto& v : rel.offset_tuples())
        members.push_back(pinned(v));
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);

    // Magnitudes are spread log-uniformly so that near-coincident base
    // points are sampled as often as far-apart ones.
    std::vector<Offset> scales{1};
    while (scales.back() < max_shift)
        scales.push_back(std::min(max_shift, scales.back() * 10));
    std::uniform_int_distribution<std::size_t> pick_scale(0, scales.size() - 1);
    auto draw = [&] {
        const Offset s = scales[pick_scale(rng)];
        return std::uniform_int_distribution<Offset>(-s, s)(rng);
    };

    MedianProbe probe(d, rel);
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto& f1 = members[pick(rng)];
        const auto& f2 = members[pick(rng)];
        const auto& f3 = members[pick(rng)];
        const Offset a1 = draw();
        const Offset a2 = draw();
        const Offset a3 = draw();
        if (!probe.image_member(f1, a1, f2, a2, f3, a3))
            return probe.witness(f1, a1, f2, a2, f3, a3);
    }
    return std::nullopt;
}

Offset default_modulus_bound(const Template& t) {
    return std::max<Offset>(1, checked_mul(2, max_distance_or_zero(t)));
}

std::optional<PolymorphismFinding> find_modular_median(const Template& t, Offset d_max,
                                                       const PolymorphismSearchOptions& opts) {
    for (Offset d = 1; d <= d_max; ++d) {
        PolymorphismFinding finding;
        finding.modulus = d;
        finding.verified_window = 1;
        bool ok = true;
        for (const auto& rel : t.relations()) {
            const auto r = preserves_relation(d, rel, opts.window);
            if (!r.preserved) {
                ok = false;
                break;
            }
            finding.verified_window = std::max(finding.verified_window, r.window);
        }
        if (!ok)
            continue;
        for (std::size_t i = 0; i < t.relations().size(); ++i) {
            const auto& rel = t.relations()[i];
            const auto cex = falsify_preservation(d, rel, opts.randomized_trials,
                                                  opts.randomized_max_shift, opts.seed + i);
            if (cex)
                throw InternalError("windowed check accepted m_" + std::to_string(d) +
                                    " on relation '" + rel.name() +
                                    "' but randomized falsification found a counterexample");
        }
        finding.randomized_trials = opts.randomized_trials;
        return finding;
    }
    return std::nullopt;
}

Offset default_decomposition_window(const RelationDef& rel) {
    return checked_add(checked_mul(static_cast<Offset>(rel.arity()), rel.max_abs_offset()), 1);
}

DecompositionResult check_two_decomposable(const RelationDef& rel, std::optional<Offset> window) {
    DecompositionResult result;
    if (rel.arity() < 3 || !rel.has_tuples()) {
        result.trivial = true;
        return result;
    }
    const Offset w = window.value_or(default_decomposition_window(rel));
    if (w < 1)
        throw DomainError("decomposition window must be at least 1");
    result.window = w;

    const std::size_t k = rel.arity();
    std::vector<std::vector<OffsetSet>> proj(k, std::vector<OffsetSet>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j)
                proj[i][j] = project_constraint(rel, i, j);

    // Depth-first over coordinates 1..k-1; coordinate 0 is pinned at 0.
    Tuple t(k, 0);
    Tuple offsets(k - 1);
    auto extend = [&](auto&& self, std::size_t j) -> bool {
        if (j == k) {
            std::copy(t.begin() + 1, t.end(), offsets.begin());
            if (!rel.contains_offsets(offsets)) {
                result.decomposable = false;
                result.counterexample = t;
                return false;
            }
            return true;
        }
        for (Offset v : proj[0][j].elements()) {
            if (v < -w || v > w)
                continue;
            t[j] = v;
            bool fits = true;
            for (std::size_t i = 1; i < j && fits; ++i)
                fits = proj[i][j].contains(v - t[i]);
            if (fits && !self(self, j + 1))
                return false;
        }
        return true;
    };
    extend(extend, 1);
    return result;
}

} // namespace distcsp

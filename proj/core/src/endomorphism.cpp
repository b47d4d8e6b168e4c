#include "distcsp/endomorphism.hpp"

#include <algorithm>
#include <numeric>

#include "distcsp/analysis.hpp"

namespace distcsp {

void validate_spec(const PeriodicMapSpec& spec) {
    if (spec.period < 1)
        throw InputError("map period must be at least 1");
    if (spec.base_values.size() != static_cast<std::size_t>(spec.period))
        throw InputError("map has " + std::to_string(spec.base_values.size()) +
                         " base values but period " + std::to_string(spec.period));
    if (spec.drift < -1 || spec.drift > 1)
        throw InputError("map drift must be +1, -1 or 0");
}

Offset eval_periodic_map(const PeriodicMapSpec& spec, Offset x) {
    const Offset r = floor_mod(x, spec.period);
    const Offset k = floor_div(x, spec.period);
    return checked_add(spec.base_values[static_cast<std::size_t>(r)],
                       checked_mul(spec.drift * spec.period, k));
}

bool is_isometry(const PeriodicMapSpec& spec) {
    if (spec.drift == 0)
        return false;
    const Offset c = spec.base_values[0];
    for (Offset i = 0; i < spec.period; ++i)
        if (spec.base_values[static_cast<std::size_t>(i)] != c + spec.drift * i)
            return false;
    return true;
}

bool is_identity(const PeriodicMapSpec& spec) {
    return is_isometry(spec) && spec.drift == 1 && spec.base_values[0] == 0;
}

PeriodicMapSpec compose_specs(const PeriodicMapSpec& outer, const PeriodicMapSpec& inner) {
    validate_spec(outer);
    validate_spec(inner);
    PeriodicMapSpec out;
    out.period = std::lcm(outer.period, inner.period);
    out.drift = outer.drift * inner.drift;
    out.base_values.resize(static_cast<std::size_t>(out.period));
    for (Offset x = 0; x < out.period; ++x)
        out.base_values[static_cast<std::size_t>(x)] =
            eval_periodic_map(outer, eval_periodic_map(inner, x));
    return out;
}

EndoCheck is_endomorphism(const PeriodicMapSpec& spec, const Template& t) {
    validate_spec(spec);
    EndoCheck check;
    for (const auto& rel : t.relations()) {
        if (!rel.has_tuples())
            continue;
        for (std::size_t i = 0; i < rel.offset_tuples().size(); ++i) {
            for (Offset a = 0; a < spec.period; ++a) {
                Tuple source = rel.instantiate(i, a);
                Tuple image(source.size());
                std::transform(source.begin(), source.end(), image.begin(),
                               [&](Offset x) { return eval_periodic_map(spec, x); });
                if (!tuple_in_relation(rel, image)) {
                    check.is_endomorphism = false;
                    check.counterexample = EndoCounterexample{rel.name(), std::move(source),
                                                              std::move(image)};
                    return check;
                }
            }
        }
    }
    return check;
}

bool is_stable(const PeriodicMapSpec& spec, Offset q) {
    std::optional<Offset> step;
    for (Offset v = 0; v < spec.period; ++v) {
        const Offset delta =
            checked_sub(eval_periodic_map(spec, checked_add(v, q)), eval_periodic_map(spec, v));
        if (delta != q && delta != -q)
            return false;
        if (step && *step != delta)
            return false;
        step = delta;
    }
    return true;
}

EndoClassification classify_endomorphism(const PeriodicMapSpec& spec, const Template& t) {
    if (!is_endomorphism(spec, t).is_endomorphism)
        throw DomainError("map is not an endomorphism of template '" + t.name() + "'");
    EndoClassification c;
    if (spec.drift == 0)
        return c;

    c.kind = EndoKind::Periodic;
    c.direction = spec.drift;
    const Offset big_d = max_distance_or_zero(t);
    c.stable_search_cap = checked_mul(spec.period, std::max<Offset>(big_d, 1));
    for (Offset q = 1; q <= c.stable_search_cap; ++q)
        if (is_stable(spec, q))
            c.stable_numbers.push_back(q);
    // The period itself is always stable for a drifting map.
    if (c.stable_numbers.empty())
        throw InternalError("no stable number found up to the period of a drifting map");
    c.minimal_stable = c.stable_numbers.front();

    for (Offset q : c.stable_numbers)
        if (q % *c.minimal_stable != 0)
            throw InternalError("stable number " + std::to_string(q) +
                                " is not a multiple of the minimal stable number " +
                                std::to_string(*c.minimal_stable));
    if (t.has_tuple_relation() && is_connected(t) && big_d % *c.minimal_stable != 0)
        throw InternalError("minimal stable number " + std::to_string(*c.minimal_stable) +
                            " does not divide the largest distance " + std::to_string(big_d) +
                            " of a connected template");
    return c;
}

Template reduce_template(const Template& t, Offset q) {
    if (q < 1)
        throw DomainError("reduction factor must be at least 1");
    std::vector<RelationDef> out;
    for (const auto& rel : t.relations()) {
        if (!rel.has_tuples()) {
            out.push_back(rel);
            continue;
        }
        std::vector<Tuple> kept;
        for (const auto& v : rel.offset_tuples()) {
            if (std::all_of(v.begin(), v.end(), [q](Offset x) { return x % q == 0; })) {
                Tuple scaled(v);
                for (auto& x : scaled)
                    x /= q;
                kept.push_back(std::move(scaled));
            }
        }
        out.push_back(RelationDef::tuples(rel.name(), rel.arity(), std::move(kept)));
    }
    return Template(t.name(), std::move(out));
}

namespace {

// A stored tuple instantiated at one base point in [0, p), tagged with the
// largest residue it reads so it can be checked as soon as that is assigned.
struct PendingCheck {
    const RelationDef* rel;
    Tuple points;
    std::size_t last_residue;
};

} // namespace

std::optional<PeriodicMapSpec> search_periodic_endomorphism(const Template& t,
                                                            const EndoSearchOptions& opts) {
    if (opts.max_period < 1 || opts.value_window < 1)
        throw InputError("endomorphism search bounds must be at least 1");
    std::vector<int> drifts = opts.drifts;
    std::sort(drifts.begin(), drifts.end());
    drifts.erase(std::unique(drifts.begin(), drifts.end()), drifts.end());

    for (Offset p = 1; p <= opts.max_period; ++p) {
        const auto np = static_cast<std::size_t>(p);
        std::vector<std::vector<PendingCheck>> by_residue(np);
        for (const auto& rel : t.relations()) {
            if (!rel.has_tuples())
                continue;
            for (std::size_t i = 0; i < rel.offset_tuples().size(); ++i) {
                for (Offset a = 0; a < p; ++a) {
                    PendingCheck pc{&rel, rel.instantiate(i, a), 0};
                    for (Offset x : pc.points)
                        pc.last_residue = std::max(pc.last_residue,
                                                   static_cast<std::size_t>(floor_mod(x, p)));
                    by_residue[pc.last_residue].push_back(std::move(pc));
                }
            }
        }

        for (int drift : drifts) {
            if (drift < -1 || drift > 1)
                throw InputError("drift filter entries must be +1, -1 or 0");
            PeriodicMapSpec spec;
            spec.period = p;
            spec.drift = drift;
            spec.base_values.assign(np, 0);
            Tuple image;

            auto satisfied = [&](std::size_t residue) {
                for (const auto& pc : by_residue[residue]) {
                    image.resize(pc.points.size());
                    for (std::size_t k = 0; k < pc.points.size(); ++k)
                        image[k] = eval_periodic_map(spec, pc.points[k]);
                    if (!tuple_in_relation(*pc.rel, image))
                        return false;
                }
                return true;
            };
            auto assign = [&](auto&& self, std::size_t r) -> bool {
                if (r == np)
                    return !is_isometry(spec);
                for (Offset v = -opts.value_window; v <= opts.value_window; ++v) {
                    spec.base_values[r] = v;
                    if (satisfied(r) && self(self, r + 1))
                        return true;
                }
                return false;
            };
            if (assign(assign, 0))
                return spec;
        }
    }
    return std::nullopt;
}

} // namespace distcsp

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "distcsp/model.hpp"

namespace distcsp::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

struct TemplateShape {
    int max_relations = 2;
    int max_arity = 3;
    Offset max_offset = 4;
    int max_tuples = 4;
};

// Relations R0, R1, ... with random offset tuples; at least one tuple each.
inline Template random_template(Rng& rng, const TemplateShape& shape = {}) {
    std::vector<RelationDef> rels;
    const int count = static_cast<int>(uniform(rng, 1, shape.max_relations));
    for (int r = 0; r < count; ++r) {
        const auto arity = static_cast<std::size_t>(uniform(rng, 2, shape.max_arity));
        const int tuples = static_cast<int>(uniform(rng, 1, shape.max_tuples));
        std::vector<Tuple> body;
        for (int i = 0; i < tuples; ++i) {
            Tuple v(arity - 1);
            for (auto& x : v)
                x = uniform(rng, -shape.max_offset, shape.max_offset);
            body.push_back(std::move(v));
        }
        rels.push_back(RelationDef::tuples("R" + std::to_string(r), arity, std::move(body)));
    }
    return Template("random", std::move(rels));
}

// A connected instance: a random spanning tree of constraints plus `extra`
// further constraints. Every constraint mentions distinct variables.
inline Instance random_connected_instance(Rng& rng, const Template& t, std::size_t n,
                                          std::size_t extra) {
    Instance inst;
    inst.num_vars = n;
    const auto rels = t.relations();
    auto pick_relation = [&]() -> const RelationDef& {
        return rels[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(rels.size()) - 1))];
    };
    auto fill = [&](const RelationDef& rel, std::vector<std::size_t> args) {
        // pad with distinct unused variables, then shuffle
        while (args.size() < rel.arity() && args.size() < n) {
            auto v = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(n) - 1));
            if (std::find(args.begin(), args.end(), v) == args.end())
                args.push_back(v);
        }
        if (args.size() < rel.arity())
            return false;
        std::shuffle(args.begin(), args.end(), rng);
        inst.constraints.push_back({rel.name(), std::move(args)});
        return true;
    };
    for (std::size_t v = 1; v < n; ++v) {
        auto parent = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(v) - 1));
        // fall back to a binary relation if the arity does not fit
        for (int tries = 0; tries < 16; ++tries)
            if (fill(pick_relation(), {parent, v}))
                break;
    }
    for (std::size_t i = 0; i < extra; ++i)
        fill(pick_relation(), {});
    return inst;
}

// Whether the co-occurrence graph of `inst` is connected.
inline bool instance_connected(const Instance& inst) {
    std::vector<std::size_t> parent(inst.num_vars);
    for (std::size_t i = 0; i < parent.size(); ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& c : inst.constraints)
        for (std::size_t a : c.args)
            parent[find(a)] = find(c.args.front());
    for (std::size_t i = 1; i < parent.size(); ++i)
        if (find(i) != find(0))
            return false;
    return true;
}

// Exhaustive search over every assignment with values in [-bound, bound] and
// variable 0 pinned at 0. Shares nothing with the library's search.
inline bool naive_satisfiable(const Instance& inst, const Template& t, Offset bound) {
    std::vector<Offset> vals(inst.num_vars, 0);
    auto ok = [&] {
        for (const auto& c : inst.constraints) {
            Tuple tup;
            for (auto a : c.args)
                tup.push_back(vals[a]);
            if (!tuple_in_relation(t.at(c.relation), tup))
                return false;
        }
        return true;
    };
    const std::size_t n = inst.num_vars;
    if (n == 1)
        return ok();
    for (std::size_t i = 1; i < n; ++i)
        vals[i] = -bound;
    while (true) {
        if (ok())
            return true;
        std::size_t i = 1;
        while (i < n && vals[i] == bound)
            vals[i++] = -bound;
        if (i == n)
            return false;
        ++vals[i];
    }
}

} // namespace distcsp::testing

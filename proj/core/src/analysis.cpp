#include "distcsp/analysis.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace distcsp {

namespace {

// Total window width at which the breadth-first search gives up.
constexpr Offset kMaxWindowWidth = Offset{1} << 20;

void require_connected(std::span<const Offset> distances) {
    if (!is_connected(distances))
        throw DomainError("template Gaifman graph is disconnected (gcd of distances != 1)");
}

} // namespace

std::vector<Offset> gaifman_distances(const Template& t) {
    if (!t.has_tuple_relation())
        throw DomainError("template '" + t.name() + "' has no tuple relation, hence no Gaifman edges");
    std::set<Offset> out;
    for (const auto& rel : t.relations()) {
        if (!rel.has_tuples())
            continue;
        for (const auto& v : rel.offset_tuples()) {
            for (std::size_t i = 0; i < rel.arity(); ++i) {
                for (std::size_t j = i + 1; j < rel.arity(); ++j) {
                    const Offset vi = i == 0 ? 0 : v[i - 1];
                    const Offset d = checked_sub(v[j - 1], vi);
                    if (d != 0)
                        out.insert(d < 0 ? checked_neg(d) : d);
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

Offset max_distance_or_zero(const Template& t) {
    if (!t.has_tuple_relation())
        return 0;
    const auto d = gaifman_distances(t);
    return d.empty() ? 0 : d.back();
}

bool is_connected(std::span<const Offset> distances) {
    Offset g = 0;
    for (Offset d : distances)
        g = std::gcd(g, d);
    return g == 1;
}

bool is_connected(const Template& t) {
    const auto d = gaifman_distances(t);
    return is_connected(d);
}

Offset realizing_path_length(std::span<const Offset> distances, Offset q) {
    require_connected(distances);
    if (q < 0)
        q = checked_neg(q);
    if (q == 0)
        return 0;
    const Offset big_d = *std::max_element(distances.begin(), distances.end());

    Offset half = checked_add(q, checked_mul(10, big_d));
    while (half <= kMaxWindowWidth / 2) {
        const Offset width = 2 * half + 1;
        std::vector<Offset> dist(static_cast<std::size_t>(width), -1);
        auto slot = [&](Offset x) { return static_cast<std::size_t>(x + half); };
        std::deque<Offset> queue{0};
        dist[slot(0)] = 0;
        while (!queue.empty()) {
            const Offset x = queue.front();
            queue.pop_front();
            if (x == q)
                return dist[slot(x)];
            for (Offset d : distances) {
                for (Offset y : {x + d, x - d}) {
                    if (y < -half || y > half || dist[slot(y)] >= 0)
                        continue;
                    dist[slot(y)] = dist[slot(x)] + 1;
                    queue.push_back(y);
                }
            }
        }
        half *= 2;
    }
    throw DomainError("no walk to " + std::to_string(q) + " found within the search window cap");
}

Offset realizing_path_length(const Template& t, Offset q) {
    const auto d = gaifman_distances(t);
    return realizing_path_length(d, q);
}

Offset gaifman_graph_distance(std::span<const Offset> distances, Offset x, Offset y) {
    return realizing_path_length(distances, checked_sub(y, x));
}

Offset stretch_constant(std::span<const Offset> distances) {
    require_connected(distances);
    const Offset big_d = *std::max_element(distances.begin(), distances.end());
    Offset c = 0;
    for (Offset q = 1; q < big_d; ++q)
        c = std::max(c, checked_mul(big_d, realizing_path_length(distances, q)));
    return c;
}

Offset stretch_constant(const Template& t) {
    const auto d = gaifman_distances(t);
    return stretch_constant(d);
}

AnalysisReport analyze_template(const Template& t) {
    AnalysisReport r;
    r.distances = gaifman_distances(t);
    r.max_distance = r.distances.empty() ? 0 : r.distances.back();
    r.connected = is_connected(r.distances);
    if (r.connected) {
        for (Offset q = 1; q < r.max_distance; ++q)
            r.path_lengths[q] = realizing_path_length(r.distances, q);
        Offset c = 0;
        for (const auto& [q, l] : r.path_lengths)
            c = std::max(c, checked_mul(r.max_distance, l));
        r.stretch_bound = c;
        r.finite_range_bound = checked_mul(2, checked_add(c, 1));
    }
    return r;
}

} // namespace distcsp

#include "distcsp/brute.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "distcsp/analysis.hpp"

namespace distcsp {

namespace {

struct Component {
    std::vector<std::size_t> order;              // breadth-first, root first
    std::vector<std::optional<std::size_t>> parent; // indexed like order
};

class BruteSearch {
public:
    BruteSearch(const Instance& inst, const Template& t) : inst_(inst), t_(t) {
        validate_instance(inst, t);
        big_d_ = max_distance_or_zero(t);
        neighbours_.resize(inst.num_vars);
        for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
            const auto& con = inst.constraints[c];
            const RelationDef& rel = t.at(con.relation);
            if (rel.kind() == BodyKind::Empty)
                trivially_unsat_ = true;
            if (!rel.has_tuples())
                continue;
            for (std::size_t i = 0; i < con.args.size(); ++i) {
                for (std::size_t j = 0; j < con.args.size(); ++j) {
                    const std::size_t u = con.args[i];
                    const std::size_t v = con.args[j];
                    if (u == v)
                        continue;
                    auto [it, fresh] = edge_.try_emplace({u, v}, OffsetSet::full());
                    it->second = offsetset_intersect(it->second, project_constraint(rel, i, j));
                    if (fresh)
                        neighbours_[u].push_back(v);
                }
            }
        }
        for (auto& n : neighbours_)
            std::sort(n.begin(), n.end());

        std::vector<bool> seen(inst.num_vars, false);
        for (std::size_t root = 0; root < inst.num_vars; ++root) {
            if (seen[root])
                continue;
            Component comp;
            std::deque<std::size_t> queue{root};
            std::vector<std::optional<std::size_t>> parent_of(inst.num_vars);
            seen[root] = true;
            while (!queue.empty()) {
                const std::size_t u = queue.front();
                queue.pop_front();
                comp.order.push_back(u);
                comp.parent.push_back(parent_of[u]);
                for (std::size_t v : neighbours_[u]) {
                    if (!seen[v]) {
                        seen[v] = true;
                        parent_of[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            components_.push_back(std::move(comp));
        }
    }

    bool trivially_unsat() const { return trivially_unsat_; }

    double estimate(const Component& comp) const {
        const Offset window = window_of(comp);
        const double width = static_cast<double>(2 * window + 1);
        double nodes = 1;
        for (std::size_t k = 1; k < comp.order.size(); ++k) {
            const auto& s = edge_.at({*comp.parent[k], comp.order[k]});
            nodes *= std::min(width, static_cast<double>(s.size()));
        }
        return nodes;
    }

    double estimate() const {
        double total = 0;
        for (const auto& c : components_)
            total += estimate(c);
        return total;
    }

    std::optional<Assignment> run(const BruteOptions& opts) {
        if (trivially_unsat_)
            return std::nullopt;
        for (const auto& comp : components_) {
            const double e = estimate(comp);
            if (e > opts.max_nodes)
                throw RefusalError("brute-force search estimate " + std::to_string(e) +
                                   " nodes exceeds the cap of " + std::to_string(opts.max_nodes));
        }
        values_.assign(inst_.num_vars, 0);
        assigned_.assign(inst_.num_vars, false);
        for (const auto& comp : components_) {
            prepare_checks(comp);
            if (!search(comp, 0))
                return std::nullopt;
        }
        return Assignment{values_};
    }

private:
    Offset window_of(const Component& comp) const {
        return checked_mul(static_cast<Offset>(comp.order.size() - 1), big_d_);
    }

    static constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);

    // Buckets every constraint touching this component by the search depth
    // at which its last variable gets a value.
    void prepare_checks(const Component& comp) {
        std::vector<std::size_t> depth(inst_.num_vars, kUnseen);
        for (std::size_t k = 0; k < comp.order.size(); ++k)
            depth[comp.order[k]] = k;
        checks_.assign(comp.order.size(), {});
        for (std::size_t c = 0; c < inst_.constraints.size(); ++c) {
            const auto& con = inst_.constraints[c];
            if (!t_.at(con.relation).has_tuples() || depth[con.args.front()] == kUnseen)
                continue;
            std::size_t last = 0;
            for (std::size_t a : con.args)
                last = std::max(last, depth[a]);
            checks_[last].push_back(c);
        }
    }

    bool search(const Component& comp, std::size_t k) {
        if (k == comp.order.size())
            return true;
        const std::size_t v = comp.order[k];
        if (k == 0)
            return try_value(comp, k, v, 0);

        const Offset window = window_of(comp);
        OffsetSet candidates = OffsetSet::range(-window, window);
        for (std::size_t u : neighbours_[v]) {
            if (!assigned_[u])
                continue;
            const auto& s = edge_.at({u, v});
            std::vector<Offset> shifted;
            for (Offset x : s.elements())
                shifted.push_back(checked_add(values_[u], x));
            candidates = offsetset_intersect(candidates, OffsetSet(std::move(shifted)));
        }
        for (Offset x : candidates.elements())
            if (try_value(comp, k, v, x))
                return true;
        assigned_[v] = false;
        return false;
    }

    bool try_value(const Component& comp, std::size_t k, std::size_t v, Offset x) {
        values_[v] = x;
        assigned_[v] = true;
        std::vector<Offset> tuple;
        for (std::size_t c : checks_[k]) {
            const auto& con = inst_.constraints[c];
            tuple.clear();
            for (std::size_t a : con.args)
                tuple.push_back(values_[a]);
            if (!tuple_in_relation(t_.at(con.relation), tuple)) {
                assigned_[v] = false;
                return false;
            }
        }
        if (search(comp, k + 1))
            return true;
        assigned_[v] = false;
        return false;
    }

    const Instance& inst_;
    const Template& t_;
    Offset big_d_ = 0;
    bool trivially_unsat_ = false;
    std::map<std::pair<std::size_t, std::size_t>, OffsetSet> edge_;
    std::vector<std::vector<std::size_t>> neighbours_;
    std::vector<Component> components_;
    std::vector<std::vector<std::size_t>> checks_;
    std::vector<Offset> values_;
    std::vector<bool> assigned_;
};

} // namespace

double brute_search_estimate(const Instance& inst, const Template& t) {
    return BruteSearch(inst, t).estimate();
}

std::optional<Assignment> brute_solve(const Instance& inst, const Template& t, const BruteOptions& opts) {
    BruteSearch search(inst, t);
    return search.run(opts);
}

VerifyResult verify_assignment(const Instance& inst, const Template& t, const Assignment& a) {
    validate_instance(inst, t);
    if (a.values.size() != inst.num_vars)
        throw InputError("assignment has " + std::to_string(a.values.size()) + " values but the instance has " +
                         std::to_string(inst.num_vars) + " variables");
    std::vector<Offset> tuple;
    for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
        const auto& con = inst.constraints[c];
        tuple.clear();
        for (std::size_t v : con.args)
            tuple.push_back(a.values[v]);
        if (!tuple_in_relation(t.at(con.relation), tuple))
            return {false, c};
    }
    return {};
}

} // namespace distcsp

#include "distcsp/solver.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "distcsp/analysis.hpp"
#include "distcsp/polymorphism.hpp"

namespace distcsp {

namespace {

constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);

std::string pattern_name(const std::string& base, std::span<const std::size_t> slots) {
    std::string out = base + "[";
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(slots[i]);
    }
    return out + "]";
}

} // namespace

PreparedInstance preprocess(const Instance& inst, const Template& t) {
    validate_instance(inst, t);
    PreparedInstance out;
    out.num_vars = inst.num_vars;
    auto mark_unsat = [&](std::size_t c) {
        out.unsatisfiable = true;
        out.unsat_source = c;
        out.constraints.clear();
    };

    for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
        const auto& con = inst.constraints[c];
        const RelationDef& rel = t.at(con.relation);
        if (rel.kind() == BodyKind::Empty) {
            mark_unsat(c);
            return out;
        }
        if (rel.kind() == BodyKind::Full)
            continue;

        // slot[i]: which distinct variable argument i refers to.
        std::vector<std::size_t> distinct;
        std::vector<std::size_t> slot(con.args.size());
        for (std::size_t i = 0; i < con.args.size(); ++i) {
            auto it = std::find(distinct.begin(), distinct.end(), con.args[i]);
            slot[i] = static_cast<std::size_t>(it - distinct.begin());
            if (it == distinct.end())
                distinct.push_back(con.args[i]);
        }
        if (distinct.size() == con.args.size()) {
            out.constraints.push_back({rel, con.args, c});
            continue;
        }

        std::vector<Tuple> kept;
        for (const auto& v : rel.offset_tuples()) {
            Tuple full(con.args.size());
            full[0] = 0;
            std::copy(v.begin(), v.end(), full.begin() + 1);
            Tuple reduced(distinct.size());
            std::vector<bool> seen(distinct.size(), false);
            bool consistent = true;
            for (std::size_t i = 0; i < full.size() && consistent; ++i) {
                if (!seen[slot[i]]) {
                    seen[slot[i]] = true;
                    reduced[slot[i]] = full[i];
                } else {
                    consistent = reduced[slot[i]] == full[i];
                }
            }
            if (!consistent)
                continue;
            Tuple offsets(distinct.size() - 1);
            for (std::size_t k = 1; k < reduced.size(); ++k)
                offsets[k - 1] = checked_sub(reduced[k], reduced[0]);
            kept.push_back(std::move(offsets));
        }

        if (distinct.size() == 1) {
            if (kept.empty()) {
                mark_unsat(c);
                return out;
            }
            continue;
        }
        auto derived = RelationDef::tuples(pattern_name(rel.name(), slot), distinct.size(), std::move(kept));
        if (derived.kind() == BodyKind::Empty) {
            mark_unsat(c);
            return out;
        }
        out.constraints.push_back({std::move(derived), std::move(distinct), c});
    }
    return out;
}

std::vector<std::vector<std::size_t>> canonical_components(const PreparedInstance& inst) {
    std::vector<std::size_t> parent(inst.num_vars);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& con : inst.constraints)
        for (std::size_t a : con.args) {
            const std::size_t ra = find(a);
            const std::size_t rb = find(con.args.front());
            if (ra != rb)
                parent[std::max(ra, rb)] = std::min(ra, rb);
        }

    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> index_of_root(inst.num_vars, kUnreached);
    for (std::size_t v = 0; v < inst.num_vars; ++v) {
        const std::size_t r = find(v);
        if (index_of_root[r] == kUnreached) {
            index_of_root[r] = out.size();
            out.emplace_back();
        }
        out[index_of_root[r]].push_back(v);
    }
    return out;
}

PairMatrix::PairMatrix(std::vector<std::size_t> vars)
    : vars_(std::move(vars)), cells_(vars_.size() * vars_.size(), OffsetSet::full()),
      hops_(vars_.size() * vars_.size(), 0) {}

void PairMatrix::set(std::size_t k, std::size_t l, OffsetSet s) {
    cells_[l * size() + k] = offsetset_invert(s);
    cells_[k * size() + l] = std::move(s);
}

bool PairMatrix::has_empty_cell() const {
    for (std::size_t k = 0; k < size(); ++k)
        for (std::size_t l = k + 1; l < size(); ++l)
            if (cell(k, l).is_empty())
                return true;
    return false;
}

PairMatrix initialize_pairs(const PreparedInstance& inst, std::span<const std::size_t> component) {
    PairMatrix m(std::vector<std::size_t>(component.begin(), component.end()));
    const std::size_t n = m.size();
    std::vector<std::size_t> local(inst.num_vars, kUnreached);
    for (std::size_t k = 0; k < n; ++k)
        local[component[k]] = k;

    std::vector<std::vector<std::size_t>> adjacent(n);
    for (const auto& con : inst.constraints) {
        if (local[con.args.front()] == kUnreached)
            continue;
        for (std::size_t i = 0; i < con.args.size(); ++i) {
            for (std::size_t j = i + 1; j < con.args.size(); ++j) {
                const std::size_t k = local[con.args[i]];
                const std::size_t l = local[con.args[j]];
                m.set(k, l, offsetset_intersect(m.cell(k, l), project_constraint(con.relation, i, j)));
                adjacent[k].push_back(l);
                adjacent[l].push_back(k);
            }
        }
    }

    std::vector<std::size_t> hops(n * n, kUnreached);
    for (std::size_t s = 0; s < n; ++s) {
        std::deque<std::size_t> queue{s};
        hops[s * n + s] = 0;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : adjacent[u]) {
                if (hops[s * n + v] == kUnreached) {
                    hops[s * n + v] = hops[s * n + u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    m.set_hops(std::move(hops));
    return m;
}

void propagate(PairMatrix& m, const PropagateOptions& opts) {
    const std::size_t n = m.size();
    auto& st = m.stats;
    if (n < 2 || m.has_empty_cell())
        return;

    std::uint64_t initial_finite_mass = 0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
            if (m.cell(k, l).is_finite())
                initial_finite_mass += m.cell(k, l).size();

    std::deque<std::pair<std::size_t, std::size_t>> queue;
    std::vector<bool> queued(n * n, false);
    auto enqueue = [&](std::size_t k, std::size_t l) {
        if (k > l)
            std::swap(k, l);
        if (!queued[k * n + l]) {
            queued[k * n + l] = true;
            queue.emplace_back(k, l);
        }
    };
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
            enqueue(k, l);

    bool emptied = false;
    // P(i,j) <- P(i,j) & (P(i,via) + P(via,j))
    auto revise = [&](std::size_t i, std::size_t j, std::size_t via) {
        ++st.revisions;
        const OffsetSet& left = m.cell(i, via);
        const OffsetSet& right = m.cell(via, j);
        if (left.is_full() || right.is_full())
            return;
        const OffsetSet& old = m.cell(i, j);
        OffsetSet next = offsetset_intersect(old, offsetset_sum(left, right));
        if (next == old)
            return;

        ++st.proper_replacements;
        if (old.is_full())
            ++st.full_to_finite;
        if (opts.check_invariants && !next.is_empty()) {
            const auto bound = checked_mul(static_cast<Offset>(m.hops(i, j)), opts.max_distance);
            if (next.min() < -bound || next.max() > bound)
                ++st.bound_violations;
        }
        if (opts.trace)
            opts.trace("pair=(" + std::to_string(m.var(i)) + "," + std::to_string(m.var(j)) + ") via " +
                       std::to_string(m.var(via)) + " old=" + old.to_string() + " new=" + next.to_string());
        emptied = next.is_empty();
        m.set(i, j, std::move(next));
        enqueue(i, j);
    };

    // FULL cells are first materialized in order of hop distance, each through
    // midpoints on a shortest path, so every finite cell of a pair at hop
    // distance h stays inside [-hD, hD] from its first replacement on.
    std::size_t max_hops = 0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
            if (m.hops(k, l) != kUnreached)
                max_hops = std::max(max_hops, m.hops(k, l));
    for (std::size_t h = 2; h <= max_hops && !emptied; ++h)
        for (std::size_t k = 0; k < n && !emptied; ++k)
            for (std::size_t l = k + 1; l < n && !emptied; ++l) {
                if (m.hops(k, l) != h || !m.cell(k, l).is_full())
                    continue;
                for (std::size_t x = 0; x < n && !emptied; ++x)
                    if (m.hops(k, x) == 1 && m.hops(x, l) == h - 1)
                        revise(k, l, x);
            }

    while (!queue.empty() && !emptied) {
        const auto [k, l] = queue.front();
        queue.pop_front();
        queued[k * n + l] = false;
        ++st.pair_visits;
        for (std::size_t x = 0; x < n && !emptied; ++x) {
            if (x == k || x == l)
                continue;
            revise(k, x, l);
            if (!emptied)
                revise(x, l, k);
        }
    }

    const std::uint64_t window = 2 * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(opts.max_distance) + 1;
    st.replacement_budget = initial_finite_mass + st.full_to_finite * window;
    if (opts.check_invariants && st.proper_replacements > st.replacement_budget)
        ++st.budget_violations;
}

std::optional<Assignment> extract_solution(const PairMatrix& m, const PreparedInstance& inst) {
    const std::size_t n = m.size();
    Assignment out{std::vector<Offset>(inst.num_vars, 0)};
    if (n == 0)
        return out;

    std::vector<std::size_t> local(inst.num_vars, kUnreached);
    for (std::size_t k = 0; k < n; ++k)
        local[m.var(k)] = k;
    std::vector<std::vector<std::size_t>> touching(n);
    for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
        const auto& con = inst.constraints[c];
        if (local[con.args.front()] == kUnreached)
            continue;
        for (std::size_t a : con.args)
            touching[local[a]].push_back(c);
    }

    std::vector<std::size_t> order{0};
    std::vector<bool> queued(n, false);
    queued[0] = true;
    for (std::size_t head = 0; head < order.size(); ++head)
        for (std::size_t v = 0; v < n; ++v)
            if (!queued[v] && m.hops(order[head], v) == 1) {
                queued[v] = true;
                order.push_back(v);
            }
    if (order.size() != n)
        throw InternalError("component passed to extraction is not connected");

    std::vector<bool> assigned(n, false);
    std::vector<Offset> value(n, 0);
    assigned[0] = true;
    std::vector<Offset> tuple;
    for (std::size_t step = 1; step < n; ++step) {
        const std::size_t j = order[step];
        OffsetSet candidates = OffsetSet::full();
        for (std::size_t i = 0; i < n; ++i) {
            if (!assigned[i])
                continue;
            const OffsetSet& cell = m.cell(i, j);
            if (cell.is_full())
                continue;
            std::vector<Offset> shifted;
            shifted.reserve(cell.size());
            for (Offset s : cell.elements())
                shifted.push_back(checked_add(value[i], s));
            candidates = offsetset_intersect(candidates, OffsetSet(std::move(shifted)));
        }
        if (candidates.is_full())
            throw InternalError("no finite cell constrains a breadth-first successor");

        assigned[j] = true;
        bool placed = false;
        for (Offset x : candidates.elements()) {
            value[j] = x;
            bool fits = true;
            for (std::size_t c : touching[j]) {
                const auto& con = inst.constraints[c];
                if (!std::all_of(con.args.begin(), con.args.end(),
                                 [&](std::size_t a) { return assigned[local[a]]; }))
                    continue;
                tuple.clear();
                for (std::size_t a : con.args)
                    tuple.push_back(value[local[a]]);
                if (!tuple_in_relation(con.relation, tuple)) {
                    fits = false;
                    break;
                }
            }
            if (fits) {
                placed = true;
                break;
            }
        }
        if (!placed)
            return std::nullopt;
    }
    for (std::size_t k = 0; k < n; ++k)
        out.values[m.var(k)] = value[k];
    return out;
}

namespace {

void accumulate(PropagationStats& into, const PropagationStats& s) {
    into.proper_replacements += s.proper_replacements;
    into.revisions += s.revisions;
    into.pair_visits += s.pair_visits;
    into.full_to_finite += s.full_to_finite;
    into.replacement_budget += s.replacement_budget;
    into.bound_violations += s.bound_violations;
    into.budget_violations += s.budget_violations;
}

Verdict run_brute(const Instance& inst, const Template& t, const BruteOptions& opts) {
    Verdict v;
    try {
        auto a = brute_solve(inst, t, opts);
        if (!a) {
            v.kind = VerdictKind::Unsat;
            return v;
        }
        if (!verify_assignment(inst, t, *a).ok)
            throw InternalError("brute-force witness failed verification");
        v.kind = VerdictKind::Sat;
        v.witness = std::move(a);
    } catch (const RefusalError& e) {
        v.kind = VerdictKind::Unknown;
        v.reason = e.what();
    }
    return v;
}

} // namespace

SolveResult solve(const Instance& inst, const Template& t, const SolveOptions& opts) {
    SolveResult result;
    const PreparedInstance prepared = preprocess(inst, t);
    if (prepared.unsatisfiable) {
        result.verdict.kind = VerdictKind::Unsat;
        result.verdict.reason = "constraint " + std::to_string(*prepared.unsat_source) + " has an empty relation";
        return result;
    }
    if (opts.mode == SolveMode::Brute) {
        result.verdict = run_brute(inst, t, opts.brute);
        return result;
    }

    const Offset big_d = max_distance_or_zero(t);
    PropagateOptions popts;
    popts.max_distance = big_d;
    popts.check_invariants = opts.check_invariants;
    popts.trace = opts.trace;

    const auto components = canonical_components(prepared);
    result.stats.components = components.size();
    std::vector<PairMatrix> matrices;
    for (const auto& comp : components) {
        if (comp.size() < 2)
            continue;
        PairMatrix m = initialize_pairs(prepared, comp);
        propagate(m, popts);
        accumulate(result.stats.propagation, m.stats);
        if (m.has_empty_cell()) {
            result.verdict.kind = VerdictKind::Unsat;
            result.verdict.reason = "propagation emptied a pair relation";
            return result;
        }
        matrices.push_back(std::move(m));
    }

    Assignment witness{std::vector<Offset>(inst.num_vars, 0)};
    bool extracted = true;
    for (const auto& m : matrices) {
        auto part = extract_solution(m, prepared);
        if (!part) {
            extracted = false;
            break;
        }
        for (std::size_t v : m.vars())
            witness.values[v] = part->values[v];
    }

    if (extracted) {
        if (!verify_assignment(inst, t, witness).ok)
            throw InternalError("extracted witness failed verification");
        result.verdict.kind = VerdictKind::Sat;
        result.verdict.witness = std::move(witness);
        return result;
    }

    const Offset d_max = opts.max_modulus.value_or(default_modulus_bound(t));
    if (auto finding = find_modular_median(t, d_max)) {
        result.stats.verified_modulus = finding->modulus;
        throw InternalError("greedy extraction failed although m_" + std::to_string(finding->modulus) +
                            " preserves the template; propagation is not globally consistent");
    }
    result.verdict.kind = VerdictKind::Unknown;
    result.verdict.reason = "greedy extraction failed and no modular median with modulus <= " +
                            std::to_string(d_max) + " was found";
    if (opts.mode == SolveMode::Auto) {
        Verdict fallback = run_brute(inst, t, opts.brute);
        result.stats.brute_fallback = true;
        if (fallback.kind == VerdictKind::Unknown)
            fallback.reason = result.verdict.reason + "; " + fallback.reason;
        result.verdict = std::move(fallback);
    }
    return result;
}

} // namespace distcsp

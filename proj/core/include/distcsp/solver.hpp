#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distcsp/brute.hpp"
#include "distcsp/model.hpp"

namespace distcsp {

/// A constraint after repeated-variable elimination: all arguments are
/// distinct and the relation is a tuple relation of arity >= 2.
struct PreparedConstraint {
    RelationDef relation;
    std::vector<std::size_t> args;
    /// Index of the originating constraint in the input instance.
    std::size_t source = 0;
};

struct PreparedInstance {
    std::size_t num_vars = 1;
    std::vector<PreparedConstraint> constraints;
    /// Set when some constraint has an EMPTY body (before or after rewriting).
    bool unsatisfiable = false;
    std::optional<std::size_t> unsat_source;
};

/// Rewrites constraints with repeated variables onto their distinct
/// variables, drops constraints that impose nothing (FULL bodies) and flags
/// EMPTY ones. Throws InputError on unknown relations or arity mismatch.
PreparedInstance preprocess(const Instance& inst, const Template& t);

/// Connected components of the co-occurrence graph, each sorted ascending,
/// listed by smallest member.
std::vector<std::vector<std::size_t>> canonical_components(const PreparedInstance& inst);

struct PropagationStats {
    std::uint64_t proper_replacements = 0;
    std::uint64_t revisions = 0;
    std::uint64_t pair_visits = 0;
    std::uint64_t full_to_finite = 0;
    std::uint64_t replacement_budget = 0;
    std::uint64_t bound_violations = 0;
    std::uint64_t budget_violations = 0;
};

/// Offset sets P(k,l) for every ordered pair of distinct variables of one
/// component, kept mirror-consistent: P(l,k) = -P(k,l).
class PairMatrix {
public:
    PairMatrix() = default;
    explicit PairMatrix(std::vector<std::size_t> vars);

    std::size_t size() const { return vars_.size(); }
    /// Instance variable index of local index k.
    std::size_t var(std::size_t k) const { return vars_[k]; }
    std::span<const std::size_t> vars() const { return vars_; }

    const OffsetSet& cell(std::size_t k, std::size_t l) const { return cells_[k * size() + l]; }
    /// Sets P(k,l) and its mirror.
    void set(std::size_t k, std::size_t l, OffsetSet s);

    /// Hop distance between k and l in the component's co-occurrence graph.
    std::size_t hops(std::size_t k, std::size_t l) const { return hops_[k * size() + l]; }
    void set_hops(std::vector<std::size_t> hops) { hops_ = std::move(hops); }

    bool has_empty_cell() const;

    PropagationStats stats;

private:
    std::vector<std::size_t> vars_;
    std::vector<OffsetSet> cells_;
    std::vector<std::size_t> hops_;
};

/// Cells of adjacent pairs are the intersection of the projections of every
/// covering constraint; other cells are FULL.
PairMatrix initialize_pairs(const PreparedInstance& inst, std::span<const std::size_t> component);

using TraceSink = std::function<void(const std::string&)>;

struct PropagateOptions {
    /// Largest template distance D; used by the invariant checks.
    Offset max_distance = 0;
    /// Count bound and budget violations into the stats.
    bool check_invariants = false;
    /// Receives "pair=(k,l) via m old=<set> new=<set>" per proper replacement.
    TraceSink trace;
};

/// Worklist fixpoint of P(k,l) <- P(k,l) & (P(k,m) + P(m,l)). FULL cells are
/// first filled in order of hop distance through shortest-path midpoints, so
/// a cell at hop distance h never leaves [-hD, hD]. Stops early once a cell
/// becomes empty.
void propagate(PairMatrix& m, const PropagateOptions& opts = {});

/// Greedy extension after propagation: the component's lowest variable gets
/// 0, the rest follow in breadth-first order, each taking the least value
/// compatible with every assigned variable's cell and every fully assigned
/// constraint. Variables outside the component are left at 0. nullopt when
/// some step has no candidate.
std::optional<Assignment> extract_solution(const PairMatrix& m, const PreparedInstance& inst);

enum class SolveMode { Auto, Consistency, Brute };

enum class VerdictKind { Sat, Unsat, Unknown };

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<Assignment> witness;
    std::string reason;
};

struct SolveStats {
    std::size_t components = 0;
    PropagationStats propagation;
    bool brute_fallback = false;
    std::optional<Offset> verified_modulus;
};

struct SolveOptions {
    SolveMode mode = SolveMode::Auto;
    bool check_invariants = false;
    TraceSink trace;
    /// Modulus bound for the polymorphism check run when extraction fails;
    /// defaults to 2 * D.
    std::optional<Offset> max_modulus;
    BruteOptions brute;
};

struct SolveResult {
    Verdict verdict;
    SolveStats stats;
};

/// Decides an instance. Unsat from propagation is always sound. An
/// extraction failure is Unknown unless the template has a verified modular
/// median, in which case InternalError is raised. Every Sat witness is
/// re-verified against the original instance.
SolveResult solve(const Instance& inst, const Template& t, const SolveOptions& opts = {});

} // namespace distcsp

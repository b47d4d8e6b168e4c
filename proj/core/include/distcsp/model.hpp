#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distcsp/offset_set.hpp"

namespace distcsp {

using Tuple = std::vector<Offset>;

enum class BodyKind { Full, Empty, Tuples };

/// A k-ary relation closed under uniform shifts. A stored tuple v of length
/// k-1 stands for the orbit {(a, a+v[0], ..., a+v[k-2]) : a in Z}.
class RelationDef {
public:
    static RelationDef full(std::string name, std::size_t arity);
    static RelationDef empty(std::string name, std::size_t arity);
    /// Deduplicates and sorts. An empty tuple list yields an EMPTY body.
    /// Throws InputError on arity 0, arity 1, or tuples of the wrong length.
    static RelationDef tuples(std::string name, std::size_t arity, std::vector<Tuple> offsets);

    const std::string& name() const { return name_; }
    std::size_t arity() const { return arity_; }
    BodyKind kind() const { return kind_; }
    bool has_tuples() const { return kind_ == BodyKind::Tuples; }
    /// Sorted, deduplicated offset tuples (empty unless kind() == Tuples).
    std::span<const Tuple> offset_tuples() const { return tuples_; }
    bool contains_offsets(std::span<const Offset> offsets) const;

    /// Largest absolute value over all coordinates of all members with the
    /// first coordinate pinned at 0 (0 for FULL/EMPTY).
    Offset max_abs_offset() const;

    /// The concrete Z-tuple (base, base + v...) for stored tuple `index`.
    Tuple instantiate(std::size_t index, Offset base) const;

    friend bool operator==(const RelationDef&, const RelationDef&) = default;

private:
    RelationDef(std::string name, std::size_t arity, BodyKind kind, std::vector<Tuple> tuples)
        : name_(std::move(name)), arity_(arity), kind_(kind), tuples_(std::move(tuples)) {}

    std::string name_;
    std::size_t arity_ = 0;
    BodyKind kind_ = BodyKind::Empty;
    std::vector<Tuple> tuples_;
};

/// A named finite collection of relations with unique names.
class Template {
public:
    Template() = default;
    /// Throws InputError on duplicate relation names.
    Template(std::string name, std::vector<RelationDef> relations);

    const std::string& name() const { return name_; }
    std::span<const RelationDef> relations() const { return relations_; }
    const RelationDef* find(std::string_view relation) const;
    /// Throws InputError naming the relation when absent.
    const RelationDef& at(std::string_view relation) const;
    bool has_tuple_relation() const;

    friend bool operator==(const Template&, const Template&) = default;

private:
    std::string name_;
    std::vector<RelationDef> relations_;
};

struct Constraint {
    std::string relation;
    std::vector<std::size_t> args;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Variables 0..num_vars-1 and a conjunction of atomic constraints.
struct Instance {
    std::size_t num_vars = 1;
    std::vector<Constraint> constraints;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Checks num_vars >= 1, argument indices and arities against `t`.
/// Throws InputError with the offending constraint index.
void validate_instance(const Instance& inst, const Template& t);

struct Assignment {
    std::vector<Offset> values;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Offsets between coordinates `i` and `j` (0-based) over all members:
/// { t[j] - t[i] }. Requires a Tuples body and i != j in range.
OffsetSet project_constraint(const RelationDef& rel, std::size_t i, std::size_t j);

/// Membership of a concrete Z-tuple. Throws InputError on arity mismatch.
bool tuple_in_relation(const RelationDef& rel, std::span<const Offset> t);

} // namespace distcsp

#include "distcsp/model.hpp"

#include <algorithm>
#include <set>

namespace distcsp {

RelationDef RelationDef::full(std::string name, std::size_t arity) {
    if (arity == 0)
        throw InputError("relation '" + name + "': arity must be at least 1");
    return RelationDef(std::move(name), arity, BodyKind::Full, {});
}

RelationDef RelationDef::empty(std::string name, std::size_t arity) {
    if (arity == 0)
        throw InputError("relation '" + name + "': arity must be at least 1");
    return RelationDef(std::move(name), arity, BodyKind::Empty, {});
}

RelationDef RelationDef::tuples(std::string name, std::size_t arity, std::vector<Tuple> offsets) {
    if (arity == 0)
        throw InputError("relation '" + name + "': arity must be at least 1");
    if (arity == 1)
        throw InputError("relation '" + name +
                         "': unary relations are shift-invariant; use a FULL or EMPTY body");
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (offsets[i].size() != arity - 1)
            throw InputError("relation '" + name + "': tuple " + std::to_string(i) + " has " +
                             std::to_string(offsets[i].size()) + " components, expected " +
                             std::to_string(arity - 1));
    }
    if (offsets.empty())
        return RelationDef(std::move(name), arity, BodyKind::Empty, {});
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    return RelationDef(std::move(name), arity, BodyKind::Tuples, std::move(offsets));
}

bool RelationDef::contains_offsets(std::span<const Offset> offsets) const {
    switch (kind_) {
    case BodyKind::Full:
        return true;
    case BodyKind::Empty:
        return false;
    case BodyKind::Tuples:
        break;
    }
    auto it = std::lower_bound(tuples_.begin(), tuples_.end(), offsets,
                               [](const Tuple& a, std::span<const Offset> b) {
                                   return std::lexicographical_compare(a.begin(), a.end(),
                                                                       b.begin(), b.end());
                               });
    return it != tuples_.end() && std::equal(it->begin(), it->end(), offsets.begin(), offsets.end());
}

Offset RelationDef::max_abs_offset() const {
    Offset best = 0;
    for (const auto& t : tuples_)
        for (Offset v : t)
            best = std::max(best, v < 0 ? checked_neg(v) : v);
    return best;
}

Tuple RelationDef::instantiate(std::size_t index, Offset base) const {
    const Tuple& v = tuples_.at(index);
    Tuple out;
    out.reserve(arity_);
    out.push_back(base);
    for (Offset x : v)
        out.push_back(checked_add(base, x));
    return out;
}

Template::Template(std::string name, std::vector<RelationDef> relations)
    : name_(std::move(name)), relations_(std::move(relations)) {
    std::set<std::string_view> seen;
    for (const auto& r : relations_) {
        if (!seen.insert(r.name()).second)
            throw InputError("duplicate relation name '" + r.name() + "'");
    }
}

const RelationDef* Template::find(std::string_view relation) const {
    for (const auto& r : relations_)
        if (r.name() == relation)
            return &r;
    return nullptr;
}

const RelationDef& Template::at(std::string_view relation) const {
    if (const auto* r = find(relation))
        return *r;
    throw InputError("unknown relation '" + std::string(relation) + "'");
}

bool Template::has_tuple_relation() const {
    return std::any_of(relations_.begin(), relations_.end(),
                       [](const RelationDef& r) { return r.has_tuples(); });
}

void validate_instance(const Instance& inst, const Template& t) {
    if (inst.num_vars < 1)
        throw InputError("instance must have at least one variable");
    for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
        const auto& con = inst.constraints[c];
        const RelationDef* rel = t.find(con.relation);
        if (!rel)
            throw InputError("constraint " + std::to_string(c) + ": unknown relation '" +
                             con.relation + "'");
        if (con.args.size() != rel->arity())
            throw InputError("constraint " + std::to_string(c) + ": relation '" + con.relation +
                             "' has arity " + std::to_string(rel->arity()) + " but " +
                             std::to_string(con.args.size()) + " arguments were given");
        for (std::size_t a : con.args)
            if (a >= inst.num_vars)
                throw InputError("constraint " + std::to_string(c) + ": variable index " +
                                 std::to_string(a) + " out of range [0, " +
                                 std::to_string(inst.num_vars) + ")");
    }
}

OffsetSet project_constraint(const RelationDef& rel, std::size_t i, std::size_t j) {
    if (!rel.has_tuples())
        throw DomainError("projection of relation '" + rel.name() + "' requires a tuple body");
    if (i >= rel.arity() || j >= rel.arity() || i == j)
        throw DomainError("projection coordinates (" + std::to_string(i) + "," + std::to_string(j) +
                          ") invalid for arity " + std::to_string(rel.arity()));
    std::vector<Offset> out;
    out.reserve(rel.offset_tuples().size());
    for (const auto& v : rel.offset_tuples()) {
        const Offset vi = i == 0 ? 0 : v[i - 1];
        const Offset vj = j == 0 ? 0 : v[j - 1];
        out.push_back(checked_sub(vj, vi));
    }
    return OffsetSet(std::move(out));
}

bool tuple_in_relation(const RelationDef& rel, std::span<const Offset> t) {
    if (t.size() != rel.arity())
        throw InputError("tuple of length " + std::to_string(t.size()) + " tested against relation '" +
                         rel.name() + "' of arity " + std::to_string(rel.arity()));
    if (rel.kind() != BodyKind::Tuples)
        return rel.kind() == BodyKind::Full;
    Tuple diff(t.size() - 1);
    for (std::size_t k = 1; k < t.size(); ++k)
        diff[k - 1] = checked_sub(t[k], t[0]);
    return rel.contains_offsets(diff);
}

} // namespace distcsp

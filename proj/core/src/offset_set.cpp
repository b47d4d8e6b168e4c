#include "distcsp/offset_set.hpp"

#include <algorithm>
#include <cstdint>

namespace distcsp {

namespace {

void normalize(std::vector<Offset>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

OffsetSet::OffsetSet(std::initializer_list<Offset> values) : elements_(values) {
    normalize(elements_);
}

OffsetSet::OffsetSet(std::vector<Offset> values) : elements_(std::move(values)) {
    normalize(elements_);
}

OffsetSet OffsetSet::full() {
    OffsetSet s;
    s.full_ = true;
    return s;
}

OffsetSet OffsetSet::range(Offset lo, Offset hi) {
    OffsetSet s;
    for (Offset k = lo; k <= hi; ++k)
        s.elements_.push_back(k);
    return s;
}

bool OffsetSet::contains(Offset k) const {
    return full_ || std::binary_search(elements_.begin(), elements_.end(), k);
}

Offset OffsetSet::min() const {
    if (full_ || elements_.empty())
        throw DomainError("min() of a FULL or empty offset set");
    return elements_.front();
}

Offset OffsetSet::max() const {
    if (full_ || elements_.empty())
        throw DomainError("max() of a FULL or empty offset set");
    return elements_.back();
}

std::string OffsetSet::to_string() const {
    if (full_)
        return "FULL";
    std::string out = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(elements_[i]);
    }
    out += '}';
    return out;
}

OffsetSet offsetset_sum(const OffsetSet& a, const OffsetSet& b) {
    if (a.is_empty() || b.is_empty())
        return OffsetSet::empty();
    if (a.is_full() || b.is_full())
        return OffsetSet::full();

    // Dense marking when the result span is small relative to the pair count,
    // which is the common case for the windows the solver works in.
    const Offset lo = checked_add(a.min(), b.min());
    const Offset hi = checked_add(a.max(), b.max());
    const auto pairs = a.size() * b.size();
    if (pairs >= 256 && static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) < 4 * pairs) {
        std::vector<char> hit(static_cast<std::size_t>(hi - lo) + 1, 0);
        for (Offset s : a.elements())
            for (Offset t : b.elements())
                hit[static_cast<std::size_t>(s + t - lo)] = 1;
        std::vector<Offset> out;
        for (std::size_t i = 0; i < hit.size(); ++i)
            if (hit[i])
                out.push_back(lo + static_cast<Offset>(i));
        return OffsetSet(std::move(out));
    }

    std::vector<Offset> out;
    out.reserve(pairs);
    for (Offset s : a.elements())
        for (Offset t : b.elements())
            out.push_back(checked_add(s, t));
    return OffsetSet(std::move(out));
}

OffsetSet offsetset_intersect(const OffsetSet& a, const OffsetSet& b) {
    if (a.is_full())
        return b;
    if (b.is_full())
        return a;
    std::vector<Offset> out;
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                          b.elements().end(), std::back_inserter(out));
    return OffsetSet(std::move(out));
}

OffsetSet offsetset_invert(const OffsetSet& a) {
    if (a.is_full())
        return a;
    std::vector<Offset> out;
    out.reserve(a.size());
    for (Offset s : a.elements())
        out.push_back(checked_neg(s));
    return OffsetSet(std::move(out));
}

bool offsetset_subset(const OffsetSet& sub, const OffsetSet& super) {
    if (super.is_full())
        return true;
    if (sub.is_full())
        return false;
    return std::includes(super.elements().begin(), super.elements().end(), sub.elements().begin(),
                         sub.elements().end());
}

} // namespace distcsp

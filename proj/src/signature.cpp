#include "compstruct/signature.hpp"

#include "compstruct/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace compstruct {

std::ostream& operator<<(std::ostream& os, const Symbol& s)
{
    return os << 'R' << s.family << '.' << s.index;
}

Signature::Signature(std::vector<RelationFamily> families) : families_(std::move(families))
{
    for (const auto& f : families_)
        if (f.arity == 0)
            throw std::invalid_argument("relation family '" + f.name + "' has arity 0");
}

const RelationFamily& Signature::family(std::uint32_t f) const
{
    if (f >= families_.size())
        throw std::out_of_range("no relation family " + std::to_string(f));
    return families_[f];
}

bool Signature::contains(Symbol s) const
{
    if (s.family >= families_.size())
        return false;
    const auto& count = families_[s.family].count;
    return !count || s.index < *count;
}

std::optional<std::size_t> Signature::arity(Symbol s) const
{
    if (!contains(s))
        return std::nullopt;
    return families_[s.family].arity;
}

bool Signature::finite() const
{
    return std::all_of(families_.begin(), families_.end(), [](const auto& f) { return f.count.has_value(); });
}

std::vector<Symbol> Signature::symbols() const
{
    if (!finite())
        throw FuelExhausted("infinite signature needs an explicit symbol prefix");
    std::vector<Symbol> out;
    for (std::uint32_t f = 0; f < families_.size(); ++f)
        for (std::uint64_t i = 0; i < *families_[f].count; ++i)
            out.push_back({f, i});
    return out;
}

std::vector<Symbol> Signature::prefix(std::uint64_t per_family) const
{
    std::vector<Symbol> out;
    for (std::uint32_t f = 0; f < families_.size(); ++f) {
        const auto n = std::min(per_family, families_[f].count.value_or(per_family));
        for (std::uint64_t i = 0; i < n; ++i)
            out.push_back({f, i});
    }
    return out;
}

std::uint32_t Signature::append(const Signature& other)
{
    const auto offset = static_cast<std::uint32_t>(families_.size());
    families_.insert(families_.end(), other.families_.begin(), other.families_.end());
    return offset;
}

Signature Signature::merge(const Signature& a, const Signature& b)
{
    std::vector<RelationFamily> out = a.families_;
    for (std::size_t f = 0; f < b.families_.size(); ++f) {
        if (f >= out.size()) {
            out.push_back(b.families_[f]);
            continue;
        }
        auto& mine = out[f];
        const auto& theirs = b.families_[f];
        if (mine.arity != theirs.arity)
            throw std::invalid_argument("cannot merge signatures: family " + std::to_string(f)
                                        + " has arities " + std::to_string(mine.arity) + " and "
                                        + std::to_string(theirs.arity));
        if (!mine.count || !theirs.count)
            mine.count.reset();
        else
            mine.count = std::max(*mine.count, *theirs.count);
    }
    return Signature(std::move(out));
}

bool Signature::operator==(const Signature& other) const
{
    if (families_.size() != other.families_.size())
        return false;
    for (std::size_t f = 0; f < families_.size(); ++f) {
        const auto& x = families_[f];
        const auto& y = other.families_[f];
        if (x.arity != y.arity || x.count != y.count)
            return false;
    }
    return true;
}

} // namespace compstruct

#include "compstruct/tagged.hpp"

#include <algorithm>
#include <stdexcept>

namespace compstruct {

namespace {

// Smallest a with encode_pair(tag, a) >= c.
Code first_inner_at_least(Code tag, Code c)
{
    Code lo = 0;
    Code hi = 1;
    while (encode_pair(tag, hi) < c)
        hi *= 2;
    while (lo < hi) {
        const Code mid = lo + (hi - lo) / 2;
        if (encode_pair(tag, mid) < c)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

Presentation make_tagged(Code tag, const Presentation& inner)
{
    Presentation::Parts parts;
    parts.name = "{" + std::to_string(tag) + "}x" + inner.name();
    parts.signature = inner.signature();
    parts.contains = [tag, inner](Code c) {
        const auto [t, a] = decode_pair(c);
        return t == tag && inner.contains(a);
    };
    parts.holds = [tag, inner](Symbol s, Tuple args) {
        std::vector<Code> untagged;
        untagged.reserve(args.size());
        for (auto c : args)
            untagged.push_back(decode_pair(c).second);
        return inner.holds(s, Tuple(untagged));
    };
    if (const auto* u = inner.finite_universe()) {
        std::vector<Code> codes;
        codes.reserve(u->size());
        for (auto a : *u)
            codes.push_back(encode_pair(tag, a));
        std::sort(codes.begin(), codes.end());
        parts.finite_universe = std::move(codes);
    } else {
        parts.next_from = [tag, inner](Code c) -> std::optional<Code> {
            auto a = inner.next_from(first_inner_at_least(tag, c));
            if (!a)
                return std::nullopt;
            return encode_pair(tag, *a);
        };
    }
    return Presentation(std::move(parts));
}

} // namespace

TaggedCopy::TaggedCopy(Code tag, Presentation inner)
    : tag_(tag), inner_(std::move(inner)), tagged_(make_tagged(tag_, inner_))
{
}

std::optional<Code> TaggedCopy::untag(Code c) const
{
    const auto [t, a] = decode_pair(c);
    if (t != tag_)
        return std::nullopt;
    return a;
}

LazyIso transport(Code from_tag, Code to_tag)
{
    auto move = [](Code from, Code to) {
        return [from, to](Code c) {
            const auto [t, a] = decode_pair(c);
            if (t != from)
                throw TagMismatch("transport expects tag " + std::to_string(from) + ", got " + std::to_string(t));
            return encode_pair(to, a);
        };
    };
    if (from_tag == to_tag)
        return LazyIso(move(from_tag, to_tag), move(to_tag, from_tag), "id");
    return LazyIso(move(from_tag, to_tag), move(to_tag, from_tag),
                   "transport(" + std::to_string(from_tag) + "->" + std::to_string(to_tag) + ")");
}

std::pair<TaggedCopy, LazyIso> retag_copy(const TaggedCopy& src, Code new_tag)
{
    return {TaggedCopy(new_tag, src.inner()), transport(src.tag(), new_tag)};
}

CodePermutation block_rotation(Code block, Code shift)
{
    if (block == 0)
        throw std::invalid_argument("block_rotation: block size must be positive");
    shift %= block;
    CodePermutation perm;
    perm.name = "rot-" + std::to_string(block) + "-" + std::to_string(shift);
    perm.forward = [block, shift](Code c) { return (c / block) * block + (c % block + shift) % block; };
    perm.backward = [block, shift](Code c) { return (c / block) * block + (c % block + block - shift) % block; };
    return perm;
}

Presentation permuted_copy(const Presentation& p, const CodePermutation& perm)
{
    Presentation::Parts parts;
    parts.name = perm.name + "(" + p.name() + ")";
    parts.signature = p.signature();
    parts.contains = [p, back = perm.backward](Code c) { return p.contains(back(c)); };
    parts.holds = [p, back = perm.backward](Symbol s, Tuple args) {
        std::vector<Code> pre;
        pre.reserve(args.size());
        for (auto c : args)
            pre.push_back(back(c));
        return p.holds(s, Tuple(pre));
    };
    if (const auto* u = p.finite_universe()) {
        std::vector<Code> codes;
        for (auto c : *u)
            codes.push_back(perm.forward(c));
        std::sort(codes.begin(), codes.end());
        parts.finite_universe = std::move(codes);
    }
    return Presentation(std::move(parts));
}

LazyIso as_iso(const CodePermutation& perm)
{
    return LazyIso(perm.forward, perm.backward, perm.name);
}

} // namespace compstruct

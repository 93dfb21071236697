#pragma once

#include "compstruct/lazy_iso.hpp"
#include "compstruct/presentation.hpp"

#include <functional>
#include <optional>
#include <string>

namespace compstruct {

/// A presentation relabelled as {tag} × inner: element a of `inner`
/// becomes encode_pair(tag, a). Copies with different tags have disjoint
/// universes.
class TaggedCopy {
public:
    TaggedCopy(Code tag, Presentation inner);

    Code tag() const { return tag_; }
    const Presentation& inner() const { return inner_; }
    /// The tagged structure itself.
    const Presentation& presentation() const { return tagged_; }

    Code code(Code a) const { return encode_pair(tag_, a); }
    /// The inner code of `c`, if `c` carries this copy's tag.
    std::optional<Code> untag(Code c) const;

private:
    Code tag_;
    Presentation inner_;
    Presentation tagged_;
};

/// The transport map ⟨from, a⟩ ↦ ⟨to, a⟩, computable uniformly in both
/// tags. Throws TagMismatch on codes that do not carry the expected tag.
LazyIso transport(Code from_tag, Code to_tag);

/// The same inner presentation under `new_tag`, with the transport from
/// `src` onto it.
std::pair<TaggedCopy, LazyIso> retag_copy(const TaggedCopy& src, Code new_tag);

/// A computable permutation of the codes.
struct CodePermutation {
    std::string name;
    std::function<Code(Code)> forward;
    std::function<Code(Code)> backward;
};

/// Rotation by `shift` inside consecutive blocks of `block` codes:
/// c ↦ block·⌊c/block⌋ + (c mod block + shift) mod block.
CodePermutation block_rotation(Code block, Code shift);

/// The copy of `p` whose code π(c) plays the role of c. The permutation is
/// an isomorphism p → permuted_copy(p, π).
Presentation permuted_copy(const Presentation& p, const CodePermutation& perm);

LazyIso as_iso(const CodePermutation& perm);

} // namespace compstruct

#pragma once

#include "compstruct/lazy_iso.hpp"
#include "compstruct/presentation.hpp"
#include "compstruct/tagged.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace compstruct {

/// A uniformly computable family of tagged copies indexed by the base
/// universe: member(x) carries tag x. `signature` is the common component
/// language (the union of the members' languages).
struct UniformFamily {
    std::function<bool(Code)> index_contains;
    std::function<TaggedCopy(Code)> member;
    Signature signature;
};

/// Where a composite code lives.
struct CompositeCode {
    bool is_base = true;
    /// The base point, or the base point owning the component element.
    Code point = 0;
    /// Inner code within the component (unused for base points).
    Code inner = 0;
};

/// The composition S[𝐀].
///
/// Codes: base point x ↦ encode_pair(0, x); component element a of the
/// member at x ↦ encode_pair(1, encode_pair(x, a)).
/// Signature layout: family 0 is μ, base families follow from 1, component
/// families follow the base families.
///
/// Relations: μ(x, x) for base points and μ(z, x) for z in the member at x;
/// base facts among base points; component facts inside one member;
/// nothing else.
class CompositeStructure {
public:
    static constexpr std::uint32_t kMu = 0;

    CompositeStructure(Presentation base, UniformFamily family);

    const Presentation& base() const;
    const UniformFamily& family() const;
    const Presentation& combined() const;

    /// Member at a base point. Throws InvariantViolation when the family's
    /// index predicate disagrees with the base universe at `x`, and
    /// std::invalid_argument when `x` is not a base point.
    TaggedCopy member(Code x) const;

    std::uint32_t base_family_offset() const { return 1; }
    std::uint32_t component_family_offset() const;
    static Symbol mu() { return Symbol{kMu, 0}; }
    Symbol base_symbol(Symbol s) const { return {s.family + 1, s.index}; }
    Symbol component_symbol(Symbol s) const { return {s.family + component_family_offset(), s.index}; }

    static Code base_code(Code x) { return encode_pair(0, x); }
    /// From a member code encode_pair(x, a).
    static Code component_code(Code member_code) { return encode_pair(1, member_code); }
    static Code component_code(Code x, Code a) { return encode_pair(1, encode_pair(x, a)); }
    /// nullopt for codes outside the composite coding.
    static std::optional<CompositeCode> decode(Code z);

    /// Composite codes of the base points and the first `per_component`
    /// elements of each member.
    std::vector<Code> truncation_elements(const std::vector<Code>& base_points, std::size_t per_component) const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

CompositeStructure compose(Presentation base, UniformFamily family);

/// μ(z) for a composite built by `compose`: decoded directly.
Code mu_target(const CompositeStructure& c, Code z);

/// μ(z) in an arbitrary presentation promised to be a composite copy with μ
/// as family 0: searched through the universe. Throws FuelExhausted when
/// no target is found within the budget.
Code mu_target(const Presentation& p, Code z, Fuel& fuel);

struct Decomposition {
    Presentation base;
    UniformFamily family;
};

/// Splits a composite copy into base and family. The base universe is the
/// set of μ-self-looped points; the member at g has universe
/// {b : μ(b, g), b ≠ g}, keeping the codes of `p` (tagged by g). The first
/// `base_family_count` non-μ families belong to the base, the rest to the
/// components. Membership queries that expose a point with two outgoing
/// μ-edges raise InvariantViolation.
Decomposition decompose(const Presentation& p, std::size_t base_family_count);

/// The μ-target of `z` in a decomposed copy; InvariantViolation when none
/// is found within the budget or a second one appears within `window`
/// further universe elements.
Code owner_in_copy(const Presentation& p, Code z, Fuel& fuel, std::size_t window = 64);

using ComponentIsos = std::function<LazyIso(Code)>;

/// ρ = θ ∪ ⋃ ψ_x. θ maps base codes of the first composite to base codes of
/// the second; ψ(x) maps member codes encode_pair(x, a) onto member codes
/// encode_pair(θ(x), b). Throws TagMismatch when ψ(x) lands on another tag.
LazyIso glue_iso(LazyIso theta, ComponentIsos psi);

struct SplitIso {
    LazyIso theta;
    ComponentIsos psi;
};

/// θ := ρ restricted to base points, ψ(x) := ρ restricted to the member at
/// x. Violations (a base point sent to a component element, or a member
/// sent outside the member at θ(x)) are detected lazily per query.
SplitIso split_iso(const LazyIso& rho, const CompositeStructure& c1, const CompositeStructure& c2);

/// The directed path of structures A_0 → A_1 → ... → A_{n-1}.
CompositeStructure build_path_composite(const std::vector<Presentation>& components);

/// The three-point digraph of `figure1_base` with (ω,<) at 0 and 1 and
/// (ℤ,<) at 2.
CompositeStructure figure1_composite();
/// One base point carrying one point, empty languages.
CompositeStructure minimal_composite();

/// A composite over a finite base restricted to its base points and the
/// first `per_component` elements of each member, with every symbol of the
/// (finite) combined signature.
FinitePresentation composite_truncation(const CompositeStructure& c, std::size_t per_component);

} // namespace compstruct

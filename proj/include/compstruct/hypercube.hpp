#pragma once

#include "compstruct/error.hpp"
#include "compstruct/isomorphism.hpp"
#include "compstruct/lazy_iso.hpp"
#include "compstruct/presentation.hpp"
#include "compstruct/tagged.hpp"

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace compstruct::hypercube {

/// A finite subset of {0, ..., kMaxElement}, stored as a bitmask.
class FinSet {
public:
    static constexpr unsigned kMaxElement = 62;

    constexpr FinSet() = default;
    FinSet(std::initializer_list<unsigned> elements);
    static FinSet from_mask(std::uint64_t mask);
    static FinSet from_elements(const std::vector<unsigned>& elements);

    std::uint64_t mask() const { return mask_; }
    bool contains(std::uint64_t i) const { return i <= kMaxElement && ((mask_ >> i) & 1U); }
    /// X(i) as 0/1.
    unsigned bit(std::uint64_t i) const { return contains(i) ? 1U : 0U; }
    std::size_t size() const;
    bool empty() const { return mask_ == 0; }
    std::vector<unsigned> elements() const;
    std::optional<unsigned> min() const;

    FinSet symmetric_difference(FinSet other) const { return from_mask(mask_ ^ other.mask_); }
    FinSet with(unsigned i) const;

    /// "{}", "{0,2}".
    std::string to_string() const;

    auto operator<=>(const FinSet&) const = default;

private:
    std::uint64_t mask_ = 0;
};

/// An element of ℋ: a vertex (finite set) or a face label (i, a).
///
/// Canonical code: Vertex(S) ↦ 2·Σ_{i∈S} 2^i, Face(i, a) ↦ 2·(2i + a) + 1.
/// Vertices take the even codes and faces the odd ones; every natural
/// number is the code of exactly one element.
class HElement {
public:
    static HElement vertex(FinSet s) { return HElement(true, s, 0, 0); }
    static HElement face(std::uint64_t i, unsigned a);
    static HElement decode(Code c);

    bool is_vertex() const { return is_vertex_; }
    bool is_face() const { return !is_vertex_; }
    FinSet set() const;
    std::uint64_t index() const;
    unsigned bit() const;

    Code code() const;
    /// "{0,1}" or "(2,1)".
    std::string to_string() const;

    auto operator<=>(const HElement&) const = default;

private:
    HElement(bool v, FinSet s, std::uint64_t i, unsigned a) : is_vertex_(v), set_(s), index_(i), bit_(a) {}

    bool is_vertex_;
    FinSet set_;
    std::uint64_t index_;
    unsigned bit_;
};

/// Family 0 of ℋ's signature.
inline Symbol E(std::uint64_t i) { return {0, i}; }
/// Family 1 of ℋ's signature.
inline Symbol D(std::uint64_t i) { return {1, i}; }

/// E_i(x, y): both vertices and x △ y = {i}.
bool h_e_rel(std::uint64_t i, const HElement& x, const HElement& y);
/// D_i(x, f): x a vertex, f = (i, a) and x(i) = a.
bool h_d_rel(std::uint64_t i, const HElement& x, const HElement& f);

/// h_X: vertices Y ↦ X △ Y, faces (i, a) ↦ (i, a + X(i) mod 2).
HElement h_apply(FinSet x, const HElement& z);
/// h_X ∘ h_Y = h_{X △ Y}.
FinSet h_compose(FinSet x, FinSet y);
/// h_X as a bijection on canonical codes.
LazyIso h_iso(FinSet x);

/// The structure ℋ on canonical codes. E is undirected, D directed; both
/// families are infinite.
Presentation hypercube();

/// Elements of the depth-n truncation in code order: vertices ⊆ {0..n-1}
/// and faces (i, a) with i < n.
std::vector<Code> truncation_elements(unsigned n);
/// Symbols E_i, D_i for i < n.
std::vector<Symbol> truncation_symbols(unsigned n);
/// The depth-n truncation with E_i, D_i for i < n.
FinitePresentation truncation(unsigned n);

constexpr unsigned kDefaultBruteForceLimit = 4;

/// All automorphisms of the depth-n truncation, by brute-force search.
/// Throws LimitExceeded when n exceeds `limit`.
std::vector<Bijection> enumerate_automorphisms_finite(unsigned n, unsigned limit = kDefaultBruteForceLimit);

/// The X ⊆ {0..n-1} with h_X equal to `f` pointwise, if there is one.
std::optional<FinSet> match_h(const Bijection& f, unsigned n);

struct Role {
    bool is_vertex = true;
    /// Face index when !is_vertex.
    std::uint64_t face_index = 0;

    bool operator==(const Role&) const = default;
};

/// Decides whether `g` plays the role of a vertex or of a face in a copy
/// of ℋ by dovetailing two searches over the copy's enumeration: an
/// outgoing D_0-edge (vertex) and an incoming D_j-edge (face j). Index j
/// joins the search once 2^j elements have been enumerated.
Role classify_element(const Presentation& copy, Code g, Fuel& fuel);

struct RecoveryOptions {
    /// Budget for each top-level apply/inverse query.
    std::uint64_t fuel_per_query = 100'000;
    /// After a search finds a candidate, this many further universe
    /// elements are checked for a second one.
    std::size_t uniqueness_window = 32;
};

struct RecoveryStats {
    std::uint64_t queries = 0;
    std::uint64_t total_fuel = 0;
    std::uint64_t max_fuel_per_query = 0;
};

/// The isomorphism f : ℋ → copy with f(∅) = image_of_empty, built lazily.
///
/// f(Z) walks E-edges from f(∅), adding the elements of Z in increasing
/// order; f(i, 0) is the D_i-successor of f(∅) and f(i, 1) the
/// D_i-successor of f({i}). Vertex images are memoized by path from ∅, so
/// shared prefixes are walked once. Throws FuelExhausted when a query
/// exceeds its budget and InvariantViolation when a search finds two
/// candidates. `stats`, when given, is updated after every query.
LazyIso recover_iso(const Presentation& copy, Code image_of_empty, RecoveryOptions options = {},
                    std::shared_ptr<RecoveryStats> stats = nullptr);

/// The documented scrambling permutations: block rotations rot-3-1,
/// rot-7-3 and rot-16-5.
std::vector<CodePermutation> standard_permutations();
/// One of the standard permutations by name; std::invalid_argument if
/// unknown.
CodePermutation permutation_by_name(const std::string& name);

/// ℋ with codes relabelled by `perm`; `perm` is the isomorphism ℋ → copy.
Presentation scrambled_copy(const CodePermutation& perm);

/// DOT drawing of the depth-n truncation (E_i undirected, D_i arrows).
std::string truncation_dot(unsigned n);

} // namespace compstruct::hypercube

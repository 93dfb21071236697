#pragma once

#include "compstruct/composite.hpp"
#include "compstruct/hypercube.hpp"
#include "compstruct/oracle.hpp"
#include "compstruct/orders.hpp"

#include <functional>
#include <string>
#include <vector>

namespace compstruct::spectra {

/// Two uniformly computable families with A(i) ≅ B(i) for every i, over a
/// common component signature.
struct FamilyPair {
    std::function<Presentation(std::uint64_t)> A;
    std::function<Presentation(std::uint64_t)> B;
    Signature signature;
};

enum class Side { A, B };

struct Selection {
    Side side = Side::A;
    std::uint64_t index = 0;

    bool operator==(const Selection&) const = default;
    /// "A_0", "B_3".
    std::string to_string() const;
};

/// Component carried by M at z: faces (i,0) take A_{i+1}, faces (i,1) take
/// B_{i+1}, a vertex X takes A_0 when |X| is even and B_0 when odd.
Selection select_M(const hypercube::HElement& z);
/// Component carried by N at z: faces as in M, vertices with the parity
/// rule reversed.
Selection select_N(const hypercube::HElement& z);

struct MN {
    CompositeStructure M;
    CompositeStructure N;
};

/// M = ℋ[{z} × M_z] and N = ℋ[{z} × N_z].
MN build_MN(const FamilyPair& fp);

/// θ̂: ⟨from, a⟩ ↦ ⟨to, θ(a)⟩.
LazyIso hat(const LazyIso& theta, Code from_tag, Code to_tag);

/// An isomorphism M → N from θ : A_0 ≅ B_0, acting as the identity on ℋ.
/// Component maps: identity on faces, β_{∅,Y} ∘ θ̂ ∘ α_{Y,∅} on even
/// vertices, α_{∅,Y} ∘ θ̂⁻¹ ∘ β_{Y,∅} on odd vertices. Every evaluation
/// makes at most one query to `theta`; the family pair is never consulted.
LazyIso lift_iso_base(const OracleSession& theta, const FamilyPair& fp);

/// An isomorphism M → N from θ : A_{i+1} ≅ B_{i+1}, acting as h_{{i}} on
/// ℋ: θ̂ on the face (i,0), θ̂⁻¹ on (i,1), identity on other faces, and
/// pure transports between Y and Y △ {i} on vertices.
LazyIso lift_iso_face(std::uint64_t i, const OracleSession& theta, const FamilyPair& fp);

struct ExtractedIso {
    /// n with θ : A_n ≅ B_n.
    std::uint64_t index = 0;
    /// The X with ρ acting as h_X on ℋ.
    hypercube::FinSet reflection;
    LazyIso theta;
};

/// From an isomorphism ρ : M → N, an isomorphism θ : A_n ≅ B_n evaluated
/// through `rho` only. X is read from ρ's action at ∅. If X = ∅ the result
/// is ρ on the ∅-component (n = 0); otherwise, for i = min X, ρ on the
/// (i,0)-component, which ρ sends onto the (i,1)-component (n = i + 1).
ExtractedIso extract_component_iso(const OracleSession& rho, const FamilyPair& fp);

/// μ, E_i and D_i for i < depth, and every component symbol.
std::vector<Symbol> truncation_symbols(const CompositeStructure& c, unsigned depth);
/// Depth-`depth` part of ℋ and the first `per_component` elements of each
/// component there.
std::vector<Code> truncation_elements(const CompositeStructure& c, unsigned depth, std::size_t per_component);

/// A = (ω,<) everywhere and B_n = (ω, <_{X_{n mod L}}) for the L given
/// enumerations.
FamilyPair order_family_pair(const std::vector<orders::CEEnumeration>& enumerations);

struct DemoOptions {
    unsigned depth = 2;
    Code decode_bound = 25;
    std::size_t per_component = 3;
    unsigned jobs = 1;
};

struct DemoRow {
    std::size_t n = 0;
    std::string set;
    /// "base" for n = 0, "face-i" for n = i + 1.
    std::string route;
    unsigned validation_depth = 0;
    bool validated = false;
    std::string violation;
    std::uint64_t extracted_index = 0;
    bool index_match = false;
    bool decode_match = false;
    /// The lift consulted only θ, the iso only the X-oracle, and the
    /// extracted map only ρ.
    bool discipline = false;
    std::vector<Code> decoded;
    std::size_t x_queries = 0;
    std::size_t theta_queries = 0;
    std::size_t rho_queries = 0;

    bool ok() const { return validated && index_match && decode_match && discipline; }
};

struct DemoReport {
    std::vector<DemoRow> rows;

    bool ok() const;
    std::string to_text() const;
    /// One JSON object per row per line.
    std::string to_json_lines() const;
};

/// For each n < L: lifts the unique isomorphism f_n : A_n ≅ B_n (built from
/// an X_n-oracle) to ρ : M ≅ N (row 0 through the base lift, row n ≥ 1
/// through the face lift at n - 1), validates ρ on a truncation, extracts
/// a component isomorphism back out of ρ, and decodes X_n from it. The sets
/// must be distinct; two enumerations agreeing on every k < 1000 are
/// rejected with std::invalid_argument.
DemoReport union_spectrum_demo(const std::vector<orders::CEEnumeration>& enumerations, DemoOptions options = {});

} // namespace compstruct::spectra

#pragma once

#include "compstruct/composite.hpp"
#include "compstruct/hypercube.hpp"
#include "compstruct/oracle.hpp"

#include <functional>
#include <vector>

namespace compstruct::categoricity {

/// i ↦ an isomorphism.
using IsoFamily = std::function<LazyIso(std::uint64_t)>;
using IndexedStructures = std::function<Presentation(std::uint64_t)>;
using PlacedStructures = std::function<Presentation(const hypercube::HElement&)>;

/// α(X) = 0 for vertices, α(i, a) = i + 1 for faces.
std::uint64_t alpha(const hypercube::HElement& z);

/// A fixed computable bijection ω → H: 2k ↦ the k-th vertex and 2k + 1 ↦
/// the k-th face, both in code order. On canonical codes it is the identity.
hypercube::HElement eta(std::uint64_t n);
std::uint64_t eta_inverse(const hypercube::HElement& z);

/// ℋ[A]: every point carries {z} × A.
CompositeStructure h_of(const Presentation& a);
/// ℋ[{z} × C_{α(z)}].
CompositeStructure alpha_assembled(IndexedStructures c);
/// ℋ[B_z : z ∈ H].
CompositeStructure placed(PlacedStructures b);

/// The isomorphism ℋ[A] → ℋ[{z} × C_{α(z)}] acting as h_X on ℋ and as g_{α(z)}
/// from the component at z to the component at h_X(z).
LazyIso assemble(hypercube::FinSet x, IsoFamily g);

/// From ρ : ℋ[A] ≅ ℋ[{z} × C_{α(z)}], the maps h(i) : A ≅ C_i. X is read
/// from ρ at ∅; h(0)(a) = π₂ ρ(∅, a) and h(i+1)(a) = π₂ ρ((i,0), a). Every
/// evaluation goes through `rho`. Images outside C_i, or outside the
/// component ρ must land in, raise InvariantViolation.
IsoFamily uniformize(const OracleSession& rho, IndexedStructures c);

/// From h(i) : A ≅ B_{η(i)}, the isomorphism ℋ[A] → ℋ[B_z] with ρ(z) = z
/// and ρ(z, a) = (z, h(η⁻¹(z))(a)). Images outside B_z raise
/// InvariantViolation when evaluated.
LazyIso deuniformize(IsoFamily h, PlacedStructures b);

} // namespace compstruct::categoricity

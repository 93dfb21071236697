#pragma once

#include "compstruct/lazy_iso.hpp"
#include "compstruct/oracle.hpp"
#include "compstruct/presentation.hpp"

#include <functional>
#include <string>
#include <vector>

namespace compstruct::orders {

/// A fixed computable enumeration n ↦ x_n of an infinite set X. It must be
/// total and injective.
///
/// `member` decides X. It is never consulted by the order or by the
/// reductions; it only backs the X-oracle handed to them, standing in for
/// an oracle that is not computable in general.
struct CEEnumeration {
    std::string name;
    std::function<Code(Code)> at;
    std::function<bool(Code)> member;
};

/// x_n = 2n.
CEEnumeration evens();
/// x_n = n².
CEEnumeration squares();
/// x_n = the n-th prime (x_0 = 2).
CEEnumeration primes();
/// "evens", "squares" or "primes"; std::invalid_argument otherwise.
CEEnumeration by_name(const std::string& name);

/// Rejects enumerations with a repeated value among the first `prefix`
/// terms (a repeat would put two odd elements into one gap of the order).
void validate(const CEEnumeration& e, std::size_t prefix = 1000);

/// The order <_X on ω:
///   2n <_X 2m      iff n < m
///   2n+1 <_X 2m    iff x_n < m
///   2m <_X 2n+1    iff m ≤ x_n
///   2n+1 <_X 2m+1  iff x_n < x_m
/// so each odd 2n+1 sits immediately after 2x_n.
bool less_x(const CEEnumeration& e, Code a, Code b);

/// (ω, <_X) as a presentation; family 0 is `<`.
Presentation order_x(const CEEnumeration& e);

/// The unique isomorphism f : (ω, <) → (ω, <_X), computed with membership
/// queries to `x_oracle`. f(n) needs queries about k ≤ n only; f⁻¹(2m)
/// about k < m, and f⁻¹(2n+1) about k ≤ x_n.
LazyIso unique_iso_to_orderX(const CEEnumeration& e, const OracleSession& x_oracle);

/// k ∈ X iff f⁻¹(2k+2) = f⁻¹(2k) + 2, using two `inverse` queries to the
/// isomorphism oracle.
bool decode_x_from_iso(const OracleSession& f_oracle, Code k);

/// f(0), ..., f(n-1) for the unique isomorphism, i.e. the first n elements
/// of (ω, <_X) in order. Uses a private membership oracle.
std::vector<Code> order_prefix(const CEEnumeration& e, std::size_t n);

} // namespace compstruct::orders

#pragma once

#include "compstruct/lazy_iso.hpp"
#include "compstruct/presentation.hpp"

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace compstruct {

/// A finite map given by parallel domain and image lists.
struct Bijection {
    std::vector<Code> domain;
    std::vector<Code> image;

    /// Throws std::out_of_range for codes outside the domain.
    Code at(Code x) const;
    Bijection inverse() const;

    auto operator<=>(const Bijection&) const = default;
};

/// Every relation-preserving bijection between two finite presentations
/// over the same symbol list, found by backtracking over partial maps with
/// fact-consistency pruning. Results come in lexicographic order of the
/// image sequence (domain in increasing code order). Stops after `limit`
/// results.
std::vector<Bijection> brute_force_isomorphisms(const FinitePresentation& a, const FinitePresentation& b,
                                                std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Whether `f` is a bijection a → b that preserves and reflects every fact
/// of every listed symbol. Checked tuple by tuple.
bool is_isomorphism(const FinitePresentation& a, const FinitePresentation& b, const Bijection& f);

/// Checks a lazily given map on a finite sample: `f` must be injective on
/// `elements`, send them into the universe of `dst`, and preserve and
/// reflect every symbol in `symbols` on every tuple over `elements`.
/// Returns a description of the first failure, or nullopt.
std::optional<std::string> find_fact_violation(const Presentation& src, const Presentation& dst, const LazyIso& f,
                                               const std::vector<Code>& elements, const std::vector<Symbol>& symbols);

} // namespace compstruct

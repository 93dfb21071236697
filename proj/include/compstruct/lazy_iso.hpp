#pragma once

#include "compstruct/pairing.hpp"

#include <functional>
#include <memory>
#include <string>

namespace compstruct {

/// A query-driven bijection between two presentations, evaluated pointwise
/// and memoized.
///
/// Copies share one memo table, so every holder observes a single
/// consistent bijection: once apply(x) = y is recorded, inverse_apply(y)
/// answers x without consulting the backward map, and a later evaluation
/// that disagrees raises InvariantViolation. Safe for concurrent queries.
class LazyIso {
public:
    using Map = std::function<Code(Code)>;

    LazyIso(Map forward, Map backward, std::string name = "iso");

    static LazyIso identity();

    Code apply(Code x) const;
    Code inverse_apply(Code y) const;
    Code operator()(Code x) const { return apply(x); }

    /// The inverse bijection. Shares this map's memo table.
    LazyIso inverse() const;

    const std::string& name() const;
    /// Number of memoized pairs.
    std::size_t memo_size() const;

private:
    struct State;
    LazyIso(std::shared_ptr<State> state, bool flipped);

    std::shared_ptr<State> state_;
    bool flipped_ = false;
};

/// outer ∘ inner.
LazyIso compose(const LazyIso& outer, const LazyIso& inner);

} // namespace compstruct

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace compstruct {

/// Raised when a semi-decidable search runs out of its query budget.
class FuelExhausted : public std::runtime_error {
public:
    explicit FuelExhausted(const std::string& what)
        : std::runtime_error("fuel exhausted: " + what) {}
};

/// Raised when a promise about the input (composite copy, copy of the
/// hypercube, genuine isomorphism) is observed to be false.
class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what)
        : std::runtime_error("invariant violation: " + what) {}
};

/// A glued isomorphism whose component map lands on the wrong tag.
class TagMismatch : public std::runtime_error {
public:
    explicit TagMismatch(const std::string& what)
        : std::runtime_error("tag mismatch: " + what) {}
};

class LimitExceeded : public std::runtime_error {
public:
    explicit LimitExceeded(const std::string& what)
        : std::runtime_error("limit exceeded: " + what) {}
};

/// Query budget shared by a search. Every evaluator call charged against
/// it costs one unit.
class Fuel {
public:
    static constexpr std::uint64_t kDefault = 1'000'000;

    explicit Fuel(std::uint64_t budget = kDefault) : budget_(budget) {}

    void spend(const char* context, std::uint64_t amount = 1)
    {
        if (amount > budget_ - used_) {
            used_ = budget_;
            throw FuelExhausted(context);
        }
        used_ += amount;
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t budget() const { return budget_; }
    std::uint64_t remaining() const { return budget_ - used_; }

private:
    std::uint64_t budget_;
    std::uint64_t used_ = 0;
};

} // namespace compstruct

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace compstruct {

/// A relation symbol in an indexed family: `R<family>.<index>`.
/// Structures with infinitely many relations (E_i, D_i for all i) use one
/// family per relation kind and the index for i.
struct Symbol {
    std::uint32_t family = 0;
    std::uint64_t index = 0;

    auto operator<=>(const Symbol&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Symbol& s);

struct RelationFamily {
    std::string name;
    std::size_t arity = 2;
    /// Number of members, or nullopt for an infinite family.
    std::optional<std::uint64_t> count = 1;
    /// Only meaningful for binary families; used by DOT export.
    bool directed = true;
};

/// A relational signature given as a list of symbol families. Lookup of a
/// symbol is total: symbols outside the signature report no arity.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<RelationFamily> families);

    const std::vector<RelationFamily>& families() const { return families_; }
    std::size_t family_count() const { return families_.size(); }
    const RelationFamily& family(std::uint32_t f) const;

    bool contains(Symbol s) const;
    /// Arity of `s`, or nullopt when `s` is not a symbol of this signature.
    std::optional<std::size_t> arity(Symbol s) const;

    bool finite() const;
    /// All symbols of a finite signature. Throws FuelExhausted for an
    /// infinite signature, since those cannot be dumped without a prefix.
    std::vector<Symbol> symbols() const;
    /// Symbols with index < `per_family` in every family.
    std::vector<Symbol> prefix(std::uint64_t per_family) const;

    /// Appends the families of `other`, returning the family offset at which
    /// they start.
    std::uint32_t append(const Signature& other);

    /// Positionwise union of two signatures; families present in both must
    /// agree on arity.
    static Signature merge(const Signature& a, const Signature& b);

    bool operator==(const Signature&) const;

private:
    std::vector<RelationFamily> families_;
};

} // namespace compstruct

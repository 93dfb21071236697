#pragma once

#include "compstruct/error.hpp"
#include "compstruct/pairing.hpp"
#include "compstruct/signature.hpp"

#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace compstruct {

using Tuple = std::span<const Code>;

/// A lazily evaluated relational structure over natural-number codes.
///
/// The universe is decidable (`contains`) and enumerable in increasing code
/// order (`next_from`, `first`). Relations are evaluated on demand. The
/// wrapper guarantees that `holds` rejects tuples of the wrong arity and
/// answers false on tuples leaving the universe, so callers never see the
/// raw evaluator on out-of-universe codes.
///
/// Presentations are cheap handles: copies share the same evaluators.
class Presentation {
public:
    struct Parts {
        std::string name;
        Signature signature;
        std::function<bool(Code)> contains;
        /// Called only on symbols of the signature, with correctly sized
        /// tuples of universe codes.
        std::function<bool(Symbol, Tuple)> holds;
        /// Sorted universe, when it is finite.
        std::optional<std::vector<Code>> finite_universe;
        /// Optional fast enumerator: smallest universe code >= c. When
        /// absent, enumeration scans codes upward through `contains`.
        std::function<std::optional<Code>(Code)> next_from;
    };

    explicit Presentation(Parts parts);

    const std::string& name() const { return parts_->name; }
    const Signature& signature() const { return parts_->signature; }

    bool contains(Code c) const;

    /// Throws std::invalid_argument when the tuple length does not match
    /// the symbol's arity. False for symbols outside the signature and for
    /// tuples with a non-universe code.
    bool holds(Symbol s, Tuple args) const;
    bool holds(Symbol s, std::initializer_list<Code> args) const
    {
        return holds(s, Tuple(args.begin(), args.size()));
    }

    bool is_finite() const { return parts_->finite_universe.has_value(); }
    /// Null for infinite universes.
    const std::vector<Code>* finite_universe() const;

    /// Smallest universe code >= c, or nullopt if there is none. Scanning
    /// charges one unit of fuel per code examined; without a fuel argument
    /// a fresh default budget is used.
    std::optional<Code> next_from(Code c, Fuel* fuel = nullptr) const;

    /// The first `n` codes of the universe in increasing order (fewer if the
    /// universe is smaller).
    std::vector<Code> first(std::size_t n, Fuel* fuel = nullptr) const;

private:
    std::shared_ptr<const Parts> parts_;
};

struct Fact {
    Symbol symbol;
    std::vector<Code> args;

    auto operator<=>(const Fact&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Fact& f);

/// An explicit finite structure: the truncation target for brute-force
/// checks. Facts are recorded for the listed symbols only; a symbol in
/// `symbols()` with no fact on a tuple is false there.
class FinitePresentation {
public:
    FinitePresentation() = default;
    /// Elements are sorted and deduplicated. Throws std::invalid_argument
    /// if a fact mentions a non-element, an unlisted symbol, or has the
    /// wrong arity.
    FinitePresentation(Signature signature, std::vector<Symbol> symbols, std::vector<Code> elements,
                       std::set<Fact> facts);

    const Signature& signature() const { return signature_; }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    const std::vector<Code>& elements() const { return elements_; }
    const std::set<Fact>& facts() const { return facts_; }
    std::size_t size() const { return elements_.size(); }

    bool contains(Code c) const;
    bool holds(Symbol s, Tuple args) const;
    bool holds(Symbol s, std::initializer_list<Code> args) const
    {
        return holds(s, Tuple(args.begin(), args.size()));
    }

    /// Facts restricted to one symbol.
    std::vector<Fact> facts_of(Symbol s) const;

    /// View as a lazy presentation.
    Presentation presentation(std::string name = "finite") const;

    bool operator==(const FinitePresentation& other) const;

private:
    Signature signature_;
    std::vector<Symbol> symbols_;
    std::vector<Code> elements_;
    std::set<Fact> facts_;
};

/// Truncation to the first `bound` codes of the universe. Facts are taken
/// over every tuple of elements for each symbol in `symbols`; when no
/// prefix is given the signature must be finite.
FinitePresentation restrict_to_finite(const Presentation& p, std::size_t bound,
                                      std::optional<std::vector<Symbol>> symbols = std::nullopt,
                                      Fuel* fuel = nullptr);

/// Substructure on an explicit element list. Codes outside the universe of
/// `p` are rejected with std::invalid_argument.
FinitePresentation induced_substructure(const Presentation& p, std::vector<Code> elements,
                                        std::optional<std::vector<Symbol>> symbols = std::nullopt);

/// Line format:
///
///     elements: 0 1 2
///     R0.0(0,1)
///     R0.0(0,2)
///
/// Fact lines are sorted by (family, index, argument codes) compared
/// numerically. An empty structure prints `elements:` with nothing after.
std::string to_text(const FinitePresentation& f);

/// Parses `to_text` output. The signature and symbol list are inferred from
/// the facts present (families as seen, arity from the first fact of each
/// family), merged with `symbols` when given.
FinitePresentation from_text(std::string_view text, const std::vector<Symbol>& symbols = {});

struct DotOptions {
    std::string graph_name = "structure";
    /// Element label; defaults to the decimal code.
    std::function<std::string(Code)> label;
    /// Families to omit from the drawing.
    std::set<std::uint32_t> hidden_families;
    /// Omit self-loops (the composite convention draws none for mu).
    bool hide_self_loops = false;
};

/// DOT export of the binary facts. Undirected families are drawn once per
/// unordered pair with `dir=none`. Edge color cycles through a fixed
/// palette by symbol index; the family name and index label each edge.
std::string to_dot(const FinitePresentation& f, const DotOptions& options = {});

} // namespace compstruct

#include "compstruct/presentation.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>

namespace compstruct {

Presentation::Presentation(Parts parts) : parts_(std::make_shared<const Parts>(std::move(parts)))
{
    if (!parts_->contains || !parts_->holds)
        throw std::invalid_argument("presentation '" + parts_->name + "' is missing an evaluator");
}

bool Presentation::contains(Code c) const
{
    return parts_->contains(c);
}

bool Presentation::holds(Symbol s, Tuple args) const
{
    const auto arity = parts_->signature.arity(s);
    if (!arity)
        return false;
    if (*arity != args.size()) {
        std::ostringstream msg;
        msg << "symbol " << s << " has arity " << *arity << ", got a tuple of length " << args.size();
        throw std::invalid_argument(msg.str());
    }
    for (auto c : args)
        if (!parts_->contains(c))
            return false;
    return parts_->holds(s, args);
}

const std::vector<Code>* Presentation::finite_universe() const
{
    return parts_->finite_universe ? &*parts_->finite_universe : nullptr;
}

std::optional<Code> Presentation::next_from(Code c, Fuel* fuel) const
{
    if (parts_->finite_universe) {
        const auto& u = *parts_->finite_universe;
        auto it = std::lower_bound(u.begin(), u.end(), c);
        if (it == u.end())
            return std::nullopt;
        return *it;
    }
    if (parts_->next_from)
        return parts_->next_from(c);

    Fuel local;
    Fuel& budget = fuel ? *fuel : local;
    for (Code x = c;; ++x) {
        budget.spend("universe scan");
        if (parts_->contains(x))
            return x;
        if (x == UINT64_MAX)
            return std::nullopt;
    }
}

std::vector<Code> Presentation::first(std::size_t n, Fuel* fuel) const
{
    std::vector<Code> out;
    out.reserve(n);
    Code from = 0;
    while (out.size() < n) {
        auto next = next_from(from, fuel);
        if (!next)
            break;
        out.push_back(*next);
        if (*next == UINT64_MAX)
            break;
        from = *next + 1;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Fact& f)
{
    os << f.symbol << '(';
    for (std::size_t i = 0; i < f.args.size(); ++i)
        os << (i ? "," : "") << f.args[i];
    return os << ')';
}

FinitePresentation::FinitePresentation(Signature signature, std::vector<Symbol> symbols,
                                       std::vector<Code> elements, std::set<Fact> facts)
    : signature_(std::move(signature)), symbols_(std::move(symbols)), elements_(std::move(elements)),
      facts_(std::move(facts))
{
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    std::sort(symbols_.begin(), symbols_.end());
    symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());

    for (const auto& s : symbols_)
        if (!signature_.contains(s)) {
            std::ostringstream msg;
            msg << "symbol " << s << " is not in the signature";
            throw std::invalid_argument(msg.str());
        }
    for (const auto& f : facts_) {
        if (!std::binary_search(symbols_.begin(), symbols_.end(), f.symbol)) {
            std::ostringstream msg;
            msg << "fact " << f << " uses an unlisted symbol";
            throw std::invalid_argument(msg.str());
        }
        if (signature_.arity(f.symbol) != f.args.size()) {
            std::ostringstream msg;
            msg << "fact " << f << " has the wrong arity";
            throw std::invalid_argument(msg.str());
        }
        for (auto c : f.args)
            if (!contains(c)) {
                std::ostringstream msg;
                msg << "fact " << f << " mentions non-element " << c;
                throw std::invalid_argument(msg.str());
            }
    }
}

bool FinitePresentation::contains(Code c) const
{
    return std::binary_search(elements_.begin(), elements_.end(), c);
}

bool FinitePresentation::holds(Symbol s, Tuple args) const
{
    const auto arity = signature_.arity(s);
    if (arity && *arity != args.size())
        throw std::invalid_argument("tuple length does not match the symbol's arity");
    return facts_.count(Fact{s, std::vector<Code>(args.begin(), args.end())}) != 0;
}

std::vector<Fact> FinitePresentation::facts_of(Symbol s) const
{
    std::vector<Fact> out;
    auto it = facts_.lower_bound(Fact{s, {}});
    for (; it != facts_.end() && it->symbol == s; ++it)
        out.push_back(*it);
    return out;
}

Presentation FinitePresentation::presentation(std::string name) const
{
    auto self = std::make_shared<FinitePresentation>(*this);
    Presentation::Parts parts;
    parts.name = std::move(name);
    parts.signature = signature_;
    parts.contains = [self](Code c) { return self->contains(c); };
    parts.holds = [self](Symbol s, Tuple t) { return self->holds(s, t); };
    parts.finite_universe = elements_;
    return Presentation(std::move(parts));
}

bool FinitePresentation::operator==(const FinitePresentation& other) const
{
    return signature_ == other.signature_ && symbols_ == other.symbols_ && elements_ == other.elements_
        && facts_ == other.facts_;
}

namespace {

std::vector<Symbol> resolve_symbols(const Presentation& p, std::optional<std::vector<Symbol>> symbols)
{
    if (symbols) {
        for (const auto& s : *symbols)
            if (!p.signature().contains(s)) {
                std::ostringstream msg;
                msg << "symbol " << s << " is not in the signature of " << p.name();
                throw std::invalid_argument(msg.str());
            }
        return std::move(*symbols);
    }
    return p.signature().symbols();
}

// Calls visit(tuple) for every tuple of the given arity over `elements`.
template <typename Visit>
void for_each_tuple(const std::vector<Code>& elements, std::size_t arity, Visit&& visit)
{
    if (elements.empty())
        return;
    std::vector<std::size_t> idx(arity, 0);
    std::vector<Code> tuple(arity, elements[0]);
    while (true) {
        visit(std::as_const(tuple));
        std::size_t pos = arity;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < elements.size()) {
                tuple[pos] = elements[idx[pos]];
                break;
            }
            idx[pos] = 0;
            tuple[pos] = elements[0];
            if (pos == 0)
                return;
        }
        if (arity == 0)
            return;
    }
}

FinitePresentation build_truncation(const Presentation& p, std::vector<Code> elements, std::vector<Symbol> symbols)
{
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    std::set<Fact> facts;
    for (const auto& s : symbols) {
        const auto arity = *p.signature().arity(s);
        for_each_tuple(elements, arity, [&](const std::vector<Code>& t) {
            if (p.holds(s, Tuple(t)))
                facts.insert(Fact{s, t});
        });
    }
    return FinitePresentation(p.signature(), std::move(symbols), std::move(elements), std::move(facts));
}

} // namespace

FinitePresentation restrict_to_finite(const Presentation& p, std::size_t bound,
                                      std::optional<std::vector<Symbol>> symbols, Fuel* fuel)
{
    if (bound == 0)
        throw std::invalid_argument("restrict_to_finite: bound must be at least 1");
    auto syms = resolve_symbols(p, std::move(symbols));
    return build_truncation(p, p.first(bound, fuel), std::move(syms));
}

FinitePresentation induced_substructure(const Presentation& p, std::vector<Code> elements,
                                        std::optional<std::vector<Symbol>> symbols)
{
    for (auto c : elements)
        if (!p.contains(c))
            throw std::invalid_argument("induced_substructure: code " + std::to_string(c) + " is not in the universe of "
                                        + p.name());
    auto syms = resolve_symbols(p, std::move(symbols));
    return build_truncation(p, std::move(elements), std::move(syms));
}

std::string to_text(const FinitePresentation& f)
{
    std::ostringstream out;
    out << "elements:";
    for (auto c : f.elements())
        out << ' ' << c;
    out << '\n';
    for (const auto& fact : f.facts())
        out << fact << '\n';
    return out.str();
}

namespace {

Code parse_code(std::string_view s)
{
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    Code v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed code '" + std::string(s) + "'");
    return v;
}

} // namespace

FinitePresentation from_text(std::string_view text, const std::vector<Symbol>& symbols)
{
    std::vector<Code> elements;
    std::set<Fact> facts;
    bool saw_header = false;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;

        if (!saw_header) {
            constexpr std::string_view head = "elements:";
            if (line.substr(0, head.size()) != head)
                throw std::invalid_argument("expected 'elements:' header");
            line.remove_prefix(head.size());
            std::size_t p = 0;
            while (p < line.size()) {
                while (p < line.size() && line[p] == ' ')
                    ++p;
                auto q = line.find(' ', p);
                if (q == std::string_view::npos)
                    q = line.size();
                if (q > p)
                    elements.push_back(parse_code(line.substr(p, q - p)));
                p = q;
            }
            saw_header = true;
            continue;
        }

        // R<family>.<index>(<codes>)
        const auto dot = line.find('.');
        const auto open = line.find('(');
        if (line.empty() || line[0] != 'R' || dot == std::string_view::npos || open == std::string_view::npos
            || line.back() != ')' || dot > open)
            throw std::invalid_argument("malformed fact line '" + std::string(line) + "'");
        Fact fact;
        fact.symbol.family = static_cast<std::uint32_t>(parse_code(line.substr(1, dot - 1)));
        fact.symbol.index = parse_code(line.substr(dot + 1, open - dot - 1));
        auto args = line.substr(open + 1, line.size() - open - 2);
        std::size_t p = 0;
        while (p <= args.size()) {
            auto q = args.find(',', p);
            if (q == std::string_view::npos)
                q = args.size();
            fact.args.push_back(parse_code(args.substr(p, q - p)));
            p = q + 1;
        }
        facts.insert(std::move(fact));
    }
    if (!saw_header)
        throw std::invalid_argument("expected 'elements:' header");

    std::map<std::uint32_t, std::size_t> arity;
    std::vector<Symbol> syms = symbols;
    for (const auto& f : facts) {
        auto [it, fresh] = arity.emplace(f.symbol.family, f.args.size());
        if (!fresh && it->second != f.args.size())
            throw std::invalid_argument("inconsistent arity in family " + std::to_string(f.symbol.family));
        syms.push_back(f.symbol);
    }
    std::uint32_t families = 0;
    for (const auto& s : syms)
        families = std::max(families, s.family + 1);
    std::vector<RelationFamily> fams(families);
    for (std::uint32_t f = 0; f < families; ++f) {
        fams[f].name = "R" + std::to_string(f);
        fams[f].count = std::nullopt;
        if (auto it = arity.find(f); it != arity.end())
            fams[f].arity = it->second;
    }
    return FinitePresentation(Signature(std::move(fams)), std::move(syms), std::move(elements), std::move(facts));
}

namespace {

constexpr std::string_view kPalette[] = {"red", "blue", "green", "orange", "purple", "brown", "magenta", "cyan"};

} // namespace

std::string to_dot(const FinitePresentation& f, const DotOptions& options)
{
    auto label = [&](Code c) { return options.label ? options.label(c) : std::to_string(c); };
    std::ostringstream out;
    out << "digraph \"" << options.graph_name << "\" {\n";
    for (auto c : f.elements())
        out << "  n" << c << " [label=\"" << label(c) << "\"];\n";
    for (const auto& fact : f.facts()) {
        if (fact.args.size() != 2 || options.hidden_families.count(fact.symbol.family))
            continue;
        const auto& fam = f.signature().family(fact.symbol.family);
        const Code u = fact.args[0];
        const Code v = fact.args[1];
        if (options.hide_self_loops && u == v)
            continue;
        if (!fam.directed && u > v && f.holds(fact.symbol, {v, u}))
            continue;
        const auto color = kPalette[fact.symbol.index % std::size(kPalette)];
        const auto name = fam.name.empty() ? "R" + std::to_string(fact.symbol.family) : fam.name;
        out << "  n" << u << " -> n" << v << " [color=" << color << ", label=\"" << name << '_'
            << fact.symbol.index << '"';
        if (!fam.directed)
            out << ", dir=none";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace compstruct

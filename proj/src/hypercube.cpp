#include "compstruct/hypercube.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace compstruct::hypercube {

FinSet::FinSet(std::initializer_list<unsigned> elements)
{
    for (auto i : elements)
        *this = with(i);
}

FinSet FinSet::from_mask(std::uint64_t mask)
{
    if (mask >> (kMaxElement + 1))
        throw std::out_of_range("FinSet: element above " + std::to_string(kMaxElement));
    FinSet s;
    s.mask_ = mask;
    return s;
}

FinSet FinSet::from_elements(const std::vector<unsigned>& elements)
{
    FinSet s;
    for (auto i : elements)
        s = s.with(i);
    return s;
}

FinSet FinSet::with(unsigned i) const
{
    if (i > kMaxElement)
        throw std::out_of_range("FinSet: element " + std::to_string(i) + " above " + std::to_string(kMaxElement));
    return from_mask(mask_ | (std::uint64_t{1} << i));
}

std::size_t FinSet::size() const
{
    return static_cast<std::size_t>(std::popcount(mask_));
}

std::vector<unsigned> FinSet::elements() const
{
    std::vector<unsigned> out;
    for (unsigned i = 0; i <= kMaxElement; ++i)
        if (contains(i))
            out.push_back(i);
    return out;
}

std::optional<unsigned> FinSet::min() const
{
    if (mask_ == 0)
        return std::nullopt;
    return static_cast<unsigned>(std::countr_zero(mask_));
}

std::string FinSet::to_string() const
{
    std::string out = "{";
    bool first = true;
    for (auto i : elements()) {
        if (!first)
            out += ',';
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

HElement HElement::face(std::uint64_t i, unsigned a)
{
    if (a > 1)
        throw std::invalid_argument("face bit must be 0 or 1");
    if (i > (UINT64_MAX - 3) / 4)
        throw std::out_of_range("face index too large to encode");
    return HElement(false, FinSet(), i, a);
}

HElement HElement::decode(Code c)
{
    if (c % 2 == 0)
        return vertex(FinSet::from_mask(c / 2));
    const Code k = (c - 1) / 2;
    return HElement(false, FinSet(), k / 2, static_cast<unsigned>(k % 2));
}

FinSet HElement::set() const
{
    if (!is_vertex_)
        throw std::logic_error("face has no vertex set");
    return set_;
}

std::uint64_t HElement::index() const
{
    if (is_vertex_)
        throw std::logic_error("vertex has no face index");
    return index_;
}

unsigned HElement::bit() const
{
    if (is_vertex_)
        throw std::logic_error("vertex has no face bit");
    return bit_;
}

Code HElement::code() const
{
    if (is_vertex_)
        return 2 * set_.mask();
    return 2 * (2 * index_ + bit_) + 1;
}

std::string HElement::to_string() const
{
    if (is_vertex_)
        return set_.to_string();
    return "(" + std::to_string(index_) + "," + std::to_string(bit_) + ")";
}

bool h_e_rel(std::uint64_t i, const HElement& x, const HElement& y)
{
    if (!x.is_vertex() || !y.is_vertex() || i > FinSet::kMaxElement)
        return false;
    return (x.set().mask() ^ y.set().mask()) == (std::uint64_t{1} << i);
}

bool h_d_rel(std::uint64_t i, const HElement& x, const HElement& f)
{
    if (!x.is_vertex() || !f.is_face() || f.index() != i)
        return false;
    return x.set().bit(i) == f.bit();
}

HElement h_apply(FinSet x, const HElement& z)
{
    if (z.is_vertex())
        return HElement::vertex(x.symmetric_difference(z.set()));
    return HElement::face(z.index(), z.bit() ^ x.bit(z.index()));
}

FinSet h_compose(FinSet x, FinSet y)
{
    return x.symmetric_difference(y);
}

LazyIso h_iso(FinSet x)
{
    // h_X is an involution.
    auto map = [x](Code c) { return h_apply(x, HElement::decode(c)).code(); };
    return LazyIso(map, map, "h_" + x.to_string());
}

Presentation hypercube()
{
    Presentation::Parts parts;
    parts.name = "H";
    parts.signature = Signature({RelationFamily{"E", 2, std::nullopt, false}, RelationFamily{"D", 2, std::nullopt, true}});
    parts.contains = [](Code) { return true; };
    parts.holds = [](Symbol s, Tuple t) {
        const auto x = HElement::decode(t[0]);
        const auto y = HElement::decode(t[1]);
        return s.family == 0 ? h_e_rel(s.index, x, y) : h_d_rel(s.index, x, y);
    };
    parts.next_from = [](Code c) -> std::optional<Code> { return c; };
    return Presentation(std::move(parts));
}

std::vector<Code> truncation_elements(unsigned n)
{
    if (n > 20)
        throw LimitExceeded("truncation depth " + std::to_string(n));
    std::vector<Code> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
        out.push_back(HElement::vertex(FinSet::from_mask(m)).code());
    for (std::uint64_t i = 0; i < n; ++i)
        for (unsigned a = 0; a < 2; ++a)
            out.push_back(HElement::face(i, a).code());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Symbol> truncation_symbols(unsigned n)
{
    std::vector<Symbol> out;
    for (std::uint64_t i = 0; i < n; ++i)
        out.push_back(E(i));
    for (std::uint64_t i = 0; i < n; ++i)
        out.push_back(D(i));
    return out;
}

FinitePresentation truncation(unsigned n)
{
    return induced_substructure(hypercube(), truncation_elements(n), truncation_symbols(n));
}

std::vector<Bijection> enumerate_automorphisms_finite(unsigned n, unsigned limit)
{
    if (n > limit)
        throw LimitExceeded("hypercube depth " + std::to_string(n) + " exceeds the brute-force limit "
                            + std::to_string(limit));
    const auto t = truncation(n);
    return brute_force_isomorphisms(t, t);
}

std::optional<FinSet> match_h(const Bijection& f, unsigned n)
{
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const auto x = FinSet::from_mask(m);
        bool all = true;
        for (std::size_t k = 0; k < f.domain.size() && all; ++k)
            all = h_apply(x, HElement::decode(f.domain[k])).code() == f.image[k];
        if (all)
            return x;
    }
    return std::nullopt;
}

Role classify_element(const Presentation& copy, Code g, Fuel& fuel)
{
    // Stage k enumerates u_k. The pair (u_m, D_j) is tried once k reaches
    // max(m, 2^j - 1), so each stage costs O(log k) queries.
    std::vector<Code> seen;
    Code from = 0;
    std::uint64_t top = 0;
    for (std::uint64_t k = 0;; ++k) {
        auto next = copy.next_from(from, &fuel);
        if (!next)
            throw FuelExhausted("copy's universe ended before " + std::to_string(g) + " was classified");
        seen.push_back(*next);
        from = *next + 1;
        const Code u = seen[k];

        fuel.spend("classify: outgoing D_0 search");
        if (copy.holds(D(0), {g, u}))
            return Role{true, 0};

        const bool widened = k > 0 && ((k + 1) & k) == 0;
        if (widened)
            ++top;
        for (std::uint64_t j = 0; j <= top; ++j) {
            fuel.spend("classify: incoming D_j search");
            if (copy.holds(D(j), {u, g}))
                return Role{false, j};
        }
        if (widened)
            for (std::uint64_t m = 0; m < k; ++m) {
                fuel.spend("classify: incoming D_j search");
                if (copy.holds(D(top), {seen[m], g}))
                    return Role{false, top};
            }
    }
}

namespace {

class Recovery {
public:
    Recovery(Presentation copy, Code root, RecoveryOptions options, std::shared_ptr<RecoveryStats> stats)
        : copy_(std::move(copy)), options_(options), stats_(std::move(stats))
    {
        vertices_.emplace(0, root);
    }

    Code forward(Code c)
    {
        return metered([&](Fuel& fuel) {
            const auto z = HElement::decode(c);
            return z.is_vertex() ? vertex_image(z.set(), fuel) : face_image(z.index(), z.bit(), fuel);
        });
    }

    Code backward(Code c)
    {
        return metered([&](Fuel& fuel) {
            const auto role = classify_element(copy_, c, fuel);
            if (!role.is_vertex) {
                for (unsigned a = 0; a < 2; ++a)
                    if (face_image(role.face_index, a, fuel) == c)
                        return HElement::face(role.face_index, a).code();
                throw InvariantViolation("face-role element " + std::to_string(c) + " is neither image of face "
                                         + std::to_string(role.face_index));
            }
            // Read off the bits below k from D-edges until the walk lands on c.
            FinSet z;
            for (unsigned k = 0; k <= FinSet::kMaxElement + 1; ++k) {
                if (vertex_image(z, fuel) == c)
                    return HElement::vertex(z).code();
                if (k > FinSet::kMaxElement)
                    break;
                fuel.spend("recover: bit test");
                if (!copy_.holds(D(k), {c, face_image(k, 0, fuel)}))
                    z = z.with(k);
            }
            throw InvariantViolation("vertex-role element " + std::to_string(c) + " has no preimage");
        });
    }

private:
    template <typename F>
    Code metered(F&& body)
    {
        Fuel fuel(options_.fuel_per_query);
        auto record = [&] {
            if (!stats_)
                return;
            std::lock_guard lock(mutex_);
            ++stats_->queries;
            stats_->total_fuel += fuel.used();
            stats_->max_fuel_per_query = std::max(stats_->max_fuel_per_query, fuel.used());
        };
        try {
            const Code out = body(fuel);
            record();
            return out;
        } catch (...) {
            record();
            throw;
        }
    }

    template <typename Pred>
    Code find_unique(Pred&& pred, Fuel& fuel, const char* what)
    {
        Code from = 0;
        std::optional<Code> found;
        std::size_t extra = 0;
        while (true) {
            auto next = copy_.next_from(from, &fuel);
            if (!next)
                break;
            fuel.spend(what);
            if (pred(*next)) {
                if (found)
                    throw InvariantViolation(std::string(what) + ": two candidates " + std::to_string(*found)
                                             + " and " + std::to_string(*next));
                found = *next;
            } else if (found && ++extra > options_.uniqueness_window) {
                break;
            }
            from = *next + 1;
        }
        if (!found)
            throw InvariantViolation(std::string(what) + ": the copy's universe has no candidate");
        return *found;
    }

    Code vertex_image(FinSet z, Fuel& fuel)
    {
        const auto elems = z.elements();
        // Deepest memoized prefix, walking Z in increasing order.
        std::size_t depth = elems.size();
        std::uint64_t mask = z.mask();
        Code current = 0;
        {
            std::lock_guard lock(mutex_);
            while (true) {
                if (auto it = vertices_.find(mask); it != vertices_.end()) {
                    current = it->second;
                    break;
                }
                --depth;
                mask &= ~(std::uint64_t{1} << elems[depth]);
            }
        }
        for (; depth < elems.size(); ++depth) {
            const auto n = elems[depth];
            const Code from = current;
            current = find_unique([&](Code y) { return copy_.holds(E(n), {from, y}); }, fuel, "recover: E-step");
            mask |= std::uint64_t{1} << n;
            std::lock_guard lock(mutex_);
            vertices_.emplace(mask, current);
        }
        return current;
    }

    Code face_image(std::uint64_t i, unsigned a, Fuel& fuel)
    {
        {
            std::lock_guard lock(mutex_);
            if (auto it = faces_.find({i, a}); it != faces_.end())
                return it->second;
        }
        if (i > FinSet::kMaxElement)
            throw LimitExceeded("face index above the vertex coding range");
        const Code source = vertex_image(a == 0 ? FinSet() : FinSet().with(static_cast<unsigned>(i)), fuel);
        const Code image
            = find_unique([&](Code y) { return copy_.holds(D(i), {source, y}); }, fuel, "recover: D-step");
        std::lock_guard lock(mutex_);
        faces_.emplace(std::pair{i, a}, image);
        return image;
    }

    Presentation copy_;
    RecoveryOptions options_;
    std::shared_ptr<RecoveryStats> stats_;
    std::mutex mutex_;
    std::map<std::uint64_t, Code> vertices_;
    std::map<std::pair<std::uint64_t, unsigned>, Code> faces_;
};

} // namespace

LazyIso recover_iso(const Presentation& copy, Code image_of_empty, RecoveryOptions options,
                    std::shared_ptr<RecoveryStats> stats)
{
    Fuel check(options.fuel_per_query);
    if (!classify_element(copy, image_of_empty, check).is_vertex)
        throw std::invalid_argument("recover_iso: image of the empty set must play a vertex role");
    auto state = std::make_shared<Recovery>(copy, image_of_empty, options, std::move(stats));
    return LazyIso([state](Code c) { return state->forward(c); }, [state](Code c) { return state->backward(c); },
                   "recovered");
}

std::vector<CodePermutation> standard_permutations()
{
    return {block_rotation(3, 1), block_rotation(7, 3), block_rotation(16, 5)};
}

CodePermutation permutation_by_name(const std::string& name)
{
    for (auto& p : standard_permutations())
        if (p.name == name)
            return p;
    throw std::invalid_argument("unknown permutation '" + name + "' (expected rot-3-1, rot-7-3 or rot-16-5)");
}

Presentation scrambled_copy(const CodePermutation& perm)
{
    return permuted_copy(hypercube(), perm);
}

std::string truncation_dot(unsigned n)
{
    DotOptions options;
    options.graph_name = "H" + std::to_string(n);
    options.label = [](Code c) { return HElement::decode(c).to_string(); };
    return to_dot(truncation(n), options);
}

} // namespace compstruct::hypercube

#pragma once

// Independent reference implementations used by the tests. They share no
// code with the library beyond the plain data types.

#include "compstruct/isomorphism.hpp"
#include "compstruct/presentation.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using compstruct::Bijection;
using compstruct::Code;
using compstruct::FinitePresentation;

/// Every bijection a → b preserving and reflecting all facts, by trying
/// each permutation. Lexicographic in the image sequence.
inline std::vector<Bijection> naive_isomorphisms(const FinitePresentation& a, const FinitePresentation& b)
{
    std::vector<Bijection> out;
    if (a.size() != b.size() || a.facts().size() != b.facts().size())
        return out;
    std::vector<Code> image = b.elements();
    do {
        std::map<Code, Code> f;
        for (std::size_t k = 0; k < image.size(); ++k)
            f[a.elements()[k]] = image[k];
        bool ok = true;
        for (const auto& fact : a.facts()) {
            compstruct::Fact mapped{fact.symbol, {}};
            for (auto c : fact.args)
                mapped.args.push_back(f[c]);
            if (!b.facts().count(mapped)) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back({a.elements(), image});
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

inline std::uint64_t cantor(std::uint64_t a, std::uint64_t b)
{
    // Walk the diagonals: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
    std::uint64_t index = 0;
    for (std::uint64_t d = 0; d < a + b; ++d)
        index += d + 1;
    return index + b;
}

/// ℋ elements by hand: vertices as std::set, faces as (i, a).
struct HElem {
    bool vertex = true;
    std::set<unsigned> set;
    unsigned i = 0;
    unsigned a = 0;

    bool operator==(const HElem&) const = default;
    bool operator<(const HElem& o) const
    {
        return std::tie(vertex, set, i, a) < std::tie(o.vertex, o.set, o.i, o.a);
    }
};

inline HElem V(std::set<unsigned> s) { return {true, std::move(s), 0, 0}; }
inline HElem F(unsigned i, unsigned a) { return {false, {}, i, a}; }

inline Code code(const HElem& z)
{
    if (!z.vertex)
        return 2 * (2 * Code{z.i} + z.a) + 1;
    Code sum = 0;
    for (auto i : z.set)
        sum += Code{1} << i;
    return 2 * sum;
}

inline HElem element(Code c)
{
    if (c % 2 == 1)
        return F(static_cast<unsigned>((c - 1) / 4), static_cast<unsigned>(((c - 1) / 2) % 2));
    std::set<unsigned> s;
    Code m = c / 2;
    for (unsigned i = 0; m; ++i, m >>= 1)
        if (m & 1)
            s.insert(i);
    return V(s);
}

inline std::set<unsigned> sym_diff(const std::set<unsigned>& x, const std::set<unsigned>& y)
{
    std::set<unsigned> out;
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::inserter(out, out.end()));
    return out;
}

inline bool E(unsigned i, const HElem& x, const HElem& y)
{
    return x.vertex && y.vertex && sym_diff(x.set, y.set) == std::set<unsigned>{i};
}

inline bool D(unsigned i, const HElem& x, const HElem& f)
{
    return x.vertex && !f.vertex && f.i == i && f.a == (x.set.count(i) ? 1U : 0U);
}

inline HElem h(const std::set<unsigned>& x, const HElem& z)
{
    if (z.vertex)
        return V(sym_diff(x, z.set));
    return F(z.i, (z.a + (x.count(z.i) ? 1U : 0U)) % 2);
}

/// Position of each element of {0..bound} in the order generated by the
/// generator edges 2n < 2n+2, 2x_n < 2n+1 < 2x_n + 2, closed transitively
/// by Floyd-Warshall. Returns the first `n` elements, each identified by
/// its number of predecessors. `bound` must leave room for everything
/// below the prefix.
template <typename Enum>
std::vector<Code> closure_prefix(Enum x, std::size_t bound, std::size_t n)
{
    const std::size_t size = bound + 1;
    std::vector<std::vector<char>> less(size, std::vector<char>(size, 0));
    auto edge = [&](Code u, Code v) {
        if (u < size && v < size)
            less[u][v] = 1;
    };
    for (Code k = 0; 2 * k + 2 < size; ++k)
        edge(2 * k, 2 * k + 2);
    // An odd element is placed only when both of its generators fit.
    std::vector<char> placed(size, 1);
    for (Code k = 0; 2 * k + 1 < size; ++k) {
        const Code xk = x(k);
        placed[2 * k + 1] = 2 * xk + 2 < size;
        edge(2 * xk, 2 * k + 1);
        edge(2 * k + 1, 2 * xk + 2);
    }
    for (std::size_t m = 0; m < size; ++m)
        for (std::size_t u = 0; u < size; ++u)
            if (less[u][m])
                for (std::size_t v = 0; v < size; ++v)
                    if (less[m][v])
                        less[u][v] = 1;
    std::vector<Code> prefix(n, Code(-1));
    for (std::size_t v = 0; v < size; ++v) {
        if (!placed[v])
            continue;
        std::size_t below = 0;
        for (std::size_t u = 0; u < size; ++u)
            below += less[u][v];
        if (below < n)
            prefix[below] = v;
    }
    return prefix;
}

/// Random directed graph facts on `elements` for family `family`.
inline std::set<compstruct::Fact> random_edges(std::mt19937_64& rng, const std::vector<Code>& elements,
                                               std::uint32_t family, unsigned percent)
{
    std::set<compstruct::Fact> facts;
    for (auto u : elements)
        for (auto v : elements)
            if (rng() % 100 < percent)
                facts.insert(compstruct::Fact{compstruct::Symbol{family, 0}, std::vector<Code>{u, v}});
    return facts;
}

} // namespace oracle

#pragma once

// Seeded finite composites and the glued-isomorphism enumerator shared by
// the composite tests and the acceptance run.

#include "compstruct/composite.hpp"
#include "compstruct/isomorphism.hpp"
#include "compstruct/structures.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace fixtures {

using namespace compstruct;

inline std::vector<std::pair<Code, Code>> random_pairs(std::mt19937_64& rng, std::size_t n, unsigned percent)
{
    std::vector<std::pair<Code, Code>> out;
    for (Code u = 0; u < n; ++u)
        for (Code v = 0; v < n; ++v)
            if (u != v && rng() % 100 < percent)
                out.emplace_back(u, v);
    return out;
}

struct FiniteShape {
    std::size_t base_size = 0;
    std::vector<std::pair<Code, Code>> base_edges;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<std::pair<Code, Code>>> edges;
};

// At most 12 elements in total.
inline FiniteShape random_shape(std::mt19937_64& rng)
{
    FiniteShape s;
    s.base_size = 1 + rng() % 3;
    s.base_edges = random_pairs(rng, s.base_size, 40);
    for (std::size_t x = 0; x < s.base_size; ++x) {
        s.sizes.push_back(1 + rng() % 3);
        s.edges.push_back(random_pairs(rng, s.sizes.back(), 35));
    }
    return s;
}

inline CompositeStructure build(const FiniteShape& s)
{
    auto comps = std::make_shared<std::vector<Presentation>>();
    for (std::size_t x = 0; x < s.base_size; ++x)
        comps->push_back(finite_digraph(s.sizes[x], s.edges[x], "A" + std::to_string(x)));
    const auto n = s.base_size;
    UniformFamily fam;
    fam.index_contains = [n](Code x) { return x < n; };
    fam.member = [comps](Code x) { return TaggedCopy(x, comps->at(x)); };
    fam.signature = comps->front().signature();
    return compose(finite_digraph(n, s.base_edges, "S"), fam);
}

// Relabels base points by `pi` and the inner codes of each component by a
// random permutation. The result is isomorphic to `s` by construction.
inline FiniteShape relabel(const FiniteShape& s, std::mt19937_64& rng)
{
    std::vector<Code> pi(s.base_size);
    std::iota(pi.begin(), pi.end(), Code{0});
    std::shuffle(pi.begin(), pi.end(), rng);
    FiniteShape t;
    t.base_size = s.base_size;
    t.sizes.resize(s.base_size);
    t.edges.resize(s.base_size);
    for (auto [u, v] : s.base_edges)
        t.base_edges.emplace_back(pi[u], pi[v]);
    for (std::size_t x = 0; x < s.base_size; ++x) {
        std::vector<Code> sigma(s.sizes[x]);
        std::iota(sigma.begin(), sigma.end(), Code{0});
        std::shuffle(sigma.begin(), sigma.end(), rng);
        t.sizes[pi[x]] = s.sizes[x];
        for (auto [u, v] : s.edges[x])
            t.edges[pi[x]].emplace_back(sigma[u], sigma[v]);
    }
    return t;
}

inline FinitePresentation whole(const Presentation& p)
{
    return induced_substructure(p, *p.finite_universe());
}

inline LazyIso table_iso(std::map<Code, Code> forward)
{
    std::map<Code, Code> backward;
    for (auto [a, b] : forward)
        backward[b] = a;
    return LazyIso([forward](Code x) { return forward.at(x); }, [backward](Code y) { return backward.at(y); });
}

// Every glue_iso(θ, ψ) with θ a base isomorphism and ψ componentwise
// isomorphisms, tabulated on the sorted universe of c1.
inline std::set<Bijection> glued_isomorphisms(const CompositeStructure& c1, const CompositeStructure& c2)
{
    std::set<Bijection> out;
    const auto domain = *c1.combined().finite_universe();
    const auto base_points = *c1.base().finite_universe();
    for (const auto& theta : brute_force_isomorphisms(whole(c1.base()), whole(c2.base()))) {
        std::vector<std::vector<Bijection>> choices;
        for (auto x : base_points)
            choices.push_back(brute_force_isomorphisms(whole(c1.member(x).inner()),
                                                       whole(c2.member(theta.at(x)).inner())));
        std::vector<std::size_t> pick(base_points.size(), 0);
        while (true) {
            if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); }))
                break;
            std::map<Code, LazyIso> pieces;
            for (std::size_t k = 0; k < base_points.size(); ++k) {
                const Code x = base_points[k];
                std::map<Code, Code> table;
                const auto& b = choices[k][pick[k]];
                for (std::size_t j = 0; j < b.domain.size(); ++j)
                    table[encode_pair(x, b.domain[j])] = encode_pair(theta.at(x), b.image[j]);
                pieces.emplace(x, table_iso(table));
            }
            std::map<Code, Code> base_table;
            for (auto x : base_points)
                base_table[x] = theta.at(x);
            const auto rho = glue_iso(table_iso(base_table), [pieces](Code x) { return pieces.at(x); });
            Bijection f;
            f.domain = domain;
            for (auto z : domain)
                f.image.push_back(rho.apply(z));
            out.insert(f);

            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == choices[k].size())
                pick[k++] = 0;
            if (k == pick.size())
                break;
        }
    }
    return out;
}

} // namespace fixtures

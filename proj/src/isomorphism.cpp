#include "compstruct/isomorphism.hpp"

#include "compstruct/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace compstruct {

Code Bijection::at(Code x) const
{
    auto it = std::find(domain.begin(), domain.end(), x);
    if (it == domain.end())
        throw std::out_of_range("code " + std::to_string(x) + " is outside the bijection's domain");
    return image[static_cast<std::size_t>(it - domain.begin())];
}

Bijection Bijection::inverse() const
{
    std::vector<std::pair<Code, Code>> pairs;
    for (std::size_t i = 0; i < domain.size(); ++i)
        pairs.emplace_back(image[i], domain[i]);
    std::sort(pairs.begin(), pairs.end());
    Bijection out;
    for (auto [x, y] : pairs) {
        out.domain.push_back(x);
        out.image.push_back(y);
    }
    return out;
}

namespace {

// One structure in index space: element i is elements()[i], tuples are
// packed in radix n.
struct Indexed {
    std::size_t n = 0;
    std::vector<std::size_t> arity;                      // per symbol
    std::vector<std::unordered_set<std::uint64_t>> facts; // per symbol
    std::vector<std::vector<std::uint32_t>> profile;     // per element: incidence counts

    Indexed(const FinitePresentation& f, const std::vector<Symbol>& symbols)
    {
        n = f.size();
        const auto& el = f.elements();
        auto index_of = [&](Code c) {
            return static_cast<std::uint64_t>(std::lower_bound(el.begin(), el.end(), c) - el.begin());
        };
        std::size_t profile_width = 0;
        for (const auto& s : symbols) {
            const auto r = *f.signature().arity(s);
            arity.push_back(r);
            profile_width += r;
            long double capacity = 1;
            for (std::size_t k = 0; k < r; ++k)
                capacity *= static_cast<long double>(std::max<std::size_t>(n, 1));
            if (capacity > 1.8e19L)
                throw LimitExceeded("tuple space too large for brute-force search");
        }
        profile.assign(n, std::vector<std::uint32_t>(profile_width, 0));
        facts.resize(symbols.size());
        std::size_t offset = 0;
        for (std::size_t s = 0; s < symbols.size(); ++s) {
            for (const auto& fact : f.facts_of(symbols[s])) {
                std::uint64_t key = 0;
                for (std::size_t p = 0; p < fact.args.size(); ++p) {
                    const auto i = index_of(fact.args[p]);
                    key = key * n + i;
                    ++profile[i][offset + p];
                }
                facts[s].insert(key);
            }
            offset += arity[s];
        }
    }
};

class Search {
public:
    Search(const FinitePresentation& a, const FinitePresentation& b, std::size_t limit)
        : a_(a), b_(b), ia_(a, a.symbols()), ib_(b, a.symbols()), limit_(limit)
    {
    }

    std::vector<Bijection> run()
    {
        map_.assign(ia_.n, 0);
        used_.assign(ib_.n, false);
        extend(0);
        return std::move(found_);
    }

private:
    bool consistent(std::size_t k) const
    {
        // Every tuple over positions 0..k that mentions position k.
        for (std::size_t s = 0; s < ia_.arity.size(); ++s) {
            const auto r = ia_.arity[s];
            std::vector<std::size_t> t(r, 0);
            while (true) {
                if (std::find(t.begin(), t.end(), k) != t.end()) {
                    std::uint64_t ka = 0, kb = 0;
                    for (auto i : t) {
                        ka = ka * ia_.n + i;
                        kb = kb * ib_.n + map_[i];
                    }
                    if (ia_.facts[s].count(ka) != ib_.facts[s].count(kb))
                        return false;
                }
                std::size_t pos = r;
                bool done = true;
                while (pos > 0) {
                    --pos;
                    if (++t[pos] <= k) {
                        done = false;
                        break;
                    }
                    t[pos] = 0;
                }
                if (done)
                    break;
            }
        }
        return true;
    }

    void extend(std::size_t k)
    {
        if (found_.size() >= limit_)
            return;
        if (k == ia_.n) {
            Bijection f;
            f.domain = a_.elements();
            for (auto j : map_)
                f.image.push_back(b_.elements()[j]);
            found_.push_back(std::move(f));
            return;
        }
        for (std::size_t y = 0; y < ib_.n; ++y) {
            if (used_[y] || ia_.profile[k] != ib_.profile[y])
                continue;
            map_[k] = y;
            if (!consistent(k))
                continue;
            used_[y] = true;
            extend(k + 1);
            used_[y] = false;
            if (found_.size() >= limit_)
                return;
        }
    }

    const FinitePresentation& a_;
    const FinitePresentation& b_;
    Indexed ia_;
    Indexed ib_;
    std::size_t limit_;
    std::vector<std::size_t> map_;
    std::vector<bool> used_;
    std::vector<Bijection> found_;
};

} // namespace

std::vector<Bijection> brute_force_isomorphisms(const FinitePresentation& a, const FinitePresentation& b,
                                                std::size_t limit)
{
    if (a.symbols() != b.symbols())
        throw std::invalid_argument("brute_force_isomorphisms: structures use different symbol lists");
    for (const auto& s : a.symbols())
        if (a.signature().arity(s) != b.signature().arity(s))
            throw std::invalid_argument("brute_force_isomorphisms: arity mismatch");
    if (a.size() != b.size())
        return {};
    return Search(a, b, limit).run();
}

bool is_isomorphism(const FinitePresentation& a, const FinitePresentation& b, const Bijection& f)
{
    if (f.domain != a.elements() || f.image.size() != f.domain.size() || a.size() != b.size())
        return false;
    auto sorted = f.image;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != b.elements())
        return false;
    if (a.symbols() != b.symbols())
        return false;

    std::map<Code, Code> m;
    for (std::size_t i = 0; i < f.domain.size(); ++i)
        m.emplace(f.domain[i], f.image[i]);

    for (const auto& s : a.symbols()) {
        const auto r = *a.signature().arity(s);
        std::vector<std::size_t> idx(r, 0);
        const auto n = a.size();
        if (n == 0)
            continue;
        while (true) {
            std::vector<Code> ta, tb;
            for (auto i : idx) {
                ta.push_back(a.elements()[i]);
                tb.push_back(m.at(a.elements()[i]));
            }
            if (a.holds(s, Tuple(ta)) != b.holds(s, Tuple(tb)))
                return false;
            std::size_t pos = r;
            bool done = true;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < n) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (done)
                break;
        }
    }
    return true;
}

std::optional<std::string> find_fact_violation(const Presentation& src, const Presentation& dst, const LazyIso& f,
                                               const std::vector<Code>& elements, const std::vector<Symbol>& symbols)
{
    std::map<Code, Code> image;
    std::map<Code, Code> preimage;
    for (auto x : elements) {
        const Code y = f.apply(x);
        if (!dst.contains(y))
            return "image " + std::to_string(y) + " of " + std::to_string(x) + " is outside the target universe";
        if (auto [it, fresh] = preimage.emplace(y, x); !fresh && it->second != x)
            return "not injective: " + std::to_string(it->second) + " and " + std::to_string(x) + " both map to "
                + std::to_string(y);
        image.emplace(x, y);
    }
    const auto n = elements.size();
    if (n == 0)
        return std::nullopt;
    for (const auto& s : symbols) {
        const auto arity = src.signature().arity(s);
        if (!arity)
            continue;
        std::vector<std::size_t> idx(*arity, 0);
        std::vector<Code> ta(*arity), tb(*arity);
        while (true) {
            for (std::size_t p = 0; p < *arity; ++p) {
                ta[p] = elements[idx[p]];
                tb[p] = image.at(ta[p]);
            }
            if (src.holds(s, Tuple(ta)) != dst.holds(s, Tuple(tb))) {
                std::ostringstream msg;
                msg << "fact " << Fact{s, ta} << " is " << (src.holds(s, Tuple(ta)) ? "true" : "false")
                    << " but its image " << Fact{s, tb} << " is not";
                return msg.str();
            }
            std::size_t pos = *arity;
            bool done = true;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < n) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (done)
                break;
        }
    }
    return std::nullopt;
}

} // namespace compstruct

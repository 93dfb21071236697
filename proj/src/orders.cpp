#include "compstruct/orders.hpp"

#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace compstruct::orders {

namespace {

bool is_prime(Code n)
{
    if (n < 2)
        return false;
    for (Code d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Code isqrt(Code n)
{
    Code r = 0;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

} // namespace

CEEnumeration evens()
{
    return {"evens", [](Code n) { return 2 * n; }, [](Code k) { return k % 2 == 0; }};
}

CEEnumeration squares()
{
    return {"squares", [](Code n) { return n * n; }, [](Code k) {
                const Code r = isqrt(k);
                return r * r == k;
            }};
}

CEEnumeration primes()
{
    struct Table {
        std::mutex mutex;
        std::vector<Code> values{2};
    };
    auto table = std::make_shared<Table>();
    auto at = [table](Code n) {
        std::lock_guard lock(table->mutex);
        auto& v = table->values;
        for (Code c = v.back() + 1; v.size() <= n; ++c)
            if (is_prime(c))
                v.push_back(c);
        return v[n];
    };
    return {"primes", at, is_prime};
}

CEEnumeration by_name(const std::string& name)
{
    if (name == "evens")
        return evens();
    if (name == "squares")
        return squares();
    if (name == "primes")
        return primes();
    throw std::invalid_argument("unknown set '" + name + "' (expected evens, squares or primes)");
}

void validate(const CEEnumeration& e, std::size_t prefix)
{
    std::set<Code> seen;
    for (Code n = 0; n < prefix; ++n)
        if (!seen.insert(e.at(n)).second)
            throw std::invalid_argument("enumeration '" + e.name + "' repeats the value " + std::to_string(e.at(n))
                                        + "; X must be infinite and enumerated without repetition");
}

bool less_x(const CEEnumeration& e, Code a, Code b)
{
    const bool odd_a = a % 2 == 1;
    const bool odd_b = b % 2 == 1;
    if (!odd_a && !odd_b)
        return a < b;
    if (odd_a && !odd_b)
        return e.at(a / 2) < b / 2;
    if (!odd_a && odd_b)
        return a / 2 <= e.at(b / 2);
    return e.at(a / 2) < e.at(b / 2);
}

Presentation order_x(const CEEnumeration& e)
{
    Presentation::Parts parts;
    parts.name = "(omega,<_" + e.name + ")";
    parts.signature = Signature({RelationFamily{"<", 2, 1, true}});
    parts.contains = [](Code) { return true; };
    parts.holds = [e](Symbol, Tuple t) { return less_x(e, t[0], t[1]); };
    parts.next_from = [](Code c) -> std::optional<Code> { return c; };
    return Presentation(std::move(parts));
}

namespace {

// The order (ω, <_X) listed gap by gap: 2k, then the odd element sitting in
// the gap after 2k when k ∈ X. Extended on demand.
class Walk {
public:
    Walk(CEEnumeration e, OracleSession oracle) : e_(std::move(e)), oracle_(std::move(oracle)) {}

    Code element_at(Code n)
    {
        std::lock_guard lock(mutex_);
        while (sequence_.size() <= n)
            step();
        return sequence_[n];
    }

    Code position_of(Code c)
    {
        std::lock_guard lock(mutex_);
        // The gap index whose processing places c.
        const Code gap = (c % 2 == 0) ? c / 2 : e_.at(c / 2);
        while (next_gap_ <= gap)
            step();
        auto it = position_.find(c);
        if (it == position_.end())
            throw InvariantViolation("oracle says " + std::to_string(gap) + " is not in " + e_.name
                                     + ", but the enumeration lists it");
        return it->second;
    }

private:
    void step()
    {
        const Code k = next_gap_++;
        place(2 * k);
        if (oracle_.member(k))
            place(2 * enumeration_index(k) + 1);
    }

    void place(Code c)
    {
        position_.emplace(c, sequence_.size());
        sequence_.push_back(c);
    }

    // The n with x_n = k; terminates because k ∈ X.
    Code enumeration_index(Code k)
    {
        if (auto it = index_.find(k); it != index_.end())
            return it->second;
        while (true) {
            const Code n = scanned_++;
            const Code x = e_.at(n);
            index_.emplace(x, n);
            if (x == k)
                return n;
        }
    }

    CEEnumeration e_;
    OracleSession oracle_;
    std::mutex mutex_;
    std::vector<Code> sequence_;
    std::map<Code, Code> position_;
    Code next_gap_ = 0;
    std::map<Code, Code> index_;
    Code scanned_ = 0;
};

} // namespace

LazyIso unique_iso_to_orderX(const CEEnumeration& e, const OracleSession& x_oracle)
{
    auto walk = std::make_shared<Walk>(e, x_oracle);
    return LazyIso([walk](Code n) { return walk->element_at(n); }, [walk](Code c) { return walk->position_of(c); },
                   "f_" + e.name);
}

bool decode_x_from_iso(const OracleSession& f_oracle, Code k)
{
    const Code low = f_oracle.inverse(2 * k);
    const Code high = f_oracle.inverse(2 * k + 2);
    return high == low + 2;
}

std::vector<Code> order_prefix(const CEEnumeration& e, std::size_t n)
{
    const auto f = unique_iso_to_orderX(e, OracleSession::membership(e.name, e.member));
    std::vector<Code> out;
    for (Code i = 0; i < n; ++i)
        out.push_back(f.apply(i));
    return out;
}

} // namespace compstruct::orders

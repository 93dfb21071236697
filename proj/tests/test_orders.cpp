#include "oracles.hpp"

#include "compstruct/orders.hpp"

#include <doctest.h>

using namespace compstruct;
using namespace compstruct::orders;

namespace {

std::vector<CEEnumeration> all_sets()
{
    return {evens(), squares(), primes()};
}

} // namespace

TEST_CASE("enumerations")
{
    CHECK(evens().at(5) == 10);
    CHECK(squares().at(5) == 25);
    CHECK(primes().at(0) == 2);
    CHECK(primes().at(5) == 13);
    CHECK(primes().member(97));
    CHECK_FALSE(primes().member(91));
    CHECK(squares().member(0));
    CHECK_FALSE(squares().member(2));
    for (const auto& e : all_sets())
        for (Code n = 0; n < 200; ++n)
            CHECK(e.member(e.at(n)));
    CHECK(by_name("squares").name == "squares");
    CHECK_THROWS_AS(by_name("odds"), std::invalid_argument);
}

TEST_CASE("validate rejects repeated values")
{
    for (const auto& e : all_sets())
        CHECK_NOTHROW(validate(e));
    CEEnumeration repeats{"repeats", [](Code n) { return n / 2; }, [](Code) { return true; }};
    CHECK_THROWS_AS(validate(repeats), std::invalid_argument);
}

TEST_CASE("evens prefix matches the generator closure")
{
    const auto expected = std::vector<Code>{0, 1, 2, 4, 3, 6, 8, 5, 10, 12, 7};
    CHECK(order_prefix(evens(), 11) == expected);
    CHECK(oracle::closure_prefix([](Code n) { return 2 * n; }, 63, 11) == expected);
    CHECK(order_prefix(evens(), 6) == std::vector<Code>{0, 1, 2, 4, 3, 6});
}

TEST_CASE("prefixes match the generator closure for every set")
{
    for (const auto& e : all_sets()) {
        CAPTURE(e.name);
        CHECK(order_prefix(e, 30) == oracle::closure_prefix(e.at, 200, 30));
    }
}

TEST_CASE("less_x is a strict total order")
{
    for (const auto& e : all_sets()) {
        CAPTURE(e.name);
        const Code n = 50;
        for (Code a = 0; a <= n; ++a) {
            CHECK_FALSE(less_x(e, a, a));
            for (Code b = 0; b <= n; ++b) {
                if (a != b)
                    CHECK(less_x(e, a, b) != less_x(e, b, a));
                if (less_x(e, a, b))
                    for (Code c = 0; c <= n; ++c)
                        if (less_x(e, b, c))
                            CHECK(less_x(e, a, c));
            }
        }
    }
}

TEST_CASE("the generators hold")
{
    for (const auto& e : all_sets())
        for (Code k = 0; k < 40; ++k) {
            CHECK(less_x(e, 2 * k, 2 * k + 2));
            CHECK(less_x(e, 2 * e.at(k), 2 * k + 1));
            CHECK(less_x(e, 2 * k + 1, 2 * e.at(k) + 2));
        }
}

TEST_CASE("order_x presents less_x")
{
    const auto e = squares();
    const auto p = order_x(e);
    for (Code a = 0; a < 30; ++a)
        for (Code b = 0; b < 30; ++b)
            CHECK(p.holds({0, 0}, {a, b}) == less_x(e, a, b));
}

TEST_CASE("the unique isomorphism is order preserving and onto a prefix")
{
    for (const auto& e : all_sets()) {
        CAPTURE(e.name);
        const auto x = OracleSession::membership("X", e.member);
        const auto f = unique_iso_to_orderX(e, x);
        for (Code a = 0; a < 40; ++a) {
            CHECK(f.inverse_apply(f.apply(a)) == a);
            for (Code b = a + 1; b < 40; ++b)
                CHECK(less_x(e, f.apply(a), f.apply(b)));
        }
        for (Code c = 0; c < 40; ++c)
            CHECK(f.apply(f.inverse_apply(c)) == c);
    }
}

TEST_CASE("f(n) queries only k <= n")
{
    for (const auto& e : all_sets()) {
        for (Code n = 0; n < 30; ++n) {
            const auto x = OracleSession::membership("X", e.member);
            const auto f = unique_iso_to_orderX(e, x);
            (void)f.apply(n);
            for (const auto& q : x.log())
                CHECK(q.arg <= n);
        }
    }
}

TEST_CASE("decoding recovers X from the isomorphism alone")
{
    for (const auto& e : all_sets()) {
        CAPTURE(e.name);
        const auto x = OracleSession::membership("X", e.member);
        const auto f = OracleSession::of_iso("f", unique_iso_to_orderX(e, x));
        for (Code k = 0; k <= 25; ++k)
            CHECK(decode_x_from_iso(f, k) == e.member(k));
        CHECK(x.ops_used() == std::set<std::string>{"member"});
        CHECK(f.ops_used() == std::set<std::string>{"inverse"});
    }
}

TEST_CASE("decoding reflects the set behind the isomorphism")
{
    // Decoding reads X off f; feeding the isomorphism for one set while
    // asking about another gives that other set's answers wrong.
    const auto x = OracleSession::membership("X", evens().member);
    const auto f = OracleSession::of_iso("f", unique_iso_to_orderX(evens(), x));
    int differences = 0;
    for (Code k = 0; k <= 25; ++k)
        differences += decode_x_from_iso(f, k) != squares().member(k);
    CHECK(differences > 0);
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cli.hpp"
#include "figures.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "compstruct/categoricity.hpp"
#include "compstruct/hypercube.hpp"
#include "compstruct/orders.hpp"
#include "compstruct/spectra.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

using namespace compstruct;
using hypercube::FinSet;
using hypercube::HElement;

namespace {

struct Outcome {
    bool pass = true;
    // Deterministic summary, part of the digest.
    std::string detail;
};

class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        if (!ok && pass_) {
            pass_ = false;
            first_failure_ = what;
        }
    }
    void note(const std::string& s) { notes_ << s; }
    Outcome done() const
    {
        return {pass_, pass_ ? notes_.str() : notes_.str() + " first failure: " + first_failure_};
    }

private:
    bool pass_ = true;
    std::string first_failure_;
    std::ostringstream notes_;
};

std::pair<int, std::string> cli(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str()};
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::set<unsigned> to_std(FinSet s)
{
    const auto e = s.elements();
    return {e.begin(), e.end()};
}

// Parses "X={0,2}: 0->2 1->3 ..." lines and checks each map is h_X.
Outcome autos_via_cli(unsigned n, std::size_t expected, Check& c)
{
    const auto [code, out] = cli({"hcube", "autos", "--n", std::to_string(n)});
    c.expect(code == 0, "hcube autos exit code");
    c.expect(out.rfind("automorphisms: " + std::to_string(expected) + "\n", 0) == 0, "automorphism count");
    const std::regex line_re(R"(X=\{([0-9,]*)\}:(.*))");
    const std::regex pair_re(R"((\d+)->(\d+))");
    std::istringstream lines(out);
    std::string line;
    std::set<std::set<unsigned>> sets;
    while (std::getline(lines, line)) {
        std::smatch m;
        if (!std::regex_match(line, m, line_re))
            continue;
        std::set<unsigned> x;
        std::stringstream items(m[1].str());
        for (std::string item; std::getline(items, item, ',');)
            x.insert(static_cast<unsigned>(std::stoul(item)));
        sets.insert(x);
        const std::string body = m[2].str();
        std::size_t pairs = 0;
        for (auto it = std::sregex_iterator(body.begin(), body.end(), pair_re); it != std::sregex_iterator(); ++it) {
            const Code from = std::stoull((*it)[1].str());
            const Code to = std::stoull((*it)[2].str());
            c.expect(oracle::code(oracle::h(x, oracle::element(from))) == to, "listed map differs from h_X");
            ++pairs;
        }
        c.expect(pairs == hypercube::truncation_elements(n).size(), "listed map is not total on the truncation");
    }
    c.expect(sets.size() == expected, "distinct h_X sets");
    std::set<std::set<unsigned>> all;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        all.insert(to_std(FinSet::from_mask(mask)));
    c.expect(sets == all, "every X below n appears");
    return {};
}

Outcome criterion1()
{
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    autos_via_cli(3, 8, c);
    autos_via_cli(2, 4, c);
    // Independent search: permutations of the depth-2 truncation.
    const auto t2 = hypercube::truncation(2);
    c.expect(oracle::naive_isomorphisms(t2, t2) == hypercube::enumerate_automorphisms_finite(2),
             "depth-2 search disagrees with naive permutation search");
    const double s = seconds_since(t0);
    c.expect(s < 5.0, "runtime over 5 s");
    c.note("n=3: 8 maps, each h_X; n=2: 4 maps, equal to naive search");
    return c.done();
}

Outcome criterion2()
{
    Check c;
    std::mt19937_64 rng(2);
    std::size_t failures = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto x = FinSet::from_mask(rng() % 1024);
        const auto y = FinSet::from_mask(rng() % 1024);
        const HElement z = rng() % 2 ? HElement::vertex(FinSet::from_mask(rng() % 1024))
                                     : HElement::face(rng() % 10, static_cast<unsigned>(rng() % 2));
        const auto lhs = hypercube::h_apply(x, hypercube::h_apply(y, z));
        const auto rhs = hypercube::h_apply(x.symmetric_difference(y), z);
        const auto hand = oracle::h(to_std(x), oracle::h(to_std(y), oracle::element(z.code())));
        failures += lhs != rhs || lhs.code() != oracle::code(hand);
    }
    c.expect(failures == 0, std::to_string(failures) + " failing triples");
    c.note("1000 triples, " + std::to_string(failures) + " failures");
    return c.done();
}

Outcome criterion3()
{
    Check c;
    std::ostringstream note;
    for (const auto& perm : hypercube::standard_permutations()) {
        const auto copy = hypercube::scrambled_copy(perm);
        auto stats = std::make_shared<hypercube::RecoveryStats>();
        hypercube::RecoveryOptions options;
        options.fuel_per_query = 100000;
        std::size_t mismatches = 0;
        std::vector<Code> sample;
        try {
            const auto f = hypercube::recover_iso(copy, perm.forward(0), options, stats);
            std::mt19937_64 rng(17);
            for (int k = 0; k < 100; ++k) {
                const Code z = rng() % 2 ? HElement::vertex(FinSet::from_mask(rng() % 64)).code()
                                         : HElement::face(rng() % 6, static_cast<unsigned>(rng() % 2)).code();
                sample.push_back(z);
                mismatches += f.apply(z) != perm.forward(z);
            }
            std::sort(sample.begin(), sample.end());
            sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
            const auto violation = find_fact_violation(hypercube::hypercube(), copy, f, sample,
                                                       hypercube::truncation_symbols(6));
            c.expect(!violation, perm.name + ": " + violation.value_or(""));
        } catch (const FuelExhausted& e) {
            c.expect(false, perm.name + ": " + e.what());
        }
        c.expect(mismatches == 0, perm.name + ": mismatches");
        c.expect(stats->max_fuel_per_query <= 100000, perm.name + ": fuel over 1e5");
        note << perm.name << " mismatches=" << mismatches << " max_fuel=" << stats->max_fuel_per_query << "; ";
    }
    c.note(note.str());
    return c.done();
}

Outcome criterion4()
{
    Check c;
    for (const auto& e : {orders::evens(), orders::squares(), orders::primes()}) {
        const auto x = OracleSession::membership("X", e.member);
        const auto f = OracleSession::of_iso("f", orders::unique_iso_to_orderX(e, x));
        for (Code k = 0; k <= 25; ++k)
            c.expect(orders::decode_x_from_iso(f, k) == e.member(k), e.name + ": decode at " + std::to_string(k));
        c.expect(x.ops_used() == std::set<std::string>{"member"}, e.name + ": iso used more than X");
        c.expect(f.ops_used() == std::set<std::string>{"inverse"}, e.name + ": decoder used more than f");
    }
    c.note("evens, squares, primes decoded for k <= 25; logs: X member only, f inverse only");
    return c.done();
}

// Topological sort, smallest code first, of the generator closure for
// x_n = 2n restricted to {0..13}. The closure is taken over {0..63} so
// that every odd element in range has both generators present.
std::vector<Code> brute_force_prefix()
{
    constexpr std::size_t big = 64;
    constexpr std::size_t range = 14;
    std::vector<std::vector<char>> less(big, std::vector<char>(big, 0));
    for (Code k = 0; 2 * k + 2 < big; ++k)
        less[2 * k][2 * k + 2] = 1;
    for (Code k = 0; 2 * k + 1 < big; ++k)
        if (4 * k + 2 < big) {
            less[4 * k][2 * k + 1] = 1;
            less[2 * k + 1][4 * k + 2] = 1;
        }
    for (std::size_t m = 0; m < big; ++m)
        for (std::size_t u = 0; u < big; ++u)
            if (less[u][m])
                for (std::size_t v = 0; v < big; ++v)
                    less[u][v] |= less[m][v];
    std::vector<Code> order;
    std::vector<char> used(range, 0);
    for (std::size_t step = 0; step < range; ++step)
        for (Code v = 0; v < range; ++v) {
            if (used[v])
                continue;
            bool minimal = true;
            for (Code u = 0; u < range; ++u)
                minimal = minimal && (used[u] || !less[u][v]);
            if (minimal) {
                used[v] = 1;
                order.push_back(v);
                break;
            }
        }
    order.resize(11);
    return order;
}

Outcome criterion5()
{
    Check c;
    const std::vector<Code> expected{0, 1, 2, 4, 3, 6, 8, 5, 10, 12, 7};
    const auto library = orders::order_prefix(orders::evens(), 11);
    const auto brute = brute_force_prefix();
    const auto [code, out] = cli({"orders", "demo", "--set", "evens", "--n", "11"});
    c.expect(library == expected, "library prefix");
    c.expect(brute == expected, "brute-force prefix");
    c.expect(code == 0 && out.find("order prefix: 0 1 2 4 3 6 8 5 10 12 7\n") != std::string::npos, "cli prefix");
    c.note("prefix 0 1 2 4 3 6 8 5 10 12 7 from library, CLI and brute-force sort");
    return c.done();
}

Outcome criterion6()
{
    Check c;
    using namespace fixtures;
    // The three-point example at bound 20.
    {
        const auto f1 = figure1_composite();
        const auto d = decompose(f1.combined(), 1);
        for (Code x = 0; x < 20; ++x)
            c.expect(d.base.contains(CompositeStructure::base_code(x)) == (x < 3), "figure-1 base universe");
        for (Code u = 0; u < 3; ++u)
            for (Code v = 0; v < 3; ++v)
                c.expect(d.base.holds({0, 0}, {CompositeStructure::base_code(u), CompositeStructure::base_code(v)})
                             == f1.base().holds({0, 0}, {u, v}),
                         "figure-1 base facts");
        for (Code x = 0; x < 3; ++x) {
            const auto inner = d.family.member(CompositeStructure::base_code(x)).inner();
            for (Code a = 0; a < 20; ++a) {
                c.expect(inner.contains(CompositeStructure::component_code(x, a)), "figure-1 member universe");
                for (Code b = 0; b < 20; ++b)
                    c.expect(inner.holds({0, 0}, {CompositeStructure::component_code(x, a),
                                                  CompositeStructure::component_code(x, b)})
                                 == f1.member(x).inner().holds({0, 0}, {a, b}),
                             "figure-1 member facts");
            }
        }
        const auto theta = LazyIso([](Code x) { return x < 2 ? 1 - x : x; }, [](Code y) { return y < 2 ? 1 - y : y; });
        const auto rho = glue_iso(theta, [](Code x) { return transport(x, x < 2 ? 1 - x : x); });
        const auto parts = split_iso(rho, f1, f1);
        const auto again = glue_iso(parts.theta, parts.psi);
        const auto elements = f1.truncation_elements({0, 1, 2}, 6);
        for (auto z : elements)
            c.expect(again.apply(z) == rho.apply(z), "figure-1 split/glue");
        c.expect(!find_fact_violation(f1.combined(), f1.combined(), rho, elements, f1.combined().signature().symbols()),
                 "figure-1 swap is not an automorphism");
    }
    std::mt19937_64 rng(1234);
    std::size_t isos = 0;
    for (int k = 0; k < 20; ++k) {
        const auto s = random_shape(rng);
        const auto c1 = build(s);
        const auto c2 = build(relabel(s, rng));
        const auto d = decompose(c1.combined(), 1);
        for (Code x = 0; x < s.base_size; ++x) {
            c.expect(d.base.contains(CompositeStructure::base_code(x)), "base point lost");
            const auto inner = d.family.member(CompositeStructure::base_code(x)).inner();
            c.expect(inner.finite_universe()->size() == s.sizes[x], "member size");
            for (Code a = 0; a < s.sizes[x]; ++a)
                for (Code b = 0; b < s.sizes[x]; ++b)
                    c.expect(inner.holds({0, 0}, {CompositeStructure::component_code(x, a),
                                                  CompositeStructure::component_code(x, b)})
                                 == c1.member(x).inner().holds({0, 0}, {a, b}),
                             "member facts");
            for (Code y = 0; y < s.base_size; ++y)
                c.expect(d.base.holds({0, 0}, {CompositeStructure::base_code(x), CompositeStructure::base_code(y)})
                             == c1.base().holds({0, 0}, {x, y}),
                         "base facts");
        }
        const auto t1 = whole(c1.combined());
        const auto t2 = whole(c2.combined());
        c.expect(t1.size() <= 12, "composite over 12 elements");
        const auto brute = brute_force_isomorphisms(t1, t2);
        const std::set<Bijection> brute_set(brute.begin(), brute.end());
        c.expect(!brute_set.empty() && brute_set == glued_isomorphisms(c1, c2), "isomorphism sets differ");
        isos += brute.size();
        for (const auto& f : brute) {
            std::map<Code, Code> table;
            for (std::size_t j = 0; j < f.domain.size(); ++j)
                table[f.domain[j]] = f.image[j];
            const auto parts = split_iso(table_iso(table), c1, c2);
            const auto again = glue_iso(parts.theta, parts.psi);
            for (auto z : f.domain)
                c.expect(again.apply(z) == table.at(z), "split/glue round trip");
        }
    }
    c.note("figure-1 and 20 seeded composites; " + std::to_string(isos) + " isomorphisms matched the glued set");
    return c.done();
}

Outcome criterion7()
{
    Check c;
    spectra::FamilyPair fp;
    fp.A = [](std::uint64_t k) { return finite_digraph(1, {}, "A_" + std::to_string(k)); };
    fp.B = [](std::uint64_t k) { return finite_digraph(1, {}, "B_" + std::to_string(k)); };
    fp.signature = finite_digraph(1, {}).signature();
    const auto mn = spectra::build_MN(fp);
    std::set<Code> drawn;
    for (const auto& [name, label] : figures::kLeftLabels) {
        const Code z = oracle::code(figures::node(name));
        drawn.insert(z);
        const auto& right = figures::kRightLabels.at(name);
        c.expect(spectra::select_M(HElement::decode(z)).to_string() == label, "M label at " + name);
        c.expect(spectra::select_N(HElement::decode(z)).to_string() == right, "N label at " + name);
        c.expect(mn.M.member(z).tag() == z && mn.M.member(z).inner().name() == label, "M member at " + name);
        c.expect(mn.N.member(z).tag() == z && mn.N.member(z).inner().name() == right, "N member at " + name);
    }
    const auto cube = hypercube::truncation_elements(3);
    c.expect(drawn == std::set<Code>(cube.begin(), cube.end()), "drawing covers the depth-3 truncation");
    c.note("14 nodes, both sides");
    return c.done();
}

bool only_iso_ops(const OracleSession& s)
{
    for (const auto& op : s.ops_used())
        if (op != "apply" && op != "inverse")
            return false;
    return s.query_count() > 0;
}

Outcome criterion8()
{
    Check c;
    const std::vector<orders::CEEnumeration> sets{orders::evens(), orders::squares(), orders::primes()};
    const auto fp = spectra::order_family_pair(sets);
    const auto mn = spectra::build_MN(fp);
    for (std::uint64_t n : {0U, 1U, 3U}) {
        const std::string tag = "n=" + std::to_string(n);
        const auto& e = sets[n % sets.size()];
        const auto x = OracleSession::membership("X", e.member);
        const auto theta = OracleSession::of_iso("theta", orders::unique_iso_to_orderX(e, x));
        const auto reference = orders::unique_iso_to_orderX(e, OracleSession::membership("X'", e.member));
        const auto lifted = n == 0 ? spectra::lift_iso_base(theta, fp) : spectra::lift_iso_face(n - 1, theta, fp);
        const auto violation = find_fact_violation(mn.M.combined(), mn.N.combined(), lifted,
                                                   spectra::truncation_elements(mn.M, 3, 3),
                                                   spectra::truncation_symbols(mn.M, 3));
        c.expect(!violation, tag + ": lift " + violation.value_or(""));
        c.expect(only_iso_ops(theta), tag + ": lift consulted more than theta");
        const auto rho = OracleSession::of_iso("rho", lifted);
        const auto got = spectra::extract_component_iso(rho, fp);
        c.expect(got.index == n, tag + ": index");
        std::mt19937_64 rng(100 + n);
        for (int k = 0; k < 50; ++k) {
            const Code a = rng() % 200;
            c.expect(got.theta.apply(a) == reference.apply(a), tag + ": forward sample");
            c.expect(got.theta.inverse_apply(reference.apply(a)) == a, tag + ": backward sample");
        }
        c.expect(only_iso_ops(rho), tag + ": extraction consulted more than rho");
        c.expect(x.ops_used() == std::set<std::string>{"member"}, tag + ": theta consulted more than X");
    }
    const auto report = spectra::union_spectrum_demo(sets);
    c.expect(report.ok(), "union demo");
    c.note("base, face 0, face 2: 50 samples each; audits clean; demo rows " + std::to_string(report.rows.size()));
    return c.done();
}

Outcome criterion9()
{
    Check c;
    using namespace categoricity;
    auto rotation = [](std::uint64_t j) { return block_rotation(j + 2, 1); };
    auto c_of = [rotation](std::uint64_t j) { return permuted_copy(omega_order(), rotation(j)); };
    auto g_of = [rotation](std::uint64_t j) { return as_iso(rotation(j)); };
    const IsoFamily h = [g_of](std::uint64_t i) { return g_of(alpha(eta(i))); };
    const PlacedStructures b = [c_of](const HElement& z) { return c_of(alpha(z)); };
    const auto rho_iso = deuniformize(h, b);
    const auto rho = OracleSession::of_iso("rho", rho_iso);
    const auto back = uniformize(rho, c_of);
    std::mt19937_64 rng(42);
    for (int k = 0; k < 50; ++k) {
        const std::uint64_t j = rng() % 8;
        const Code a = rng() % 1000;
        c.expect(back(j).apply(a) == g_of(j).apply(a), "uniformize(deuniformize(h)) differs from h");
    }
    c.expect(only_iso_ops(rho), "uniformize consulted more than rho");
    for (Code z = 0; z < 500; ++z)
        c.expect(rho_iso.apply(CompositeStructure::base_code(z)) == CompositeStructure::base_code(z),
                 "base point moved");
    const auto src = h_of(omega_order());
    const auto dst = placed(b);
    c.expect(!find_fact_violation(src.combined(), dst.combined(), rho_iso, spectra::truncation_elements(src, 2, 4),
                                  spectra::truncation_symbols(src, 2)),
             "deuniformize output is not an isomorphism on the depth-2 truncation");
    for (FinSet x : {FinSet{}, FinSet{1}, FinSet{0, 2}}) {
        const auto r = OracleSession::of_iso("rho", assemble(x, g_of));
        const auto hh = uniformize(r, c_of);
        for (std::uint64_t i = 0; i < 6; ++i)
            for (Code a = 0; a < 30; ++a)
                c.expect(hh(i).apply(a) == g_of(i).apply(a), "uniformize(assemble) at X=" + x.to_string());
    }
    const auto [code, out] = cli({"catlab", "roundtrip", "--samples", "50"});
    c.expect(code == 0, "catlab roundtrip verb");
    c.note("50 samples; 500 base points fixed; assembled isos recovered for 3 reflections");
    return c.done();
}

struct Criterion {
    int number;
    const char* title;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list{
        {1, "automorphism group of the cube", criterion1},
        {2, "composition law", criterion2},
        {3, "stability recovery", criterion3},
        {4, "order round trip", criterion4},
        {5, "order prefix", criterion5},
        {6, "composite round trips", criterion6},
        {7, "M/N component assignment", criterion7},
        {8, "lift and extract", criterion8},
        {9, "categoricity round trip", criterion9},
    };
    return list;
}

struct Pass {
    std::vector<Outcome> outcomes;
    std::vector<double> seconds;
    std::string digest_input;
};

Pass run_all()
{
    Pass p;
    for (const auto& cr : criteria()) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        p.seconds.push_back(seconds_since(t0));
        p.digest_input += std::to_string(cr.number) + (o.pass ? "P" : "F") + o.detail + '\n';
        p.outcomes.push_back(std::move(o));
    }
    // CLI outputs join the digest.
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--seed", "5", "hcube", "recover", "--samples", "40"},
             {"--format", "json", "spectra", "demo", "--jobs", "2"},
             {"--seed", "5", "catlab", "roundtrip"},
             {"hcube", "dot", "--n", "3"},
         })
        p.digest_input += cli(args).second;
    return p;
}

std::string hex_digest(const std::string& s)
{
    // FNV-1a, 64 bit.
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

int main()
{
    const auto t0 = std::chrono::steady_clock::now();
    const Pass first = run_all();
    const Pass second = run_all();
    const double total = seconds_since(t0);

    bool all = true;
    for (std::size_t k = 0; k < criteria().size(); ++k) {
        const auto& o = first.outcomes[k];
        all = all && o.pass;
        std::printf("criterion %d: %s  %s (%.2f s): %s\n", criteria()[k].number, o.pass ? "PASS" : "FAIL",
                    criteria()[k].title, first.seconds[k], o.detail.c_str());
    }
    const bool same = first.digest_input == second.digest_input;
    const bool fast = total < 120.0;
    all = all && same && fast;
    std::printf("criterion 10: %s  determinism and runtime: digests %s / %s, two full passes in %.2f s\n",
                same && fast ? "PASS" : "FAIL", hex_digest(first.digest_input).c_str(),
                hex_digest(second.digest_input).c_str(), total);
    std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
    return all ? 0 : 1;
}

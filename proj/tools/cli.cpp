#include "cli.hpp"

#include "compstruct/categoricity.hpp"
#include "compstruct/composite.hpp"
#include "compstruct/error.hpp"
#include "compstruct/hypercube.hpp"
#include "compstruct/isomorphism.hpp"
#include "compstruct/orders.hpp"
#include "compstruct/spectra.hpp"
#include "compstruct/structures.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace compstruct::cli {
namespace {

using json = nlohmann::ordered_json;
using hypercube::FinSet;
using hypercube::HElement;

enum class Format { text, json, dot };

struct Config {
    std::uint64_t fuel = Fuel::kDefault;
    std::uint64_t seed = 1;
    Format format = Format::text;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw VerificationFailed(what);
}

void no_dot(const Config& cfg, const std::string& verb)
{
    if (cfg.format == Format::dot)
        throw UsageError(verb + " has no DOT output");
}

std::string join(const std::vector<Code>& v, const char* sep = " ")
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string symbol_name(Symbol s)
{
    std::ostringstream os;
    os << s;
    return os.str();
}

std::vector<unsigned> set_elements(FinSet x)
{
    return x.elements();
}

// "3" for base point 3, "(2,5)" for element 5 of the component at 2.
std::string composite_label(Code z)
{
    const auto d = CompositeStructure::decode(z);
    if (!d)
        return std::to_string(z);
    if (d->is_base)
        return std::to_string(d->point);
    return "(" + std::to_string(d->point) + "," + std::to_string(d->inner) + ")";
}

void emit_finite(std::ostream& out, const Config& cfg, const FinitePresentation& f, const DotOptions& dot = {})
{
    switch (cfg.format) {
    case Format::text:
        out << to_text(f);
        break;
    case Format::dot:
        out << to_dot(f, dot);
        break;
    case Format::json:
        out << json{{"elements", f.elements()}}.dump() << '\n';
        for (const auto& fact : f.facts())
            out << json{{"symbol", symbol_name(fact.symbol)}, {"args", fact.args}}.dump() << '\n';
        break;
    }
}

// Built-in composites, each with an isomorphism to itself given as base map
// plus component maps.
struct Example {
    CompositeStructure composite;
    LazyIso theta;
    ComponentIsos psi;
};

Example example(const std::string& name)
{
    ComponentIsos identity = [](Code x) { return transport(x, x); };
    if (name == "figure1") {
        auto swap = [](Code x) { return x < 2 ? 1 - x : x; };
        ComponentIsos psi = [](Code x) { return transport(x, x < 2 ? 1 - x : x); };
        return {figure1_composite(), LazyIso(swap, swap, "swap01"), psi};
    }
    if (name == "minimal")
        return {minimal_composite(), LazyIso::identity(), identity};
    if (name == "path")
        return {build_path_composite({omega_order(), omega_order(), integer_order()}), LazyIso::identity(), identity};
    throw UsageError("unknown example '" + name + "' (figure1, minimal, path)");
}

std::vector<Code> base_points(const CompositeStructure& c)
{
    return *c.base().finite_universe();
}

DotOptions composite_dot(const std::string& name)
{
    DotOptions dot;
    dot.graph_name = name;
    dot.label = composite_label;
    dot.hide_self_loops = true;
    return dot;
}

int cmd_compose(const Config& cfg, const std::string& name, std::size_t bound, std::ostream& out)
{
    const auto ex = example(name);
    const auto t = composite_truncation(ex.composite, bound);
    const Symbol mu = CompositeStructure::mu();
    for (auto z : t.elements()) {
        std::vector<Code> targets;
        for (auto w : t.elements())
            if (t.holds(mu, {z, w}))
                targets.push_back(w);
        require(targets.size() == 1, composite_label(z) + " does not have exactly one mu-edge");
        require(t.holds(mu, {targets[0], targets[0]}), composite_label(z) + " has a mu-target off the base");
    }
    emit_finite(out, cfg, t, composite_dot(name));
    return kOk;
}

int cmd_decompose(const Config& cfg, const std::string& name, std::size_t bound, std::ostream& out)
{
    const auto ex = example(name);
    const auto& c = ex.composite;
    const auto d = decompose(c.combined(), c.base().signature().families().size());
    Fuel fuel(cfg.fuel);

    const auto original = base_points(c);
    const auto points = d.base.first(original.size(), &fuel);
    std::vector<Code> expected;
    for (auto x : original)
        expected.push_back(CompositeStructure::base_code(x));
    require(points == expected, "recovered base points differ from the composed ones");

    const auto base = induced_substructure(d.base, points, d.base.signature().symbols());
    const auto source = induced_substructure(c.base(), original, c.base().signature().symbols());
    require(!brute_force_isomorphisms(source, base, 1).empty(), "recovered base is not isomorphic to the original");

    std::vector<std::pair<Code, std::vector<Code>>> members;
    for (std::size_t k = 0; k < points.size(); ++k) {
        auto codes = d.family.member(points[k]).inner().first(bound, &fuel);
        std::vector<Code> want;
        for (auto a : c.member(original[k]).inner().first(bound))
            want.push_back(CompositeStructure::component_code(original[k], a));
        require(codes == want, "member at " + std::to_string(original[k]) + " differs from the composed one");
        members.emplace_back(points[k], std::move(codes));
    }

    emit_finite(out, cfg, base, composite_dot(name + "-base"));
    if (cfg.format == Format::text)
        for (const auto& [g, codes] : members)
            out << "member " << g << ": " << join(codes) << '\n';
    else if (cfg.format == Format::json)
        for (const auto& [g, codes] : members)
            out << json{{"member", g}, {"codes", codes}}.dump() << '\n';
    return kOk;
}

int cmd_glue(const Config& cfg, const std::string& name, std::size_t bound, std::ostream& out)
{
    no_dot(cfg, "glue");
    const auto ex = example(name);
    const auto& c = ex.composite;
    const LazyIso rho = glue_iso(ex.theta, ex.psi);
    const auto elements = c.truncation_elements(base_points(c), bound);
    const auto violation =
        find_fact_violation(c.combined(), c.combined(), rho, elements, c.combined().signature().symbols());
    for (auto z : elements) {
        const Code w = rho.apply(z);
        if (cfg.format == Format::text)
            out << composite_label(z) << " -> " << composite_label(w) << '\n';
        else
            out << json{{"from", z}, {"to", w}, {"from_label", composite_label(z)}, {"to_label", composite_label(w)}}
                       .dump()
                << '\n';
    }
    require(!violation, violation.value_or(""));
    return kOk;
}

int cmd_split(const Config& cfg, const std::string& name, std::size_t bound, std::ostream& out)
{
    no_dot(cfg, "split");
    const auto ex = example(name);
    const auto& c = ex.composite;
    const auto parts = split_iso(glue_iso(ex.theta, ex.psi), c, c);
    for (auto x : base_points(c)) {
        const Code y = parts.theta.apply(x);
        require(y == ex.theta.apply(x), "split base map differs at " + std::to_string(x));
        const LazyIso piece = parts.psi(x);
        const LazyIso orig = ex.psi(x);
        std::vector<std::pair<Code, Code>> pairs;
        for (auto a : c.member(x).inner().first(bound)) {
            const Code m = piece.apply(encode_pair(x, a));
            require(m == orig.apply(encode_pair(x, a)), "split component map differs at " + composite_label(
                                                            CompositeStructure::component_code(x, a)));
            pairs.emplace_back(a, pair_second(m));
        }
        if (cfg.format == Format::text) {
            out << "theta: " << x << " -> " << y << '\n';
            out << "psi(" << x << "):";
            for (auto [a, b] : pairs)
                out << ' ' << a << "->" << b;
            out << '\n';
        } else {
            json maps = json::array();
            for (auto [a, b] : pairs)
                maps.push_back({a, b});
            out << json{{"base", x}, {"theta", y}, {"psi", maps}}.dump() << '\n';
        }
    }
    return kOk;
}

int cmd_hcube_autos(const Config& cfg, unsigned n, unsigned limit, std::ostream& out)
{
    no_dot(cfg, "hcube autos");
    const auto autos = hypercube::enumerate_automorphisms_finite(n, limit);
    std::vector<std::pair<FinSet, const Bijection*>> matched;
    for (const auto& f : autos) {
        const auto x = hypercube::match_h(f, n);
        require(x.has_value(), "an automorphism is not of the form h_X");
        matched.emplace_back(*x, &f);
    }
    if (cfg.format == Format::text)
        out << "automorphisms: " << autos.size() << '\n';
    for (const auto& [x, f] : matched) {
        if (cfg.format == Format::text) {
            out << "X=" << x.to_string() << ':';
            for (std::size_t k = 0; k < f->domain.size(); ++k)
                out << ' ' << f->domain[k] << "->" << f->image[k];
            out << '\n';
        } else {
            json map = json::array();
            for (std::size_t k = 0; k < f->domain.size(); ++k)
                map.push_back({f->domain[k], f->image[k]});
            out << json{{"X", set_elements(x)}, {"map", map}}.dump() << '\n';
        }
    }
    if (cfg.format == Format::json)
        out << json{{"automorphisms", autos.size()}}.dump() << '\n';
    require(autos.size() == (std::size_t{1} << n), "expected 2^n automorphisms");
    std::set<FinSet> distinct;
    for (const auto& m : matched)
        distinct.insert(m.first);
    require(distinct.size() == autos.size(), "two automorphisms match the same h_X");
    return kOk;
}

int cmd_hcube_recover(const Config& cfg, const std::vector<std::string>& names, std::size_t samples, unsigned dims,
                      std::ostream& out)
{
    no_dot(cfg, "hcube recover");
    if (dims == 0 || dims > 16)
        throw UsageError("--dims must be in 1..16");
    std::vector<CodePermutation> perms;
    if (names.empty())
        perms = hypercube::standard_permutations();
    for (const auto& n : names)
        perms.push_back(hypercube::permutation_by_name(n));

    std::mt19937_64 rng(cfg.seed);
    bool ok = true;
    for (const auto& perm : perms) {
        const Presentation copy = hypercube::scrambled_copy(perm);
        auto stats = std::make_shared<hypercube::RecoveryStats>();
        hypercube::RecoveryOptions options;
        options.fuel_per_query = cfg.fuel;
        const LazyIso f = hypercube::recover_iso(copy, perm.forward(0), options, stats);

        std::vector<Code> sample;
        std::size_t mismatches = 0;
        for (std::size_t k = 0; k < samples; ++k) {
            const HElement z = rng() % 2 == 0
                ? HElement::vertex(FinSet::from_mask(rng() % (std::uint64_t{1} << dims)))
                : HElement::face(rng() % dims, static_cast<unsigned>(rng() % 2));
            const Code c = z.code();
            sample.push_back(c);
            if (f.apply(c) != perm.forward(c) || f.inverse_apply(perm.forward(c)) != c)
                ++mismatches;
        }
        std::sort(sample.begin(), sample.end());
        sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
        const auto violation =
            find_fact_violation(hypercube::hypercube(), copy, f, sample, hypercube::truncation_symbols(dims));
        ok = ok && mismatches == 0 && !violation;

        if (cfg.format == Format::text) {
            out << perm.name << ": samples=" << samples << " mismatches=" << mismatches
                << " facts=" << (violation ? "violated" : "ok") << " queries=" << stats->queries
                << " max_fuel=" << stats->max_fuel_per_query << '\n';
            if (violation)
                out << "  " << *violation << '\n';
        } else {
            json j{{"perm", perm.name},         {"samples", samples},
                   {"mismatches", mismatches},  {"facts_ok", !violation},
                   {"queries", stats->queries}, {"max_fuel", stats->max_fuel_per_query}};
            out << j.dump() << '\n';
        }
    }
    require(ok, "recovered isomorphism disagrees with the permutation");
    return kOk;
}

int cmd_hcube_dot(const Config& cfg, unsigned n, std::ostream& out)
{
    if (n > 12)
        throw UsageError("--n must be at most 12");
    if (cfg.format == Format::dot) {
        out << hypercube::truncation_dot(n);
        return kOk;
    }
    emit_finite(out, cfg, hypercube::truncation(n));
    return kOk;
}

std::string log_text(const OracleSession& s)
{
    std::string line;
    for (const auto& q : s.log()) {
        if (!line.empty())
            line += ' ';
        line += q.op + "(" + std::to_string(q.arg) + ")=" + std::to_string(q.answer);
    }
    return line;
}

std::string ops_text(const OracleSession& s)
{
    std::string line;
    for (const auto& op : s.ops_used())
        line += (line.empty() ? "" : ",") + op;
    return line;
}

int cmd_orders_demo(const Config& cfg, const std::string& set, std::size_t n, Code decode_bound, std::ostream& out)
{
    no_dot(cfg, "orders demo");
    const auto e = orders::by_name(set);
    orders::validate(e);

    const auto prefix = orders::order_prefix(e, n);
    const auto x_oracle = OracleSession::membership("X", e.member);
    const LazyIso f = orders::unique_iso_to_orderX(e, x_oracle);
    std::vector<Code> iso_prefix;
    for (Code k = 0; k < n; ++k)
        iso_prefix.push_back(f.apply(k));
    const auto f_oracle = OracleSession::of_iso("f", f);
    std::vector<Code> decoded;
    bool decode_ok = true;
    for (Code k = 0; k <= decode_bound; ++k) {
        const bool in = orders::decode_x_from_iso(f_oracle, k);
        if (in)
            decoded.push_back(k);
        decode_ok = decode_ok && in == e.member(k);
    }

    if (cfg.format == Format::text) {
        out << "set: " << e.name << '\n';
        out << "order prefix: " << join(prefix) << '\n';
        out << "iso prefix: " << join(iso_prefix) << '\n';
        out << "decoded (k <= " << decode_bound << "): " << join(decoded) << '\n';
        out << "x-oracle: " << x_oracle.query_count() << " queries (" << ops_text(x_oracle) << ")\n";
        out << "f-oracle: " << f_oracle.query_count() << " queries (" << ops_text(f_oracle) << ")\n";
        out << "x-oracle log: " << log_text(x_oracle) << '\n';
        out << "f-oracle log: " << log_text(f_oracle) << '\n';
    } else {
        auto log_json = [](const OracleSession& s) {
            json a = json::array();
            for (const auto& q : s.log())
                a.push_back({{"op", q.op}, {"arg", q.arg}, {"answer", q.answer}});
            return a;
        };
        out << json{{"set", e.name}}.dump() << '\n';
        out << json{{"order_prefix", prefix}}.dump() << '\n';
        out << json{{"iso_prefix", iso_prefix}}.dump() << '\n';
        out << json{{"decoded", decoded}, {"bound", decode_bound}}.dump() << '\n';
        out << json{{"x_oracle", log_json(x_oracle)}}.dump() << '\n';
        out << json{{"f_oracle", log_json(f_oracle)}}.dump() << '\n';
    }

    require(prefix == iso_prefix, "order prefix and isomorphism prefix differ");
    for (std::size_t k = 1; k < prefix.size(); ++k)
        require(orders::less_x(e, prefix[k - 1], prefix[k]), "order prefix is not increasing");
    require(decode_ok, "decoded set differs from X");
    require(x_oracle.ops_used() == std::set<std::string>{"member"}, "isomorphism used more than the X-oracle");
    require(f_oracle.ops_used() == std::set<std::string>{"inverse"}, "decoder used more than the f-oracle");
    return kOk;
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            parts.push_back(item);
    return parts;
}

int cmd_spectra_demo(const Config& cfg, const std::string& sets, spectra::DemoOptions options, std::ostream& out)
{
    no_dot(cfg, "spectra demo");
    std::vector<orders::CEEnumeration> enums;
    for (const auto& s : split_commas(sets))
        enums.push_back(orders::by_name(s));
    if (enums.empty())
        throw UsageError("--sets needs at least one set");
    const auto report = spectra::union_spectrum_demo(enums, options);
    out << (cfg.format == Format::json ? report.to_json_lines() : report.to_text());
    require(report.ok(), "spectrum demo failed");
    return kOk;
}

int cmd_catlab_roundtrip(const Config& cfg, std::size_t samples, unsigned depth, std::ostream& out)
{
    no_dot(cfg, "catlab roundtrip");
    if (depth > 4)
        throw UsageError("--depth must be at most 4");
    using namespace categoricity;
    const Presentation a = omega_order();
    auto rotation = [](std::uint64_t j) { return block_rotation(j + 2, 1); };
    const IndexedStructures c = [a, rotation](std::uint64_t j) { return permuted_copy(a, rotation(j)); };
    const IsoFamily g = [rotation](std::uint64_t j) { return as_iso(rotation(j)); };
    const std::uint64_t components = depth + 2;

    std::mt19937_64 rng(cfg.seed);
    std::vector<Code> points;
    for (std::size_t k = 0; k < samples; ++k)
        points.push_back(rng() % 1000);

    std::vector<std::pair<std::string, bool>> lines;
    auto record = [&](std::string what, bool ok) { lines.emplace_back(std::move(what), ok); };

    // h recovered from an assembled isomorphism, for several base reflections.
    for (FinSet x : {FinSet{}, FinSet{1}, FinSet{0, 2}}) {
        const auto rho = OracleSession::of_iso("rho", assemble(x, g));
        const IsoFamily h = uniformize(rho, c);
        bool ok = true;
        for (std::uint64_t j = 0; j < components; ++j) {
            const LazyIso hj = h(j);
            const LazyIso gj = g(j);
            for (auto p : points)
                ok = ok && hj.apply(p) == gj.apply(p) && hj.inverse_apply(gj.apply(p)) == p;
        }
        for (const auto& op : rho.ops_used())
            ok = ok && (op == "apply" || op == "inverse");
        ok = ok && rho.query_count() > 0;
        record("uniformize X=" + x.to_string() + " recovers g", ok);
    }

    // ρ built from h through η, then read back.
    const IsoFamily hh = [g](std::uint64_t i) { return g(alpha(eta(i))); };
    const PlacedStructures b = [c](const HElement& z) { return c(alpha(z)); };
    const LazyIso rho = deuniformize(hh, b);
    const auto source = h_of(a);
    const auto target = alpha_assembled(c);

    bool fixes = true;
    for (auto z : hypercube::truncation_elements(depth + 1))
        fixes = fixes && rho.apply(CompositeStructure::base_code(z)) == CompositeStructure::base_code(z);
    record("deuniformize fixes base points", fixes);

    const auto violation = find_fact_violation(source.combined(), target.combined(), rho,
                                               spectra::truncation_elements(source, depth, 3),
                                               spectra::truncation_symbols(source, depth));
    record("deuniformize preserves facts at depth " + std::to_string(depth), !violation);

    const auto rho_session = OracleSession::of_iso("rho", rho);
    const IsoFamily back = uniformize(rho_session, c);
    bool round = true;
    for (std::uint64_t j = 0; j < components; ++j) {
        const HElement placed_at = j == 0 ? HElement::vertex({}) : HElement::face(j - 1, 0);
        const LazyIso expect = hh(eta_inverse(placed_at));
        const LazyIso got = back(j);
        for (auto p : points)
            round = round && got.apply(p) == expect.apply(p);
    }
    record("uniformize after deuniformize matches h through eta", round);

    bool all = true;
    for (const auto& [what, ok] : lines) {
        all = all && ok;
        if (cfg.format == Format::text)
            out << (ok ? "ok   " : "FAIL ") << what << '\n';
        else
            out << json{{"check", what}, {"ok", ok}}.dump() << '\n';
    }
    if (violation && cfg.format == Format::text)
        out << "  " << *violation << '\n';
    require(all, "categoricity round trip failed");
    return kOk;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_verify(const Config& cfg, const std::string& left, const std::string& right, std::optional<std::size_t> expect,
               std::ostream& out)
{
    no_dot(cfg, "verify");
    const auto text_a = read_file(left);
    const auto text_b = read_file(right);
    auto syms = from_text(text_a).symbols();
    const auto more = from_text(text_b).symbols();
    syms.insert(syms.end(), more.begin(), more.end());
    const auto a = from_text(text_a, syms);
    const auto b = from_text(text_b, syms);

    bool comparable = a.symbols() == b.symbols();
    for (const auto& s : a.symbols())
        comparable = comparable && a.signature().arity(s) == b.signature().arity(s);
    const auto isos = comparable ? brute_force_isomorphisms(a, b) : std::vector<Bijection>{};

    if (cfg.format == Format::text) {
        out << "isomorphisms: " << isos.size() << '\n';
        if (!isos.empty()) {
            out << "first:";
            for (std::size_t k = 0; k < isos[0].domain.size(); ++k)
                out << ' ' << isos[0].domain[k] << "->" << isos[0].image[k];
            out << '\n';
        }
    } else {
        json first = json::array();
        if (!isos.empty())
            for (std::size_t k = 0; k < isos[0].domain.size(); ++k)
                first.push_back({isos[0].domain[k], isos[0].image[k]});
        out << json{{"isomorphisms", isos.size()}, {"first", first}}.dump() << '\n';
    }
    if (expect)
        require(isos.size() == *expect, "expected " + std::to_string(*expect) + " isomorphisms");
    else
        require(!isos.empty(), "structures are not isomorphic");
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Computable composite structures and the hypercube", "compstruct"};
    app.fallthrough();
    app.require_subcommand(1);

    Config cfg;
    std::string format_name = "text";
    app.add_option("--fuel", cfg.fuel, "Query budget for searches")
        ->envname("COMPSTRUCT_FUEL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();

    std::string example_name = "figure1";
    std::size_t bound = 3;
    std::function<int()> action;
    for (const char* verb : {"compose", "decompose", "glue", "split"}) {
        auto* sub = app.add_subcommand(verb, std::string(verb) + " a built-in composite");
        sub->add_option("--example", example_name, "figure1, minimal or path")->capture_default_str();
        sub->add_option("--bound", bound, "Elements shown per component")->capture_default_str();
        const std::string v = verb;
        sub->callback([&, v] {
            action = [&, v] {
                if (v == "compose")
                    return cmd_compose(cfg, example_name, bound, out);
                if (v == "decompose")
                    return cmd_decompose(cfg, example_name, bound, out);
                if (v == "glue")
                    return cmd_glue(cfg, example_name, bound, out);
                return cmd_split(cfg, example_name, bound, out);
            };
        });
    }

    auto* hcube = app.add_subcommand("hcube", "The hypercube structure");
    hcube->require_subcommand(1);
    unsigned n = 3;
    unsigned limit = hypercube::kDefaultBruteForceLimit;
    auto* autos = hcube->add_subcommand("autos", "Automorphisms of a truncation by brute force");
    autos->add_option("--n", n, "Truncation depth")->capture_default_str();
    autos->add_option("--limit", limit, "Largest depth searched exhaustively")->capture_default_str();
    autos->callback([&] { action = [&] { return cmd_hcube_autos(cfg, n, limit, out); }; });

    std::vector<std::string> perm_names;
    std::size_t samples = 100;
    unsigned dims = 6;
    auto* recover = hcube->add_subcommand("recover", "Recover the isomorphism onto a scrambled copy");
    recover->add_option("--perm", perm_names, "rot-3-1, rot-7-3 or rot-16-5 (default: all)");
    recover->add_option("--samples", samples, "Sampled elements")->capture_default_str();
    recover->add_option("--dims", dims, "Sampled elements use indices below this")->capture_default_str();
    recover->callback([&] { action = [&] { return cmd_hcube_recover(cfg, perm_names, samples, dims, out); }; });

    auto* dot = hcube->add_subcommand("dot", "Draw a truncation");
    dot->add_option("--n", n, "Truncation depth")->capture_default_str();
    dot->callback([&] {
        action = [&] {
            Config c = cfg;
            if (app.get_option("--format")->count() == 0)
                c.format = Format::dot;
            return cmd_hcube_dot(c, n, out);
        };
    });

    std::string set = "evens";
    std::size_t order_n = 25;
    Code decode_bound = 25;
    auto* orders_cmd = app.add_subcommand("orders", "Orders coding a set");
    orders_cmd->require_subcommand(1);
    auto* odemo = orders_cmd->add_subcommand("demo", "Order prefix, isomorphism and decoded set");
    odemo->add_option("--set", set, "evens, squares or primes")->capture_default_str();
    odemo->add_option("--n", order_n, "Prefix length")->capture_default_str();
    odemo->add_option("--decode-bound", decode_bound, "Decode k up to this bound")->capture_default_str();
    odemo->callback([&] { action = [&] { return cmd_orders_demo(cfg, set, order_n, decode_bound, out); }; });

    std::string sets = "evens,squares,primes";
    spectra::DemoOptions demo;
    auto* spectra_cmd = app.add_subcommand("spectra", "Lifting and extracting component isomorphisms");
    spectra_cmd->require_subcommand(1);
    auto* sdemo = spectra_cmd->add_subcommand("demo", "Run the lift, validate, extract and decode rows");
    sdemo->add_option("--sets", sets, "Comma-separated enumerations")->capture_default_str();
    sdemo->add_option("--depth", demo.depth, "Validation depth")->capture_default_str();
    sdemo->add_option("--decode-bound", demo.decode_bound, "Decode k up to this bound")->capture_default_str();
    sdemo->add_option("--per-component", demo.per_component, "Component elements validated")->capture_default_str();
    sdemo->add_option("--jobs", demo.jobs, "Rows run in parallel")->check(CLI::PositiveNumber)->capture_default_str();
    sdemo->callback([&] { action = [&] { return cmd_spectra_demo(cfg, sets, demo, out); }; });

    std::size_t cat_samples = 50;
    unsigned cat_depth = 2;
    auto* catlab = app.add_subcommand("catlab", "Uniform categoricity constructions");
    catlab->require_subcommand(1);
    auto* roundtrip = catlab->add_subcommand("roundtrip", "uniformize and deuniformize round trips");
    roundtrip->add_option("--samples", cat_samples, "Sampled points per map")->capture_default_str();
    roundtrip->add_option("--depth", cat_depth, "Truncation depth for the fact check")->capture_default_str();
    roundtrip->callback([&] { action = [&] { return cmd_catlab_roundtrip(cfg, cat_samples, cat_depth, out); }; });

    std::string left;
    std::string right;
    std::optional<std::size_t> expect;
    auto* verify = app.add_subcommand("verify", "Count isomorphisms between two text-format structures");
    verify->add_option("left", left, "First structure")->required();
    verify->add_option("right", right, "Second structure")->required();
    verify->add_option("--expect", expect, "Required number of isomorphisms");
    verify->callback([&] { action = [&] { return cmd_verify(cfg, left, right, expect, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    cfg.format = format_name == "json" ? Format::json : format_name == "dot" ? Format::dot : Format::text;
    try {
        return action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const LimitExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const FuelExhausted& e) {
        err << "error: " << e.what() << '\n';
        return kFuelExhausted;
    } catch (const VerificationFailed& e) {
        err << "verification failed: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const std::exception& e) {
        err << "verification failed: " << e.what() << '\n';
        return kVerificationFailed;
    }
}

} // namespace compstruct::cli

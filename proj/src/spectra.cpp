#include "compstruct/spectra.hpp"

#include "compstruct/error.hpp"
#include "compstruct/isomorphism.hpp"
#include "compstruct/structures.hpp"

#include <json.hpp>

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace compstruct::spectra {

using hypercube::FinSet;
using hypercube::HElement;

std::string Selection::to_string() const
{
    return std::string(side == Side::A ? "A_" : "B_") + std::to_string(index);
}

Selection select_M(const HElement& z)
{
    if (z.is_face())
        return {z.bit() == 0 ? Side::A : Side::B, z.index() + 1};
    return {z.set().size() % 2 == 0 ? Side::A : Side::B, 0};
}

Selection select_N(const HElement& z)
{
    if (z.is_face())
        return select_M(z);
    return {z.set().size() % 2 == 0 ? Side::B : Side::A, 0};
}

namespace {

UniformFamily selected_family(const FamilyPair& fp, Selection (*select)(const HElement&))
{
    UniformFamily family;
    family.index_contains = [](Code) { return true; };
    family.member = [fp, select](Code z) {
        const Selection s = select(HElement::decode(z));
        return TaggedCopy(z, s.side == Side::A ? fp.A(s.index) : fp.B(s.index));
    };
    family.signature = fp.signature;
    return family;
}

Code vertex_code(FinSet s) { return HElement::vertex(s).code(); }

bool odd(const HElement& z) { return z.set().size() % 2 == 1; }

} // namespace

MN build_MN(const FamilyPair& fp)
{
    return {compose(hypercube::hypercube(), selected_family(fp, &select_M)),
            compose(hypercube::hypercube(), selected_family(fp, &select_N))};
}

LazyIso hat(const LazyIso& theta, Code from_tag, Code to_tag)
{
    auto forward = [theta, from_tag, to_tag](Code m) {
        const auto [tag, a] = decode_pair(m);
        if (tag != from_tag)
            throw TagMismatch("hat: expected tag " + std::to_string(from_tag) + ", got " + std::to_string(tag));
        return encode_pair(to_tag, theta.apply(a));
    };
    auto backward = [theta, from_tag, to_tag](Code m) {
        const auto [tag, b] = decode_pair(m);
        if (tag != to_tag)
            throw TagMismatch("hat^-1: expected tag " + std::to_string(to_tag) + ", got " + std::to_string(tag));
        return encode_pair(from_tag, theta.inverse_apply(b));
    };
    return LazyIso(forward, backward, "hat");
}

LazyIso lift_iso_base(const OracleSession& theta, const FamilyPair& /*fp*/)
{
    const LazyIso hat_theta = hat(iso_through(theta), vertex_code({}), vertex_code({}));
    const Code empty = vertex_code({});
    ComponentIsos psi = [hat_theta, empty](Code y) {
        const HElement z = HElement::decode(y);
        if (z.is_face())
            return transport(y, y);
        // Even: A_0 at Y in M onto B_0 at Y in N, routed through ∅.
        // Odd: B_0 at Y in M onto A_0 at Y in N.
        if (!odd(z))
            return compose(transport(empty, y), compose(hat_theta, transport(y, empty)));
        return compose(transport(empty, y), compose(hat_theta.inverse(), transport(y, empty)));
    };
    return glue_iso(hypercube::h_iso({}), psi);
}

LazyIso lift_iso_face(std::uint64_t i, const OracleSession& theta, const FamilyPair& /*fp*/)
{
    if (i >= FinSet::kMaxElement)
        throw std::invalid_argument("lift_iso_face: face index " + std::to_string(i) + " out of range");
    const Code f0 = HElement::face(i, 0).code();
    const Code f1 = HElement::face(i, 1).code();
    const LazyIso hat_theta = hat(iso_through(theta), f0, f1);
    const FinSet flip = FinSet::from_mask(std::uint64_t{1} << i);
    ComponentIsos psi = [hat_theta, f0, f1, flip](Code y) {
        if (y == f0)
            return hat_theta;
        if (y == f1)
            return hat_theta.inverse();
        const HElement z = HElement::decode(y);
        if (z.is_face())
            return transport(y, y);
        // Y and Y △ {i} have opposite parity, so M at Y and N at Y △ {i}
        // carry the same structure.
        return transport(y, vertex_code(z.set().symmetric_difference(flip)));
    };
    return glue_iso(hypercube::h_iso(flip), psi);
}

ExtractedIso extract_component_iso(const OracleSession& rho, const FamilyPair& fp)
{
    const MN mn = build_MN(fp);
    const SplitIso split = split_iso(iso_through(rho), mn.M, mn.N);
    const HElement image = HElement::decode(split.theta.apply(vertex_code({})));
    if (!image.is_vertex())
        throw InvariantViolation("rho sends the vertex {} to the face " + image.to_string());
    const FinSet x = image.set();

    Code source = vertex_code({});
    Code target = vertex_code({});
    std::uint64_t index = 0;
    if (!x.empty()) {
        const unsigned i = *x.min();
        source = HElement::face(i, 0).code();
        target = HElement::face(i, 1).code();
        index = i + 1;
    }
    const LazyIso piece = split.psi(source);
    auto forward = [piece, source, target](Code a) {
        const auto [tag, b] = decode_pair(piece.apply(encode_pair(source, a)));
        if (tag != target)
            throw TagMismatch("extracted map leaves the component at " + std::to_string(target));
        return b;
    };
    auto backward = [piece, source, target](Code b) {
        const auto [tag, a] = decode_pair(piece.inverse_apply(encode_pair(target, b)));
        if (tag != source)
            throw TagMismatch("extracted inverse leaves the component at " + std::to_string(source));
        return a;
    };
    return {index, x, LazyIso(forward, backward, "theta'")};
}

std::vector<Symbol> truncation_symbols(const CompositeStructure& c, unsigned depth)
{
    std::vector<Symbol> out{CompositeStructure::mu()};
    for (auto s : hypercube::truncation_symbols(depth))
        out.push_back(c.base_symbol(s));
    for (auto s : c.family().signature.symbols())
        out.push_back(c.component_symbol(s));
    return out;
}

std::vector<Code> truncation_elements(const CompositeStructure& c, unsigned depth, std::size_t per_component)
{
    return c.truncation_elements(hypercube::truncation_elements(depth), per_component);
}

FamilyPair order_family_pair(const std::vector<orders::CEEnumeration>& enumerations)
{
    if (enumerations.empty())
        throw std::invalid_argument("order_family_pair: no enumerations");
    FamilyPair fp;
    fp.A = [](std::uint64_t) { return omega_order(); };
    fp.B = [enumerations](std::uint64_t n) { return orders::order_x(enumerations[n % enumerations.size()]); };
    fp.signature = omega_order().signature();
    return fp;
}

namespace {

bool ops_within(const OracleSession& s, std::initializer_list<const char*> allowed)
{
    for (const auto& op : s.ops_used())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return op == a; }))
            return false;
    return true;
}

DemoRow run_row(const std::vector<orders::CEEnumeration>& enumerations, std::size_t n, const DemoOptions& options)
{
    const auto& e = enumerations[n];
    const FamilyPair fp = order_family_pair(enumerations);
    DemoRow row;
    row.n = n;
    row.set = e.name;
    row.route = n == 0 ? "base" : "face-" + std::to_string(n - 1);
    row.validation_depth = std::max<unsigned>(options.depth, static_cast<unsigned>(n));

    const auto x_oracle = OracleSession::membership("X_" + std::to_string(n), e.member);
    const auto theta = OracleSession::of_iso("theta_" + std::to_string(n), orders::unique_iso_to_orderX(e, x_oracle));
    const LazyIso rho = n == 0 ? lift_iso_base(theta, fp) : lift_iso_face(n - 1, theta, fp);

    const MN mn = build_MN(fp);
    const auto violation =
        find_fact_violation(mn.M.combined(), mn.N.combined(), rho,
                            truncation_elements(mn.M, row.validation_depth, options.per_component),
                            truncation_symbols(mn.M, row.validation_depth));
    row.validated = !violation;
    row.violation = violation.value_or("");

    const auto rho_session = OracleSession::of_iso("rho_" + std::to_string(n), rho);
    const ExtractedIso extracted = extract_component_iso(rho_session, fp);
    row.extracted_index = extracted.index;
    row.index_match = extracted.index == n;

    const auto f_session = OracleSession::of_iso("f_" + std::to_string(n), extracted.theta);
    row.decode_match = true;
    for (Code k = 0; k <= options.decode_bound; ++k) {
        const bool in = orders::decode_x_from_iso(f_session, k);
        if (in)
            row.decoded.push_back(k);
        if (in != e.member(k))
            row.decode_match = false;
    }

    row.x_queries = x_oracle.query_count();
    row.theta_queries = theta.query_count();
    row.rho_queries = rho_session.query_count();
    row.discipline = ops_within(x_oracle, {"member"}) && ops_within(theta, {"apply", "inverse"})
        && ops_within(rho_session, {"apply", "inverse"}) && ops_within(f_session, {"inverse"})
        && row.rho_queries > 0;
    return row;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

} // namespace

DemoReport union_spectrum_demo(const std::vector<orders::CEEnumeration>& enumerations, DemoOptions options)
{
    if (enumerations.empty())
        throw std::invalid_argument("union_spectrum_demo: no enumerations");
    for (const auto& e : enumerations)
        orders::validate(e);
    // Distinctness is only checked on a prefix of ω.
    constexpr Code kDistinctPrefix = 1000;
    for (std::size_t i = 0; i < enumerations.size(); ++i)
        for (std::size_t j = i + 1; j < enumerations.size(); ++j) {
            Code k = 0;
            while (k < kDistinctPrefix && enumerations[i].member(k) == enumerations[j].member(k))
                ++k;
            if (k == kDistinctPrefix)
                throw std::invalid_argument("union_spectrum_demo: " + enumerations[i].name + " and "
                                            + enumerations[j].name + " agree below " + std::to_string(kDistinctPrefix));
        }

    DemoReport report;
    report.rows.resize(enumerations.size());
    const std::size_t jobs = std::max<unsigned>(options.jobs, 1);
    for (std::size_t start = 0; start < enumerations.size(); start += jobs) {
        std::vector<std::future<DemoRow>> pending;
        const std::size_t stop = std::min(enumerations.size(), start + jobs);
        for (std::size_t n = start; n < stop; ++n)
            pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                         [&, n] { return run_row(enumerations, n, options); }));
        for (std::size_t n = start; n < stop; ++n)
            report.rows[n] = pending[n - start].get();
    }
    return report;
}

bool DemoReport::ok() const
{
    return std::all_of(rows.begin(), rows.end(), [](const DemoRow& r) { return r.ok(); });
}

std::string DemoReport::to_text() const
{
    std::ostringstream out;
    out << "n set route depth validated index index_match decode_match discipline x_queries theta_queries rho_queries\n";
    for (const auto& r : rows) {
        out << r.n << ' ' << r.set << ' ' << r.route << ' '
            << r.validation_depth << ' ' << yes_no(r.validated) << ' ' << r.extracted_index << ' '
            << yes_no(r.index_match) << ' ' << yes_no(r.decode_match) << ' ' << yes_no(r.discipline) << ' '
            << r.x_queries << ' ' << r.theta_queries << ' ' << r.rho_queries << '\n';
        if (!r.violation.empty())
            out << "  violation: " << r.violation << '\n';
    }
    out << (ok() ? "OK" : "FAILED") << '\n';
    return out.str();
}

std::string DemoReport::to_json_lines() const
{
    std::string out;
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["n"] = r.n;
        j["set"] = r.set;
        j["route"] = r.route;
        j["depth"] = r.validation_depth;
        j["validated"] = r.validated;
        if (!r.violation.empty())
            j["violation"] = r.violation;
        j["index"] = r.extracted_index;
        j["index_match"] = r.index_match;
        j["decode_match"] = r.decode_match;
        j["discipline"] = r.discipline;
        j["decoded"] = r.decoded;
        j["x_queries"] = r.x_queries;
        j["theta_queries"] = r.theta_queries;
        j["rho_queries"] = r.rho_queries;
        out += j.dump() + '\n';
    }
    return out;
}

} // namespace compstruct::spectra

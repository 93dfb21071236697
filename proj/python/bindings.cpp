#include "cli.hpp"

#include "compstruct/categoricity.hpp"
#include "compstruct/composite.hpp"
#include "compstruct/hypercube.hpp"
#include "compstruct/isomorphism.hpp"
#include "compstruct/orders.hpp"
#include "compstruct/spectra.hpp"
#include "compstruct/structures.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace compstruct;
using hypercube::FinSet;
using hypercube::HElement;

namespace {

FinSet to_finset(const std::vector<unsigned>& xs)
{
    FinSet s;
    for (auto x : xs)
        s = s.with(x);
    return s;
}

std::vector<unsigned> from_finset(FinSet s)
{
    return s.elements();
}

py::tuple fact_tuple(const Fact& f)
{
    return py::make_tuple(f.symbol.family, f.symbol.index, f.args);
}

CompositeStructure example(const std::string& name)
{
    if (name == "figure1")
        return figure1_composite();
    if (name == "minimal")
        return minimal_composite();
    if (name == "path")
        return build_path_composite({omega_order(), integer_order(), omega_order()});
    throw std::invalid_argument("unknown example '" + name + "' (figure1, minimal, path)");
}

} // namespace

PYBIND11_MODULE(_compstruct, m)
{
    m.doc() = "Computable composite structures, the hypercube ℋ and their isomorphisms.";

    py::register_exception<FuelExhausted>(m, "FuelExhausted");
    py::register_exception<InvariantViolation>(m, "InvariantViolation");
    py::register_exception<TagMismatch>(m, "TagMismatch");
    py::register_exception<LimitExceeded>(m, "LimitExceeded");

    m.def("encode_pair", &encode_pair, py::arg("a"), py::arg("b"));
    m.def("decode_pair", [](Code z) {
        const auto [a, b] = decode_pair(z);
        return py::make_tuple(a, b);
    });

    py::class_<FinitePresentation>(m, "FinitePresentation")
        .def_property_readonly("elements", &FinitePresentation::elements)
        .def_property_readonly("facts",
                               [](const FinitePresentation& f) {
                                   py::list out;
                                   for (const auto& fact : f.facts())
                                       out.append(fact_tuple(fact));
                                   return out;
                               })
        .def("__len__", &FinitePresentation::size)
        .def("to_text", [](const FinitePresentation& f) { return to_text(f); })
        .def("to_dot", [](const FinitePresentation& f) { return to_dot(f); })
        .def_static("from_text", [](const std::string& text) { return from_text(text); });

    m.def("isomorphism_count",
          [](const FinitePresentation& a, const FinitePresentation& b) {
              return brute_force_isomorphisms(a, b).size();
          },
          "Number of isomorphisms between two finite structures, by backtracking.");

    // Composites.
    m.def("composite_truncation",
          [](const std::string& name, std::size_t per_component) {
              const auto c = example(name);
              if (c.base().is_finite())
                  return composite_truncation(c, per_component);
              return induced_substructure(c.combined(), c.truncation_elements(c.base().first(3), per_component),
                                          c.combined().signature().symbols());
          },
          py::arg("example"), py::arg("per_component") = 3,
          "Built-in composite (figure1, minimal, path) on its base points and the first elements of each member.");
    m.def("base_code", &CompositeStructure::base_code);
    m.def("component_code", py::overload_cast<Code, Code>(&CompositeStructure::component_code));

    // Hypercube.
    m.def("element_code", [](const std::vector<unsigned>& vertex) { return HElement::vertex(to_finset(vertex)).code(); },
          py::arg("vertex"));
    m.def("face_code", [](std::uint64_t i, unsigned a) { return HElement::face(i, a).code(); }, py::arg("i"),
          py::arg("a"));
    m.def("describe_element", [](Code c) { return HElement::decode(c).to_string(); });
    m.def("h_apply",
          [](const std::vector<unsigned>& x, Code z) { return hypercube::h_apply(to_finset(x), HElement::decode(z)).code(); },
          py::arg("x"), py::arg("code"), "h_X applied to an element code of ℋ.");
    m.def("h_compose", [](const std::vector<unsigned>& x, const std::vector<unsigned>& y) {
        return from_finset(hypercube::h_compose(to_finset(x), to_finset(y)));
    });
    m.def("hypercube_truncation", &hypercube::truncation, py::arg("n"));
    m.def("hypercube_dot", &hypercube::truncation_dot, py::arg("n"));
    m.def("automorphisms",
          [](unsigned n) {
              py::list out;
              for (const auto& f : hypercube::enumerate_automorphisms_finite(n)) {
                  py::dict map;
                  for (std::size_t k = 0; k < f.domain.size(); ++k)
                      map[py::int_(f.domain[k])] = f.image[k];
                  const auto x = hypercube::match_h(f, n);
                  out.append(py::make_tuple(x ? py::cast(from_finset(*x)) : py::none(), map));
              }
              return out;
          },
          py::arg("n"), "Automorphisms of the depth-n truncation as (X, map) pairs.");
    m.def("recover",
          [](const std::string& permutation, const std::vector<Code>& codes, std::uint64_t fuel_per_query) {
              const auto perm = hypercube::permutation_by_name(permutation);
              hypercube::RecoveryOptions options;
              options.fuel_per_query = fuel_per_query;
              const auto f = hypercube::recover_iso(hypercube::scrambled_copy(perm), perm.forward(0), options);
              std::vector<Code> out;
              for (auto c : codes)
                  out.push_back(f.apply(c));
              return out;
          },
          py::arg("permutation"), py::arg("codes"), py::arg("fuel_per_query") = 100000,
          "Images of `codes` under the isomorphism recovered onto a scrambled copy of ℋ.");
    m.def("permute", [](const std::string& permutation, Code c) {
        return hypercube::permutation_by_name(permutation).forward(c);
    });

    // Orders.
    m.def("order_prefix",
          [](const std::string& set, std::size_t n) { return orders::order_prefix(orders::by_name(set), n); },
          py::arg("set"), py::arg("n"));
    m.def("decode_set",
          [](const std::string& set, Code bound) {
              const auto e = orders::by_name(set);
              const auto x = OracleSession::membership("X", e.member);
              const auto f = OracleSession::of_iso("f", orders::unique_iso_to_orderX(e, x));
              std::vector<Code> members;
              for (Code k = 0; k <= bound; ++k)
                  if (orders::decode_x_from_iso(f, k))
                      members.push_back(k);
              py::dict out;
              out["members"] = members;
              out["x_ops"] = x.ops_used();
              out["f_ops"] = f.ops_used();
              out["x_queries"] = x.query_count();
              out["f_queries"] = f.query_count();
              return out;
          },
          py::arg("set"), py::arg("bound") = 25,
          "Decodes the set from its order isomorphism, with the oracle use of both stages.");

    // Spectra.
    m.def("spectra_demo",
          [](const std::vector<std::string>& sets, unsigned depth, Code decode_bound, unsigned jobs) {
              std::vector<orders::CEEnumeration> enums;
              for (const auto& s : sets)
                  enums.push_back(orders::by_name(s));
              spectra::DemoOptions options;
              options.depth = depth;
              options.decode_bound = decode_bound;
              options.jobs = jobs;
              const auto report = spectra::union_spectrum_demo(enums, options);
              return py::make_tuple(report.ok(), report.to_json_lines());
          },
          py::arg("sets"), py::arg("depth") = 2, py::arg("decode_bound") = 25, py::arg("jobs") = 1,
          "Runs the lift/extract demo; returns (ok, JSON lines).");
    m.def("select_M", [](Code z) { return spectra::select_M(HElement::decode(z)).to_string(); });
    m.def("select_N", [](Code z) { return spectra::select_N(HElement::decode(z)).to_string(); });

    // Categoricity.
    m.def("alpha", [](Code z) { return categoricity::alpha(HElement::decode(z)); });
    m.def("eta", [](std::uint64_t n) { return categoricity::eta(n).code(); });
    m.def("eta_inverse", [](Code z) { return categoricity::eta_inverse(HElement::decode(z)); });

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out;
              std::ostringstream err;
              const int code = cli::run(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs the command-line front end in process; returns (exit code, stdout, stderr).");
}

#include "compstruct/structures.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>

namespace compstruct {

namespace {

Signature order_signature()
{
    return Signature({RelationFamily{"<", 2, 1, true}});
}

} // namespace

Presentation omega_order()
{
    Presentation::Parts parts;
    parts.name = "(omega,<)";
    parts.signature = order_signature();
    parts.contains = [](Code) { return true; };
    parts.holds = [](Symbol, Tuple t) { return t[0] < t[1]; };
    parts.next_from = [](Code c) -> std::optional<Code> { return c; };
    return Presentation(std::move(parts));
}

std::int64_t zigzag_decode(Code c)
{
    return (c % 2 == 0) ? static_cast<std::int64_t>(c / 2) : -static_cast<std::int64_t>((c + 1) / 2);
}

Code zigzag_encode(std::int64_t v)
{
    return v >= 0 ? static_cast<Code>(v) * 2 : static_cast<Code>(-v) * 2 - 1;
}

Presentation integer_order()
{
    Presentation::Parts parts;
    parts.name = "(Z,<)";
    parts.signature = order_signature();
    parts.contains = [](Code) { return true; };
    parts.holds = [](Symbol, Tuple t) { return zigzag_decode(t[0]) < zigzag_decode(t[1]); };
    parts.next_from = [](Code c) -> std::optional<Code> { return c; };
    return Presentation(std::move(parts));
}

Presentation finite_order(std::size_t n)
{
    Presentation::Parts parts;
    parts.name = "(" + std::to_string(n) + ",<)";
    parts.signature = order_signature();
    parts.contains = [n](Code c) { return c < n; };
    parts.holds = [](Symbol, Tuple t) { return t[0] < t[1]; };
    std::vector<Code> u(n);
    std::iota(u.begin(), u.end(), Code{0});
    parts.finite_universe = std::move(u);
    return Presentation(std::move(parts));
}

Presentation finite_digraph(std::size_t n, const std::vector<std::pair<Code, Code>>& edges, std::string name)
{
    auto edge_set = std::make_shared<const std::set<std::pair<Code, Code>>>(edges.begin(), edges.end());
    Presentation::Parts parts;
    parts.name = std::move(name);
    parts.signature = Signature({RelationFamily{"E", 2, 1, true}});
    parts.contains = [n](Code c) { return c < n; };
    parts.holds = [edge_set](Symbol, Tuple t) { return edge_set->count({t[0], t[1]}) != 0; };
    std::vector<Code> u(n);
    std::iota(u.begin(), u.end(), Code{0});
    parts.finite_universe = std::move(u);
    return Presentation(std::move(parts));
}

Presentation path_graph(std::size_t n)
{
    std::vector<std::pair<Code, Code>> edges;
    for (Code k = 0; k + 1 < n; ++k)
        edges.emplace_back(k, k + 1);
    return finite_digraph(n, edges, "P" + std::to_string(n));
}

Presentation figure1_base()
{
    return finite_digraph(3, {{0, 1}, {1, 0}, {0, 2}, {1, 2}}, "S");
}

Presentation single_point(Signature signature)
{
    Presentation::Parts parts;
    parts.name = "point";
    parts.signature = std::move(signature);
    parts.contains = [](Code c) { return c == 0; };
    parts.holds = [](Symbol, Tuple) { return false; };
    parts.finite_universe = std::vector<Code>{0};
    return Presentation(std::move(parts));
}

} // namespace compstruct

#include "compstruct/categoricity.hpp"

#include "compstruct/error.hpp"

#include <memory>
#include <mutex>
#include <optional>

namespace compstruct::categoricity {

using hypercube::FinSet;
using hypercube::HElement;

std::uint64_t alpha(const HElement& z)
{
    return z.is_vertex() ? 0 : z.index() + 1;
}

HElement eta(std::uint64_t n)
{
    return HElement::decode(n);
}

std::uint64_t eta_inverse(const HElement& z)
{
    return z.code();
}

namespace {

CompositeStructure over_h(std::function<Presentation(Code)> at, Signature signature)
{
    UniformFamily family;
    family.index_contains = [](Code) { return true; };
    family.member = [at = std::move(at)](Code z) { return TaggedCopy(z, at(z)); };
    family.signature = std::move(signature);
    return compose(hypercube::hypercube(), std::move(family));
}

// π₂ of a member code, which must carry `tag`.
Code project(Code m, Code tag, const char* what)
{
    const auto [t, v] = decode_pair(m);
    if (t != tag)
        throw InvariantViolation(std::string(what) + ": landed in the component at " + std::to_string(t)
                                 + ", expected " + std::to_string(tag));
    return v;
}

Code component_image(const LazyIso& rho, Code from, Code a, Code to, bool forward)
{
    const Code w = forward ? rho.apply(CompositeStructure::component_code(from, a))
                           : rho.inverse_apply(CompositeStructure::component_code(from, a));
    const auto d = CompositeStructure::decode(w);
    if (!d || d->is_base)
        throw InvariantViolation("rho sends a component element to a base point");
    return project(encode_pair(d->point, d->inner), to, "rho");
}

} // namespace

CompositeStructure h_of(const Presentation& a)
{
    return over_h([a](Code) { return a; }, a.signature());
}

CompositeStructure alpha_assembled(IndexedStructures c)
{
    const Signature sig = c(0).signature();
    return over_h([c = std::move(c)](Code z) { return c(alpha(HElement::decode(z))); }, sig);
}

CompositeStructure placed(PlacedStructures b)
{
    const Signature sig = b(HElement::decode(0)).signature();
    return over_h([b = std::move(b)](Code z) { return b(HElement::decode(z)); }, sig);
}

LazyIso assemble(FinSet x, IsoFamily g)
{
    ComponentIsos psi = [x, g](Code z) {
        const HElement e = HElement::decode(z);
        const Code target = hypercube::h_apply(x, e).code();
        const LazyIso gi = g(alpha(e));
        auto fwd = [gi, z, target](Code m) { return encode_pair(target, gi.apply(project(m, z, "assemble"))); };
        auto bwd = [gi, z, target](Code m) { return encode_pair(z, gi.inverse_apply(project(m, target, "assemble"))); };
        return LazyIso(fwd, bwd, "g");
    };
    return glue_iso(hypercube::h_iso(x), psi);
}

IsoFamily uniformize(const OracleSession& rho_session, IndexedStructures c)
{
    const LazyIso rho = iso_through(rho_session);
    // X is read once, on first use.
    struct Reflection {
        std::once_flag once;
        FinSet x;
    };
    auto reflection = std::make_shared<Reflection>();
    auto read_x = [rho, reflection] {
        std::call_once(reflection->once, [&] {
            const auto d = CompositeStructure::decode(rho.apply(CompositeStructure::base_code(0)));
            if (!d || !d->is_base)
                throw InvariantViolation("rho sends the base point {} to a component element");
            const HElement image = HElement::decode(d->point);
            if (!image.is_vertex())
                throw InvariantViolation("rho sends the vertex {} to the face " + image.to_string());
            reflection->x = image.set();
        });
        return reflection->x;
    };

    return [rho, c, read_x](std::uint64_t i) {
        const FinSet x = read_x();
        const HElement source = i == 0 ? HElement::vertex({}) : HElement::face(i - 1, 0);
        const Code from = source.code();
        const Code to = hypercube::h_apply(x, source).code();
        const Presentation ci = c(i);
        auto fwd = [rho, ci, from, to, i](Code a) {
            const Code b = component_image(rho, from, a, to, true);
            if (!ci.contains(b))
                throw InvariantViolation("h(" + std::to_string(i) + ") leaves C_" + std::to_string(i));
            return b;
        };
        auto bwd = [rho, from, to](Code b) { return component_image(rho, to, b, from, false); };
        return LazyIso(fwd, bwd, "h(" + std::to_string(i) + ")");
    };
}

LazyIso deuniformize(IsoFamily h, PlacedStructures b)
{
    ComponentIsos psi = [h, b](Code z) {
        const HElement e = HElement::decode(z);
        const LazyIso hz = h(eta_inverse(e));
        const Presentation bz = b(e);
        auto fwd = [hz, bz, z](Code m) {
            const Code image = hz.apply(project(m, z, "deuniformize"));
            if (!bz.contains(image))
                throw InvariantViolation("h sends a point outside B_" + std::to_string(z));
            return encode_pair(z, image);
        };
        auto bwd = [hz, z](Code m) { return encode_pair(z, hz.inverse_apply(project(m, z, "deuniformize"))); };
        return LazyIso(fwd, bwd, "h");
    };
    return glue_iso(LazyIso::identity(), psi);
}

} // namespace compstruct::categoricity

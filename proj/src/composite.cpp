#include "compstruct/composite.hpp"

#include "compstruct/error.hpp"
#include "compstruct/structures.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace compstruct {

namespace {

// Shared by the composite and the evaluators of its combined presentation.
struct Core {
    Presentation base;
    UniformFamily family;

    std::mutex cache_mutex;
    std::map<Code, TaggedCopy> members;

    Core(Presentation b, UniformFamily f) : base(std::move(b)), family(std::move(f)) {}

    TaggedCopy member(Code x)
    {
        {
            std::lock_guard lock(cache_mutex);
            if (auto it = members.find(x); it != members.end())
                return it->second;
        }
        const bool in_base = base.contains(x);
        if (in_base != family.index_contains(x))
            throw InvariantViolation("family index predicate disagrees with the base universe at "
                                     + std::to_string(x));
        if (!in_base)
            throw std::invalid_argument("no member at non-base code " + std::to_string(x));
        TaggedCopy m = family.member(x);
        if (m.tag() != x)
            throw TagMismatch("member at " + std::to_string(x) + " carries tag " + std::to_string(m.tag()));
        std::lock_guard lock(cache_mutex);
        return members.emplace(x, std::move(m)).first->second;
    }
};

} // namespace

struct CompositeStructure::Impl {
    std::shared_ptr<Core> core;
    std::uint32_t component_offset = 1;
    Presentation combined;
    const Presentation& base() const { return core->base; }
};

std::optional<CompositeCode> CompositeStructure::decode(Code z)
{
    const auto [t, r] = decode_pair(z);
    if (t == 0)
        return CompositeCode{true, r, 0};
    if (t == 1) {
        const auto [x, a] = decode_pair(r);
        return CompositeCode{false, x, a};
    }
    return std::nullopt;
}

namespace {

Presentation combine(const std::shared_ptr<Core>& self, std::uint32_t& component_offset_out)
{
    Signature sig({RelationFamily{"mu", 2, 1, true}});
    sig.append(self->base.signature());
    const auto component_offset = sig.append(self->family.signature);
    component_offset_out = component_offset;
    using Self = CompositeStructure;
    auto decode = [](Code z) { return Self::decode(z); };
    auto base_code = [](Code x) { return Self::base_code(x); };
    auto component_code = [](Code x, Code a) { return Self::component_code(x, a); };
    constexpr auto kMu = Self::kMu;

    Presentation::Parts parts;
    parts.name = self->base.name() + "[...]";
    parts.signature = std::move(sig);

    parts.contains = [self, decode](Code z) {
        const auto d = decode(z);
        if (!d)
            return false;
        if (d->is_base)
            return self->base.contains(d->point);
        const bool in_base = self->base.contains(d->point);
        if (in_base != self->family.index_contains(d->point))
            throw InvariantViolation("family index predicate disagrees with the base universe at "
                                     + std::to_string(d->point));
        return in_base && self->member(d->point).inner().contains(d->inner);
    };

    parts.holds = [self, component_offset, decode](Symbol s, Tuple args) {
        if (s.family == kMu) {
            const auto from = decode(args[0]);
            const auto to = decode(args[1]);
            if (!to->is_base)
                return false;
            return from->point == to->point;
        }
        std::vector<CompositeCode> d;
        for (auto z : args)
            d.push_back(*decode(z));
        if (s.family < component_offset) {
            std::vector<Code> xs;
            for (const auto& c : d) {
                if (!c.is_base)
                    return false;
                xs.push_back(c.point);
            }
            return self->base.holds(Symbol{s.family - 1, s.index}, Tuple(xs));
        }
        const Code owner = d.front().point;
        std::vector<Code> inner;
        for (const auto& c : d) {
            if (c.is_base || c.point != owner)
                return false;
            inner.push_back(c.inner);
        }
        return self->member(owner).inner().holds(Symbol{s.family - component_offset, s.index}, Tuple(inner));
    };

    if (const auto* bu = self->base.finite_universe()) {
        std::vector<Code> codes;
        bool finite = true;
        for (auto x : *bu) {
            codes.push_back(base_code(x));
            const auto* mu = self->member(x).inner().finite_universe();
            if (!mu) {
                finite = false;
                break;
            }
            for (auto a : *mu)
                codes.push_back(component_code(x, a));
        }
        if (finite) {
            std::sort(codes.begin(), codes.end());
            parts.finite_universe = std::move(codes);
        }
    }
    return Presentation(std::move(parts));
}

} // namespace

CompositeStructure::CompositeStructure(Presentation base, UniformFamily family)
{
    auto core = std::make_shared<Core>(std::move(base), std::move(family));
    std::uint32_t offset = 1;
    auto combined = combine(core, offset);
    impl_ = std::make_shared<Impl>(Impl{std::move(core), offset, std::move(combined)});
}

const Presentation& CompositeStructure::base() const
{
    return impl_->core->base;
}

const UniformFamily& CompositeStructure::family() const
{
    return impl_->core->family;
}

const Presentation& CompositeStructure::combined() const
{
    return impl_->combined;
}

TaggedCopy CompositeStructure::member(Code x) const
{
    return impl_->core->member(x);
}

std::uint32_t CompositeStructure::component_family_offset() const
{
    return impl_->component_offset;
}

std::vector<Code> CompositeStructure::truncation_elements(const std::vector<Code>& base_points,
                                                          std::size_t per_component) const
{
    std::vector<Code> out;
    for (auto x : base_points) {
        out.push_back(base_code(x));
        for (auto a : member(x).inner().first(per_component))
            out.push_back(component_code(x, a));
    }
    std::sort(out.begin(), out.end());
    return out;
}

CompositeStructure compose(Presentation base, UniformFamily family)
{
    return CompositeStructure(std::move(base), std::move(family));
}

Code mu_target(const CompositeStructure& c, Code z)
{
    if (!c.combined().contains(z))
        throw std::invalid_argument("mu_target: " + std::to_string(z) + " is not in the composite universe");
    return CompositeStructure::base_code(CompositeStructure::decode(z)->point);
}

Code mu_target(const Presentation& p, Code z, Fuel& fuel)
{
    const Symbol mu{CompositeStructure::kMu, 0};
    fuel.spend("mu self-loop test");
    if (p.holds(mu, {z, z}))
        return z;
    Code from = 0;
    while (true) {
        auto t = p.next_from(from, &fuel);
        if (!t)
            throw InvariantViolation("no outgoing mu-edge from " + std::to_string(z));
        fuel.spend("mu-edge search");
        if (p.holds(mu, {z, *t}))
            return *t;
        from = *t + 1;
    }
}

Code owner_in_copy(const Presentation& p, Code z, Fuel& fuel, std::size_t window)
{
    const Symbol mu{CompositeStructure::kMu, 0};
    Code target = 0;
    try {
        target = mu_target(p, z, fuel);
    } catch (const FuelExhausted&) {
        throw InvariantViolation("no outgoing mu-edge from " + std::to_string(z) + " within fuel");
    }
    if (!p.holds(mu, {target, target}))
        throw InvariantViolation("mu-target of " + std::to_string(z) + " is not a base point");
    // Look a little further for a second outgoing edge.
    Code from = 0;
    std::size_t seen = 0;
    while (seen < window + target + 1) {
        auto t = p.next_from(from, &fuel);
        if (!t)
            break;
        if (*t != target && p.holds(mu, {z, *t}))
            throw InvariantViolation(std::to_string(z) + " has two outgoing mu-edges");
        from = *t + 1;
        ++seen;
    }
    return target;
}

Decomposition decompose(const Presentation& p, std::size_t base_family_count)
{
    const Symbol mu{CompositeStructure::kMu, 0};
    const auto& fams = p.signature().families();
    if (fams.empty() || fams[0].arity != 2)
        throw std::invalid_argument("decompose: family 0 must be the binary mu relation");
    if (1 + base_family_count > fams.size())
        throw std::invalid_argument("decompose: more base families than the signature has");

    const auto base_sig = Signature(std::vector<RelationFamily>(fams.begin() + 1, fams.begin() + 1 + base_family_count));
    const auto comp_sig = Signature(std::vector<RelationFamily>(fams.begin() + 1 + base_family_count, fams.end()));
    const auto comp_offset = static_cast<std::uint32_t>(1 + base_family_count);

    auto is_base = [p, mu](Code g) { return p.contains(g) && p.holds(mu, {g, g}); };

    Presentation::Parts bp;
    bp.name = "base(" + p.name() + ")";
    bp.signature = base_sig;
    bp.contains = is_base;
    bp.holds = [p](Symbol s, Tuple t) { return p.holds(Symbol{s.family + 1, s.index}, t); };
    if (const auto* u = p.finite_universe()) {
        std::vector<Code> codes;
        std::copy_if(u->begin(), u->end(), std::back_inserter(codes), is_base);
        bp.finite_universe = std::move(codes);
    }
    Presentation base(std::move(bp));

    UniformFamily family;
    family.signature = comp_sig;
    family.index_contains = is_base;
    family.member = [p, mu, comp_sig, comp_offset, is_base](Code g) {
        if (!is_base(g))
            throw std::invalid_argument("decompose: " + std::to_string(g) + " is not a base point");
        auto in_member = [p, mu, g](Code b) {
            if (b == g || !p.contains(b) || !p.holds(mu, {b, g}))
                return false;
            if (p.holds(mu, {b, b}))
                throw InvariantViolation(std::to_string(b) + " has two outgoing mu-edges");
            return true;
        };
        Presentation::Parts mp;
        mp.name = "member(" + std::to_string(g) + ")";
        mp.signature = comp_sig;
        mp.contains = in_member;
        mp.holds = [p, comp_offset](Symbol s, Tuple t) {
            return p.holds(Symbol{s.family + comp_offset, s.index}, t);
        };
        if (const auto* u = p.finite_universe()) {
            std::vector<Code> codes;
            std::copy_if(u->begin(), u->end(), std::back_inserter(codes), in_member);
            mp.finite_universe = std::move(codes);
        }
        return TaggedCopy(g, Presentation(std::move(mp)));
    };
    return Decomposition{std::move(base), std::move(family)};
}

LazyIso glue_iso(LazyIso theta, ComponentIsos psi)
{
    struct Cache {
        std::mutex mutex;
        std::map<Code, LazyIso> isos;
    };
    auto cache = std::make_shared<Cache>();
    auto piece = [cache, psi](Code x) {
        {
            std::lock_guard lock(cache->mutex);
            if (auto it = cache->isos.find(x); it != cache->isos.end())
                return it->second;
        }
        LazyIso iso = psi(x);
        std::lock_guard lock(cache->mutex);
        return cache->isos.emplace(x, std::move(iso)).first->second;
    };

    auto forward = [theta, piece](Code z) {
        const auto d = CompositeStructure::decode(z);
        if (!d)
            throw std::invalid_argument("glue_iso: " + std::to_string(z) + " is not a composite code");
        if (d->is_base)
            return CompositeStructure::base_code(theta.apply(d->point));
        const Code target = theta.apply(d->point);
        const Code image = piece(d->point).apply(encode_pair(d->point, d->inner));
        const auto [tag, b] = decode_pair(image);
        if (tag != target)
            throw TagMismatch("psi(" + std::to_string(d->point) + ") lands on tag " + std::to_string(tag)
                              + ", expected theta(x) = " + std::to_string(target));
        return CompositeStructure::component_code(target, b);
    };
    auto backward = [theta, piece](Code w) {
        const auto d = CompositeStructure::decode(w);
        if (!d)
            throw std::invalid_argument("glue_iso: " + std::to_string(w) + " is not a composite code");
        if (d->is_base)
            return CompositeStructure::base_code(theta.inverse_apply(d->point));
        const Code source = theta.inverse_apply(d->point);
        const Code pre = piece(source).inverse_apply(encode_pair(d->point, d->inner));
        const auto [tag, a] = decode_pair(pre);
        if (tag != source)
            throw TagMismatch("psi(" + std::to_string(source) + ")^-1 lands on tag " + std::to_string(tag));
        return CompositeStructure::component_code(source, a);
    };
    return LazyIso(forward, backward, "glue");
}

SplitIso split_iso(const LazyIso& rho, const CompositeStructure& c1, const CompositeStructure& c2)
{
    auto base_image = [rho, c2](Code x) {
        const Code w = rho.apply(CompositeStructure::base_code(x));
        const auto d = CompositeStructure::decode(w);
        if (!d || !d->is_base || !c2.base().contains(d->point))
            throw InvariantViolation("rho maps base point " + std::to_string(x) + " to a non-base point");
        return d->point;
    };
    auto base_preimage = [rho, c1](Code y) {
        const Code z = rho.inverse_apply(CompositeStructure::base_code(y));
        const auto d = CompositeStructure::decode(z);
        if (!d || !d->is_base || !c1.base().contains(d->point))
            throw InvariantViolation("rho^-1 maps base point " + std::to_string(y) + " to a non-base point");
        return d->point;
    };
    LazyIso theta(base_image, base_preimage, "theta");

    ComponentIsos psi = [rho, theta](Code x) {
        auto fwd = [rho, theta, x](Code m) {
            const auto [tag, a] = decode_pair(m);
            if (tag != x)
                throw TagMismatch("psi(" + std::to_string(x) + ") applied to tag " + std::to_string(tag));
            const auto d = CompositeStructure::decode(rho.apply(CompositeStructure::component_code(x, a)));
            const Code target = theta.apply(x);
            if (!d || d->is_base || d->point != target)
                throw InvariantViolation("rho does not map the member at " + std::to_string(x)
                                         + " into the member at theta(x)");
            return encode_pair(d->point, d->inner);
        };
        auto bwd = [rho, theta, x](Code m) {
            const auto [tag, b] = decode_pair(m);
            const Code target = theta.apply(x);
            if (tag != target)
                throw TagMismatch("psi(" + std::to_string(x) + ")^-1 applied to tag " + std::to_string(tag));
            const auto d = CompositeStructure::decode(rho.inverse_apply(CompositeStructure::component_code(tag, b)));
            if (!d || d->is_base || d->point != x)
                throw InvariantViolation("rho^-1 does not map the member at theta(x) into the member at "
                                         + std::to_string(x));
            return encode_pair(d->point, d->inner);
        };
        return LazyIso(fwd, bwd, "psi(" + std::to_string(x) + ")");
    };
    return SplitIso{std::move(theta), std::move(psi)};
}

CompositeStructure build_path_composite(const std::vector<Presentation>& components)
{
    if (components.empty())
        throw std::invalid_argument("build_path_composite: need at least one component");
    Signature sig = components.front().signature();
    for (const auto& c : components)
        sig = Signature::merge(sig, c.signature());
    const auto n = components.size();
    UniformFamily family;
    family.signature = sig;
    family.index_contains = [n](Code x) { return x < n; };
    family.member = [components](Code x) { return TaggedCopy(x, components.at(x)); };
    return compose(path_graph(n), std::move(family));
}

CompositeStructure figure1_composite()
{
    UniformFamily family;
    family.signature = omega_order().signature();
    family.index_contains = [](Code x) { return x < 3; };
    family.member = [](Code x) { return TaggedCopy(x, x == 2 ? integer_order() : omega_order()); };
    return compose(figure1_base(), std::move(family));
}

CompositeStructure minimal_composite()
{
    UniformFamily family;
    family.index_contains = [](Code x) { return x == 0; };
    family.member = [](Code x) { return TaggedCopy(x, single_point(Signature{})); };
    return compose(single_point(Signature{}), std::move(family));
}

FinitePresentation composite_truncation(const CompositeStructure& c, std::size_t per_component)
{
    const auto base = c.base().finite_universe();
    if (!base)
        throw std::invalid_argument("composite_truncation: the base is not finite");
    return induced_substructure(c.combined(), c.truncation_elements(*base, per_component),
                                c.combined().signature().symbols());
}

} // namespace compstruct

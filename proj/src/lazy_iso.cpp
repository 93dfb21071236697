#include "compstruct/lazy_iso.hpp"

#include "compstruct/error.hpp"

#include <mutex>
#include <unordered_map>

namespace compstruct {

struct LazyIso::State {
    Map forward;
    Map backward;
    std::string name;
    mutable std::mutex mutex;
    std::unordered_map<Code, Code> fwd_memo;
    std::unordered_map<Code, Code> bwd_memo;

    // Records x -> y, checking it against what is already known.
    void record(Code x, Code y)
    {
        std::lock_guard lock(mutex);
        auto f = fwd_memo.find(x);
        auto b = bwd_memo.find(y);
        if ((f != fwd_memo.end() && f->second != y) || (b != bwd_memo.end() && b->second != x))
            throw InvariantViolation(name + " is not a bijection on the queried points (" + std::to_string(x)
                                     + " -> " + std::to_string(y) + ")");
        fwd_memo.emplace(x, y);
        bwd_memo.emplace(y, x);
    }

    Code forward_query(Code x)
    {
        {
            std::lock_guard lock(mutex);
            if (auto it = fwd_memo.find(x); it != fwd_memo.end())
                return it->second;
        }
        const Code y = forward(x);
        record(x, y);
        return y;
    }

    Code backward_query(Code y)
    {
        {
            std::lock_guard lock(mutex);
            if (auto it = bwd_memo.find(y); it != bwd_memo.end())
                return it->second;
        }
        const Code x = backward(y);
        record(x, y);
        return x;
    }
};

LazyIso::LazyIso(Map forward, Map backward, std::string name) : state_(std::make_shared<State>())
{
    state_->forward = std::move(forward);
    state_->backward = std::move(backward);
    state_->name = std::move(name);
}

LazyIso::LazyIso(std::shared_ptr<State> state, bool flipped) : state_(std::move(state)), flipped_(flipped) {}

LazyIso LazyIso::identity()
{
    return LazyIso([](Code x) { return x; }, [](Code y) { return y; }, "id");
}

Code LazyIso::apply(Code x) const
{
    return flipped_ ? state_->backward_query(x) : state_->forward_query(x);
}

Code LazyIso::inverse_apply(Code y) const
{
    return flipped_ ? state_->forward_query(y) : state_->backward_query(y);
}

LazyIso LazyIso::inverse() const
{
    return LazyIso(state_, !flipped_);
}

const std::string& LazyIso::name() const
{
    return state_->name;
}

std::size_t LazyIso::memo_size() const
{
    std::lock_guard lock(state_->mutex);
    return state_->fwd_memo.size();
}

LazyIso compose(const LazyIso& outer, const LazyIso& inner)
{
    return LazyIso([outer, inner](Code x) { return outer.apply(inner.apply(x)); },
                   [outer, inner](Code y) { return inner.inverse_apply(outer.inverse_apply(y)); },
                   outer.name() + "∘" + inner.name());
}

} // namespace compstruct

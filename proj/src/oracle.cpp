#include "compstruct/oracle.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace compstruct {

struct OracleSession::State {
    std::string name;
    Handler handler;
    mutable std::mutex mutex;
    std::vector<OracleQuery> log;
    std::map<std::pair<std::string, Code>, Code, std::less<>> answers;
};

OracleSession::OracleSession(std::string name, Handler handler) : state_(std::make_shared<State>())
{
    state_->name = std::move(name);
    state_->handler = std::move(handler);
}

OracleSession OracleSession::membership(std::string name, std::function<bool(Code)> member)
{
    return OracleSession(std::move(name), [member = std::move(member)](std::string_view op, Code arg) -> Code {
        if (op != "member")
            throw std::invalid_argument("set oracle only answers 'member', not '" + std::string(op) + "'");
        return member(arg) ? 1 : 0;
    });
}

OracleSession OracleSession::of_iso(std::string name, LazyIso iso)
{
    return OracleSession(std::move(name), [iso = std::move(iso)](std::string_view op, Code arg) -> Code {
        if (op == "apply")
            return iso.apply(arg);
        if (op == "inverse")
            return iso.inverse_apply(arg);
        throw std::invalid_argument("function oracle only answers 'apply'/'inverse', not '" + std::string(op) + "'");
    });
}

Code OracleSession::ask(std::string_view op, Code arg) const
{
    std::optional<Code> known;
    {
        std::lock_guard lock(state_->mutex);
        if (auto it = state_->answers.find(std::pair{std::string(op), arg}); it != state_->answers.end())
            known = it->second;
    }
    const Code answer = known ? *known : state_->handler(op, arg);
    std::lock_guard lock(state_->mutex);
    state_->answers.emplace(std::pair{std::string(op), arg}, answer);
    state_->log.push_back(OracleQuery{std::string(op), arg, answer});
    return answer;
}

const std::string& OracleSession::name() const
{
    return state_->name;
}

std::vector<OracleQuery> OracleSession::log() const
{
    std::lock_guard lock(state_->mutex);
    return state_->log;
}

std::size_t OracleSession::query_count() const
{
    std::lock_guard lock(state_->mutex);
    return state_->log.size();
}

std::set<std::string> OracleSession::ops_used() const
{
    std::lock_guard lock(state_->mutex);
    std::set<std::string> ops;
    for (const auto& q : state_->log)
        ops.insert(q.op);
    return ops;
}

void OracleSession::clear_log() const
{
    std::lock_guard lock(state_->mutex);
    state_->log.clear();
}

LazyIso iso_through(const OracleSession& session)
{
    return LazyIso([session](Code x) { return session.apply(x); }, [session](Code y) { return session.inverse(y); },
                   session.name());
}

} // namespace compstruct

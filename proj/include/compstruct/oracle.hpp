#pragma once

#include "compstruct/lazy_iso.hpp"
#include "compstruct/pairing.hpp"

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace compstruct {

struct OracleQuery {
    std::string op;
    Code arg = 0;
    Code answer = 0;

    bool operator==(const OracleQuery&) const = default;
};

/// Oracle access with an append-only log of every query issued.
///
/// An oracle is a set (`member`) or a bijection (`apply` / `inverse`).
/// Reductions receive only sessions, so the log is the record of what a
/// procedure consulted. Answers are memoized per (op, arg) and therefore
/// stable; repeated queries are still logged. Sessions are handles: copies
/// share one log.
class OracleSession {
public:
    using Handler = std::function<Code(std::string_view op, Code arg)>;

    OracleSession(std::string name, Handler handler);

    static OracleSession membership(std::string name, std::function<bool(Code)> member);
    static OracleSession of_iso(std::string name, LazyIso iso);

    Code ask(std::string_view op, Code arg) const;
    bool member(Code k) const { return ask("member", k) != 0; }
    Code apply(Code x) const { return ask("apply", x); }
    Code inverse(Code y) const { return ask("inverse", y); }

    const std::string& name() const;
    std::vector<OracleQuery> log() const;
    std::size_t query_count() const;
    std::set<std::string> ops_used() const;
    void clear_log() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// A bijection whose every evaluation is routed through `session`
/// (`apply` forward, `inverse` backward).
LazyIso iso_through(const OracleSession& session);

} // namespace compstruct

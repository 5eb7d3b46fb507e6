#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wrebeca/ast.hpp"
#include "wrebeca/explorer.hpp"
#include "wrebeca/lts.hpp"
#include "wrebeca/state.hpp"

namespace wrebeca {

// Invalid invariant or monitor text, or a reference the model cannot satisfy.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Acyclicity of the next-hop graph toward each destination. With
// route_state set, a rebec contributes its hops toward d only while
// route_state[d] == 1 (a confirmed route). The destination itself and
// rebecs still waiting for their initial message add no edges.
struct LoopFreedomSpec {
    std::string nhop;
    std::optional<std::string> route_state;
    std::vector<std::size_t> dests;
};

// Boolean expression over qualified references such as node1.dsn[0].
struct PredicateSpec {
    ExprPtr expr;
};

// The named int variable (every cell, for arrays) never decreases across a
// Handle step of the rebec owning it, the initial handler excepted.
// Restricted to one rebec when given.
struct StepMonotoneSpec {
    std::string var;
    std::optional<std::size_t> rebec;
};

struct InvariantSpec {
    std::string text;
    std::variant<LoopFreedomSpec, PredicateSpec, StepMonotoneSpec> kind;
};

// loop_freedom(nhop, src, dst[, route_state]) | predicate(expr) | expr
// | step_monotone(var[, rebec])
InvariantSpec parse_invariant(std::string_view text, const Model& model);

// Registers the spec as a state or step check.
void install(const InvariantSpec& spec, const Model& model, ExploreOptions& options);

// adj[i] lists the next hops rebec i stores toward dest.
std::vector<std::vector<std::size_t>> next_hop_graph(const GlobalState& s, const Model& model, std::string_view nhop,
                                                     std::size_t dest,
                                                     const std::optional<std::string>& route_state = std::nullopt);
bool is_acyclic(const std::vector<std::vector<std::size_t>>& adj);
bool eval_loop_freedom(const GlobalState& s, const Model& model, std::string_view nhop, std::size_t dest,
                       const std::optional<std::string>& route_state = std::nullopt);

Value eval_state_expr(const Expr& e, const GlobalState& s, const Model& model);
bool eval_predicate(const GlobalState& s, const Model& model, const Expr& e);

bool check_step_monotone(const GlobalState& pre, const GlobalState& post, std::size_t var_index, std::size_t rebec);

// name(expr, ...) evaluated per state into the label name(v1,...).
struct Monitor {
    std::string name;
    std::vector<ExprPtr> args;
};

Monitor parse_monitor(std::string_view text, const Model& model);
std::string monitor_label(const Monitor& m, const GlobalState& s, const Model& model);

// One self-loop per monitor on every state of an explored LTS.
Lts add_monitor_selfloops(const ExploreResult& result, const Model& model, const std::vector<Monitor>& monitors);

}  // namespace wrebeca

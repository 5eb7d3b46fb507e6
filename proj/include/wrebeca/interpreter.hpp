#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wrebeca/ast.hpp"
#include "wrebeca/state.hpp"
#include "wrebeca/topology.hpp"
#include "wrebeca/value.hpp"

namespace wrebeca {

class ModelError : public std::runtime_error {
public:
    ModelError(const std::string& message, SourceLoc loc, int rebec = -1);

    SourceLoc loc() const { return loc_; }
    int rebec() const { return rebec_; }
    ModelError with_rebec(int rebec) const;
    const std::string& bare_message() const { return message_; }

private:
    std::string message_;
    SourceLoc loc_;
    int rebec_;
};

enum class Completion { Normal, Broken };

// Scope stack. The bottom scope holds the rebec's state variables; lookup
// resolves innermost-first.
class Environment {
public:
    void push_scope() { starts_.push_back(bindings_.size()); }
    void pop_scope();
    std::size_t depth() const { return starts_.size(); }

    // Binds in the top scope, replacing an existing binding of that scope.
    void declare(Symbol sym, Value value);
    Value* find(Symbol sym);
    const Value* find(Symbol sym) const;

    // Bindings of the bottom scope in declaration order.
    std::vector<Value> take_bottom_scope();

private:
    struct Binding {
        Symbol sym;
        Value value;
    };
    std::vector<Binding> bindings_;
    std::vector<std::size_t> starts_;
};

// Status of a link (self, receiver) consulted by a communication statement.
struct LinkProbe {
    std::size_t receiver = 0;
    bool connected = false;

    bool operator==(const LinkProbe&) const = default;
    auto operator<=>(const LinkProbe&) const = default;
};

struct ExecContext {
    Environment& env;
    GlobalState& state;  // receiver queues; the executing rebec's vars live in env
    const Topology& gamma;
    std::size_t self = 0;
    std::size_t steps = 0;
    std::vector<LinkProbe>* probes = nullptr;
};

struct InterpreterOptions {
    std::size_t max_steps = 100'000;  // per handler execution
};

struct HandleResult {
    GlobalState state;
    Message message;
    bool understood = true;  // false when the class has no server for it
};

class Interpreter {
public:
    explicit Interpreter(const Model& model, InterpreterOptions options = {});

    const Model& model() const { return model_; }
    const InterpreterOptions& options() const { return options_; }
    std::size_t rebec_count() const { return model_.rebecs.size(); }

    // Every rebec holds its declared defaults and `initial(args)` alone in
    // its queue. The topology component is left empty.
    GlobalState initial_state() const;

    Value eval_expr(const Expr& e, const Environment& env, std::size_t self) const;
    Completion exec_block(const std::vector<StmtPtr>& stmts, ExecContext& ctx) const;
    Completion exec_stmt(const Stmt& s, ExecContext& ctx) const;
    Completion exec_comm(const Stmt& s, ExecContext& ctx) const;

    // Removes the head of rebec i's queue and runs its server atomically
    // under gamma. Link statuses consulted by communication are appended to
    // probes when given.
    HandleResult handle_message(const GlobalState& s, std::size_t i, const Topology& gamma,
                                std::vector<LinkProbe>* probes = nullptr) const;

    // Replaces the topology; gamma2 must satisfy the model constraint.
    GlobalState mov(const GlobalState& s, const Topology& gamma2) const;

    std::string label(const Message& m) const { return format_message(m, model_); }
    bool is_initial(const Message& m) const { return m.name == initial_sym_; }
    // True while some rebec still has its initial message at the head.
    bool initializing(const GlobalState& s) const;

    const MsgSrv* server_for(std::size_t rebec, Symbol message) const;
    std::size_t class_index(std::size_t rebec) const { return rebec_class_[rebec]; }
    const std::vector<Symbol>& state_var_symbols(std::size_t rebec) const {
        return class_vars_[rebec_class_[rebec]];
    }

private:
    std::int32_t eval_int(const Expr& e, const Environment& env, std::size_t self) const;
    bool eval_bool(const Expr& e, const Environment& env, std::size_t self) const;
    void assign(const Expr& target, Value value, ExecContext& ctx) const;
    std::size_t checked_index(std::int32_t idx, std::int32_t length, SourceLoc loc) const;

    const Model& model_;
    InterpreterOptions options_;
    Symbol initial_sym_ = -1;
    std::vector<std::size_t> rebec_class_;
    std::vector<std::vector<const MsgSrv*>> servers_;  // class -> symbol -> server
    std::vector<std::vector<Symbol>> class_vars_;
};

}  // namespace wrebeca

#include "wrebeca/interpreter.hpp"

#include <limits>

namespace wrebeca {

ModelError::ModelError(const std::string& message, SourceLoc loc, int rebec)
    : std::runtime_error((rebec >= 0 ? "rebec " + std::to_string(rebec) + ", " : std::string()) + "line " +
                         std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message),
      message_(message),
      loc_(loc),
      rebec_(rebec) {}

ModelError ModelError::with_rebec(int rebec) const { return ModelError(message_, loc_, rebec); }

// ---------------------------------------------------------------- Environment

void Environment::pop_scope() {
    bindings_.resize(starts_.back());
    starts_.pop_back();
}

void Environment::declare(Symbol sym, Value value) {
    for (std::size_t k = starts_.back(); k < bindings_.size(); ++k) {
        if (bindings_[k].sym == sym) {
            bindings_[k].value = std::move(value);
            return;
        }
    }
    bindings_.push_back({sym, std::move(value)});
}

Value* Environment::find(Symbol sym) {
    for (std::size_t k = bindings_.size(); k-- > 0;)
        if (bindings_[k].sym == sym) return &bindings_[k].value;
    return nullptr;
}

const Value* Environment::find(Symbol sym) const {
    for (std::size_t k = bindings_.size(); k-- > 0;)
        if (bindings_[k].sym == sym) return &bindings_[k].value;
    return nullptr;
}

std::vector<Value> Environment::take_bottom_scope() {
    std::size_t end = starts_.size() > 1 ? starts_[1] : bindings_.size();
    std::vector<Value> out;
    out.reserve(end);
    for (std::size_t k = 0; k < end; ++k) out.push_back(std::move(bindings_[k].value));
    return out;
}

// ---------------------------------------------------------------- Interpreter

Interpreter::Interpreter(const Model& model, InterpreterOptions options) : model_(model), options_(options) {
    initial_sym_ = model.symbol("initial");
    for (const auto& cls : model.classes) {
        std::vector<const MsgSrv*> table(model.symbols.size(), nullptr);
        for (const auto& m : cls.msgsrvs)
            if (m.sym >= 0) table[m.sym] = &m;
        servers_.push_back(std::move(table));
        std::vector<Symbol> vars;
        for (const auto& v : cls.state_vars) vars.push_back(v.sym);
        class_vars_.push_back(std::move(vars));
    }
    for (const auto& r : model.rebecs) {
        std::size_t c = 0;
        while (c < model.classes.size() && model.classes[c].name != r.class_name) ++c;
        if (c == model.classes.size()) throw std::invalid_argument("unknown reactive class " + r.class_name);
        rebec_class_.push_back(c);
    }
}

const MsgSrv* Interpreter::server_for(std::size_t rebec, Symbol message) const {
    const auto& table = servers_[rebec_class_[rebec]];
    if (message < 0 || static_cast<std::size_t>(message) >= table.size()) return nullptr;
    return table[message];
}

bool Interpreter::initializing(const GlobalState& s) const {
    for (const auto& r : s.rebecs)
        if (!r.queue.empty() && r.queue.front().name == initial_sym_) return true;
    return false;
}

GlobalState Interpreter::initial_state() const {
    GlobalState g;
    const std::size_t n = model_.rebecs.size();
    g.rebecs.resize(n);
    Environment empty;
    empty.push_scope();
    for (std::size_t i = 0; i < n; ++i) {
        const ReactiveClass& cls = model_.classes[rebec_class_[i]];
        for (const auto& v : cls.state_vars) {
            Value val = v.init ? eval_expr(*v.init, empty, i) : Value::default_of(v.type, v.sizes);
            g.rebecs[i].vars.push_back(std::move(val));
        }
        Message init;
        init.name = initial_sym_;
        for (const auto& a : model_.rebecs[i].args) init.args.push_back(eval_expr(*a, empty, i));
        g.rebecs[i].queue.push_back(std::move(init));
    }
    return g;
}

std::size_t Interpreter::checked_index(std::int32_t idx, std::int32_t length, SourceLoc loc) const {
    if (idx < 0 || idx >= length)
        throw ModelError("array index " + std::to_string(idx) + " out of bounds [0," + std::to_string(length) + ")",
                         loc);
    return static_cast<std::size_t>(idx);
}

std::int32_t Interpreter::eval_int(const Expr& e, const Environment& env, std::size_t self) const {
    if (auto* lit = std::get_if<IntLit>(&e.node)) return lit->value;
    Value v = eval_expr(e, env, self);
    if (v.type.rank != 0 || v.type.base != BaseType::Int) throw ModelError("expected an int value", e.loc);
    return v.scalar;
}

bool Interpreter::eval_bool(const Expr& e, const Environment& env, std::size_t self) const {
    Value v = eval_expr(e, env, self);
    if (v.type.rank != 0 || v.type.base != BaseType::Bool) throw ModelError("expected a boolean value", e.loc);
    return v.scalar != 0;
}

namespace {

std::int32_t checked_arith(std::int64_t r, SourceLoc loc) {
    if (r < std::numeric_limits<std::int32_t>::min() || r > std::numeric_limits<std::int32_t>::max())
        throw ModelError("integer overflow", loc);
    return static_cast<std::int32_t>(r);
}

Value element_of(const Value& a, std::size_t idx) {
    if (a.type.rank == 1) {
        Value v;
        v.type = {a.type.base, 0};
        v.scalar = a.cells[idx];
        return v;
    }
    Value row = Value::array(a.type.base, a.cols);
    for (std::int32_t c = 0; c < a.cols; ++c) row.cells[c] = a.cells[idx * a.cols + c];
    return row;
}

}  // namespace

Value Interpreter::eval_expr(const Expr& e, const Environment& env, std::size_t self) const {
    return std::visit(
        [&](const auto& n) -> Value {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return Value::of_int(n.value);
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return Value::of_bool(n.value);
            } else if constexpr (std::is_same_v<T, SelfRef>) {
                return Value::of_int(static_cast<std::int32_t>(self));
            } else if constexpr (std::is_same_v<T, VarRef>) {
                const Value* v = env.find(n.sym);
                if (!v) throw ModelError("unbound variable '" + n.name + "'", e.loc);
                return *v;
            } else if constexpr (std::is_same_v<T, QualifiedRef>) {
                throw ModelError("qualified reference outside an invariant", e.loc);
            } else if constexpr (std::is_same_v<T, Index>) {
                // Index variables in place so whole arrays are not copied.
                const Expr& base = *n.base;
                if (auto* var = std::get_if<VarRef>(&base.node)) {
                    const Value* a = env.find(var->sym);
                    if (!a) throw ModelError("unbound variable '" + var->name + "'", base.loc);
                    if (a->type.rank == 0) throw ModelError("indexing a scalar", e.loc);
                    std::size_t idx = checked_index(eval_int(*n.index, env, self), a->rows, e.loc);
                    return element_of(*a, idx);
                }
                if (auto* inner = std::get_if<Index>(&base.node)) {
                    if (auto* var = std::get_if<VarRef>(&inner->base->node)) {
                        const Value* a = env.find(var->sym);
                        if (!a) throw ModelError("unbound variable '" + var->name + "'", base.loc);
                        if (a->type.rank != 2) throw ModelError("too many indices", e.loc);
                        std::size_t r = checked_index(eval_int(*inner->index, env, self), a->rows, base.loc);
                        std::size_t c = checked_index(eval_int(*n.index, env, self), a->cols, e.loc);
                        Value v;
                        v.type = {a->type.base, 0};
                        v.scalar = a->cells[r * a->cols + c];
                        return v;
                    }
                }
                Value a = eval_expr(base, env, self);
                if (a.type.rank == 0) throw ModelError("indexing a scalar", e.loc);
                return element_of(a, checked_index(eval_int(*n.index, env, self), a.rows, e.loc));
            } else if constexpr (std::is_same_v<T, Unary>) {
                if (n.op == UnaryOp::Not) return Value::of_bool(!eval_bool(*n.operand, env, self));
                return Value::of_int(checked_arith(-static_cast<std::int64_t>(eval_int(*n.operand, env, self)), e.loc));
            } else if constexpr (std::is_same_v<T, Binary>) {
                switch (n.op) {
                    case BinaryOp::And:
                        return Value::of_bool(eval_bool(*n.lhs, env, self) && eval_bool(*n.rhs, env, self));
                    case BinaryOp::Or:
                        return Value::of_bool(eval_bool(*n.lhs, env, self) || eval_bool(*n.rhs, env, self));
                    case BinaryOp::Eq:
                    case BinaryOp::Ne: {
                        Value l = eval_expr(*n.lhs, env, self);
                        Value r = eval_expr(*n.rhs, env, self);
                        if (l.type != r.type) throw ModelError("comparing values of different types", e.loc);
                        return Value::of_bool((l == r) == (n.op == BinaryOp::Eq));
                    }
                    default:
                        break;
                }
                std::int64_t l = eval_int(*n.lhs, env, self);
                std::int64_t r = eval_int(*n.rhs, env, self);
                switch (n.op) {
                    case BinaryOp::Add: return Value::of_int(checked_arith(l + r, e.loc));
                    case BinaryOp::Sub: return Value::of_int(checked_arith(l - r, e.loc));
                    case BinaryOp::Mul: return Value::of_int(checked_arith(l * r, e.loc));
                    case BinaryOp::Lt: return Value::of_bool(l < r);
                    case BinaryOp::Gt: return Value::of_bool(l > r);
                    case BinaryOp::Le: return Value::of_bool(l <= r);
                    case BinaryOp::Ge: return Value::of_bool(l >= r);
                    default: break;
                }
                throw ModelError("unsupported operator", e.loc);
            } else {
                if (n.dims.size() == 1) return Value::array(n.base, eval_int(*n.dims[0], env, self));
                std::int32_t rows = eval_int(*n.dims[0], env, self);
                std::int32_t cols = eval_int(*n.dims[1], env, self);
                if (rows < 0 || cols < 0) throw ModelError("negative array size", e.loc);
                return Value::array2(n.base, rows, cols);
            }
        },
        e.node);
}

void Interpreter::assign(const Expr& target, Value value, ExecContext& ctx) const {
    if (auto* var = std::get_if<VarRef>(&target.node)) {
        Value* slot = ctx.env.find(var->sym);
        if (!slot) throw ModelError("assignment to undeclared variable '" + var->name + "'", target.loc);
        if (slot->type != value.type) throw ModelError("assignment changes the type of '" + var->name + "'", target.loc);
        *slot = std::move(value);
        return;
    }
    const auto* idx = std::get_if<Index>(&target.node);
    if (!idx) throw ModelError("invalid assignment target", target.loc);
    std::size_t r_idx = 0;
    std::size_t c_idx = 0;
    bool two = false;
    const VarRef* var = std::get_if<VarRef>(&idx->base->node);
    if (var) {
        r_idx = static_cast<std::size_t>(eval_int(*idx->index, ctx.env, ctx.self));
    } else if (auto* inner = std::get_if<Index>(&idx->base->node)) {
        var = std::get_if<VarRef>(&inner->base->node);
        if (!var) throw ModelError("invalid assignment target", target.loc);
        r_idx = static_cast<std::size_t>(eval_int(*inner->index, ctx.env, ctx.self));
        c_idx = static_cast<std::size_t>(eval_int(*idx->index, ctx.env, ctx.self));
        two = true;
    } else {
        throw ModelError("invalid assignment target", target.loc);
    }
    Value* a = ctx.env.find(var->sym);
    if (!a) throw ModelError("assignment to undeclared variable '" + var->name + "'", target.loc);
    if (a->type.rank == 0) throw ModelError("indexing a scalar", target.loc);
    std::size_t r = checked_index(static_cast<std::int32_t>(r_idx), a->rows, target.loc);
    if (two) {
        if (a->type.rank != 2) throw ModelError("too many indices", target.loc);
        std::size_t c = checked_index(static_cast<std::int32_t>(c_idx), a->cols, target.loc);
        if (value.type != TypeRef{a->type.base, 0}) throw ModelError("array element type mismatch", target.loc);
        a->cells[r * a->cols + c] = value.scalar;
        return;
    }
    if (a->type.rank == 1) {
        if (value.type != TypeRef{a->type.base, 0}) throw ModelError("array element type mismatch", target.loc);
        a->cells[r] = value.scalar;
        return;
    }
    if (value.type != TypeRef{a->type.base, 1} || value.rows != a->cols)
        throw ModelError("array row type mismatch", target.loc);
    for (std::int32_t c = 0; c < a->cols; ++c) a->cells[r * a->cols + c] = value.cells[c];
}

Completion Interpreter::exec_block(const std::vector<StmtPtr>& stmts, ExecContext& ctx) const {
    // Seq: a broken statement discards the rest of the sequence.
    for (const auto& s : stmts)
        if (exec_stmt(*s, ctx) == Completion::Broken) return Completion::Broken;
    return Completion::Normal;
}

Completion Interpreter::exec_stmt(const Stmt& s, ExecContext& ctx) const {
    if (++ctx.steps > options_.max_steps)
        throw ModelError("handler step budget of " + std::to_string(options_.max_steps) +
                             " statements exhausted (possible divergent loop)",
                         s.loc);
    return std::visit(
        [&](const auto& n) -> Completion {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, DeclStmt>) {
                const VarDecl& d = n.decl;
                Value v = d.init ? eval_expr(*d.init, ctx.env, ctx.self) : Value::default_of(d.type, d.sizes);
                if (v.type != d.type) throw ModelError("initializer type mismatch for '" + d.name + "'", d.loc);
                ctx.env.declare(d.sym, std::move(v));
                return Completion::Normal;
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                assign(*n.target, eval_expr(*n.value, ctx.env, ctx.self), ctx);
                return Completion::Normal;
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                if (eval_bool(*n.cond, ctx.env, ctx.self)) return exec_stmt(*n.then_branch, ctx);
                if (n.else_branch) return exec_stmt(*n.else_branch, ctx);
                return Completion::Normal;
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                while (eval_bool(*n.cond, ctx.env, ctx.self)) {
                    if (exec_stmt(*n.body, ctx) == Completion::Broken) break;
                    if (++ctx.steps > options_.max_steps)
                        throw ModelError("handler step budget of " + std::to_string(options_.max_steps) +
                                             " statements exhausted (possible divergent loop)",
                                         s.loc);
                }
                return Completion::Normal;
            } else if constexpr (std::is_same_v<T, BreakStmt>) {
                return Completion::Broken;
            } else if constexpr (std::is_same_v<T, SendStmt>) {
                return exec_comm(s, ctx);
            } else {
                ctx.env.push_scope();
                Completion c = exec_block(n.stmts, ctx);
                ctx.env.pop_scope();
                return c;
            }
        },
        s.node);
}

Completion Interpreter::exec_comm(const Stmt& s, ExecContext& ctx) const {
    const auto* send = std::get_if<SendStmt>(&s.node);
    if (!send) throw ModelError("not a communication statement", s.loc);
    Message m;
    m.name = send->message_sym;
    m.args.reserve(send->args.size());
    for (const auto& a : send->args) m.args.push_back(eval_expr(*a, ctx.env, ctx.self));

    const std::size_t n = ctx.state.rebecs.size();
    auto probe = [&](std::size_t k) {
        bool c = ctx.gamma.connected(ctx.self, k);
        if (ctx.probes) ctx.probes->push_back({k, c});
        return c;
    };

    switch (send->kind) {
        case SendKind::Broadcast:
            for (std::size_t k = 0; k < n; ++k)
                if (k != ctx.self && probe(k)) ctx.state.rebecs[k].queue.push_back(m);
            return Completion::Normal;
        case SendKind::Multicast: {
            Value rcv = eval_expr(*send->receiver, ctx.env, ctx.self);
            if (rcv.type != TypeRef{BaseType::Bool, 1}) throw ModelError("multicast receivers must be boolean[]", s.loc);
            if (static_cast<std::size_t>(rcv.rows) != n)
                throw ModelError("multicast receiver array has length " + std::to_string(rcv.rows) + ", expected " +
                                     std::to_string(n),
                                 s.loc);
            for (std::size_t k = 0; k < n; ++k) {
                if (!rcv.cells[k]) continue;
                if (k == ctx.self || probe(k)) ctx.state.rebecs[k].queue.push_back(m);
            }
            return Completion::Normal;
        }
        case SendKind::Unicast: {
            std::int32_t j = eval_int(*send->receiver, ctx.env, ctx.self);
            if (j < 0 || static_cast<std::size_t>(j) >= n)
                throw ModelError("unicast receiver " + std::to_string(j) + " out of range", s.loc);
            auto target = static_cast<std::size_t>(j);
            bool ok = target == ctx.self || probe(target);
            if (ok) {
                ctx.state.rebecs[target].queue.push_back(std::move(m));
                return send->on_success ? exec_stmt(*send->on_success, ctx) : Completion::Normal;
            }
            return send->on_failure ? exec_stmt(*send->on_failure, ctx) : Completion::Normal;
        }
    }
    return Completion::Normal;
}

HandleResult Interpreter::handle_message(const GlobalState& s, std::size_t i, const Topology& gamma,
                                         std::vector<LinkProbe>* probes) const {
    if (i >= s.rebecs.size() || s.rebecs[i].queue.empty())
        throw std::invalid_argument("handle_message needs a nonempty queue");
    HandleResult out{s, {}, true};
    LocalState& local = out.state.rebecs[i];
    out.message = std::move(local.queue.front());
    local.queue.erase(local.queue.begin());

    const MsgSrv* srv = server_for(i, out.message.name);
    if (!srv) {
        out.understood = false;
        return out;
    }
    if (srv->params.size() != out.message.args.size())
        throw ModelError("message '" + srv->name + "' has wrong arity", srv->loc, static_cast<int>(i));

    Environment env;
    env.push_scope();
    const auto& syms = class_vars_[rebec_class_[i]];
    for (std::size_t k = 0; k < syms.size(); ++k) env.declare(syms[k], std::move(local.vars[k]));
    env.push_scope();
    for (std::size_t k = 0; k < srv->params.size(); ++k) env.declare(srv->params[k].sym, out.message.args[k]);

    ExecContext ctx{env, out.state, gamma, i, 0, probes};
    try {
        if (exec_block(srv->body, ctx) == Completion::Broken)
            throw ModelError("break outside of a loop", srv->loc);
    } catch (const ModelError& e) {
        throw e.with_rebec(static_cast<int>(i));
    }
    env.pop_scope();
    local.vars = env.take_bottom_scope();
    return out;
}

GlobalState Interpreter::mov(const GlobalState& s, const Topology& gamma2) const {
    if (gamma2.size() != model_.rebecs.size() || !satisfies(gamma2, *model_.constraint))
        throw std::invalid_argument("mov: topology " + gamma2.to_string() + " violates the network constraint");
    GlobalState out = s;
    out.topology = gamma2;
    return out;
}

}  // namespace wrebeca

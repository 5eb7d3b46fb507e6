#include "wrebeca/invariants.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "wrebeca/lexer.hpp"
#include "wrebeca/parser.hpp"
#include "wrebeca/printer.hpp"

namespace wrebeca {

namespace {

const Value& state_var(const GlobalState& s, const Model& model, std::size_t rebec, std::string_view var) {
    int k = model.class_of(rebec).state_var_index(var);
    if (k < 0)
        throw InvariantError("rebec " + model.rebecs[rebec].name + " has no state variable '" + std::string(var) +
                             "'");
    return s.rebecs[rebec].vars[static_cast<std::size_t>(k)];
}

// A rebec named by identifier or by number.
std::size_t rebec_arg(const Expr& e, const Model& model) {
    if (auto* v = std::get_if<VarRef>(&e.node)) {
        int id = model.rebec_index(v->name);
        if (id < 0) throw InvariantError("unknown rebec '" + v->name + "'");
        return static_cast<std::size_t>(id);
    }
    if (auto* lit = std::get_if<IntLit>(&e.node)) {
        if (lit->value < 0 || static_cast<std::size_t>(lit->value) >= model.rebec_count())
            throw InvariantError("rebec id " + std::to_string(lit->value) + " out of range");
        return static_cast<std::size_t>(lit->value);
    }
    throw InvariantError("expected a rebec name or id, got '" + print_expr(e) + "'");
}

std::string name_arg(const Expr& e) {
    if (auto* v = std::get_if<VarRef>(&e.node)) return v->name;
    throw InvariantError("expected a variable name, got '" + print_expr(e) + "'");
}

// Every rebec's class must declare `var` with the given rank.
void require_var(const Model& model, std::string_view var, int rank, BaseType base) {
    for (std::size_t i = 0; i < model.rebec_count(); ++i) {
        const ReactiveClass& cls = model.class_of(i);
        int k = cls.state_var_index(var);
        if (k < 0)
            throw InvariantError("class " + cls.name + " (rebec " + model.rebecs[i].name +
                                 ") declares no state variable '" + std::string(var) + "'");
        const TypeRef& t = cls.state_vars[static_cast<std::size_t>(k)].type;
        if (t.rank != rank || t.base != base)
            throw InvariantError("state variable '" + std::string(var) + "' has type " + to_string(t) +
                                 ", expected " + to_string(TypeRef{base, rank}));
    }
}

std::int32_t as_int(const Value& v, const Expr& e) {
    if (!v.is_scalar() || v.type.base != BaseType::Int)
        throw InvariantError("expected an int in '" + print_expr(e) + "'");
    return v.scalar;
}

bool as_bool(const Value& v, const Expr& e) {
    if (!v.is_scalar() || v.type.base != BaseType::Bool)
        throw InvariantError("expected a boolean in '" + print_expr(e) + "'");
    return v.scalar != 0;
}

// Resolves every qualified reference once so that typos fail before
// exploration rather than inside a worker.
void validate_refs(const Expr& e, const Model& model) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, QualifiedRef>) {
                int r = model.rebec_index(n.rebec);
                if (r < 0) throw InvariantError("unknown rebec '" + n.rebec + "'");
                if (model.class_of(static_cast<std::size_t>(r)).state_var_index(n.var) < 0)
                    throw InvariantError("rebec " + n.rebec + " has no state variable '" + n.var + "'");
            } else if constexpr (std::is_same_v<T, VarRef>) {
                throw InvariantError("unqualified variable '" + n.name + "'; write rebec." + n.name);
            } else if constexpr (std::is_same_v<T, SelfRef> || std::is_same_v<T, NewArray>) {
                throw InvariantError("'" + print_expr(e) + "' is not allowed in a state expression");
            } else if constexpr (std::is_same_v<T, Index>) {
                validate_refs(*n.base, model);
                validate_refs(*n.index, model);
            } else if constexpr (std::is_same_v<T, Unary>) {
                validate_refs(*n.operand, model);
            } else if constexpr (std::is_same_v<T, Binary>) {
                validate_refs(*n.lhs, model);
                validate_refs(*n.rhs, model);
            }
        },
        e.node);
}

}  // namespace

Value eval_state_expr(const Expr& e, const GlobalState& s, const Model& model) {
    return std::visit(
        [&](const auto& n) -> Value {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return Value::of_int(n.value);
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return Value::of_bool(n.value);
            } else if constexpr (std::is_same_v<T, QualifiedRef>) {
                int r = model.rebec_index(n.rebec);
                if (r < 0) throw InvariantError("unknown rebec '" + n.rebec + "'");
                return state_var(s, model, static_cast<std::size_t>(r), n.var);
            } else if constexpr (std::is_same_v<T, Index>) {
                Value a = eval_state_expr(*n.base, s, model);
                std::int32_t i = as_int(eval_state_expr(*n.index, s, model), *n.index);
                if (a.is_scalar()) throw InvariantError("indexing a scalar in '" + print_expr(e) + "'");
                if (i < 0 || i >= a.rows)
                    throw InvariantError("index " + std::to_string(i) + " out of bounds in '" + print_expr(e) + "'");
                if (a.type.rank == 1) {
                    Value v;
                    v.type = {a.type.base, 0};
                    v.scalar = a.cells[static_cast<std::size_t>(i)];
                    return v;
                }
                Value row = Value::array(a.type.base, a.cols);
                for (std::int32_t c = 0; c < a.cols; ++c)
                    row.cells[static_cast<std::size_t>(c)] = a.cells[static_cast<std::size_t>(i) * a.cols + c];
                return row;
            } else if constexpr (std::is_same_v<T, Unary>) {
                Value v = eval_state_expr(*n.operand, s, model);
                if (n.op == UnaryOp::Not) return Value::of_bool(!as_bool(v, e));
                return Value::of_int(-as_int(v, e));
            } else if constexpr (std::is_same_v<T, Binary>) {
                Value l = eval_state_expr(*n.lhs, s, model);
                if (n.op == BinaryOp::And && !as_bool(l, e)) return Value::of_bool(false);
                if (n.op == BinaryOp::Or && as_bool(l, e)) return Value::of_bool(true);
                Value r = eval_state_expr(*n.rhs, s, model);
                switch (n.op) {
                    case BinaryOp::And:
                    case BinaryOp::Or: return Value::of_bool(as_bool(r, e));
                    case BinaryOp::Eq: return Value::of_bool(l == r);
                    case BinaryOp::Ne: return Value::of_bool(!(l == r));
                    default: break;
                }
                std::int64_t a = as_int(l, e);
                std::int64_t b = as_int(r, e);
                switch (n.op) {
                    case BinaryOp::Add: return Value::of_int(static_cast<std::int32_t>(a + b));
                    case BinaryOp::Sub: return Value::of_int(static_cast<std::int32_t>(a - b));
                    case BinaryOp::Mul: return Value::of_int(static_cast<std::int32_t>(a * b));
                    case BinaryOp::Lt: return Value::of_bool(a < b);
                    case BinaryOp::Gt: return Value::of_bool(a > b);
                    case BinaryOp::Le: return Value::of_bool(a <= b);
                    case BinaryOp::Ge: return Value::of_bool(a >= b);
                    default: break;
                }
                throw InvariantError("unsupported operator in '" + print_expr(e) + "'");
            } else {
                throw InvariantError("'" + print_expr(e) + "' is not allowed in a state expression");
            }
        },
        e.node);
}

bool eval_predicate(const GlobalState& s, const Model& model, const Expr& e) {
    return as_bool(eval_state_expr(e, s, model), e);
}

std::vector<std::vector<std::size_t>> next_hop_graph(const GlobalState& s, const Model& model, std::string_view nhop,
                                                     std::size_t dest,
                                                     const std::optional<std::string>& route_state) {
    const std::size_t n = s.rebecs.size();
    const Symbol initial = model.symbol("initial");
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        // No routing table before initial has run, and no route to oneself.
        const auto& queue = s.rebecs[i].queue;
        if (i == dest || (!queue.empty() && queue.front().name == initial)) continue;
        const Value& table = state_var(s, model, i, nhop);
        if (table.type.rank != 2) throw InvariantError("next-hop variable '" + std::string(nhop) + "' is not 2-D");
        if (dest >= static_cast<std::size_t>(table.rows)) throw InvariantError("destination out of table range");
        if (route_state) {
            const Value& rs = state_var(s, model, i, *route_state);
            if (rs.type.rank != 1 || dest >= static_cast<std::size_t>(rs.rows))
                throw InvariantError("route-state variable '" + *route_state + "' is not a 1-D array over rebecs");
            if (rs.cells[dest] != 1) continue;
        }
        for (std::int32_t c = 0; c < table.cols; ++c) {
            std::int32_t k = table.cells[dest * static_cast<std::size_t>(table.cols) + static_cast<std::size_t>(c)];
            if (k < 0 || static_cast<std::size_t>(k) >= n) continue;
            auto hop = static_cast<std::size_t>(k);
            if (std::find(adj[i].begin(), adj[i].end(), hop) == adj[i].end()) adj[i].push_back(hop);
        }
    }
    return adj;
}

bool is_acyclic(const std::vector<std::vector<std::size_t>>& adj) {
    // Kahn's algorithm: acyclic iff every vertex is eventually peeled.
    const std::size_t n = adj.size();
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& out : adj)
        for (std::size_t k : out) ++indeg[k];
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    std::size_t peeled = 0;
    while (!ready.empty()) {
        std::size_t v = ready.back();
        ready.pop_back();
        ++peeled;
        for (std::size_t k : adj[v])
            if (--indeg[k] == 0) ready.push_back(k);
    }
    return peeled == n;
}

bool eval_loop_freedom(const GlobalState& s, const Model& model, std::string_view nhop, std::size_t dest,
                       const std::optional<std::string>& route_state) {
    return is_acyclic(next_hop_graph(s, model, nhop, dest, route_state));
}

bool check_step_monotone(const GlobalState& pre, const GlobalState& post, std::size_t var_index, std::size_t rebec) {
    const Value& a = pre.rebecs[rebec].vars[var_index];
    const Value& b = post.rebecs[rebec].vars[var_index];
    if (a.is_scalar()) return b.scalar >= a.scalar;
    for (std::size_t k = 0; k < a.cells.size(); ++k)
        if (b.cells[k] < a.cells[k]) return false;
    return true;
}

InvariantSpec parse_invariant(std::string_view text, const Model& model) {
    InvariantSpec spec;
    spec.text = std::string(text);
    CallSpec call;
    bool is_call = false;
    try {
        call = parse_call(text);
        is_call = call.name == "loop_freedom" || call.name == "predicate" || call.name == "step_monotone";
    } catch (const ParseError&) {
    }
    if (!is_call) {
        ExprPtr e;
        try {
            e = parse_expression(text);
        } catch (const ParseError& err) {
            throw InvariantError("invariant '" + std::string(text) + "': " + err.what());
        }
        validate_refs(*e, model);
        spec.kind = PredicateSpec{e};
        return spec;
    }
    const auto& args = call.args;
    if (call.name == "predicate") {
        if (args.size() != 1) throw InvariantError("predicate takes one expression");
        validate_refs(*args[0], model);
        spec.kind = PredicateSpec{args[0]};
    } else if (call.name == "loop_freedom") {
        if (args.size() < 3 || args.size() > 4)
            throw InvariantError("loop_freedom takes (nhop, src, dst[, route_state])");
        LoopFreedomSpec lf;
        lf.nhop = name_arg(*args[0]);
        require_var(model, lf.nhop, 2, BaseType::Int);
        lf.dests = {rebec_arg(*args[1], model), rebec_arg(*args[2], model)};
        if (args.size() == 4) {
            lf.route_state = name_arg(*args[3]);
            require_var(model, *lf.route_state, 1, BaseType::Int);
        }
        spec.kind = lf;
    } else {
        if (args.empty() || args.size() > 2) throw InvariantError("step_monotone takes (var[, rebec])");
        StepMonotoneSpec sm;
        sm.var = name_arg(*args[0]);
        if (args.size() == 2) sm.rebec = rebec_arg(*args[1], model);
        for (std::size_t i = 0; i < model.rebec_count(); ++i) {
            if (sm.rebec && *sm.rebec != i) continue;
            const ReactiveClass& cls = model.class_of(i);
            int k = cls.state_var_index(sm.var);
            if (k < 0)
                throw InvariantError("rebec " + model.rebecs[i].name + " has no state variable '" + sm.var + "'");
            if (cls.state_vars[static_cast<std::size_t>(k)].type.base != BaseType::Int)
                throw InvariantError("step_monotone needs an int variable, '" + sm.var + "' is not");
        }
        spec.kind = sm;
    }
    return spec;
}

void install(const InvariantSpec& spec, const Model& model, ExploreOptions& options) {
    const Model* m = &model;
    if (auto* lf = std::get_if<LoopFreedomSpec>(&spec.kind)) {
        LoopFreedomSpec copy = *lf;
        options.state_checks.push_back({spec.text, [m, copy](const GlobalState& s) {
                                            for (std::size_t d : copy.dests)
                                                if (!eval_loop_freedom(s, *m, copy.nhop, d, copy.route_state))
                                                    return false;
                                            return true;
                                        }});
    } else if (auto* p = std::get_if<PredicateSpec>(&spec.kind)) {
        ExprPtr e = p->expr;
        options.state_checks.push_back(
            {spec.text, [m, e](const GlobalState& s) { return eval_predicate(s, *m, *e); }});
    } else {
        const auto& sm = std::get<StepMonotoneSpec>(spec.kind);
        std::vector<int> index(model.rebec_count(), -1);
        for (std::size_t i = 0; i < model.rebec_count(); ++i)
            if (!sm.rebec || *sm.rebec == i) index[i] = model.class_of(i).state_var_index(sm.var);
        const Symbol initial = model.symbol("initial");
        // The initial handler establishes the starting values; monotonicity
        // is a claim about every step after it.
        options.step_checks.push_back(
            {spec.text, [index, initial](const GlobalState& pre, const GlobalState& post, std::size_t rebec) {
                 if (index[rebec] < 0) return true;
                 if (pre.rebecs[rebec].queue.front().name == initial) return true;
                 return check_step_monotone(pre, post, static_cast<std::size_t>(index[rebec]), rebec);
             }});
    }
}

Monitor parse_monitor(std::string_view text, const Model& model) {
    CallSpec call;
    try {
        call = parse_call(text);
    } catch (const ParseError& err) {
        throw InvariantError("monitor '" + std::string(text) + "': " + err.what());
    }
    for (const auto& a : call.args) validate_refs(*a, model);
    return Monitor{call.name, call.args};
}

std::string monitor_label(const Monitor& m, const GlobalState& s, const Model& model) {
    std::string out = m.name + "(";
    for (std::size_t k = 0; k < m.args.size(); ++k) {
        if (k > 0) out += ',';
        out += to_string(eval_state_expr(*m.args[k], s, model));
    }
    return out + ")";
}

Lts add_monitor_selfloops(const ExploreResult& result, const Model& model, const std::vector<Monitor>& monitors) {
    Lts out = result.lts;
    if (monitors.empty()) return out;
    for (std::uint32_t s = 0; s < out.num_states; ++s) {
        GlobalState g = result.state(s);
        for (const auto& m : monitors) out.add(s, monitor_label(m, g, model), s);
    }
    out.canonicalize();
    return out;
}

}  // namespace wrebeca

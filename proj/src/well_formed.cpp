#include "wrebeca/well_formed.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace wrebeca {

std::string to_string(const Violation& v) {
    return std::to_string(v.loc.line) + ":" + std::to_string(v.loc.column) + ": " + v.message;
}

namespace {

struct Signature {
    const ReactiveClass* owner = nullptr;
    const MsgSrv* msgsrv = nullptr;
};

class Checker {
public:
    Checker(const Model& model, std::vector<Violation>& out) : model_(model), out_(out) {}

    void run();

private:
    void report(SourceLoc loc, std::string msg) { out_.push_back({loc, std::move(msg)}); }

    void check_class(const ReactiveClass& cls);
    void check_msgsrv(const ReactiveClass& cls, const MsgSrv& m);
    void check_stmt(const Stmt& s);
    void check_send(const Stmt& s, const SendStmt& send);
    void declare(const VarDecl& d);
    std::optional<TypeRef> type_of(const Expr& e);
    std::optional<TypeRef> lookup(const std::string& name) const;
    std::optional<Signature> resolve_message(const std::string& name, SourceLoc loc);
    void check_args(const MsgSrv& target, const std::vector<ExprPtr>& args, SourceLoc loc);
    static bool is_constant(const Expr& e);

    const Model& model_;
    std::vector<Violation>& out_;
    const ReactiveClass* cls_ = nullptr;
    std::vector<std::map<std::string, TypeRef>> scopes_;
    int loop_depth_ = 0;
};

void Checker::run() {
    std::set<std::string> class_names;
    for (const auto& cls : model_.classes) {
        if (!class_names.insert(cls.name).second) report(cls.loc, "duplicate reactive class '" + cls.name + "'");
        check_class(cls);
    }

    const std::size_t n = model_.rebecs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RebecDecl& r = model_.rebecs[i];
        const ReactiveClass* cls = model_.find_class(r.class_name);
        if (!cls) {
            report(r.loc, "unknown reactive class '" + r.class_name + "'");
            continue;
        }
        std::set<std::string> seen;
        for (std::size_t k = 0; k < r.known.size(); ++k) {
            if (!seen.insert(r.known[k]).second)
                report(r.known_locs[k], "known rebec '" + r.known[k] + "' listed twice");
            int j = model_.rebec_index(r.known[k]);
            if (j < 0) {
                report(r.known_locs[k], "unknown rebec '" + r.known[k] + "'");
                continue;
            }
            const auto& back = model_.rebecs[j].known;
            if (static_cast<std::size_t>(j) != i && std::find(back.begin(), back.end(), r.name) == back.end())
                report(r.known_locs[k], "asymmetric initial topology: " + r.name + " lists " + r.known[k] + " but " +
                                            r.known[k] + " does not list " + r.name);
        }
        if (const MsgSrv* init = cls->find_msgsrv("initial")) {
            cls_ = cls;
            scopes_.assign(1, {});
            check_args(*init, r.args, r.loc);
            for (const auto& a : r.args)
                if (!is_constant(*a)) report(a->loc, "rebec arguments must be constants");
        }
    }

    try {
        if (!satisfies(model_.initial_topology, *model_.constraint))
            report(model_.constraint->loc, "initial topology violates constraint");
    } catch (const std::exception& e) {
        report(model_.constraint->loc, std::string("malformed constraint: ") + e.what());
    }
}

void Checker::check_class(const ReactiveClass& cls) {
    cls_ = &cls;
    std::set<std::string> names;
    scopes_.assign(1, {});
    for (const auto& v : cls.state_vars) {
        if (!names.insert(v.name).second) report(v.loc, "duplicate state variable '" + v.name + "'");
        if (v.type.rank > 0 && v.sizes.empty() && !v.init)
            report(v.loc, "array state variable '" + v.name + "' needs a size");
        if (v.init && !is_constant(*v.init)) report(v.init->loc, "state variable initializers must be constants");
        declare(v);
    }
    std::set<std::string> servers;
    bool has_initial = false;
    for (const auto& m : cls.msgsrvs) {
        if (!servers.insert(m.name).second) report(m.loc, "duplicate message server '" + m.name + "'");
        if (m.name == "initial") has_initial = true;
    }
    if (!has_initial) report(cls.loc, "reactive class '" + cls.name + "' has no initial message server");
    for (const auto& m : cls.msgsrvs) check_msgsrv(cls, m);
}

void Checker::check_msgsrv(const ReactiveClass& cls, const MsgSrv& m) {
    scopes_.resize(1);
    scopes_.emplace_back();
    for (const auto& p : m.params) {
        if (cls.state_var_index(p.name) >= 0)
            report(p.loc, "parameter '" + p.name + "' redeclares a state variable");
        if (!scopes_.back().emplace(p.name, p.type).second) report(p.loc, "duplicate parameter '" + p.name + "'");
    }
    loop_depth_ = 0;
    for (const auto& s : m.body) check_stmt(*s);
    scopes_.resize(1);
}

void Checker::declare(const VarDecl& d) {
    if (scopes_.size() > 1 && cls_->state_var_index(d.name) >= 0)
        report(d.loc, "local '" + d.name + "' redeclares a state variable");
    if (d.init) {
        auto t = type_of(*d.init);
        if (t && !(*t == d.type))
            report(d.init->loc, "cannot initialize " + to_string(d.type) + " '" + d.name + "' with " + to_string(*t));
    }
    if (!d.sizes.empty() && static_cast<int>(d.sizes.size()) != d.type.rank)
        report(d.loc, "array sizes do not match the declared rank");
    scopes_.back()[d.name] = d.type;
}

std::optional<TypeRef> Checker::lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
        auto f = it->find(name);
        if (f != it->end()) return f->second;
    }
    return std::nullopt;
}

bool Checker::is_constant(const Expr& e) {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, BoolLit>) {
                return true;
            } else if constexpr (std::is_same_v<T, Unary>) {
                return is_constant(*n.operand);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return is_constant(*n.lhs) && is_constant(*n.rhs);
            } else if constexpr (std::is_same_v<T, NewArray>) {
                for (const auto& d : n.dims)
                    if (!is_constant(*d)) return false;
                return true;
            } else {
                return false;
            }
        },
        e.node);
}

std::optional<TypeRef> Checker::type_of(const Expr& e) {
    const TypeRef kInt{BaseType::Int, 0};
    const TypeRef kBool{BaseType::Bool, 0};
    return std::visit(
        [&](const auto& n) -> std::optional<TypeRef> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return kInt;
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return kBool;
            } else if constexpr (std::is_same_v<T, SelfRef>) {
                return kInt;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                auto t = lookup(n.name);
                if (!t) report(e.loc, "undeclared variable '" + n.name + "'");
                return t;
            } else if constexpr (std::is_same_v<T, QualifiedRef>) {
                report(e.loc, "qualified reference '" + n.rebec + "." + n.var + "' is not allowed in a model");
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, Index>) {
                auto base = type_of(*n.base);
                auto idx = type_of(*n.index);
                if (idx && !(*idx == kInt)) report(n.index->loc, "array index must be int");
                if (!base) return std::nullopt;
                if (base->rank == 0) {
                    report(e.loc, "indexing a scalar");
                    return std::nullopt;
                }
                return TypeRef{base->base, base->rank - 1};
            } else if constexpr (std::is_same_v<T, Unary>) {
                auto t = type_of(*n.operand);
                TypeRef want = n.op == UnaryOp::Not ? kBool : kInt;
                if (t && !(*t == want)) report(e.loc, std::string("operand of '") + (n.op == UnaryOp::Not ? "!" : "-") +
                                                          "' must be " + to_string(want));
                return want;
            } else if constexpr (std::is_same_v<T, Binary>) {
                auto l = type_of(*n.lhs);
                auto r = type_of(*n.rhs);
                switch (n.op) {
                    case BinaryOp::Add:
                    case BinaryOp::Sub:
                    case BinaryOp::Mul:
                        if ((l && !(*l == kInt)) || (r && !(*r == kInt)))
                            report(e.loc, std::string("operands of '") + to_string(n.op) + "' must be int");
                        return kInt;
                    case BinaryOp::Lt:
                    case BinaryOp::Gt:
                    case BinaryOp::Le:
                    case BinaryOp::Ge:
                        if ((l && !(*l == kInt)) || (r && !(*r == kInt)))
                            report(e.loc, std::string("operands of '") + to_string(n.op) + "' must be int");
                        return kBool;
                    case BinaryOp::Eq:
                    case BinaryOp::Ne:
                        if (l && r && (!(*l == *r) || l->rank != 0))
                            report(e.loc, std::string("operands of '") + to_string(n.op) + "' must be scalars of one type");
                        return kBool;
                    case BinaryOp::And:
                    case BinaryOp::Or:
                        if ((l && !(*l == kBool)) || (r && !(*r == kBool)))
                            report(e.loc, std::string("operands of '") + to_string(n.op) + "' must be boolean");
                        return kBool;
                }
                return std::nullopt;
            } else {
                for (const auto& d : n.dims) {
                    auto t = type_of(*d);
                    if (t && !(*t == kInt)) report(d->loc, "array size must be int");
                }
                return TypeRef{n.base, static_cast<int>(n.dims.size())};
            }
        },
        e.node);
}

std::optional<Signature> Checker::resolve_message(const std::string& name, SourceLoc loc) {
    if (const MsgSrv* own = cls_->find_msgsrv(name)) return Signature{cls_, own};
    std::optional<Signature> found;
    for (const auto& c : model_.classes) {
        const MsgSrv* m = c.find_msgsrv(name);
        if (!m) continue;
        if (!found) {
            found = Signature{&c, m};
            continue;
        }
        bool same = m->params.size() == found->msgsrv->params.size();
        for (std::size_t k = 0; same && k < m->params.size(); ++k)
            same = m->params[k].type == found->msgsrv->params[k].type;
        if (!same) report(loc, "message server '" + name + "' has conflicting signatures across classes");
    }
    if (!found) report(loc, "unknown message server '" + name + "'");
    return found;
}

void Checker::check_args(const MsgSrv& target, const std::vector<ExprPtr>& args, SourceLoc loc) {
    if (args.size() != target.params.size()) {
        report(loc, "message '" + target.name + "' expects " + std::to_string(target.params.size()) +
                        " argument(s), got " + std::to_string(args.size()));
        for (const auto& a : args) type_of(*a);
        return;
    }
    for (std::size_t k = 0; k < args.size(); ++k) {
        auto t = type_of(*args[k]);
        if (t && !(*t == target.params[k].type))
            report(args[k]->loc, "argument " + std::to_string(k + 1) + " of '" + target.name + "' must be " +
                                     to_string(target.params[k].type) + ", got " + to_string(*t));
    }
}

void Checker::check_send(const Stmt& s, const SendStmt& send) {
    if (send.kind == SendKind::Unicast) {
        auto t = type_of(*send.receiver);
        if (t && !(*t == TypeRef{BaseType::Int, 0})) report(send.receiver->loc, "unicast receiver must be self or an int");
    } else if (send.kind == SendKind::Multicast) {
        auto t = type_of(*send.receiver);
        if (t && !(*t == TypeRef{BaseType::Bool, 1}))
            report(send.receiver->loc, "multicast receivers must be a boolean array");
    }
    if (auto sig = resolve_message(send.message, s.loc)) check_args(*sig->msgsrv, send.args, s.loc);
    if (send.on_success) check_stmt(*send.on_success);
    if (send.on_failure) check_stmt(*send.on_failure);
}

void Checker::check_stmt(const Stmt& s) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, DeclStmt>) {
                declare(n.decl);
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                const Expr* root = n.target.get();
                while (auto* idx = std::get_if<Index>(&root->node)) root = idx->base.get();
                if (!std::holds_alternative<VarRef>(root->node)) report(n.target->loc, "invalid assignment target");
                auto lt = type_of(*n.target);
                auto rt = type_of(*n.value);
                if (lt && rt && !(*lt == *rt))
                    report(s.loc, "cannot assign " + to_string(*rt) + " to " + to_string(*lt));
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                auto t = type_of(*n.cond);
                if (t && !(*t == TypeRef{BaseType::Bool, 0})) report(n.cond->loc, "condition must be boolean");
                scopes_.emplace_back();
                check_stmt(*n.then_branch);
                scopes_.pop_back();
                if (n.else_branch) {
                    scopes_.emplace_back();
                    check_stmt(*n.else_branch);
                    scopes_.pop_back();
                }
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                auto t = type_of(*n.cond);
                if (t && !(*t == TypeRef{BaseType::Bool, 0})) report(n.cond->loc, "condition must be boolean");
                ++loop_depth_;
                scopes_.emplace_back();
                check_stmt(*n.body);
                scopes_.pop_back();
                --loop_depth_;
            } else if constexpr (std::is_same_v<T, BreakStmt>) {
                if (loop_depth_ == 0) report(s.loc, "break outside of a loop");
            } else if constexpr (std::is_same_v<T, SendStmt>) {
                check_send(s, n);
            } else {
                scopes_.emplace_back();
                for (const auto& st : n.stmts) check_stmt(*st);
                scopes_.pop_back();
            }
        },
        s.node);
}

}  // namespace

std::vector<Violation> check_well_formed(const Model& model) {
    std::vector<Violation> out;
    Checker(model, out).run();
    return out;
}

}  // namespace wrebeca

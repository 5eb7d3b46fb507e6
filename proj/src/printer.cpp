#include "wrebeca/printer.hpp"

#include <sstream>

namespace wrebeca {

namespace {

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 4, ' '); }

std::string print_type(const TypeRef& t, const std::vector<std::int32_t>& sizes) {
    std::string s = t.base == BaseType::Int ? "int" : "boolean";
    for (int k = 0; k < t.rank; ++k) {
        s += "[";
        if (static_cast<std::size_t>(k) < sizes.size()) s += std::to_string(sizes[k]);
        s += "]";
    }
    return s;
}

std::string print_decl(const VarDecl& d) {
    std::string s = print_type(d.type, d.sizes) + " " + d.name;
    if (d.init) s += " = " + print_expr(*d.init);
    return s + ";";
}

std::string print_args(const std::vector<ExprPtr>& args) {
    std::string s = "(";
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (k > 0) s += ", ";
        s += print_expr(*args[k]);
    }
    return s + ")";
}

// Branches keep their shape: a block prints as braces, anything else as a
// single nested statement.
std::string print_branch(const Stmt& s, int indent) {
    if (std::holds_alternative<BlockStmt>(s.node)) return " " + print_stmt(s, indent).substr(pad(indent).size());
    return "\n" + print_stmt(s, indent + 1);
}

}  // namespace

std::string print_expr(const Expr& e) {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return std::to_string(n.value);
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return n.value ? "true" : "false";
            } else if constexpr (std::is_same_v<T, VarRef>) {
                return n.name;
            } else if constexpr (std::is_same_v<T, QualifiedRef>) {
                return n.rebec + "." + n.var;
            } else if constexpr (std::is_same_v<T, SelfRef>) {
                return "self";
            } else if constexpr (std::is_same_v<T, Index>) {
                return print_expr(*n.base) + "[" + print_expr(*n.index) + "]";
            } else if constexpr (std::is_same_v<T, Unary>) {
                return std::string(n.op == UnaryOp::Not ? "!" : "-") + "(" + print_expr(*n.operand) + ")";
            } else if constexpr (std::is_same_v<T, Binary>) {
                return "(" + print_expr(*n.lhs) + " " + to_string(n.op) + " " + print_expr(*n.rhs) + ")";
            } else {
                std::string s = std::string("new ") + (n.base == BaseType::Int ? "int" : "boolean");
                for (const auto& d : n.dims) s += "[" + print_expr(*d) + "]";
                return s;
            }
        },
        e.node);
}

std::string print_stmt(const Stmt& s, int indent) {
    const std::string p = pad(indent);
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, DeclStmt>) {
                return p + print_decl(n.decl) + "\n";
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                return p + print_expr(*n.target) + " = " + print_expr(*n.value) + ";\n";
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                std::string out = p + "if (" + print_expr(*n.cond) + ")" + print_branch(*n.then_branch, indent);
                if (n.else_branch) out += p + "else" + print_branch(*n.else_branch, indent);
                return out;
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                return p + "while (" + print_expr(*n.cond) + ")" + print_branch(*n.body, indent);
            } else if constexpr (std::is_same_v<T, BreakStmt>) {
                return p + "break;\n";
            } else if constexpr (std::is_same_v<T, SendStmt>) {
                std::string call = n.message + print_args(n.args);
                switch (n.kind) {
                    case SendKind::Broadcast:
                        return p + call + ";\n";
                    case SendKind::Multicast:
                        return p + "multicast(" + print_expr(*n.receiver) + ", " + call + ");\n";
                    case SendKind::Unicast: {
                        std::string out = p + "unicast(" + print_expr(*n.receiver) + ", " + call + ")";
                        if (!n.on_success && !n.on_failure) return out + ";\n";
                        out += "\n";
                        if (n.on_success) out += p + "succ:" + print_branch(*n.on_success, indent);
                        if (n.on_failure) out += p + "unsucc:" + print_branch(*n.on_failure, indent);
                        return out;
                    }
                }
                return {};
            } else {
                std::string out = p + "{\n";
                for (const auto& st : n.stmts) out += print_stmt(*st, indent + 1);
                return out + p + "}\n";
            }
        },
        s.node);
}

std::string print_model(const Model& model) {
    std::ostringstream os;
    for (const auto& cls : model.classes) {
        os << "reactiveclass " << cls.name << "\n{\n";
        os << "    statevars\n    {\n";
        for (const auto& v : cls.state_vars) os << "        " << print_decl(v) << "\n";
        os << "    }\n";
        for (const auto& m : cls.msgsrvs) {
            os << "\n    msgsrv " << m.name << "(";
            for (std::size_t k = 0; k < m.params.size(); ++k) {
                if (k > 0) os << ", ";
                os << to_string(m.params[k].type) << " " << m.params[k].name;
            }
            os << ")\n    {\n";
            for (const auto& st : m.body) os << print_stmt(*st, 2);
            os << "    }\n";
        }
        os << "}\n\n";
    }
    os << "main\n{\n";
    for (const auto& r : model.rebecs) {
        os << "    " << r.class_name << " " << r.name << "(";
        for (std::size_t k = 0; k < r.known.size(); ++k) os << (k > 0 ? ", " : "") << r.known[k];
        os << "):" << print_args(r.args) << ";\n";
    }
    if (model.has_constraint_block) os << "\n    constraint\n    {\n        " << to_string(*model.constraint) << "\n    }\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------- equality

namespace {

bool same_ptr(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return same_ast(*a, *b);
}

bool same_ptr(const StmtPtr& a, const StmtPtr& b) {
    if (!a || !b) return !a && !b;
    return same_ast(*a, *b);
}

template <class P>
bool same_list(const std::vector<P>& a, const std::vector<P>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!same_ptr(a[k], b[k])) return false;
    return true;
}

bool same_decl(const VarDecl& a, const VarDecl& b) {
    return a.type == b.type && a.sizes == b.sizes && a.name == b.name && same_ptr(a.init, b.init);
}

bool same_constraint(const Constraint& a, const Constraint& b) { return to_string(a) == to_string(b); }

}  // namespace

bool same_ast(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, BoolLit>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, QualifiedRef>) {
                return x.rebec == y.rebec && x.var == y.var;
            } else if constexpr (std::is_same_v<T, SelfRef>) {
                return true;
            } else if constexpr (std::is_same_v<T, Index>) {
                return same_ptr(x.base, y.base) && same_ptr(x.index, y.index);
            } else if constexpr (std::is_same_v<T, Unary>) {
                return x.op == y.op && same_ptr(x.operand, y.operand);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return x.op == y.op && same_ptr(x.lhs, y.lhs) && same_ptr(x.rhs, y.rhs);
            } else {
                return x.base == y.base && same_list(x.dims, y.dims);
            }
        },
        a.node);
}

bool same_ast(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, DeclStmt>) {
                return same_decl(x.decl, y.decl);
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                return same_ptr(x.target, y.target) && same_ptr(x.value, y.value);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                return same_ptr(x.cond, y.cond) && same_ptr(x.then_branch, y.then_branch) &&
                       same_ptr(x.else_branch, y.else_branch);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                return same_ptr(x.cond, y.cond) && same_ptr(x.body, y.body);
            } else if constexpr (std::is_same_v<T, BreakStmt>) {
                return true;
            } else if constexpr (std::is_same_v<T, SendStmt>) {
                return x.kind == y.kind && same_ptr(x.receiver, y.receiver) && x.message == y.message &&
                       same_list(x.args, y.args) && same_ptr(x.on_success, y.on_success) &&
                       same_ptr(x.on_failure, y.on_failure);
            } else {
                return same_list(x.stmts, y.stmts);
            }
        },
        a.node);
}

bool same_ast(const Model& a, const Model& b) {
    if (a.classes.size() != b.classes.size() || a.rebecs.size() != b.rebecs.size()) return false;
    for (std::size_t c = 0; c < a.classes.size(); ++c) {
        const auto& x = a.classes[c];
        const auto& y = b.classes[c];
        if (x.name != y.name || x.state_vars.size() != y.state_vars.size() || x.msgsrvs.size() != y.msgsrvs.size())
            return false;
        for (std::size_t k = 0; k < x.state_vars.size(); ++k)
            if (!same_decl(x.state_vars[k], y.state_vars[k])) return false;
        for (std::size_t k = 0; k < x.msgsrvs.size(); ++k) {
            const auto& m = x.msgsrvs[k];
            const auto& n = y.msgsrvs[k];
            if (m.name != n.name || m.params.size() != n.params.size()) return false;
            for (std::size_t p = 0; p < m.params.size(); ++p)
                if (m.params[p].name != n.params[p].name || !(m.params[p].type == n.params[p].type)) return false;
            if (!same_list(m.body, n.body)) return false;
        }
    }
    for (std::size_t r = 0; r < a.rebecs.size(); ++r) {
        const auto& x = a.rebecs[r];
        const auto& y = b.rebecs[r];
        if (x.class_name != y.class_name || x.name != y.name || x.known != y.known || !same_list(x.args, y.args))
            return false;
    }
    return a.has_constraint_block == b.has_constraint_block && same_constraint(*a.constraint, *b.constraint) &&
           a.initial_topology == b.initial_topology;
}

}  // namespace wrebeca

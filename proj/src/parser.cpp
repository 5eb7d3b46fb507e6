#include "wrebeca/parser.hpp"

#include <charconv>
#include <limits>
#include <unordered_map>
#include <utility>

namespace wrebeca {

namespace {

class Parser {
public:
    explicit Parser(std::string_view source, bool allow_qualified = false)
        : toks_(tokenize(source)), allow_qualified_(allow_qualified) {}

    Model parse_model();
    ConstraintPtr parse_constraint_only(const Model& model);
    ExprPtr parse_expression_only();
    CallSpec parse_call_only();

private:
    // token access
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool at_punct(std::string_view p, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == TokenKind::Punct && t.text == p;
    }
    bool at_word(std::string_view w, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == TokenKind::Ident && t.text == w;
    }
    bool accept_punct(std::string_view p) {
        if (!at_punct(p)) return false;
        next();
        return true;
    }
    bool accept_word(std::string_view w) {
        if (!at_word(w)) return false;
        next();
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        std::string got = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.loc, what + ", found " + got);
    }
    const Token& expect_punct(std::string_view p) {
        if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
        return next();
    }
    void expect_word(std::string_view w) {
        if (!at_word(w)) fail("expected '" + std::string(w) + "'");
        next();
    }
    const Token& expect_ident(const char* what) {
        if (peek().kind != TokenKind::Ident || is_reserved(peek().text)) fail(std::string("expected ") + what);
        return next();
    }
    void expect_end() {
        if (peek().kind != TokenKind::End) fail("expected end of input");
    }

    static bool is_reserved(const std::string& w) {
        static const char* const kWords[] = {"reactiveclass", "statevars", "msgsrv", "main",  "if",
                                             "else",          "while",     "for",    "break", "true",
                                             "false",         "self",      "int",    "boolean", "new",
                                             "multicast",     "unicast",   "succ",   "unsucc"};
        for (const char* k : kWords)
            if (w == k) return true;
        return false;
    }
    bool at_type() const { return at_word("int") || at_word("boolean"); }

    Symbol intern(const std::string& name) {
        auto [it, inserted] = symtab_.emplace(name, static_cast<Symbol>(symbols_.size()));
        if (inserted) symbols_.push_back(name);
        return it->second;
    }

    // declarations
    struct ParsedType {
        TypeRef type;
        std::vector<std::int32_t> sizes;
    };
    ParsedType parse_type();
    std::int32_t parse_int_literal();
    void parse_declarators(const ParsedType& type, std::vector<VarDecl>& out);
    ReactiveClass parse_class();
    MsgSrv parse_msgsrv();
    void parse_main(Model& model);
    ConstraintPtr parse_constraint(const Model& model);

    // statements
    void parse_statement(std::vector<StmtPtr>& out);
    StmtPtr parse_branch();
    StmtPtr parse_block();
    StmtPtr parse_simple(bool require_semicolon);
    StmtPtr parse_send_tail(SendKind kind, ExprPtr receiver, SourceLoc loc);
    void parse_message_call(std::string& name, Symbol& sym, std::vector<ExprPtr>& args);

    // expressions
    ExprPtr parse_expr() { return parse_or(); }
    ExprPtr parse_or();
    ExprPtr parse_and();
    ExprPtr parse_equality();
    ExprPtr parse_relational();
    ExprPtr parse_additive();
    ExprPtr parse_multiplicative();
    ExprPtr parse_unary();
    ExprPtr parse_postfix();
    ExprPtr parse_primary();

    static ExprPtr make_expr(SourceLoc loc, decltype(Expr::node) node) {
        return std::make_shared<const Expr>(Expr{loc, std::move(node)});
    }
    static StmtPtr make_stmt(SourceLoc loc, decltype(Stmt::node) node) {
        return std::make_shared<const Stmt>(Stmt{loc, std::move(node)});
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool allow_qualified_ = false;
    std::unordered_map<std::string, Symbol> symtab_;
    std::vector<std::string> symbols_;
};

std::int32_t Parser::parse_int_literal() {
    const Token& t = peek();
    if (t.kind != TokenKind::Number) fail("expected integer literal");
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || v > std::numeric_limits<std::int32_t>::max())
        throw ParseError(t.loc, "integer literal out of range");
    next();
    return static_cast<std::int32_t>(v);
}

Parser::ParsedType Parser::parse_type() {
    ParsedType pt;
    if (accept_word("int"))
        pt.type.base = BaseType::Int;
    else if (accept_word("boolean"))
        pt.type.base = BaseType::Bool;
    else
        fail("expected type");
    bool sized = false;
    bool unsized = false;
    while (at_punct("[")) {
        SourceLoc loc = next().loc;
        if (pt.type.rank == 2) throw ParseError(loc, "arrays have at most two dimensions");
        ++pt.type.rank;
        if (at_punct("]")) {
            unsized = true;
        } else {
            std::int32_t k = parse_int_literal();
            if (k <= 0) throw ParseError(loc, "array size must be positive");
            pt.sizes.push_back(k);
            sized = true;
        }
        expect_punct("]");
    }
    if (sized && unsized) fail("array dimensions must be all sized or all unsized");
    return pt;
}

void Parser::parse_declarators(const ParsedType& type, std::vector<VarDecl>& out) {
    do {
        const Token& name = expect_ident("variable name");
        VarDecl d;
        d.type = type.type;
        d.sizes = type.sizes;
        d.name = name.text;
        d.sym = intern(name.text);
        d.loc = name.loc;
        if (accept_punct("=")) d.init = parse_expr();
        out.push_back(std::move(d));
    } while (accept_punct(","));
    expect_punct(";");
}

Model Parser::parse_model() {
    Model model;
    if (!at_word("reactiveclass")) fail("expected 'reactiveclass'");
    while (at_word("reactiveclass")) model.classes.push_back(parse_class());
    parse_main(model);
    expect_end();
    model.symbols = symbols_;
    return model;
}

ReactiveClass Parser::parse_class() {
    ReactiveClass cls;
    cls.loc = peek().loc;
    expect_word("reactiveclass");
    cls.name = expect_ident("class name").text;
    expect_punct("{");
    if (accept_word("statevars")) {
        expect_punct("{");
        while (!at_punct("}")) {
            if (!at_type()) fail("expected state variable declaration");
            ParsedType t = parse_type();
            parse_declarators(t, cls.state_vars);
        }
        expect_punct("}");
    }
    while (at_word("msgsrv")) cls.msgsrvs.push_back(parse_msgsrv());
    expect_punct("}");
    return cls;
}

MsgSrv Parser::parse_msgsrv() {
    MsgSrv m;
    m.loc = peek().loc;
    expect_word("msgsrv");
    const Token& name = expect_ident("message server name");
    m.name = name.text;
    m.sym = intern(name.text);
    expect_punct("(");
    if (!at_punct(")")) {
        do {
            Param p;
            p.loc = peek().loc;
            ParsedType t = parse_type();
            if (!t.sizes.empty()) throw ParseError(p.loc, "array parameters take their size from the argument");
            p.type = t.type;
            const Token& pn = expect_ident("parameter name");
            p.name = pn.text;
            p.sym = intern(pn.text);
            m.params.push_back(std::move(p));
        } while (accept_punct(","));
    }
    expect_punct(")");
    expect_punct("{");
    while (!at_punct("}")) {
        if (peek().kind == TokenKind::End) fail("expected '}'");
        parse_statement(m.body);
    }
    expect_punct("}");
    return m;
}

void Parser::parse_main(Model& model) {
    expect_word("main");
    expect_punct("{");
    while (peek().kind == TokenKind::Ident && !at_word("constraint")) {
        RebecDecl r;
        r.loc = peek().loc;
        r.class_name = expect_ident("class name").text;
        if (!model.find_class(r.class_name)) throw ParseError(r.loc, "unknown identifier '" + r.class_name + "'");
        const Token& name = expect_ident("rebec name");
        r.name = name.text;
        if (model.rebec_index(r.name) >= 0) throw ParseError(name.loc, "duplicate rebec name '" + r.name + "'");
        expect_punct("(");
        if (!at_punct(")")) {
            do {
                const Token& k = expect_ident("known rebec name");
                r.known.push_back(k.text);
                r.known_locs.push_back(k.loc);
            } while (accept_punct(","));
        }
        expect_punct(")");
        if (accept_punct(":")) {
            expect_punct("(");
            if (!at_punct(")")) {
                do {
                    r.args.push_back(parse_expr());
                } while (accept_punct(","));
            }
            expect_punct(")");
        }
        expect_punct(";");
        model.rebecs.push_back(std::move(r));
    }
    if (model.rebecs.empty()) fail("expected at least one rebec declaration");

    const std::size_t n = model.rebecs.size();
    model.initial_topology = Topology(n);
    for (std::size_t i = 0; i < n; ++i) {
        const RebecDecl& r = model.rebecs[i];
        for (std::size_t k = 0; k < r.known.size(); ++k) {
            int j = model.rebec_index(r.known[k]);
            if (j < 0) throw ParseError(r.known_locs[k], "unknown identifier '" + r.known[k] + "'");
            if (static_cast<std::size_t>(j) != i) model.initial_topology.set(i, j, true);
        }
    }

    if (accept_word("constraint")) {
        expect_punct("{");
        model.constraint = parse_constraint(model);
        expect_punct("}");
        model.has_constraint_block = true;
    } else {
        model.constraint = std::make_shared<const Constraint>(Constraint::make_true());
    }
    expect_punct("}");
}

ConstraintPtr Parser::parse_constraint(const Model& model) {
    Constraint c;
    c.loc = peek().loc;
    bool negated = accept_punct("!");
    if (accept_word("true")) {
        c.node = Constraint::True{negated};
    } else if (at_word("con")) {
        next();
        expect_punct("(");
        Constraint::Con con;
        con.negated = negated;
        const Token& a = expect_ident("rebec name");
        expect_punct(",");
        const Token& b = expect_ident("rebec name");
        expect_punct(")");
        con.a = a.text;
        con.b = b.text;
        con.a_id = model.rebec_index(a.text);
        con.b_id = model.rebec_index(b.text);
        if (con.a_id < 0) throw ParseError(a.loc, "unknown identifier '" + a.text + "'");
        if (con.b_id < 0) throw ParseError(b.loc, "unknown identifier '" + b.text + "'");
        c.node = std::move(con);
    } else if (at_word("and")) {
        if (negated) fail("negation applies only to con(...) or true");
        next();
        expect_punct("(");
        Constraint::And a;
        a.lhs = parse_constraint(model);
        expect_punct(",");
        a.rhs = parse_constraint(model);
        expect_punct(")");
        c.node = std::move(a);
    } else {
        fail("malformed constraint: expected con(...), !con(...), and(...) or true");
    }
    return std::make_shared<const Constraint>(std::move(c));
}

ConstraintPtr Parser::parse_constraint_only(const Model& model) {
    ConstraintPtr c = parse_constraint(model);
    expect_end();
    return c;
}

// ---------------------------------------------------------------- statements

StmtPtr Parser::parse_block() {
    SourceLoc loc = expect_punct("{").loc;
    BlockStmt b;
    while (!at_punct("}")) {
        if (peek().kind == TokenKind::End) fail("expected '}'");
        parse_statement(b.stmts);
    }
    expect_punct("}");
    return make_stmt(loc, std::move(b));
}

StmtPtr Parser::parse_branch() {
    if (at_punct("{")) return parse_block();
    SourceLoc loc = peek().loc;
    std::vector<StmtPtr> stmts;
    parse_statement(stmts);
    if (stmts.size() == 1) return stmts.front();
    return make_stmt(loc, BlockStmt{std::move(stmts)});
}

void Parser::parse_message_call(std::string& name, Symbol& sym, std::vector<ExprPtr>& args) {
    const Token& m = expect_ident("message name");
    name = m.text;
    sym = intern(m.text);
    expect_punct("(");
    if (!at_punct(")")) {
        do {
            args.push_back(parse_expr());
        } while (accept_punct(","));
    }
    expect_punct(")");
}

StmtPtr Parser::parse_send_tail(SendKind kind, ExprPtr receiver, SourceLoc loc) {
    SendStmt s;
    s.kind = kind;
    s.receiver = std::move(receiver);
    parse_message_call(s.message, s.message_sym, s.args);
    expect_punct(")");
    if (kind == SendKind::Unicast) {
        if (accept_word("succ")) {
            expect_punct(":");
            s.on_success = parse_branch();
        }
        if (accept_word("unsucc")) {
            expect_punct(":");
            s.on_failure = parse_branch();
        }
        if (!s.on_success && !s.on_failure) expect_punct(";");
        else accept_punct(";");
    } else {
        expect_punct(";");
    }
    return make_stmt(loc, std::move(s));
}

// Assignment-like statement: `lv = e`, `lv += e`, `lv -= e`, `lv++`, `lv--`.
StmtPtr Parser::parse_simple(bool require_semicolon) {
    SourceLoc loc = peek().loc;
    const Token& name = expect_ident("statement");
    ExprPtr target = make_expr(name.loc, VarRef{name.text, intern(name.text)});
    while (at_punct("[")) {
        SourceLoc iloc = next().loc;
        ExprPtr idx = parse_expr();
        expect_punct("]");
        target = make_expr(iloc, Index{target, idx});
    }
    ExprPtr value;
    if (accept_punct("=")) {
        value = parse_expr();
    } else if (at_punct("++") || at_punct("--") || at_punct("+=") || at_punct("-=")) {
        const Token& op = next();
        ExprPtr rhs = (op.text == "++" || op.text == "--") ? make_expr(op.loc, IntLit{1}) : parse_expr();
        BinaryOp bop = (op.text == "++" || op.text == "+=") ? BinaryOp::Add : BinaryOp::Sub;
        value = make_expr(op.loc, Binary{bop, target, rhs});
    } else {
        fail("expected '=', '++' or '--'");
    }
    if (require_semicolon) expect_punct(";");
    return make_stmt(loc, AssignStmt{target, value});
}

void Parser::parse_statement(std::vector<StmtPtr>& out) {
    const Token& t = peek();
    SourceLoc loc = t.loc;
    if (at_punct("{")) {
        out.push_back(parse_block());
        return;
    }
    if (at_punct(";")) {
        next();
        return;
    }
    if (t.kind != TokenKind::Ident) fail("expected statement");
    if (at_type()) {
        ParsedType type = parse_type();
        std::vector<VarDecl> decls;
        parse_declarators(type, decls);
        for (auto& d : decls) {
            SourceLoc dl = d.loc;
            out.push_back(make_stmt(dl, DeclStmt{std::move(d)}));
        }
        return;
    }
    if (accept_word("if")) {
        expect_punct("(");
        ExprPtr cond = parse_expr();
        expect_punct(")");
        IfStmt s;
        s.cond = cond;
        s.then_branch = parse_branch();
        if (accept_word("else")) s.else_branch = parse_branch();
        out.push_back(make_stmt(loc, std::move(s)));
        return;
    }
    if (accept_word("while")) {
        expect_punct("(");
        ExprPtr cond = parse_expr();
        expect_punct(")");
        StmtPtr body = parse_branch();
        out.push_back(make_stmt(loc, WhileStmt{cond, body}));
        return;
    }
    if (accept_word("for")) {
        // for(init; cond; step) body  ==>  init; while(cond) { body step }
        expect_punct("(");
        if (at_type()) {
            ParsedType type = parse_type();
            std::vector<VarDecl> decls;
            parse_declarators(type, decls);
            for (auto& d : decls) {
                SourceLoc dl = d.loc;
                out.push_back(make_stmt(dl, DeclStmt{std::move(d)}));
            }
        } else if (!accept_punct(";")) {
            out.push_back(parse_simple(true));
        }
        ExprPtr cond = at_punct(";") ? make_expr(peek().loc, BoolLit{true}) : parse_expr();
        expect_punct(";");
        StmtPtr step;
        if (!at_punct(")")) step = parse_simple(false);
        expect_punct(")");
        BlockStmt body;
        SourceLoc bloc = peek().loc;
        if (at_punct("{")) {
            next();
            while (!at_punct("}")) {
                if (peek().kind == TokenKind::End) fail("expected '}'");
                parse_statement(body.stmts);
            }
            next();
        } else {
            parse_statement(body.stmts);
        }
        if (step) body.stmts.push_back(step);
        out.push_back(make_stmt(loc, WhileStmt{cond, make_stmt(bloc, std::move(body))}));
        return;
    }
    if (accept_word("break")) {
        expect_punct(";");
        out.push_back(make_stmt(loc, BreakStmt{}));
        return;
    }
    if (accept_word("multicast")) {
        expect_punct("(");
        ExprPtr recv = parse_expr();
        expect_punct(",");
        out.push_back(parse_send_tail(SendKind::Multicast, recv, loc));
        return;
    }
    if (accept_word("unicast")) {
        expect_punct("(");
        ExprPtr recv = parse_expr();
        expect_punct(",");
        out.push_back(parse_send_tail(SendKind::Unicast, recv, loc));
        return;
    }
    if (is_reserved(t.text)) fail("expected statement");
    if (at_punct("(", 1)) {
        SendStmt s;
        s.kind = SendKind::Broadcast;
        parse_message_call(s.message, s.message_sym, s.args);
        expect_punct(";");
        out.push_back(make_stmt(loc, std::move(s)));
        return;
    }
    out.push_back(parse_simple(true));
}

// --------------------------------------------------------------- expressions

ExprPtr Parser::parse_or() {
    ExprPtr lhs = parse_and();
    while (at_punct("||")) {
        SourceLoc loc = next().loc;
        lhs = make_expr(loc, Binary{BinaryOp::Or, lhs, parse_and()});
    }
    return lhs;
}

ExprPtr Parser::parse_and() {
    ExprPtr lhs = parse_equality();
    while (at_punct("&&")) {
        SourceLoc loc = next().loc;
        lhs = make_expr(loc, Binary{BinaryOp::And, lhs, parse_equality()});
    }
    return lhs;
}

ExprPtr Parser::parse_equality() {
    ExprPtr lhs = parse_relational();
    while (at_punct("==") || at_punct("!=")) {
        const Token& op = next();
        BinaryOp bop = op.text == "==" ? BinaryOp::Eq : BinaryOp::Ne;
        lhs = make_expr(op.loc, Binary{bop, lhs, parse_relational()});
    }
    return lhs;
}

ExprPtr Parser::parse_relational() {
    ExprPtr lhs = parse_additive();
    while (at_punct("<") || at_punct(">") || at_punct("<=") || at_punct(">=")) {
        const Token& op = next();
        BinaryOp bop = op.text == "<"    ? BinaryOp::Lt
                       : op.text == ">"  ? BinaryOp::Gt
                       : op.text == "<=" ? BinaryOp::Le
                                         : BinaryOp::Ge;
        lhs = make_expr(op.loc, Binary{bop, lhs, parse_additive()});
    }
    return lhs;
}

ExprPtr Parser::parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (at_punct("+") || at_punct("-")) {
        const Token& op = next();
        BinaryOp bop = op.text == "+" ? BinaryOp::Add : BinaryOp::Sub;
        lhs = make_expr(op.loc, Binary{bop, lhs, parse_multiplicative()});
    }
    return lhs;
}

ExprPtr Parser::parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    while (at_punct("*")) {
        SourceLoc loc = next().loc;
        lhs = make_expr(loc, Binary{BinaryOp::Mul, lhs, parse_unary()});
    }
    return lhs;
}

ExprPtr Parser::parse_unary() {
    if (at_punct("!")) {
        SourceLoc loc = next().loc;
        return make_expr(loc, Unary{UnaryOp::Not, parse_unary()});
    }
    if (at_punct("-")) {
        SourceLoc loc = next().loc;
        ExprPtr operand = parse_unary();
        if (auto* lit = std::get_if<IntLit>(&operand->node)) return make_expr(loc, IntLit{-lit->value});
        return make_expr(loc, Unary{UnaryOp::Neg, operand});
    }
    return parse_postfix();
}

ExprPtr Parser::parse_postfix() {
    ExprPtr e = parse_primary();
    while (at_punct("[")) {
        SourceLoc loc = next().loc;
        ExprPtr idx = parse_expr();
        expect_punct("]");
        e = make_expr(loc, Index{e, idx});
    }
    return e;
}

ExprPtr Parser::parse_primary() {
    const Token& t = peek();
    SourceLoc loc = t.loc;
    if (t.kind == TokenKind::Number) return make_expr(loc, IntLit{parse_int_literal()});
    if (accept_punct("(")) {
        ExprPtr e = parse_expr();
        expect_punct(")");
        return e;
    }
    if (accept_word("true")) return make_expr(loc, BoolLit{true});
    if (accept_word("false")) return make_expr(loc, BoolLit{false});
    if (accept_word("self")) return make_expr(loc, SelfRef{});
    if (accept_word("new")) {
        NewArray na;
        if (accept_word("int"))
            na.base = BaseType::Int;
        else if (accept_word("boolean"))
            na.base = BaseType::Bool;
        else
            fail("expected element type after 'new'");
        while (accept_punct("[")) {
            if (na.dims.size() == 2) fail("arrays have at most two dimensions");
            na.dims.push_back(parse_expr());
            expect_punct("]");
        }
        if (na.dims.empty()) fail("expected array size");
        return make_expr(loc, std::move(na));
    }
    if (t.kind == TokenKind::Ident && !is_reserved(t.text)) {
        next();
        if (allow_qualified_ && at_punct(".")) {
            next();
            const Token& var = expect_ident("state variable name");
            return make_expr(loc, QualifiedRef{t.text, var.text, intern(var.text)});
        }
        return make_expr(loc, VarRef{t.text, intern(t.text)});
    }
    fail("expected expression");
}

ExprPtr Parser::parse_expression_only() {
    ExprPtr e = parse_expr();
    expect_end();
    return e;
}

CallSpec Parser::parse_call_only() {
    CallSpec c;
    c.name = expect_ident("name").text;
    expect_punct("(");
    if (!at_punct(")")) {
        do {
            c.args.push_back(parse_expr());
        } while (accept_punct(","));
    }
    expect_punct(")");
    expect_end();
    return c;
}

}  // namespace

Model parse_model(std::string_view source) { return Parser(source).parse_model(); }

ConstraintPtr parse_constraint(std::string_view text, const Model& model) {
    return Parser(text).parse_constraint_only(model);
}

ExprPtr parse_expression(std::string_view text) { return Parser(text, true).parse_expression_only(); }

CallSpec parse_call(std::string_view text) { return Parser(text, true).parse_call_only(); }

Model with_constraint(const Model& model, ConstraintPtr constraint) {
    Model m = model;
    m.constraint = std::move(constraint);
    m.has_constraint_block = true;
    return m;
}

// ------------------------------------------------------------- AST helpers

std::string to_string(const TypeRef& t) {
    std::string s = t.base == BaseType::Int ? "int" : "boolean";
    for (int k = 0; k < t.rank; ++k) s += "[]";
    return s;
}

const char* to_string(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::And: return "&&";
        case BinaryOp::Or: return "||";
    }
    return "?";
}

Constraint Constraint::make_true() { return Constraint{{}, Constraint::True{false}}; }

std::string to_string(const Constraint& c) {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Constraint::True>) {
                return node.negated ? "!true" : "true";
            } else if constexpr (std::is_same_v<T, Constraint::Con>) {
                return std::string(node.negated ? "!" : "") + "con(" + node.a + "," + node.b + ")";
            } else {
                return "and(" + to_string(*node.lhs) + "," + to_string(*node.rhs) + ")";
            }
        },
        c.node);
}

const MsgSrv* ReactiveClass::find_msgsrv(std::string_view n) const {
    for (const auto& m : msgsrvs)
        if (m.name == n) return &m;
    return nullptr;
}

int ReactiveClass::state_var_index(std::string_view n) const {
    for (std::size_t k = 0; k < state_vars.size(); ++k)
        if (state_vars[k].name == n) return static_cast<int>(k);
    return -1;
}

int Model::rebec_index(std::string_view n) const {
    for (std::size_t k = 0; k < rebecs.size(); ++k)
        if (rebecs[k].name == n) return static_cast<int>(k);
    return -1;
}

const ReactiveClass* Model::find_class(std::string_view n) const {
    for (const auto& c : classes)
        if (c.name == n) return &c;
    return nullptr;
}

const ReactiveClass& Model::class_of(std::size_t rebec) const { return *find_class(rebecs.at(rebec).class_name); }

Symbol Model::symbol(std::string_view n) const {
    for (std::size_t k = 0; k < symbols.size(); ++k)
        if (symbols[k] == n) return static_cast<Symbol>(k);
    return -1;
}

}  // namespace wrebeca

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wrebeca/topology.hpp"

namespace wrebeca {

struct SourceLoc {
    int line = 0;
    int column = 0;
};

// Interned identifier. Assigned by the parser; stable across runs for the
// same source text because interning follows token order.
using Symbol = std::int32_t;

enum class BaseType : std::uint8_t { Int, Bool };

struct TypeRef {
    BaseType base = BaseType::Int;
    int rank = 0;  // 0 scalar, 1 or 2 for arrays

    bool operator==(const TypeRef&) const = default;
};

std::string to_string(const TypeRef& t);

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<const Expr>;
using StmtPtr = std::shared_ptr<const Stmt>;

enum class UnaryOp : std::uint8_t { Not, Neg };
enum class BinaryOp : std::uint8_t { Add, Sub, Mul, Eq, Ne, Lt, Gt, Le, Ge, And, Or };

const char* to_string(BinaryOp op);

struct IntLit {
    std::int32_t value = 0;
};
struct BoolLit {
    bool value = false;
};
struct VarRef {
    std::string name;
    Symbol sym = -1;
};
// `rebec.var`; only legal inside invariant and monitor expressions.
struct QualifiedRef {
    std::string rebec;
    std::string var;
    Symbol sym = -1;
};
struct SelfRef {};
struct Index {
    ExprPtr base;  // VarRef, QualifiedRef or Index
    ExprPtr index;
};
struct Unary {
    UnaryOp op = UnaryOp::Not;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op = BinaryOp::Add;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct NewArray {
    BaseType base = BaseType::Int;
    std::vector<ExprPtr> dims;  // one or two sizes
};

struct Expr {
    SourceLoc loc;
    std::variant<IntLit, BoolLit, VarRef, QualifiedRef, SelfRef, Index, Unary, Binary, NewArray> node;
};

struct VarDecl {
    TypeRef type;
    std::vector<std::int32_t> sizes;  // from `int[4][4] x`; empty when unsized
    std::string name;
    Symbol sym = -1;
    ExprPtr init;  // may be null
    SourceLoc loc;
};

struct DeclStmt {
    VarDecl decl;
};
struct AssignStmt {
    ExprPtr target;  // VarRef or Index chain rooted at a VarRef
    ExprPtr value;
};
struct IfStmt {
    ExprPtr cond;
    StmtPtr then_branch;
    StmtPtr else_branch;  // may be null
};
struct WhileStmt {
    ExprPtr cond;
    StmtPtr body;
};
struct BreakStmt {};

enum class SendKind : std::uint8_t { Broadcast, Multicast, Unicast };

struct SendStmt {
    SendKind kind = SendKind::Broadcast;
    ExprPtr receiver;  // null for broadcast; receiver set or rebec id otherwise
    std::string message;
    Symbol message_sym = -1;
    std::vector<ExprPtr> args;
    StmtPtr on_success;  // unicast only, may be null
    StmtPtr on_failure;  // unicast only, may be null
};
struct BlockStmt {
    std::vector<StmtPtr> stmts;
};

struct Stmt {
    SourceLoc loc;
    std::variant<DeclStmt, AssignStmt, IfStmt, WhileStmt, BreakStmt, SendStmt, BlockStmt> node;
};

struct Param {
    TypeRef type;
    std::string name;
    Symbol sym = -1;
    SourceLoc loc;
};

struct MsgSrv {
    std::string name;
    Symbol sym = -1;
    std::vector<Param> params;
    std::vector<StmtPtr> body;
    SourceLoc loc;
};

struct ReactiveClass {
    std::string name;
    std::vector<VarDecl> state_vars;
    std::vector<MsgSrv> msgsrvs;
    SourceLoc loc;

    const MsgSrv* find_msgsrv(std::string_view name) const;
    int state_var_index(std::string_view name) const;
};

struct RebecDecl {
    std::string class_name;
    std::string name;
    std::vector<std::string> known;
    std::vector<SourceLoc> known_locs;
    std::vector<ExprPtr> args;
    SourceLoc loc;
};

// Conjunction of link literals over rebec identifiers.
struct Constraint {
    struct True {
        bool negated = false;
    };
    struct Con {
        std::string a;
        std::string b;
        int a_id = -1;
        int b_id = -1;
        bool negated = false;
    };
    struct And {
        std::shared_ptr<const Constraint> lhs;
        std::shared_ptr<const Constraint> rhs;
    };

    SourceLoc loc;
    std::variant<True, Con, And> node{True{}};

    static Constraint make_true();
};

using ConstraintPtr = std::shared_ptr<const Constraint>;

std::string to_string(const Constraint& c);

struct Model {
    std::vector<ReactiveClass> classes;
    std::vector<RebecDecl> rebecs;  // order defines rebec ids 0..n-1
    ConstraintPtr constraint;
    bool has_constraint_block = false;
    // Union of the known-rebec lists; asymmetric lists are reported by
    // check_well_formed rather than repaired here.
    Topology initial_topology;
    std::vector<std::string> symbols;  // Symbol -> name

    std::size_t rebec_count() const { return rebecs.size(); }
    int rebec_index(std::string_view name) const;
    const ReactiveClass* find_class(std::string_view name) const;
    const ReactiveClass& class_of(std::size_t rebec) const;
    Symbol symbol(std::string_view name) const;  // -1 when never interned
};

}  // namespace wrebeca

#pragma once

#include <string>

#include "wrebeca/ast.hpp"

namespace wrebeca {

// Surface syntax that parses back to an equal AST. Loops appear in their
// desugared while form and `x++` as an assignment.
std::string print_model(const Model& model);
std::string print_expr(const Expr& e);
std::string print_stmt(const Stmt& s, int indent = 0);

// Structural equality ignoring source locations and symbol numbering.
bool same_ast(const Model& a, const Model& b);
bool same_ast(const Expr& a, const Expr& b);
bool same_ast(const Stmt& a, const Stmt& b);

}  // namespace wrebeca

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wrebeca/ast.hpp"
#include "wrebeca/lexer.hpp"

namespace wrebeca {

// Parses a complete model. Throws ParseError on syntax errors and on names
// in the main block (classes, known rebecs, constraint nodes) that do not
// resolve. Statement-level name checks belong to check_well_formed.
Model parse_model(std::string_view source);

// Parses a constraint and resolves its rebec names against `model`.
ConstraintPtr parse_constraint(std::string_view text, const Model& model);

// Expression language of invariants and monitors: model expressions plus
// `rebec.var` references.
ExprPtr parse_expression(std::string_view text);

struct CallSpec {
    std::string name;
    std::vector<ExprPtr> args;
};

// `name(e1, ..., ek)` with invariant-expression arguments.
CallSpec parse_call(std::string_view text);

// Returns a copy of `model` whose constraint is replaced.
Model with_constraint(const Model& model, ConstraintPtr constraint);

}  // namespace wrebeca

#pragma once

#include <string>
#include <vector>

#include "wrebeca/ast.hpp"

namespace wrebeca {

struct Violation {
    SourceLoc loc;
    std::string message;
};

std::string to_string(const Violation& v);

// Empty iff the model is well formed: unique names, an initial message
// server per class, declared-before-use, no state variable redeclared in a
// message server, sends matching a message server signature, break only
// inside loops, symmetric known-rebec lists, and an initial topology that
// satisfies the constraint.
std::vector<Violation> check_well_formed(const Model& model);

}  // namespace wrebeca

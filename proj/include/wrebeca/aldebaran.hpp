#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wrebeca/ast.hpp"
#include "wrebeca/explorer.hpp"
#include "wrebeca/lts.hpp"

namespace wrebeca {

class AldebaranError : public std::runtime_error {
public:
    AldebaranError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// `des (i0, m, n)` followed by `(src, "label", dst)` lines sorted by source,
// label text, and target.
void write_aldebaran(const Lts& lts, std::ostream& out);
std::string to_aldebaran(const Lts& lts);

// Accepts quoted or bare labels; the header counts must match the body.
Lts read_aldebaran(std::istream& in);
Lts parse_aldebaran(std::string_view text);

// States in trace order with the label taken between consecutive ones:
//
//   state 0
//     node0: ([destination=false], <initial(true,false)>)
//     topology: 1101/1110/0111/1011
//   --[ initial(true,false) ]-->
//   state 1
//   ...
void write_trace(const Trace& trace, const Model& model, std::ostream& out);

// Sidecar mapping each state index of an explored LTS to its dump.
void write_state_table(const ExploreResult& result, const Model& model, std::ostream& out);

}  // namespace wrebeca

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wrebeca/ast.hpp"
#include "wrebeca/topology.hpp"
#include "wrebeca/value.hpp"

namespace wrebeca {

struct Message {
    Symbol name = -1;
    std::vector<Value> args;

    bool operator==(const Message&) const = default;
};

// Environment restricted to the state variables (in declaration order) and
// the FIFO queue, head first.
struct LocalState {
    std::vector<Value> vars;
    std::vector<Message> queue;

    bool operator==(const LocalState&) const = default;
};

struct GlobalState {
    std::vector<LocalState> rebecs;
    std::optional<Topology> topology;  // absent in topology-free states

    bool operator==(const GlobalState&) const = default;
};

// Canonical byte keys. The configuration key covers local states only; the
// topology is keyed separately by the explorer.
void encode(const LocalState& s, std::string& out);
std::string encode_local(const LocalState& s);
std::string encode_config(const GlobalState& s);
GlobalState decode_config(std::string_view key);
LocalState decode_local(std::string_view in, std::size_t& pos);

// `m(v1,...,vk)`, or bare `m` for a message without arguments.
std::string format_message(const Message& m, const Model& model);

// `([IP=0, ...], <relay_packet(55,0,3)>)`
std::string format_local(const LocalState& s, const ReactiveClass& cls, const Model& model);

// One line per rebec plus a topology line when present.
std::string format_state(const GlobalState& s, const Model& model, std::string_view indent = "");

}  // namespace wrebeca

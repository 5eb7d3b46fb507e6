#include "wrebeca/state.hpp"

namespace wrebeca {

void encode(const LocalState& s, std::string& out) {
    put_varint(out, static_cast<std::int64_t>(s.vars.size()));
    for (const auto& v : s.vars) encode(v, out);
    put_varint(out, static_cast<std::int64_t>(s.queue.size()));
    for (const auto& m : s.queue) {
        put_varint(out, m.name);
        put_varint(out, static_cast<std::int64_t>(m.args.size()));
        for (const auto& a : m.args) encode(a, out);
    }
}

std::string encode_local(const LocalState& s) {
    std::string out;
    encode(s, out);
    return out;
}

std::string encode_config(const GlobalState& s) {
    std::string out;
    put_varint(out, static_cast<std::int64_t>(s.rebecs.size()));
    for (const auto& r : s.rebecs) encode(r, out);
    return out;
}

LocalState decode_local(std::string_view in, std::size_t& pos) {
    LocalState s;
    auto nvars = get_varint(in, pos);
    s.vars.reserve(static_cast<std::size_t>(nvars));
    for (std::int64_t k = 0; k < nvars; ++k) s.vars.push_back(decode_value(in, pos));
    auto nmsg = get_varint(in, pos);
    s.queue.reserve(static_cast<std::size_t>(nmsg));
    for (std::int64_t k = 0; k < nmsg; ++k) {
        Message m;
        m.name = static_cast<Symbol>(get_varint(in, pos));
        auto nargs = get_varint(in, pos);
        for (std::int64_t a = 0; a < nargs; ++a) m.args.push_back(decode_value(in, pos));
        s.queue.push_back(std::move(m));
    }
    return s;
}

GlobalState decode_config(std::string_view key) {
    std::size_t pos = 0;
    GlobalState g;
    auto n = get_varint(key, pos);
    g.rebecs.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) g.rebecs.push_back(decode_local(key, pos));
    return g;
}

std::string format_message(const Message& m, const Model& model) {
    std::string out = m.name >= 0 && static_cast<std::size_t>(m.name) < model.symbols.size() ? model.symbols[m.name]
                                                                                               : "?";
    if (m.args.empty()) return out;
    out += '(';
    for (std::size_t k = 0; k < m.args.size(); ++k) {
        if (k > 0) out += ',';
        out += to_string(m.args[k]);
    }
    return out + ')';
}

std::string format_local(const LocalState& s, const ReactiveClass& cls, const Model& model) {
    std::string out = "([";
    for (std::size_t k = 0; k < s.vars.size(); ++k) {
        if (k > 0) out += ", ";
        out += (k < cls.state_vars.size() ? cls.state_vars[k].name : "?") + "=" + to_string(s.vars[k]);
    }
    out += "], <";
    for (std::size_t k = 0; k < s.queue.size(); ++k) {
        if (k > 0) out += ", ";
        out += format_message(s.queue[k], model);
    }
    return out + ">)";
}

std::string format_state(const GlobalState& s, const Model& model, std::string_view indent) {
    std::string out;
    for (std::size_t i = 0; i < s.rebecs.size(); ++i) {
        out += indent;
        out += model.rebecs.at(i).name + ": " + format_local(s.rebecs[i], model.class_of(i), model) + "\n";
    }
    if (s.topology) {
        out += indent;
        out += "topology: " + s.topology->to_string() + "\n";
    }
    return out;
}

}  // namespace wrebeca

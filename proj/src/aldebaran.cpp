#include "wrebeca/aldebaran.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace wrebeca {

namespace {

std::string quote(std::string_view label) {
    std::string out = "\"";
    for (char c : label) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw AldebaranError(line, std::string("expected '") + c + "'");
        ++pos;
    }
    std::uint64_t number() {
        skip_ws();
        std::size_t begin = pos;
        std::uint64_t v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            if (v > 0xffffffffu) throw AldebaranError(line, "number too large");
            ++pos;
        }
        if (pos == begin) throw AldebaranError(line, "expected a number");
        return v;
    }
    std::string label() {
        skip_ws();
        std::string out;
        if (pos < text.size() && text[pos] == '"') {
            ++pos;
            while (true) {
                if (pos >= text.size()) throw AldebaranError(line, "unterminated label");
                char c = text[pos++];
                if (c == '"') break;
                if (c == '\\' && pos < text.size()) c = text[pos++];
                out += c;
            }
            return out;
        }
        // A bare label runs up to the comma before the target; it may
        // itself contain commas inside parentheses.
        int depth = 0;
        while (pos < text.size()) {
            char c = text[pos];
            if (depth == 0 && c == ',') break;
            if (c == '(') ++depth;
            if (c == ')') --depth;
            out += c;
            ++pos;
        }
        while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
        if (out.empty()) throw AldebaranError(line, "empty label");
        return out;
    }
    void end() {
        skip_ws();
        if (pos != text.size()) throw AldebaranError(line, "trailing characters");
    }
};

}  // namespace

void write_aldebaran(const Lts& lts, std::ostream& out) {
    Lts sorted = lts;
    sorted.canonicalize();
    out << "des (" << sorted.initial << ", " << sorted.transitions.size() << ", " << sorted.num_states << ")\n";
    for (const auto& t : sorted.transitions)
        out << '(' << t.src << ", " << quote(sorted.label(t.label)) << ", " << t.dst << ")\n";
    if (!out) throw std::runtime_error("write failed");
}

std::string to_aldebaran(const Lts& lts) {
    std::ostringstream out;
    write_aldebaran(lts, out);
    return out.str();
}

Lts parse_aldebaran(std::string_view text) {
    Lts lts;
    std::size_t declared = 0;
    bool header = false;
    int line_no = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(begin, end - begin);
        begin = end + 1;
        ++line_no;
        Cursor c{line, 0, line_no};
        c.skip_ws();
        if (c.pos == line.size()) {
            if (end == text.size()) break;
            continue;
        }
        if (!header) {
            if (line.substr(c.pos, 3) != "des") throw AldebaranError(line_no, "expected 'des' header");
            c.pos += 3;
            c.expect('(');
            lts.initial = static_cast<std::uint32_t>(c.number());
            c.expect(',');
            declared = c.number();
            c.expect(',');
            lts.num_states = c.number();
            c.expect(')');
            c.end();
            if (lts.num_states == 0) throw AldebaranError(line_no, "no states");
            if (lts.initial >= lts.num_states) throw AldebaranError(line_no, "initial state out of range");
            header = true;
            continue;
        }
        c.expect('(');
        auto src = c.number();
        c.expect(',');
        std::string label = c.label();
        c.expect(',');
        auto dst = c.number();
        c.expect(')');
        c.end();
        if (src >= lts.num_states || dst >= lts.num_states) throw AldebaranError(line_no, "state out of range");
        lts.add(static_cast<std::uint32_t>(src), label, static_cast<std::uint32_t>(dst));
        if (end == text.size()) break;
    }
    if (!header) throw AldebaranError(line_no, "missing 'des' header");
    if (lts.transitions.size() != declared)
        throw AldebaranError(line_no, "header declares " + std::to_string(declared) + " transitions, found " +
                                          std::to_string(lts.transitions.size()));
    return lts;
}

Lts read_aldebaran(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_aldebaran(buf.str());
}

void write_trace(const Trace& trace, const Model& model, std::ostream& out) {
    for (std::size_t k = 0; k < trace.states.size(); ++k) {
        if (k > 0) out << "--[ " << trace.labels[k - 1] << " ]-->\n";
        out << "state " << k << "\n" << format_state(trace.states[k], model, "  ");
    }
    if (!out) throw std::runtime_error("write failed");
}

void write_state_table(const ExploreResult& result, const Model& model, std::ostream& out) {
    for (std::size_t s = 0; s < result.lts.num_states; ++s) {
        GlobalState g = result.state(s);
        out << "state " << s;
        if (result.stats.mode == Mode::Counter) out << " (representative)";
        out << "\n" << format_state(g, model, "  ");
    }
    if (!out) throw std::runtime_error("write failed");
}

}  // namespace wrebeca

#include "wrebeca/lexer.hpp"

#include <array>
#include <cctype>

namespace wrebeca {

ParseError::ParseError(SourceLoc loc, const std::string& message)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message),
      loc_(loc),
      message_(message) {}

namespace {

constexpr std::array<std::string_view, 10> kTwoCharPuncts = {"==", "!=", "<=", ">=", "&&",
                                                             "||", "++", "--", "+=", "-="};
constexpr std::string_view kOneCharPuncts = "{}()[];,.:=<>+-*!";

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count && pos < src.size(); ++k, ++pos) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (pos < src.size()) {
        unsigned char c = static_cast<unsigned char>(src[pos]);
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        // UTF-8 zero-width characters sometimes survive copy-paste; tolerate
        // U+200B..U+200D and the BOM as whitespace.
        if (c == 0xE2 && pos + 2 < src.size() && static_cast<unsigned char>(src[pos + 1]) == 0x80 &&
            (static_cast<unsigned char>(src[pos + 2]) >= 0x8B && static_cast<unsigned char>(src[pos + 2]) <= 0x8D)) {
            pos += 3;
            ++col;
            continue;
        }
        if (c == 0xEF && pos + 2 < src.size() && static_cast<unsigned char>(src[pos + 1]) == 0xBB &&
            static_cast<unsigned char>(src[pos + 2]) == 0xBF) {
            pos += 3;
            continue;
        }
        SourceLoc loc{line, col};
        if (src.substr(pos, 2) == "//") {
            while (pos < src.size() && src[pos] != '\n') advance(1);
            continue;
        }
        if (src.substr(pos, 2) == "/*") {
            advance(2);
            while (pos < src.size() && src.substr(pos, 2) != "*/") advance(1);
            if (pos >= src.size()) throw ParseError(loc, "unterminated comment");
            advance(2);
            continue;
        }
        if (ident_start(c)) {
            std::size_t start = pos;
            while (pos < src.size() && ident_char(static_cast<unsigned char>(src[pos]))) advance(1);
            out.push_back({TokenKind::Ident, std::string(src.substr(start, pos - start)), loc});
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance(1);
            if (pos < src.size() && ident_char(static_cast<unsigned char>(src[pos])))
                throw ParseError({line, col}, "malformed number");
            out.push_back({TokenKind::Number, std::string(src.substr(start, pos - start)), loc});
            continue;
        }
        bool matched = false;
        for (auto p : kTwoCharPuncts) {
            if (src.substr(pos, 2) == p) {
                out.push_back({TokenKind::Punct, std::string(p), loc});
                advance(2);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (kOneCharPuncts.find(static_cast<char>(c)) != std::string_view::npos) {
            out.push_back({TokenKind::Punct, std::string(1, static_cast<char>(c)), loc});
            advance(1);
            continue;
        }
        throw ParseError(loc, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    out.push_back({TokenKind::End, "", {line, col}});
    return out;
}

}  // namespace wrebeca

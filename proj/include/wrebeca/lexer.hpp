#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wrebeca/ast.hpp"

namespace wrebeca {

class ParseError : public std::runtime_error {
public:
    ParseError(SourceLoc loc, const std::string& message);

    SourceLoc loc() const { return loc_; }
    const std::string& message() const { return message_; }

private:
    SourceLoc loc_;
    std::string message_;
};

enum class TokenKind : std::uint8_t {
    Ident,
    Number,
    Punct,  // operators and delimiters, text holds the spelling
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourceLoc loc;
};

// Splits source text into tokens, dropping whitespace and // and /* */
// comments. Keywords are returned as identifiers.
std::vector<Token> tokenize(std::string_view source);

}  // namespace wrebeca

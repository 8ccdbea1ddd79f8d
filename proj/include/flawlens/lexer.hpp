#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace flawlens {

enum class TokenKind { Keyword, Identifier, Punct, Integer, Eof };

struct Token {
    TokenKind kind;
    std::string text;
    int line;
    int column;

    bool operator==(const Token&) const = default;
};

/// Lexes MiniOO source. Whitespace and `//` comments are skipped; the result
/// always ends with an Eof token. Throws LexError on an illegal character,
/// tagged with `file` when given.
std::vector<Token> tokenize(std::string_view text, const std::string& file = {});

bool is_keyword(std::string_view word);

}  // namespace flawlens

#include "flawlens/lexer.hpp"

#include "flawlens/errors.hpp"

#include <array>
#include <cctype>

namespace flawlens {

namespace {

constexpr std::array kKeywords{
    std::string_view("class"), std::string_view("extends"), std::string_view("public"),
    std::string_view("private"), std::string_view("var"), std::string_view("def"),
    std::string_view("if"), std::string_view("else"), std::string_view("while"),
    std::string_view("for"), std::string_view("return"),
};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

bool is_keyword(std::string_view word) {
    for (auto kw : kKeywords) {
        if (kw == word) return true;
    }
    return false;
}

std::vector<Token> tokenize(std::string_view text, const std::string& file) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    int line = 1;
    int column = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++i;
        }
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }

        const int start_line = line;
        const int start_column = column;
        std::size_t len = 0;
        TokenKind kind;

        if (is_ident_start(c)) {
            while (i + len < text.size() && is_ident_char(text[i + len])) ++len;
            kind = is_keyword(text.substr(i, len)) ? TokenKind::Keyword : TokenKind::Identifier;
        } else if (is_digit(c)) {
            while (i + len < text.size() && is_digit(text[i + len])) ++len;
            kind = TokenKind::Integer;
        } else if (c == '=' && i + 1 < text.size() && text[i + 1] == '=') {
            len = 2;
            kind = TokenKind::Punct;
        } else if (std::string_view("{}();:,.=<>").find(c) != std::string_view::npos) {
            len = 1;
            kind = TokenKind::Punct;
        } else {
            throw LexError(file, line, column,
                           std::string("illegal character '") + c + "'");
        }

        tokens.push_back({kind, std::string(text.substr(i, len)), start_line, start_column});
        advance(len);
    }

    tokens.push_back({TokenKind::Eof, "", line, column});
    return tokens;
}

}  // namespace flawlens

#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "../errors.hpp"

namespace filtra::dsl {

enum class Tok {
    Ident,
    Int,
    Prime,
    Arrow,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Equal,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 0;
    int col = 0;
};

inline std::string token_name(Tok k) {
    switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Prime: return "'";
    case Tok::Arrow: return "->";
    case Tok::LBrace: return "{";
    case Tok::RBrace: return "}";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::Semi: return ";";
    case Tok::Colon: return ":";
    case Tok::Comma: return ",";
    case Tok::Plus: return "+";
    case Tok::Minus: return "-";
    case Tok::Star: return "*";
    case Tok::Slash: return "/";
    case Tok::Caret: return "^";
    case Tok::Equal: return "=";
    case Tok::End: return "end of input";
    }
    return "?";
}

inline std::string at(int line, int col) {
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// '#' starts a comment running to the end of the line.
inline std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string s, int l, int c) {
        out.push_back({k, std::move(s), l, c});
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '\n') {
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            ++col;
            continue;
        }
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
            continue;
        }
        int l = line, c = col;
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            push(Tok::Ident, text.substr(i, j - i), l, c);
            col += int(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            push(Tok::Int, text.substr(i, j - i), l, c);
            col += int(j - i);
            i = j;
            continue;
        }
        if (ch == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            push(Tok::Arrow, "->", l, c);
            i += 2;
            col += 2;
            continue;
        }
        Tok k;
        switch (ch) {
        case '\'': k = Tok::Prime; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ';': k = Tok::Semi; break;
        case ':': k = Tok::Colon; break;
        case ',': k = Tok::Comma; break;
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '=': k = Tok::Equal; break;
        default:
            throw SyntaxError(at(l, c) + ": unexpected character '" + std::string(1, ch) + "'");
        }
        push(k, std::string(1, ch), l, c);
        ++i;
        ++col;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

} // namespace filtra::dsl

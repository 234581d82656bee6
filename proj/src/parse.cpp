#include "lfdgf/parse.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "lfdgf/error.hpp"

namespace lfdgf {
namespace {

enum class Tok { Ident, LParen, RParen, LBrack, RBrack, Comma, Amp, Bar, Tilde, Arrow, Equals, Dot, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (ident_start(c)) {
            while (i < s.size()) {
                if (ident_char(s[i])) {
                    ++i;
                } else if (s[i] == '{') {
                    // Brace groups belong to the identifier, as in R_{x,y}_{u}.
                    auto close = s.find('}', i);
                    if (close == std::string_view::npos)
                        throw InputError("unterminated '{' at offset " + std::to_string(i));
                    i = close + 1;
                } else {
                    break;
                }
            }
            out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        auto single = [&](Tok t) {
            out.push_back({t, std::string(1, c), start});
            ++i;
        };
        switch (c) {
        case '(': single(Tok::LParen); break;
        case ')': single(Tok::RParen); break;
        case '[': single(Tok::LBrack); break;
        case ']': single(Tok::RBrack); break;
        case ',': single(Tok::Comma); break;
        case '&': single(Tok::Amp); break;
        case '|': single(Tok::Bar); break;
        case '~': single(Tok::Tilde); break;
        case '=': single(Tok::Equals); break;
        case '.': single(Tok::Dot); break;
        case '-':
            if (i + 1 < s.size() && s[i + 1] == '>') {
                out.push_back({Tok::Arrow, "->", start});
                i += 2;
                break;
            }
            [[fallthrough]];
        default:
            throw InputError("unexpected character '" + std::string(1, c) + "' at offset " +
                             std::to_string(i));
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::string_view text) : toks_(lex(text)) {}

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool at(Tok t) const { return peek().kind == t; }
    bool at_ident(std::string_view s) const { return at(Tok::Ident) && peek().text == s; }
    Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool accept(Tok t) {
        if (!at(t))
            return false;
        ++pos_;
        return true;
    }
    Token expect(Tok t, std::string_view what) {
        if (!at(t))
            fail("expected " + std::string(what));
        return take();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = peek();
        throw InputError("parse error at offset " + std::to_string(t.pos) + ": " + msg +
                         (t.kind == Tok::End ? " (end of input)" : ", found '" + t.text + "'"));
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

class LfdParser {
public:
    LfdParser(std::string_view text, const Signature& sig) : cur_(text), sig_(sig) {}

    Lfd run() {
        Lfd f = formula();
        if (!cur_.at(Tok::End))
            cur_.fail("trailing input");
        validate(f, sig_);
        return f;
    }

private:
    Lfd formula() {
        Lfd lhs = disjunction();
        if (cur_.accept(Tok::Arrow))
            return lfd::neg(lfd::conj(lhs, lfd::neg(formula())));
        return lhs;
    }
    Lfd disjunction() {
        Lfd acc = conjunction();
        while (cur_.accept(Tok::Bar))
            acc = lfd::disj(acc, conjunction());
        return acc;
    }
    Lfd conjunction() {
        Lfd acc = unary();
        while (cur_.accept(Tok::Amp))
            acc = lfd::conj(acc, unary());
        return acc;
    }
    Var var() {
        auto t = cur_.expect(Tok::Ident, "variable");
        auto idx = sig_.var_index(t.text);
        if (!idx)
            throw InputError("variable '" + t.text + "' is not in V_LFD");
        return *idx;
    }
    VarSet var_set() {
        cur_.expect(Tok::LBrack, "'['");
        VarSet s = 0;
        while (!cur_.accept(Tok::RBrack)) {
            s |= singleton(var());
            cur_.accept(Tok::Comma);
        }
        return s;
    }
    Lfd unary() {
        if (cur_.accept(Tok::Tilde))
            return lfd::neg(unary());
        if (cur_.accept(Tok::LParen)) {
            Lfd f = formula();
            cur_.expect(Tok::RParen, "')'");
            return f;
        }
        if (cur_.at_ident("true")) {
            cur_.take();
            return lfd::top();
        }
        if (cur_.at_ident("false")) {
            cur_.take();
            return lfd::bottom();
        }
        if (cur_.at_ident("E") && cur_.peek(1).kind == Tok::LBrack) {
            cur_.take();
            VarSet v = var_set();
            return lfd::exists(v, unary());
        }
        if (cur_.at_ident("D") && cur_.peek(1).kind == Tok::LBrack) {
            cur_.take();
            VarSet v = var_set();
            if (cur_.at(Tok::LBrack))
                return lfd::dep_set(v, var_set(), sig_.k());
            return lfd::dep(v, var());
        }
        auto name = cur_.expect(Tok::Ident, "formula");
        cur_.expect(Tok::LParen, "'(' after relation name");
        std::vector<Var> args;
        if (!cur_.accept(Tok::RParen)) {
            do {
                args.push_back(var());
            } while (cur_.accept(Tok::Comma));
            cur_.expect(Tok::RParen, "')'");
        }
        return lfd::atom(name.text, std::move(args));
    }

    Cursor cur_;
    const Signature& sig_;
};

class FoParser {
public:
    explicit FoParser(std::string_view text) : cur_(text) {}

    Fo run() {
        Fo f = formula();
        if (!cur_.at(Tok::End))
            cur_.fail("trailing input");
        return f;
    }

private:
    Fo formula() {
        Fo lhs = disjunction();
        if (cur_.accept(Tok::Arrow))
            return fo::implies(lhs, formula());
        return lhs;
    }
    Fo disjunction() {
        Fo acc = conjunction();
        while (cur_.accept(Tok::Bar))
            acc = fo::disj(acc, conjunction());
        return acc;
    }
    Fo conjunction() {
        Fo acc = unary();
        while (cur_.accept(Tok::Amp))
            acc = fo::conj(acc, unary());
        return acc;
    }
    std::vector<std::string> binder() {
        std::vector<std::string> vars;
        while (cur_.at(Tok::Ident)) {
            vars.push_back(cur_.take().text);
            cur_.accept(Tok::Comma);
        }
        if (vars.empty())
            cur_.fail("expected bound variables");
        cur_.expect(Tok::Dot, "'.' after bound variables");
        return vars;
    }
    Fo unary() {
        if (cur_.accept(Tok::Tilde))
            return fo::neg(unary());
        if (cur_.accept(Tok::LParen)) {
            Fo f = formula();
            cur_.expect(Tok::RParen, "')'");
            return f;
        }
        if (cur_.at_ident("true")) {
            cur_.take();
            return fo::top();
        }
        if (cur_.at_ident("false")) {
            cur_.take();
            return fo::bottom();
        }
        if (cur_.at_ident("exists") && cur_.peek(1).kind == Tok::Ident) {
            cur_.take();
            auto vars = binder();
            return fo::exists(std::move(vars), unary());
        }
        if (cur_.at_ident("forall") && cur_.peek(1).kind == Tok::Ident) {
            cur_.take();
            auto vars = binder();
            return fo::forall(std::move(vars), unary());
        }
        auto name = cur_.expect(Tok::Ident, "formula");
        if (cur_.accept(Tok::Equals)) {
            auto rhs = cur_.expect(Tok::Ident, "variable after '='");
            return fo::eq(name.text, rhs.text);
        }
        cur_.expect(Tok::LParen, "'(' after relation name");
        std::vector<std::string> args;
        if (!cur_.accept(Tok::RParen)) {
            do {
                args.push_back(cur_.expect(Tok::Ident, "variable").text);
            } while (cur_.accept(Tok::Comma));
            cur_.expect(Tok::RParen, "')'");
        }
        return fo::atom(name.text, std::move(args));
    }

    Cursor cur_;
};

} // namespace

Lfd parse_lfd(std::string_view text, const Signature& sig) { return LfdParser(text, sig).run(); }

Fo parse_fo(std::string_view text, const Signature* sig, bool equality_mode) {
    Fo f = FoParser(text).run();
    if (sig)
        validate(f, *sig, equality_mode);
    else if (!equality_mode && uses_equality(f))
        throw InputError("equality atoms require equality mode (--eq)");
    return f;
}

} // namespace lfdgf

#include "susyms/parse.hpp"

#include <cctype>
#include <map>
#include <set>

#include "susyms/errors.hpp"

namespace susyms {

namespace {

struct Token {
    enum Kind { Ident, Number, Plus, Minus, Star, Slash, Caret, LPar, RPar, Comma, Semi, End };
    Kind kind;
    std::string text;
    int line, col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : src_(s) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        auto single = [this](Token::Kind k, char ch) {
            tok_.kind = k;
            tok_.text = std::string(1, ch);
            ++pos_;
            ++col_;
        };
        switch (c) {
        case '+': return single(Token::Plus, c);
        case '-': return single(Token::Minus, c);
        case '*': return single(Token::Star, c);
        case '/': return single(Token::Slash, c);
        case '^': return single(Token::Caret, c);
        case '(': return single(Token::LPar, c);
        case ')': return single(Token::RPar, c);
        case ',': return single(Token::Comma, c);
        case ';': return single(Token::Semi, c);
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++col_;
            }
            tok_.kind = Token::Number;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                    src_[pos_] == '\'')) {
                ++pos_;
                ++col_;
            }
            tok_.kind = Token::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        throw SyntaxError("unexpected character '" + std::string(1, c) + "'", line_, col_);
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_{};
};

const std::set<std::string> kFunctions = {"sqrt", "ln", "asin", "sin", "cos",
                                          "EllipticF", "EllipticE"};

struct FieldName {
    FieldId id;
    bool has_theta;
};

const std::map<std::string, FieldName> kFieldNames = {
    {"Phi", {FieldId::Phi, true}}, {"v", {FieldId::V, false}},   {"phi", {FieldId::PhiC, false}},
    {"psi", {FieldId::PsiC, false}}, {"u", {FieldId::U, false}}, {"w", {FieldId::Omega, false}},
    {"f", {FieldId::FRed, false}},  {"g", {FieldId::GRed, false}},
};

class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    GradedExpr run() {
        parse_declarations();
        GradedExpr e = parse_expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::End)
            throw SyntaxError("trailing input '" + t.text + "'", t.line, t.col);
        return e;
    }

  private:
    Lexer lex_;
    std::set<std::string> odd_, even_;

    void parse_declarations() {
        while (lex_.peek().kind == Token::Ident &&
               (lex_.peek().text == "odd" || lex_.peek().text == "even")) {
            bool is_odd = lex_.next().text == "odd";
            while (true) {
                Token t = lex_.next();
                if (t.kind != Token::Ident)
                    throw SyntaxError("expected identifier in declaration", t.line, t.col);
                if (kFieldNames.count(t.text) || kFunctions.count(t.text) || t.text == "x" ||
                    t.text == "y" || t.text == "xi" || t.text == "i" || t.text == "theta1" ||
                    t.text == "theta2")
                    throw SyntaxError("declaration shadows builtin '" + t.text + "'", t.line,
                                      t.col);
                (is_odd ? odd_ : even_).insert(t.text);
                Token sep = lex_.next();
                if (sep.kind == Token::Semi)
                    break;
                if (sep.kind != Token::Comma)
                    throw SyntaxError("expected ',' or ';' in declaration", sep.line, sep.col);
            }
        }
    }

    GradedExpr parse_expr() {
        GradedExpr e = parse_term();
        while (true) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::Plus) {
                lex_.next();
                e = e + parse_term();
            } else if (k == Token::Minus) {
                lex_.next();
                e = e - parse_term();
            } else {
                return e;
            }
        }
    }

    GradedExpr parse_term() {
        GradedExpr e = parse_unary();
        while (true) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::Star) {
                lex_.next();
                e = e * parse_unary();
            } else if (k == Token::Slash) {
                lex_.next();
                Token at = lex_.peek();
                GradedExpr d = parse_unary();
                try {
                    e = e / d;
                } catch (const DivisionError& err) {
                    throw SyntaxError(err.what(), at.line, at.col);
                }
            } else {
                return e;
            }
        }
    }

    // unary minus binds looser than exponentiation: -x^2 = -(x^2)
    GradedExpr parse_unary() {
        if (lex_.peek().kind == Token::Minus) {
            lex_.next();
            return -parse_unary();
        }
        return parse_power();
    }

    GradedExpr parse_power() {
        GradedExpr base = parse_primary();
        if (lex_.peek().kind == Token::Caret) {
            lex_.next();
            Token t = lex_.next();
            bool neg = false;
            if (t.kind == Token::Minus) {
                neg = true;
                t = lex_.next();
            }
            if (t.kind != Token::Number)
                throw SyntaxError("expected integer exponent", t.line, t.col);
            int n = std::stoi(t.text);
            return base.pow(neg ? -n : n);
        }
        return base;
    }

    // field name with optional subscript and prime derivatives, e.g.
    // u, u_xy, Phi_xt1t2, w, w''
    GradedExpr parse_jet(const std::string& name, const Token& at) {
        size_t us = name.find('_');
        std::string base = us == std::string::npos ? name : name.substr(0, us);
        size_t primes = 0;
        while (!base.empty() && base.back() == '\'') {
            base.pop_back();
            ++primes;
        }
        auto it = kFieldNames.find(base);
        if (it == kFieldNames.end())
            throw SyntaxError("unknown identifier '" + name + "'", at.line, at.col);
        JetKey k;
        k.field = it->second.id;
        k.d = {static_cast<uint16_t>(primes), 0, 0};
        if (us != std::string::npos) {
            std::string suffix = name.substr(us + 1);
            size_t i = 0;
            while (i < suffix.size()) {
                if (suffix[i] == 'x') {
                    ++k.d[0];
                    ++i;
                } else if (suffix[i] == 'y') {
                    ++k.d[1];
                    ++i;
                } else if (suffix[i] == 't' && i + 1 < suffix.size() &&
                           (suffix[i + 1] == '1' || suffix[i + 1] == '2') &&
                           it->second.has_theta) {
                    (suffix[i + 1] == '1' ? k.dth1 : k.dth2) = true;
                    i += 2;
                } else {
                    throw SyntaxError("bad derivative subscript in '" + name + "'", at.line,
                                      at.col);
                }
            }
        }
        // optional argument list: u(x,y), w(xi) — checked and discarded
        if (lex_.peek().kind == Token::LPar) {
            lex_.next();
            while (true) {
                Token t = lex_.next();
                if (t.kind != Token::Ident)
                    throw SyntaxError("expected argument name", t.line, t.col);
                Token sep = lex_.next();
                if (sep.kind == Token::RPar)
                    break;
                if (sep.kind != Token::Comma)
                    throw SyntaxError("expected ',' or ')' in field arguments", sep.line, sep.col);
            }
        }
        return ge_jet(k);
    }

    GradedExpr parse_primary() {
        Token t = lex_.next();
        if (t.kind == Token::Number)
            return GradedExpr::integer(std::stol(t.text));
        if (t.kind == Token::LPar) {
            GradedExpr e = parse_expr();
            Token r = lex_.next();
            if (r.kind != Token::RPar)
                throw SyntaxError("expected ')'", r.line, r.col);
            return e;
        }
        if (t.kind != Token::Ident)
            throw SyntaxError("unexpected token '" + t.text + "'", t.line, t.col);

        const std::string& n = t.text;
        if (n == "i")
            return GradedExpr::i();
        if (n == "x" || n == "y" || n == "xi" || n == "Phi")
            return ge_var(n);
        if (n == "theta1" || n == "theta2")
            return ge_fvar(n);
        if (kFunctions.count(n)) {
            Token l = lex_.next();
            if (l.kind != Token::LPar)
                throw SyntaxError("expected '(' after function '" + n + "'", l.line, l.col);
            std::vector<GradedExpr> args;
            while (true) {
                args.push_back(parse_expr());
                Token sep = lex_.next();
                if (sep.kind == Token::RPar)
                    break;
                if (sep.kind != Token::Comma)
                    throw SyntaxError("expected ',' or ')'", sep.line, sep.col);
            }
            try {
                return ge_func(n, args);
            } catch (const ParityError& err) {
                throw SyntaxError(err.what(), t.line, t.col);
            }
        }
        if (odd_.count(n))
            return ge_odd(n);
        if (even_.count(n))
            return ge_even(n);
        // field jets (and undeclared identifiers rejected inside)
        return parse_jet(n, t);
    }
};

void collect_consts(const GradedExpr& e, std::set<std::string>& odd, std::set<std::string>& even);

void collect_consts_poly(const Poly& p, std::set<std::string>& odd, std::set<std::string>& even) {
    auto visit = [&](const Atom& a) {
        if (a.kind == AtomKind::OddConst)
            odd.insert(a.name);
        if (a.kind == AtomKind::EvenConst)
            even.insert(a.name);
        if (a.kind == AtomKind::Func)
            for (const auto& arg : a.args)
                collect_consts(*arg, odd, even);
    };
    for (const auto& [m, c] : p) {
        for (const auto& [a, x] : m.even)
            visit(a);
        for (const auto& a : m.odd)
            visit(a);
    }
}

void collect_consts(const GradedExpr& e, std::set<std::string>& odd, std::set<std::string>& even) {
    collect_consts_poly(e.num(), odd, even);
    for (const auto& [f, k] : e.den())
        collect_consts_poly(f, odd, even);
}

} // namespace

GradedExpr parse_expression(const std::string& src) { return Parser(src).run(); }

std::string write_expression(const GradedExpr& e) {
    std::set<std::string> odd, even;
    collect_consts(e, odd, even);
    std::string out;
    auto decl = [&out](const char* kw, const std::set<std::string>& names) {
        if (names.empty())
            return;
        out += kw;
        bool first = true;
        for (const auto& n : names) {
            out += first ? " " : ", ";
            out += n;
            first = false;
        }
        out += ";\n";
    };
    decl("odd", odd);
    decl("even", even);
    out += e.str();
    out += "\n";
    return out;
}

} // namespace susyms

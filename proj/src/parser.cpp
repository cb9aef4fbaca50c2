#include "quadloop/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace quadloop {

namespace {

struct Token {
    enum Type { Number, Ident, Plus, Minus, Star, Caret, Equals, End };
    Type type;
    std::string text;
    size_t line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                       text_[pos_] == '\r' || text_[pos_] == '\n')) {
            if (text_[pos_] == '\n') { ++line_; col_ = 0; }
            ++pos_;
            ++col_;
        }
        size_t line = line_, col = col_ + 1;
        if (pos_ >= text_.size()) {
            tok_ = {Token::End, "", line, col};
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                bump();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                size_t save = pos_;
                bump();
                if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    while (pos_ < text_.size() &&
                           std::isdigit(static_cast<unsigned char>(text_[pos_])))
                        bump();
                } else {
                    pos_ = save;  // lone '/' is not part of a number
                    col_ = col - 1 + (save - start);
                }
            }
            tok_ = {Token::Number, text_.substr(start, pos_ - start), line, col};
            return;
        }
        if (c >= 'a' && c <= 'z') {
            size_t start = pos_;
            bump();
            while (pos_ < text_.size() &&
                   ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
                    std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                bump();
            tok_ = {Token::Ident, text_.substr(start, pos_ - start), line, col};
            return;
        }
        bump();
        switch (c) {
            case '+': tok_ = {Token::Plus, "+", line, col}; return;
            case '-': tok_ = {Token::Minus, "-", line, col}; return;
            case '*': tok_ = {Token::Star, "*", line, col}; return;
            case '^': tok_ = {Token::Caret, "^", line, col}; return;
            case '=': tok_ = {Token::Equals, "=", line, col}; return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }

    void bump() {
        ++pos_;
        ++col_;
    }

    const std::string& text_;
    size_t pos_ = 0;
    size_t line_ = 1, col_ = 0;
    Token tok_{Token::End, "", 1, 1};
};

// Accumulates normalized terms of the equation lhs - rhs = 0.
struct Collector {
    const std::vector<std::string>* fixedOrder;
    std::vector<std::string> vars;
    std::map<std::string, int> index;

    Rat constant;                    // total constant contribution
    std::map<int, Rat> linear;       // i -> coefficient
    std::map<std::pair<int, int>, Rat> quad;  // (i <= j) -> monomial coefficient

    explicit Collector(const std::vector<std::string>* order) : fixedOrder(order) {
        if (order)
            for (const auto& v : *order) registerVar(v, 0, 0);
    }

    int registerVar(const std::string& name, size_t line, size_t col) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        if (fixedOrder)
            throw ParseError("variable '" + name + "' is not in the declared variable list", line,
                             col);
        int id = static_cast<int>(vars.size());
        vars.push_back(name);
        index[name] = id;
        return id;
    }

    void addTerm(const Rat& coeff, std::vector<int> monomial) {
        std::sort(monomial.begin(), monomial.end());
        if (monomial.empty())
            constant += coeff;
        else if (monomial.size() == 1)
            linear[monomial[0]] += coeff;
        else
            quad[{monomial[0], monomial[1]}] += coeff;
    }
};

class Parser {
public:
    Parser(const std::string& text, Collector& out) : lex_(text), out_(out) {}

    void parseExpr(int sign) {
        int termSign = sign;
        if (lex_.peek().type == Token::Plus) {
            lex_.take();
        } else if (lex_.peek().type == Token::Minus) {
            lex_.take();
            termSign = -termSign;
        }
        parseTerm(termSign);
        while (lex_.peek().type == Token::Plus || lex_.peek().type == Token::Minus) {
            termSign = lex_.take().type == Token::Plus ? sign : -sign;
            parseTerm(termSign);
        }
    }

    void expectEquals() {
        if (lex_.peek().type != Token::Equals)
            throw ParseError("expected '='", lex_.peek().line, lex_.peek().col);
        lex_.take();
    }

    void expectEnd() {
        const Token& t = lex_.peek();
        if (t.type != Token::End)
            throw ParseError("unexpected '" + t.text + "'", t.line, t.col);
    }

    bool atEquals() const { return lex_.peek().type == Token::Equals; }

private:
    void parseTerm(int sign) {
        Rat coeff(sign);
        std::vector<int> monomial;
        parseFactor(coeff, monomial);
        while (lex_.peek().type == Token::Star) {
            lex_.take();
            parseFactor(coeff, monomial);
        }
        out_.addTerm(coeff, std::move(monomial));
    }

    void parseFactor(Rat& coeff, std::vector<int>& monomial) {
        Token t = lex_.peek();
        if (t.type == Token::Number) {
            lex_.take();
            coeff *= Rat::fromString(t.text);
            checkNoImplicitProduct();
            return;
        }
        if (t.type != Token::Ident)
            throw ParseError("expected a number or variable", t.line, t.col);
        lex_.take();
        int var = out_.registerVar(t.text, t.line, t.col);
        long exp = 1;
        if (lex_.peek().type == Token::Caret) {
            lex_.take();
            Token e = lex_.peek();
            if (e.type != Token::Number)
                throw ParseError("expected an exponent", e.line, e.col);
            lex_.take();
            if (e.text.find('/') != std::string::npos || e.text.size() > 6)
                throw ParseError("unsupported degree: exponent " + e.text, e.line, e.col);
            exp = std::stol(e.text);
        }
        if (exp < 1 || exp > 2)
            throw ParseError("unsupported degree: exponent " + std::to_string(exp), t.line, t.col);
        for (long i = 0; i < exp; ++i) monomial.push_back(var);
        if (monomial.size() > 2)
            throw ParseError("unsupported degree: term exceeds degree 2", t.line, t.col);
        checkNoImplicitProduct();
    }

    void checkNoImplicitProduct() {
        const Token& n = lex_.peek();
        if (n.type == Token::Number || n.type == Token::Ident)
            throw ParseError("implicit multiplication is not allowed; use '*'", n.line, n.col);
    }

    Lexer lex_;
    Collector& out_;
};

QuadraticEquation buildEquation(const Collector& c) {
    const int d = static_cast<int>(c.vars.size());
    if (d == 0) throw ParseError("constant equation (no variables)", 1, 1);
    MatQ a(d, d);
    for (const auto& [key, coeff] : c.quad) {
        auto [i, j] = key;
        if (i == j) {
            a(i, i) += coeff;
        } else {
            Rat half = coeff / Rat(2);
            a(i, j) += half;
            a(j, i) += half;
        }
    }
    VecQ b(d);
    for (const auto& [i, coeff] : c.linear) b[i] = coeff;
    return QuadraticEquation{QuadraticForm(std::move(a)), LinearForm(std::move(b)), -c.constant};
}

}  // namespace

ParsedEquation parseEquation(const std::string& text, const std::vector<std::string>* varOrder) {
    Collector collect(varOrder);
    Parser p(text, collect);
    p.parseExpr(+1);
    p.expectEquals();
    p.parseExpr(-1);  // move the right-hand side over
    p.expectEnd();
    return ParsedEquation{buildEquation(collect), collect.vars};
}

ParsedForm parseQuadraticForm(const std::string& text, const std::vector<std::string>* varOrder) {
    Collector collect(varOrder);
    Parser p(text, collect);
    p.parseExpr(+1);
    if (p.atEquals()) throw ParseError("expected a quadratic form, not an equation", 1, 1);
    p.expectEnd();
    QuadraticEquation eq = buildEquation(collect);
    if (!eq.linear.isZero() || !eq.constant.isZero())
        throw ParseError("not a quadratic form: it has a linear or constant part", 1, 1);
    return ParsedForm{eq.form, collect.vars};
}

namespace {

struct PrintTerm {
    Rat coeff;
    std::string monomial;
};

std::string renderTerms(const std::vector<PrintTerm>& terms) {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        Rat mag = t.coeff.abs();
        if (first) {
            if (t.coeff.sign() < 0) os << "-";
            first = false;
        } else {
            os << (t.coeff.sign() < 0 ? " - " : " + ");
        }
        if (mag != Rat(1) || t.monomial.empty()) {
            os << mag.toString();
            if (!t.monomial.empty()) os << "*";
        }
        os << t.monomial;
    }
    return os.str();
}

}  // namespace

std::string emitEquation(const QuadraticEquation& eq, const std::vector<std::string>& vars) {
    const int d = eq.dim();
    if (static_cast<int>(vars.size()) != d)
        throw std::invalid_argument("emitEquation: variable count mismatch");

    std::vector<PrintTerm> terms;
    for (int i = 0; i < d; ++i) {
        const Rat& aii = eq.form.matrix()(i, i);
        if (!aii.isZero()) terms.push_back({aii, vars[static_cast<size_t>(i)] + "^2"});
        for (int j = i + 1; j < d; ++j) {
            Rat cij = Rat(2) * eq.form.matrix()(i, j);
            if (!cij.isZero())
                terms.push_back(
                    {cij, vars[static_cast<size_t>(i)] + "*" + vars[static_cast<size_t>(j)]});
        }
        const Rat& bi = eq.linear.coeffs()[i];
        if (!bi.isZero()) terms.push_back({bi, vars[static_cast<size_t>(i)]});
    }

    // The printed text must re-parse with the same variable order: check
    // that first appearances are monotone, otherwise prefix zero terms.
    std::vector<bool> seen(static_cast<size_t>(d), false);
    int maxSeen = -1;
    bool monotone = true;
    auto note = [&](const std::string& mono) {
        for (int i = 0; i < d; ++i) {
            const std::string& v = vars[static_cast<size_t>(i)];
            size_t at = mono.find(v);
            while (at != std::string::npos) {
                size_t end = at + v.size();
                bool leftOk = at == 0 || mono[at - 1] == '*';
                bool rightOk = end == mono.size() || mono[end] == '*' || mono[end] == '^';
                if (leftOk && rightOk && !seen[static_cast<size_t>(i)]) {
                    seen[static_cast<size_t>(i)] = true;
                    if (i < maxSeen) monotone = false;
                    maxSeen = std::max(maxSeen, i);
                }
                at = mono.find(v, at + 1);
            }
        }
    };
    for (const auto& t : terms) note(t.monomial);
    for (int i = 0; i < d; ++i)
        if (!seen[static_cast<size_t>(i)]) monotone = false;  // absent variable

    if (!monotone || terms.empty()) {
        std::vector<PrintTerm> guarded;
        for (int i = 0; i < d; ++i)
            guarded.push_back({Rat(0), vars[static_cast<size_t>(i)]});
        guarded.insert(guarded.end(), terms.begin(), terms.end());
        terms = std::move(guarded);
    }

    std::string lhs = renderTerms(terms);
    return lhs + " = " + eq.constant.toString();
}

}  // namespace quadloop

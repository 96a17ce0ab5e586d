#include "poisred/parse.hpp"

#include <cctype>
#include <map>

namespace poisred {

namespace {

enum class Tok { End, Ident, Int, LBrace, RBrace, LParen, RParen, Comma, Semi, Colon, Plus, Minus, Star, Caret, Slash };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
                col_ = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                ++col_;
            } else {
                break;
            }
        }
        current_ = Token{};
        current_.line = line_;
        current_.col = col_;
        if (pos_ >= text_.size()) return;
        char c = text_[pos_];
        auto single = [&](Tok k) {
            current_.kind = k;
            current_.text = std::string(1, c);
            ++pos_;
            ++col_;
        };
        switch (c) {
            case '{': return single(Tok::LBrace);
            case '}': return single(Tok::RBrace);
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            case ',': return single(Tok::Comma);
            case ';': return single(Tok::Semi);
            case ':': return single(Tok::Colon);
            case '+': return single(Tok::Plus);
            case '-': return single(Tok::Minus);
            case '*': return single(Tok::Star);
            case '^': return single(Tok::Caret);
            case '/': return single(Tok::Slash);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            current_.kind = Tok::Int;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                current_.text += text_[pos_++];
                ++col_;
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            current_.kind = Tok::Ident;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                current_.text += text_[pos_++];
                ++col_;
            }
            return;
        }
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

class ExpressionParser {
public:
    ExpressionParser(Lexer& lex, ChartPtr chart) : lex_(lex), chart_(std::move(chart)) {}

    SuperFn parse() { return parseSum(); }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }

    SuperFn parseSum() {
        SuperFn value = parseTerm();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            Token op = lex_.next();
            SuperFn rhs = parseTerm();
            value = (op.kind == Tok::Plus) ? value + rhs : value - rhs;
        }
        return value;
    }

    SuperFn parseTerm() {
        SuperFn value = parseFactor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.next();
            value = value * parseFactor();
        }
        return value;
    }

    SuperFn parseFactor() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.next();
            return -parseFactor();
        }
        Token start = lex_.peek();
        SuperFn value = parsePrimary();
        if (lex_.peek().kind == Tok::Caret) {
            Token caret = lex_.next();
            Token e = lex_.next();
            if (e.kind != Tok::Int) fail(e, "expected integer exponent");
            if (!value.isHomogeneous(0))
                fail(caret, "exponent on an odd-variable expression");
            (void)start;
            return pow(value, std::stoi(e.text));
        }
        return value;
    }

    SuperFn parsePrimary() {
        Token t = lex_.next();
        switch (t.kind) {
            case Tok::Int: {
                Rational num(t.text);
                if (lex_.peek().kind == Tok::Slash) {
                    lex_.next();
                    Token den = lex_.next();
                    if (den.kind != Tok::Int) fail(den, "expected integer denominator");
                    if (den.text.find_first_not_of('0') == std::string::npos)
                        fail(den, "zero denominator");
                    auto r = parseRational(t.text + "/" + den.text);
                    return SuperFn::constant(chart_, *r);
                }
                return SuperFn::constant(chart_, num);
            }
            case Tok::Ident: {
                auto var = resolveVariable(t.text);
                if (!var) fail(t, "undefined name '" + t.text + "'");
                return var->first ? SuperFn::oddCoordinate(chart_, var->second)
                                  : SuperFn::coordinate(chart_, var->second);
            }
            case Tok::LParen: {
                SuperFn inner = parseSum();
                Token close = lex_.next();
                if (close.kind != Tok::RParen) fail(close, "expected ')'");
                return inner;
            }
            default:
                fail(t, "expected a number, variable, or '('");
        }
    }

    /// (isOdd, index) for a variable name; positional names and chart aliases.
    std::optional<std::pair<bool, int>> resolveVariable(const std::string& name) const {
        const int n = chart_->dim();
        for (int i = 0; i < n; ++i) {
            if (name == chart_->evenName(i) || name == "x" + std::to_string(i + 1))
                return std::make_pair(false, i);
            if (name == chart_->oddName(i) || name == "xi" + std::to_string(i + 1))
                return std::make_pair(true, i);
        }
        return std::nullopt;
    }

    Lexer& lex_;
    ChartPtr chart_;
};

class FileParser {
public:
    explicit FileParser(const std::string& text) : lex_(text) {}

    ProblemFile parse() {
        while (lex_.peek().kind != Tok::End) {
            Token section = expect(Tok::Ident, "section keyword");
            if (section.text == "manifold") {
                parseManifold(section);
            } else if (section.text == "poisson") {
                parsePoisson(section);
            } else if (section.text == "submanifold") {
                parseSubmanifold(section);
            } else if (section.text == "distribution") {
                parseDistribution(section);
            } else if (section.text == "problem") {
                parseProblem(section);
            } else {
                throw ParseError(section.line, section.col,
                                 "unknown section '" + section.text + "'");
            }
        }
        if (!file_.chart) throw ParseError(1, 1, "missing manifold section");
        return std::move(file_);
    }

private:
    Token expect(Tok kind, const std::string& what) {
        Token t = lex_.next();
        if (t.kind != kind)
            throw ParseError(t.line, t.col, "expected " + what + ", got '" + t.text + "'");
        return t;
    }

    void requireChart(const Token& at) {
        if (!file_.chart)
            throw ParseError(at.line, at.col, "manifold section must come first");
    }

    void skipSeparators() {
        while (lex_.peek().kind == Tok::Semi) lex_.next();
    }

    SuperFn parseExpr() {
        ExpressionParser p(lex_, file_.chart);
        return p.parse();
    }

    std::vector<SuperFn> parseExprList() {
        std::vector<SuperFn> out;
        if (lex_.peek().kind == Tok::Semi || lex_.peek().kind == Tok::RBrace) return out;
        out.push_back(parseExpr());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.next();
            out.push_back(parseExpr());
        }
        return out;
    }

    Rational parseSignedRational() {
        bool negative = false;
        while (lex_.peek().kind == Tok::Minus) {
            lex_.next();
            negative = !negative;
        }
        Token num = expect(Tok::Int, "a rational number");
        std::string text = num.text;
        if (lex_.peek().kind == Tok::Slash) {
            lex_.next();
            Token den = expect(Tok::Int, "integer denominator");
            text += "/" + den.text;
        }
        auto r = parseRational(text);
        if (!r) throw ParseError(num.line, num.col, "malformed rational '" + text + "'");
        return negative ? Rational(-*r) : *r;
    }

    std::vector<Rational> parsePoint() {
        expect(Tok::LParen, "'('");
        std::vector<Rational> coords;
        coords.push_back(parseSignedRational());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.next();
            coords.push_back(parseSignedRational());
        }
        expect(Tok::RParen, "')'");
        return coords;
    }

    void parseManifold(const Token& at) {
        if (file_.chart) throw ParseError(at.line, at.col, "duplicate manifold section");
        expect(Tok::LBrace, "'{'");
        int n = 0;
        std::vector<std::string> evenNames, oddNames;
        while (lex_.peek().kind != Tok::RBrace) {
            Token key = expect(Tok::Ident, "manifold field");
            expect(Tok::Colon, "':'");
            if (key.text == "n") {
                Token v = expect(Tok::Int, "dimension");
                n = std::stoi(v.text);
                if (n <= 0 || n > 16)
                    throw ParseError(v.line, v.col, "dimension must be between 1 and 16");
            } else if (key.text == "x" || key.text == "xi") {
                std::vector<std::string>& names = (key.text == "x") ? evenNames : oddNames;
                names.push_back(expect(Tok::Ident, "variable name").text);
                while (lex_.peek().kind == Tok::Comma) {
                    lex_.next();
                    names.push_back(expect(Tok::Ident, "variable name").text);
                }
            } else {
                throw ParseError(key.line, key.col, "unknown manifold field '" + key.text + "'");
            }
            skipSeparators();
        }
        expect(Tok::RBrace, "'}'");
        if (n == 0) throw ParseError(at.line, at.col, "manifold needs n");
        try {
            if (evenNames.empty() && oddNames.empty()) {
                file_.chart = Chart::standard(n);
            } else {
                if (evenNames.empty())
                    for (int i = 1; i <= n; ++i) evenNames.push_back("x" + std::to_string(i));
                if (oddNames.empty())
                    for (int i = 1; i <= n; ++i) oddNames.push_back("xi" + std::to_string(i));
                file_.chart = std::make_shared<Chart>(n, evenNames, oddNames);
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(at.line, at.col, e.what());
        }
    }

    void parsePoisson(const Token& at) {
        requireChart(at);
        if (file_.poisson) throw ParseError(at.line, at.col, "duplicate poisson section");
        expect(Tok::LBrace, "'{'");
        Token exprStart = lex_.peek();
        SuperFn value = parseExpr();
        if (!value.isHomogeneous(2))
            throw ParseError(exprStart.line, exprStart.col, "expected degree 2");
        file_.poisson = value;
        skipSeparators();
        expect(Tok::RBrace, "'}'");
    }

    void parseSubmanifold(const Token& at) {
        requireChart(at);
        SubmanifoldData data;
        Token name = expect(Tok::Ident, "submanifold name");
        data.name = name.text;
        if (file_.findSubmanifold(data.name) || file_.findDistribution(data.name))
            throw ParseError(name.line, name.col, "duplicate name '" + data.name + "'");
        expect(Tok::LBrace, "'{'");
        while (lex_.peek().kind != Tok::RBrace) {
            Token key = expect(Tok::Ident, "submanifold field");
            expect(Tok::Colon, "':'");
            if (key.text == "gens") {
                data.gens = parseExprList();
                for (const auto& g : data.gens)
                    if (!g.isHomogeneous(0))
                        throw ParseError(key.line, key.col, "cutting function must have degree 0");
            } else if (key.text == "tangent") {
                data.tangentGens = parseExprList();
                for (const auto& g : data.tangentGens)
                    if (!g.isHomogeneous(1) || g.isZero())
                        throw ParseError(key.line, key.col, "tangent generator must have degree 1");
            } else if (key.text == "points") {
                data.points.push_back(parsePoint());
                while (lex_.peek().kind == Tok::Comma) {
                    lex_.next();
                    data.points.push_back(parsePoint());
                }
            } else {
                throw ParseError(key.line, key.col, "unknown submanifold field '" + key.text + "'");
            }
            skipSeparators();
        }
        expect(Tok::RBrace, "'}'");
        if (data.points.empty())
            throw ParseError(name.line, name.col, "submanifold needs at least one sample point");
        for (const auto& p : data.points)
            if (p.size() != static_cast<std::size_t>(file_.chart->dim()))
                throw ParseError(name.line, name.col, "sample point dimension mismatch");
        file_.submanifolds.push_back(std::move(data));
    }

    void parseDistribution(const Token& at) {
        requireChart(at);
        DistributionData data;
        Token name = expect(Tok::Ident, "distribution name");
        data.name = name.text;
        if (file_.findSubmanifold(data.name) || file_.findDistribution(data.name))
            throw ParseError(name.line, name.col, "duplicate name '" + data.name + "'");
        expect(Tok::LBrace, "'{'");
        bool haveBase = false;
        while (lex_.peek().kind != Tok::RBrace) {
            Token key = expect(Tok::Ident, "distribution field");
            expect(Tok::Colon, "':'");
            if (key.text == "base") {
                Token base = expect(Tok::Ident, "base submanifold name");
                if (!file_.findSubmanifold(base.text))
                    throw ParseError(base.line, base.col, "undefined name '" + base.text + "'");
                data.baseName = base.text;
                haveBase = true;
            } else if (key.text == "gens") {
                data.gens = parseExprList();
                for (const auto& g : data.gens)
                    if (!g.isHomogeneous(1) || g.isZero())
                        throw ParseError(key.line, key.col,
                                         "distribution generator must have degree 1");
            } else {
                throw ParseError(key.line, key.col, "unknown distribution field '" + key.text + "'");
            }
            skipSeparators();
        }
        expect(Tok::RBrace, "'}'");
        if (!haveBase) throw ParseError(name.line, name.col, "distribution needs a base");
        file_.distributions.push_back(std::move(data));
    }

    void parseProblem(const Token& at) {
        requireChart(at);
        if (file_.problem) throw ParseError(at.line, at.col, "duplicate problem section");
        ProblemBindings bindings;
        expect(Tok::LBrace, "'{'");
        while (lex_.peek().kind != Tok::RBrace) {
            Token key = expect(Tok::Ident, "problem field");
            expect(Tok::Colon, "':'");
            if (key.text == "C" || key.text == "E" || key.text == "D" || key.text == "A") {
                Token value = expect(Tok::Ident, "name");
                bool isSub = file_.findSubmanifold(value.text) != nullptr;
                bool isDist = file_.findDistribution(value.text) != nullptr;
                if (!isSub && !isDist)
                    throw ParseError(value.line, value.col, "undefined name '" + value.text + "'");
                if ((key.text == "C" || key.text == "A") && !isSub)
                    throw ParseError(value.line, value.col,
                                     "'" + value.text + "' must be a submanifold");
                if ((key.text == "E" || key.text == "D") && !isDist)
                    throw ParseError(value.line, value.col,
                                     "'" + value.text + "' must be a distribution");
                if (key.text == "C") bindings.c = value.text;
                if (key.text == "E") bindings.e = value.text;
                if (key.text == "D") bindings.d = value.text;
                if (key.text == "A") bindings.a = value.text;
            } else if (key.text == "B") {
                bindings.bgens = parseExprList();
                for (const auto& b : bindings.bgens)
                    if (!b.isHomogeneous(0))
                        throw ParseError(key.line, key.col, "B generator must have degree 0");
            } else if (key.text == "bound") {
                Token v = expect(Tok::Int, "degree bound");
                bindings.bound = std::stoi(v.text);
            } else {
                throw ParseError(key.line, key.col, "unknown problem field '" + key.text + "'");
            }
            skipSeparators();
        }
        expect(Tok::RBrace, "'}'");
        file_.problem = std::move(bindings);
    }

    Lexer lex_;
    ProblemFile file_;
};

} // namespace

const SubmanifoldData* ProblemFile::findSubmanifold(const std::string& name) const {
    for (const auto& s : submanifolds)
        if (s.name == name) return &s;
    return nullptr;
}

const DistributionData* ProblemFile::findDistribution(const std::string& name) const {
    for (const auto& d : distributions)
        if (d.name == name) return &d;
    return nullptr;
}

ProblemFile parseProblemFile(const std::string& text) { return FileParser(text).parse(); }

SuperFn parseExpression(const std::string& text, ChartPtr chart) {
    Lexer lex(text);
    ExpressionParser p(lex, std::move(chart));
    SuperFn value = p.parse();
    const Token& rest = lex.peek();
    if (rest.kind != Tok::End)
        throw ParseError(rest.line, rest.col, "trailing input '" + rest.text + "'");
    return value;
}

} // namespace poisred

#include "dsl.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace gradss::dsl {

ParseError::ParseError(int line, int column, std::string rule, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                         " [" + rule + "]"),
      line_(line), column_(column), rule_(std::move(rule))
{
}

namespace {

enum class Tok { Name, Int, LBrace, RBrace, Plus, Caret, Arrow, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(const std::string& text)
{
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&] {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        const int l = line;
        const int k = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                s += text[i];
                advance();
            }
            out.push_back({Tok::Name, s, l, k});
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '-' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::string s(1, c);
            advance();
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                s += text[i];
                advance();
            }
            out.push_back({Tok::Int, s, l, k});
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            advance();
            advance();
            out.push_back({Tok::Arrow, "->", l, k});
        } else if (c == '{' || c == '}' || c == '+' || c == '^') {
            Tok kind = c == '{' ? Tok::LBrace : c == '}' ? Tok::RBrace : c == '+' ? Tok::Plus : Tok::Caret;
            out.push_back({kind, std::string(1, c), l, k});
            advance();
        } else {
            throw ParseError(l, k, "token", std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    FileAst file()
    {
        FileAst ast;
        expect_keyword("prime", "header", "missing prime declaration");
        ast.prime = integer("header");
        end_of_line("header");
        expect_keyword("maxdeg", "header", "missing maxdeg declaration");
        ast.maxdeg = integer("header");
        end_of_line("header");
        while (at_keyword("algebra"))
            ast.blocks.push_back(block());
        while (at_keyword("d"))
            ast.diffs.push_back(diff());
        if (peek().kind != Tok::End)
            fail(peek(), "file", "expected 'algebra' block or 'd' line, found '" + peek().text + "'");
        return ast;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& rule, const std::string& msg) const
    {
        throw ParseError(t.line, t.column, rule, msg);
    }

    bool at_keyword(const std::string& kw) const { return peek().kind == Tok::Name && peek().text == kw; }

    void expect_keyword(const std::string& kw, const std::string& rule, const std::string& msg)
    {
        if (!at_keyword(kw))
            fail(peek(), rule, msg);
        take();
    }

    void expect(Tok kind, const std::string& rule, const std::string& what)
    {
        if (peek().kind != kind)
            fail(peek(), rule, "expected " + what + ", found '" + peek().text + "'");
        take();
    }

    long integer(const std::string& rule)
    {
        const Token& t = peek();
        if (t.kind != Tok::Int)
            fail(t, rule, "expected an integer, found '" + t.text + "'");
        take();
        try {
            std::size_t used = 0;
            long v = std::stol(t.text, &used);
            if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min())
                fail(t, rule, "integer out of range");
            return v;
        } catch (const std::out_of_range&) {
            fail(t, rule, "integer out of range");
        }
    }

    std::string name(const std::string& rule)
    {
        if (peek().kind != Tok::Name)
            fail(peek(), rule, "expected a name, found '" + peek().text + "'");
        return take().text;
    }

    /// The statement that started on `line` must end here.
    void end_of_line(const std::string& rule)
    {
        const Token& t = peek();
        if (t.kind != Tok::End && t.line == toks_[pos_ - 1].line)
            fail(t, rule, "unexpected '" + t.text + "' at end of line");
    }

    Block block()
    {
        take();
        Block b;
        b.name = name("block");
        expect(Tok::LBrace, "block", "'{'");
        while (at_keyword("gen"))
            b.gens.push_back(genline());
        if (b.gens.empty())
            fail(peek(), "block", "algebra block needs at least one gen line");
        expect(Tok::RBrace, "block", "'}' or 'gen'");
        return b;
    }

    GenLine genline()
    {
        GenLine g;
        g.line = take().line;
        g.name = name("genline");
        const Token& kind = peek();
        std::string k = name("kind");
        if (k == "poly") {
            g.kind = algebra::Kind::Polynomial;
        } else if (k == "ext") {
            g.kind = algebra::Kind::Exterior;
        } else if (k == "trunc") {
            g.kind = algebra::Kind::Truncated;
            g.height = static_cast<int>(integer("kind"));
        } else {
            fail(kind, "kind", "unknown kind '" + k + "', expected poly, ext or trunc");
        }
        expect_keyword("bideg", "genline", "expected 'bideg'");
        g.n = static_cast<int>(integer("genline"));
        g.m = static_cast<int>(integer("genline"));
        if (at_keyword("weight") && peek().line == g.line) {
            take();
            g.weight = static_cast<int>(integer("genline"));
        }
        end_of_line("genline");
        return g;
    }

    DiffLine diff()
    {
        DiffLine d;
        d.line = take().line;
        d.r = static_cast<int>(integer("diff"));
        d.source = name("diff");
        expect(Tok::Arrow, "diff", "'->'");
        d.image.push_back(term(d.line));
        while (peek().kind == Tok::Plus && peek().line == d.line) {
            take();
            d.image.push_back(term(d.line));
        }
        end_of_line("diff");
        return d;
    }

    Term term(int line)
    {
        Term t;
        if (peek().kind == Tok::Int && peek().line == line)
            t.coefficient = integer("term");
        while (peek().kind == Tok::Name && peek().line == line && !at_keyword("d")) {
            Factor f{take().text, std::nullopt};
            if (peek().kind == Tok::Caret) {
                take();
                f.exponent = static_cast<int>(integer("factor"));
            }
            t.factors.push_back(std::move(f));
        }
        if (!t.coefficient && t.factors.empty())
            fail(peek(), "term", "expected a term, found '" + peek().text + "'");
        return t;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

FileAst parse_ast(const std::string& text) { return Parser(tokenize(text)).file(); }

std::string print(const FileAst& ast)
{
    std::ostringstream os;
    os << "prime " << ast.prime << "\nmaxdeg " << ast.maxdeg << "\n";
    for (const auto& b : ast.blocks) {
        os << "\nalgebra " << b.name << " {\n";
        for (const auto& g : b.gens) {
            os << "  gen " << g.name << ' ' << algebra::to_string(g.kind);
            if (g.kind == algebra::Kind::Truncated)
                os << ' ' << g.height;
            os << " bideg " << g.n << ' ' << g.m;
            if (g.weight)
                os << " weight " << *g.weight;
            os << '\n';
        }
        os << "}\n";
    }
    if (!ast.diffs.empty())
        os << '\n';
    for (const auto& d : ast.diffs) {
        os << "d " << d.r << ' ' << d.source << " ->";
        for (std::size_t i = 0; i < d.image.size(); ++i) {
            const Term& t = d.image[i];
            if (i > 0)
                os << " +";
            if (t.coefficient)
                os << ' ' << *t.coefficient;
            for (const auto& f : t.factors) {
                os << ' ' << f.name;
                if (f.exponent)
                    os << '^' << *f.exponent;
            }
        }
        os << '\n';
    }
    return os.str();
}

PresentationFile parse(const std::string& text)
{
    PresentationFile out;
    out.ast = parse_ast(text);
    const FileAst& ast = out.ast;
    if (!is_prime(ast.prime))
        throw ParseError(1, 1, "prime", std::to_string(ast.prime) + " is not prime");
    if (ast.prime < 5)
        throw ParseError(1, 1, "prime", "only primes p >= 5 are supported");
    if (ast.maxdeg < 0)
        throw ParseError(2, 1, "maxdeg", "maxdeg must be non-negative");

    std::vector<algebra::GeneratorSpec> gens;
    std::set<std::string> seen;
    for (const auto& b : ast.blocks)
        for (const auto& g : b.gens) {
            if (!seen.insert(g.name).second)
                throw ParseError(g.line, 1, "duplicate-generator", "generator '" + g.name + "' declared twice");
            algebra::Bidegree bd{g.n, g.m};
            if (g.n < 0 || g.m < 0)
                throw ParseError(g.line, 1, "first-quadrant", "generator '" + g.name + "' lies outside the first quadrant");
            if (bd.total() <= 0)
                throw ParseError(g.line, 1, "positive-degree", "generator '" + g.name + "' has total degree 0");
            const bool odd = bd.total() % 2 != 0;
            if (g.kind == algebra::Kind::Exterior && !odd)
                throw ParseError(g.line, 1, "parity",
                                 "exterior generator '" + g.name + "' has even total degree " +
                                     std::to_string(bd.total()));
            if (g.kind != algebra::Kind::Exterior && odd)
                throw ParseError(g.line, 1, "parity",
                                 algebra::to_string(g.kind) + " generator '" + g.name + "' has odd total degree " +
                                     std::to_string(bd.total()));
            if (g.kind == algebra::Kind::Truncated && g.height < 2)
                throw ParseError(g.line, 1, "truncation", "truncation height must be >= 2");
            algebra::GeneratorSpec spec{g.name, g.kind, g.height, bd, g.weight.value_or(0)};
            gens.push_back(std::move(spec));
        }
    auto pres = std::make_shared<const algebra::Presentation>(static_cast<std::uint32_t>(ast.prime), gens,
                                                              static_cast<int>(ast.maxdeg));

    for (const auto& d : ast.diffs) {
        if (d.r < 1)
            throw ParseError(d.line, 1, "differential", "page index must be >= 1");
        auto src = pres->index_of(d.source);
        if (!src)
            throw ParseError(d.line, 1, "unknown-generator", "unknown generator '" + d.source + "'");
        const algebra::Bidegree want = pres->generator(*src).bidegree + algebra::Bidegree{-d.r, d.r - 1};
        algebra::Element image(pres->p(), want);
        for (const auto& t : d.image) {
            // factors multiply in the written order, so odd factors pick up Koszul signs
            algebra::Monomial m = algebra::Monomial::unit(pres->size());
            algebra::Bidegree deg{0, 0};
            std::int64_t sign = 1;
            for (const auto& f : t.factors) {
                auto i = pres->index_of(f.name);
                if (!i)
                    throw ParseError(d.line, 1, "unknown-generator", "unknown generator '" + f.name + "'");
                int e = f.exponent.value_or(1);
                if (e < 0)
                    throw ParseError(d.line, 1, "exponent", "negative exponent on '" + f.name + "'");
                const auto& g = pres->generator(*i);
                deg = deg + algebra::Bidegree{g.bidegree.n * e, g.bidegree.m * e};
                auto factor = algebra::Monomial::generator(pres->size(), *i, e);
                if (sign == 0 || !pres->admissible(factor)) {
                    sign = 0; // x^2 = 0 for exterior x, x^h = 0 for truncated x
                    continue;
                }
                auto prod = pres->multiply(m, factor);
                sign = prod.sign == 0 ? 0 : pres->field().lift(prod.sign) * sign;
                m = prod.monomial;
            }
            if (deg != want)
                throw ParseError(d.line, 1, "differential-bidegree",
                                 "term of bidegree " + algebra::to_string(deg) + " but d_" + std::to_string(d.r) +
                                     "(" + d.source + ") must have bidegree " + algebra::to_string(want));
            const long c = t.coefficient.value_or(1);
            if (sign != 0)
                image.add_term(m, c * sign);
        }
        out.differentials.push_back({d.r, pres->generator_element(*src), std::move(image), "file line " +
                                                                                            std::to_string(d.line)});
    }
    out.presentation = std::move(pres);
    return out;
}

PresentationFile parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, 0, "io", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

} // namespace gradss::dsl

#include "k2slot/parse.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

#include "k2slot/errors.hpp"
#include "k2slot/io.hpp"

namespace k2slot {

namespace {

struct Token {
    enum Kind { Int, Ident, Punct, End } kind = End;
    std::string text;
    i64 value = 0;
    int line = 1;
    int col = 1;
};

std::string describe(const Token& t) {
    if (t.kind == Token::End) return "end of input";
    return "'" + t.text + "'";
}

std::vector<Token> lex(const std::string& input) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (input[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    const std::string punct = ";,{}()[]^*+-/=";
    while (i < input.size()) {
        char c = input[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < input.size() && std::isdigit(static_cast<unsigned char>(input[j]))) ++j;
            t.kind = Token::Int;
            t.text = input.substr(i, j - i);
            if (t.text.size() > 18)
                throw InputError("SyntaxError",
                                 "line " + render_int(line) + ", column " + render_int(col) +
                                     ": integer literal too large");
            t.value = std::stoll(t.text);
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < input.size() &&
                   (std::isalnum(static_cast<unsigned char>(input[j])) || input[j] == '_'))
                ++j;
            t.kind = Token::Ident;
            t.text = input.substr(i, j - i);
            advance(j - i);
        } else if (punct.find(c) != std::string::npos) {
            t.kind = Token::Punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw InputError("SyntaxError", "line " + render_int(line) + ", column " +
                                                render_int(col) + ": unexpected character '" +
                                                std::string(1, c) + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::End;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

// Raw integer polynomial in one named variable, used for the field modulus
// before any F_q context exists.
std::map<int, i64> parse_int_poly_terms(const std::vector<Token>& toks, size_t& pos,
                                        const std::string& var, i64 p);

class Parser {
public:
    explicit Parser(const std::string& input) : toks_(lex(input)) {}

    ParsedSession parse() {
        FieldSpec spec = parse_field_decl();
        F_ = &spec;
        std::vector<ParsedProblem> problems;
        while (!at_end()) problems.push_back(parse_command());
        return ParsedSession{std::move(spec), std::move(problems)};
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    const FieldSpec* F_ = nullptr;

    const Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at_end() const { return peek().kind == Token::End; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw InputError("SyntaxError", "line " + render_int(t.line) + ", column " +
                                            render_int(t.col) + ": expected " + expected +
                                            ", found " + describe(t));
    }

    bool accept_punct(char c) {
        if (peek().kind == Token::Punct && peek().text[0] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect_punct(char c, const std::string& expected) {
        if (!accept_punct(c)) fail(expected);
    }
    bool accept_ident(const std::string& word) {
        if (peek().kind == Token::Ident && peek().text == word) {
            ++pos_;
            return true;
        }
        return false;
    }
    i64 expect_int(const std::string& expected) {
        if (peek().kind != Token::Int) fail(expected);
        return toks_[pos_++].value;
    }
    // Exponents become polynomial degrees or valuations; a cap keeps hostile
    // input from allocating unbounded coefficient vectors.
    static constexpr i64 kMaxExponent = 4096;
    i64 expect_exponent() {
        i64 e = expect_int("an exponent");
        if (e > kMaxExponent)
            throw InputError("SemanticError",
                             "exponent " + render_int(e) + " exceeds the cap " +
                                 render_int(kMaxExponent));
        return e;
    }
    std::string expect_ident(const std::string& expected) {
        if (peek().kind != Token::Ident) fail(expected);
        return toks_[pos_++].text;
    }

    // Wraps field and element construction so that mathematically invalid
    // input surfaces as SemanticError rather than a library MathError; the
    // library names stay visible in the detail.
    template <typename Fn>
    auto semantic(Fn&& fn) -> decltype(fn()) {
        try {
            return fn();
        } catch (const MathError& e) {
            throw InputError("SemanticError", e.what());
        }
    }

    i64 parse_gf_card() {
        if (!accept_ident("GF")) fail("'GF'");
        expect_punct('(', "'('");
        i64 q = expect_int("a prime power");
        expect_punct(')', "')'");
        return q;
    }

    FieldSpec parse_field_decl() {
        if (!accept_ident("field")) fail("'field'");
        i64 q = parse_gf_card();
        std::optional<FieldSpec> spec;
        if (accept_punct('=')) {
            i64 p = parse_gf_card();
            expect_punct('[', "'['");
            std::string gen = expect_ident("the extension generator name");
            expect_punct(']', "']'");
            expect_punct('/', "'/'");
            expect_punct('(', "'('");
            std::map<int, i64> terms = parse_int_poly_terms(toks_, pos_, gen, p);
            expect_punct(')', "')'");
            int deg = terms.empty() ? 0 : terms.rbegin()->first;
            std::vector<i64> modulus(deg + 1, 0);
            for (const auto& [d, c] : terms) modulus[d] = c;
            i64 card = 1;
            for (int k = 0; k < deg; ++k) card *= p;
            if (card != q)
                throw InputError("SemanticError",
                                 "tower of degree " + render_int(deg) + " over GF(" +
                                     render_int(p) + ") has " + render_int(card) +
                                     " elements, not " + render_int(q));
            i64 m = parse_m_clause();
            spec = semantic([&] { return field_make(p, deg, modulus, m, gen); });
        } else {
            i64 m = parse_m_clause();
            spec = semantic([&] { return field_make(q, 1, {0, 1}, m); });
        }
        expect_punct(';', "';'");
        return *std::move(spec);
    }

    i64 parse_m_clause() {
        if (!accept_ident("m")) fail("'m='");
        expect_punct('=', "'='");
        return expect_int("the symbol modulus");
    }

    ParsedProblem parse_command() {
        ParsedProblem out;
        if (accept_ident("k2")) {
            if (accept_ident("residues"))
                out.kind = ProblemKind::K2Residues;
            else if (accept_ident("zero"))
                out.kind = ProblemKind::K2Zero;
            else if (accept_ident("reciprocity"))
                out.kind = ProblemKind::K2Reciprocity;
            else
                fail("'residues', 'zero', or 'reciprocity'");
            out.classes = parse_k2list();
        } else if (accept_ident("slot")) {
            if (accept_ident("find")) {
                out.kind = ProblemKind::SlotFind;
            } else if (accept_ident("verify")) {
                out.kind = ProblemKind::SlotVerify;
                out.slot = parse_ratfn();
            } else {
                fail("'find' or 'verify'");
            }
            out.classes = parse_k2list();
        } else if (accept_ident("alg")) {
            if (accept_ident("build"))
                out.kind = ProblemKind::AlgBuild;
            else if (accept_ident("split"))
                out.kind = ProblemKind::AlgSplit;
            else
                fail("'build' or 'split'");
            expect_punct('(', "'('");
            out.alg_a = parse_const();
            expect_punct(',', "','");
            out.alg_b = parse_const();
            expect_punct(')', "')'");
        } else if (accept_ident("r2d")) {
            if (accept_ident("mult")) {
                out.kind = ProblemKind::R2dMult;
                expect_punct('(', "'('");
                out.prime = parse_bipoly();
                expect_punct(',', "','");
                out.element = parse_faclist();
                expect_punct(')', "')'");
            } else if (accept_ident("reciprocity")) {
                out.kind = ProblemKind::R2dReciprocity;
                out.local_symbols = parse_lsymlist();
            } else {
                fail("'mult' or 'reciprocity'");
            }
        } else {
            fail("a command ('k2', 'slot', 'alg', or 'r2d')");
        }
        expect_punct(';', "';'");
        return out;
    }

    std::vector<K2Element> parse_k2list() {
        std::vector<K2Element> out;
        do {
            std::vector<Symbol2> terms;
            do terms.push_back(parse_sym());
            while (accept_punct('+'));
            out.push_back(semantic([&] { return k2_element(*F_, terms); }));
        } while (accept_punct(','));
        return out;
    }

    Symbol2 parse_sym() {
        i64 coeff = 1;
        if (peek().kind == Token::Int) {
            coeff = toks_[pos_++].value;
            expect_punct('*', "'*' after the symbol coefficient");
        }
        expect_punct('{', "'{'");
        RatFun a = parse_ratfn();
        expect_punct(',', "','");
        RatFun b = parse_ratfn();
        expect_punct('}', "'}'");
        return semantic([&] { return symbol_make(*F_, a, b, coeff); });
    }

    RatFun parse_ratfn() {
        Poly num = parse_poly("t");
        if (accept_punct('/')) {
            Poly den = parse_poly("t");
            return semantic([&] { return ratfun_make(*F_, num, den); });
        }
        return semantic([&] { return ratfun_from_poly(*F_, num); });
    }

    FqElem parse_const() {
        Poly f = parse_poly("");
        return f.is_zero() ? F_->fq().zero() : f.c[0];
    }

    // poly := ["-"] term { ("+" | "-") term }, over the main variable `var`
    // ("" for constants) plus the extension generator when the field has one.
    Poly parse_poly(const std::string& var) {
        const Fq& k = F_->fq();
        Poly acc = poly_zero();
        bool negate = accept_punct('-');
        while (true) {
            auto [deg, coeff] = parse_term_1v(var);
            if (negate) coeff = k.neg(coeff);
            if (acc.deg() < deg) acc.c.resize(deg + 1, k.zero());
            acc.c[deg] = k.add(acc.c[deg], coeff);
            if (accept_punct('+'))
                negate = false;
            else if (accept_punct('-'))
                negate = true;
            else
                break;
        }
        return poly_trim(std::move(acc));
    }

    // term := factor { "*" factor }; stops before "*{" so that a symbol
    // coefficient after a bare rational function keeps its '*'.
    std::pair<int, FqElem> parse_term_1v(const std::string& var) {
        const Fq& k = F_->fq();
        int deg = 0;
        FqElem coeff = k.one();
        while (true) {
            auto [vpow, c] = parse_factor_1v(var);
            deg += vpow;
            coeff = k.mul(coeff, c);
            if (peek().kind == Token::Punct && peek().text == "*" &&
                !(peek(1).kind == Token::Punct && peek(1).text == "{")) {
                ++pos_;
                continue;
            }
            break;
        }
        return {deg, coeff};
    }

    std::pair<int, FqElem> parse_factor_1v(const std::string& var) {
        const Fq& k = F_->fq();
        if (peek().kind == Token::Int) {
            i64 n = toks_[pos_++].value;
            return {0, k.from_int(n)};
        }
        if (peek().kind != Token::Ident) fail(factor_expectation(var));
        std::string name = toks_[pos_++].text;
        int pow = 1;
        if (accept_punct('^')) pow = static_cast<int>(expect_exponent());
        if (!var.empty() && name == var) return {pow, k.one()};
        if (k.e() > 1 && name == F_->gen_name()) return {0, k.pow(k.gen(), pow)};
        throw InputError("SemanticError", "line " + render_int(toks_[pos_ - 1].line) +
                                              ", column " + render_int(toks_[pos_ - 1].col) +
                                              ": unknown variable '" + name + "'");
    }

    std::string factor_expectation(const std::string& var) const {
        if (var.empty())
            return F_->fq().e() > 1 ? "an integer or '" + F_->gen_name() + "'" : "an integer";
        return "an integer or a variable";
    }

    // Bivariate polynomials reuse the term machinery with two variables.
    BivariatePoly parse_bipoly() {
        const Fq& k = F_->fq();
        BivariatePoly acc;
        bool negate = accept_punct('-');
        while (true) {
            auto [dx, dy, coeff] = parse_term_2v();
            if (negate) coeff = k.neg(coeff);
            auto key = std::make_pair(dx, dy);
            auto it = acc.c.find(key);
            FqElem sum = it == acc.c.end() ? coeff : k.add(it->second, coeff);
            if (k.is_zero(sum)) {
                if (it != acc.c.end()) acc.c.erase(it);
            } else {
                acc.c[key] = sum;
            }
            if (accept_punct('+'))
                negate = false;
            else if (accept_punct('-'))
                negate = true;
            else
                break;
        }
        return acc;
    }

    std::tuple<int, int, FqElem> parse_term_2v() {
        const Fq& k = F_->fq();
        int dx = 0, dy = 0;
        FqElem coeff = k.one();
        while (true) {
            if (peek().kind == Token::Int) {
                coeff = k.mul(coeff, k.from_int(toks_[pos_++].value));
            } else if (peek().kind == Token::Ident) {
                std::string name = toks_[pos_++].text;
                int pow = 1;
                if (accept_punct('^')) pow = static_cast<int>(expect_exponent());
                if (name == "x")
                    dx += pow;
                else if (name == "y")
                    dy += pow;
                else if (k.e() > 1 && name == F_->gen_name())
                    coeff = k.mul(coeff, k.pow(k.gen(), pow));
                else
                    throw InputError("SemanticError",
                                     "line " + render_int(toks_[pos_ - 1].line) + ", column " +
                                         render_int(toks_[pos_ - 1].col) +
                                         ": unknown variable '" + name + "'");
            } else {
                fail("an integer, 'x', or 'y'");
            }
            if (peek().kind == Token::Punct && peek().text == "*" &&
                !(peek(1).kind == Token::Punct &&
                  (peek(1).text == "(" || peek(1).text == "{"))) {
                ++pos_;
                continue;
            }
            break;
        }
        return {dx, dy, coeff};
    }

    // faclist := fac { "*" fac }; integer factors multiply into the unit,
    // parenthesized factors carry optional signed exponents.
    FactoredBivariate parse_faclist() {
        const Fq& k = F_->fq();
        FqElem unit = k.one();
        std::vector<std::pair<BivariatePoly, i64>> factors;
        do {
            if (peek().kind == Token::Int) {
                unit = k.mul(unit, k.from_int(toks_[pos_++].value));
            } else if (accept_punct('(')) {
                BivariatePoly f = parse_bipoly();
                expect_punct(')', "')'");
                i64 e = 1;
                if (accept_punct('^')) {
                    bool neg = accept_punct('-');
                    e = expect_exponent();
                    if (neg) e = -e;
                }
                factors.emplace_back(std::move(f), e);
            } else {
                fail("an integer or '('");
            }
        } while (accept_punct('*'));
        return semantic([&] { return factored_make(*F_, unit, factors); });
    }

    std::vector<LocalSymbol> parse_lsymlist() {
        std::vector<LocalSymbol> out;
        do {
            i64 coeff = 1;
            if (peek().kind == Token::Int) {
                coeff = toks_[pos_++].value;
                expect_punct('*', "'*' after the symbol coefficient");
            }
            expect_punct('{', "'{'");
            FactoredBivariate a = parse_faclist();
            expect_punct(',', "','");
            FactoredBivariate b = parse_faclist();
            expect_punct('}', "'}'");
            out.push_back(semantic([&] { return local_symbol_make(*F_, a, b, coeff); }));
        } while (accept_punct(','));
        return out;
    }
};

std::map<int, i64> parse_int_poly_terms(const std::vector<Token>& toks, size_t& pos,
                                        const std::string& var, i64 p) {
    auto syntax = [&](const std::string& expected) -> void {
        const Token& t = pos < toks.size() ? toks[pos] : toks.back();
        throw InputError("SyntaxError", "line " + render_int(t.line) + ", column " +
                                            render_int(t.col) + ": expected " + expected +
                                            ", found " + describe(t));
    };
    if (p < 2) throw InputError("SemanticError", "field characteristic must be at least 2");
    std::map<int, i64> acc;
    i64 sign = 1;
    if (toks[pos].kind == Token::Punct && toks[pos].text == "-") {
        sign = -1;
        ++pos;
    }
    while (true) {
        i64 coeff = 1;
        int deg = 0;
        while (true) {
            if (toks[pos].kind == Token::Int) {
                coeff = coeff * (toks[pos].value % p) % p;
                ++pos;
            } else if (toks[pos].kind == Token::Ident && toks[pos].text == var) {
                ++pos;
                int pow = 1;
                if (toks[pos].kind == Token::Punct && toks[pos].text == "^") {
                    ++pos;
                    if (toks[pos].kind != Token::Int) syntax("an exponent");
                    if (toks[pos].value > 64)
                        throw InputError("SemanticError",
                                         "field modulus degree exceeds the cap 64");
                    pow = static_cast<int>(toks[pos].value);
                    ++pos;
                }
                deg += pow;
            } else {
                syntax("an integer or '" + var + "'");
            }
            if (toks[pos].kind == Token::Punct && toks[pos].text == "*") {
                ++pos;
                continue;
            }
            break;
        }
        acc[deg] = ((acc[deg] + sign * coeff) % p + p) % p;
        if (toks[pos].kind == Token::Punct && toks[pos].text == "+") {
            sign = 1;
            ++pos;
        } else if (toks[pos].kind == Token::Punct && toks[pos].text == "-") {
            sign = -1;
            ++pos;
        } else {
            break;
        }
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = it->second == 0 ? acc.erase(it) : std::next(it);
    return acc;
}

}  // namespace

ParsedSession parse_session(const std::string& input) { return Parser(input).parse(); }

std::string render_symbol(const FieldSpec& F, const Symbol2& s) {
    std::string out;
    if (s.coeff != 1) out += render_int(s.coeff) + "*";
    return out + "{" + render_ratfun(F, s.a) + "," + render_ratfun(F, s.b) + "}";
}

std::string render_class(const FieldSpec& F, const K2Element& alpha) {
    std::string out;
    for (size_t i = 0; i < alpha.terms.size(); ++i) {
        if (i > 0) out += "+";
        out += render_symbol(F, alpha.terms[i]);
    }
    return out;
}

std::string render_factored(const FieldSpec& F, const FactoredBivariate& u) {
    std::string out;
    if (u.factors.empty() || !(u.unit == F.fq().one()))
        out = render_fqelem(F, u.unit);
    for (const auto& [f, e] : u.factors) {
        if (!out.empty()) out += "*";
        out += "(" + render_bipoly(F, f) + ")";
        if (e != 1) out += "^" + render_int(e);
    }
    return out;
}

std::string render_local_symbol(const FieldSpec& F, const LocalSymbol& s) {
    std::string out;
    if (s.coeff != 1) out += render_int(s.coeff) + "*";
    return out + "{" + render_factored(F, s.a) + "," + render_factored(F, s.b) + "}";
}

namespace {

std::string render_field_decl(const FieldSpec& F) {
    std::string out = "field GF(" + render_int(F.q()) + ")";
    if (F.e() > 1) {
        Poly mod = poly_from_ints(F.fq(), F.fq().modulus());
        out += "=GF(" + render_int(F.p()) + ")[" + F.gen_name() + "]/(" +
               render_poly(F, mod, F.gen_name()) + ")";
    }
    return out + " m=" + render_int(F.m()) + ";";
}

std::string render_k2list(const FieldSpec& F, const std::vector<K2Element>& classes) {
    std::string out;
    for (size_t i = 0; i < classes.size(); ++i) {
        if (i > 0) out += ", ";
        out += render_class(F, classes[i]);
    }
    return out;
}

}  // namespace

std::string render_session(const ParsedSession& s) {
    const FieldSpec& F = s.spec;
    std::ostringstream os;
    os << render_field_decl(F) << "\n";
    for (const ParsedProblem& p : s.problems) {
        switch (p.kind) {
            case ProblemKind::K2Residues:
                os << "k2 residues " << render_k2list(F, p.classes);
                break;
            case ProblemKind::K2Zero:
                os << "k2 zero " << render_k2list(F, p.classes);
                break;
            case ProblemKind::K2Reciprocity:
                os << "k2 reciprocity " << render_k2list(F, p.classes);
                break;
            case ProblemKind::SlotFind:
                os << "slot find " << render_k2list(F, p.classes);
                break;
            case ProblemKind::SlotVerify:
                os << "slot verify " << render_ratfun(F, p.slot) << " "
                   << render_k2list(F, p.classes);
                break;
            case ProblemKind::AlgBuild:
                os << "alg build(" << render_fqelem(F, p.alg_a) << ","
                   << render_fqelem(F, p.alg_b) << ")";
                break;
            case ProblemKind::AlgSplit:
                os << "alg split(" << render_fqelem(F, p.alg_a) << ","
                   << render_fqelem(F, p.alg_b) << ")";
                break;
            case ProblemKind::R2dMult:
                os << "r2d mult(" << render_bipoly(F, p.prime) << ","
                   << render_factored(F, p.element) << ")";
                break;
            case ProblemKind::R2dReciprocity: {
                os << "r2d reciprocity ";
                for (size_t i = 0; i < p.local_symbols.size(); ++i) {
                    if (i > 0) os << ", ";
                    os << render_local_symbol(F, p.local_symbols[i]);
                }
                break;
            }
        }
        os << ";\n";
    }
    return os.str();
}

}  // namespace k2slot

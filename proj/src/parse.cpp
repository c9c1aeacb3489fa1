#include <qdiff/error.hpp>
#include <qdiff/parse.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <optional>

namespace qdiff
{

namespace
{

class Parser
{
public:
    Parser(std::string_view text, ContextPtr ctx, bool allow_q) : m_text(text), m_ctx(std::move(ctx)), m_allow_q(allow_q)
    {
    }

    OreOperator run()
    {
        skip();
        if (at_end()) {
            fail("empty expression");
        }
        OreOperator P = expr();
        skip();
        if (!at_end()) {
            fail(std::string("unexpected '") + peek() + "'");
        }
        return P;
    }

private:
    std::string_view m_text;
    ContextPtr m_ctx;
    bool m_allow_q;
    std::size_t m_pos = 0;

    bool at_end() const
    {
        return m_pos >= m_text.size();
    }
    char peek() const
    {
        return at_end() ? '\0' : m_text[m_pos];
    }
    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++m_pos;
        }
    }
    std::pair<int, int> position(std::size_t pos) const
    {
        int line = 1;
        int col = 1;
        for (std::size_t k = 0; k < pos && k < m_text.size(); ++k) {
            if (m_text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }
    [[noreturn]] void fail(const std::string &what, ErrorKind kind = ErrorKind::SyntaxError) const
    {
        fail_at(m_pos, what, kind);
    }
    [[noreturn]] void fail_at(std::size_t pos, const std::string &what, ErrorKind kind = ErrorKind::SyntaxError) const
    {
        const auto [line, col] = position(pos);
        throw SyntaxError(kind, what + " at line " + std::to_string(line) + ", column " + std::to_string(col), line,
                          col);
    }

    OreOperator constant(cplx c) const
    {
        return OreOperator::scalar(LaurentSeries::constant(m_ctx, c));
    }

    OreOperator expr()
    {
        OreOperator P = term();
        for (;;) {
            skip();
            const char c = peek();
            if (c != '+' && c != '-') {
                return P;
            }
            ++m_pos;
            const OreOperator T = term();
            P = c == '+' ? ore_add(P, T) : ore_sub(P, T);
        }
    }

    bool starts_primary()
    {
        skip();
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
               std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    OreOperator term()
    {
        OreOperator P = unary();
        for (;;) {
            skip();
            if (peek() == '*') {
                ++m_pos;
                P = ore_mul(P, unary());
            } else if (starts_primary()) {
                P = ore_mul(P, unary());
            } else {
                return P;
            }
        }
    }

    OreOperator unary()
    {
        skip();
        if (peek() == '-') {
            ++m_pos;
            return ore_scale(unary(), -1.0);
        }
        if (peek() == '+') {
            ++m_pos;
            return unary();
        }
        return power();
    }

    int integer_exponent()
    {
        skip();
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1 : 1;
            ++m_pos;
            skip();
        }
        const std::size_t start = m_pos;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            ++m_pos;
        }
        if (start == m_pos) {
            fail("expected an integer exponent");
        }
        int v = 0;
        const auto res = std::from_chars(m_text.data() + start, m_text.data() + m_pos, v);
        if (res.ec != std::errc()) {
            fail_at(start, "exponent out of range");
        }
        return sign * v;
    }

    OreOperator power()
    {
        skip();
        const std::size_t start = m_pos;
        OreOperator base = primary();
        skip();
        if (peek() != '^') {
            return base;
        }
        ++m_pos;
        const int k = integer_exponent();
        return raise(base, k, start);
    }

    OreOperator raise(const OreOperator &base, int k, std::size_t where)
    {
        OreOperator b = base;
        if (k < 0) {
            if (b.terms().size() != 1) {
                fail_at(where, "negative power of a sum");
            }
            const auto &[i, a] = *b.terms().begin();
            if (a.is_zero()) {
                fail_at(where, "negative power of zero");
            }
            // (a S^i)^{-1} = S^{-i} a^{-1} = sigma^{-i}(a^{-1}) S^{-i}
            std::map<int, LaurentSeries> t{{-i, sigma_pow(invert(a), -i)}};
            b = OreOperator::from_terms(m_ctx, t);
            k = -k;
        }
        OreOperator out = constant(1.0);
        OreOperator sq = b;
        while (k > 0) {
            if (k & 1) {
                out = ore_mul(out, sq);
            }
            k >>= 1;
            if (k > 0) {
                sq = ore_mul(sq, sq);
            }
        }
        return out;
    }

    OreOperator number()
    {
        const std::size_t start = m_pos;
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            ++m_pos;
        }
        if ((peek() == 'e' || peek() == 'E') && m_pos + 1 < m_text.size()) {
            std::size_t p = m_pos + 1;
            if (m_text[p] == '+' || m_text[p] == '-') {
                ++p;
            }
            if (p < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[p]))) {
                m_pos = p;
                while (std::isdigit(static_cast<unsigned char>(peek()))) {
                    ++m_pos;
                }
            }
        }
        const std::string lit(m_text.substr(start, m_pos - start));
        char *end = nullptr;
        const double v = std::strtod(lit.c_str(), &end);
        if (end != lit.c_str() + lit.size()) {
            fail_at(start, "malformed number '" + lit + "'");
        }
        if (peek() == 'i' && !(m_pos + 1 < m_text.size() && std::isalnum(static_cast<unsigned char>(m_text[m_pos + 1])))) {
            ++m_pos;
            return constant(cplx(0.0, v));
        }
        return constant(v);
    }

    OreOperator primary()
    {
        skip();
        const char c = peek();
        if (at_end()) {
            fail("unexpected end of input");
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (c == '(') {
            ++m_pos;
            OreOperator P = expr();
            skip();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++m_pos;
            return P;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = m_pos;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                ++m_pos;
            }
            const std::string_view name = m_text.substr(start, m_pos - start);
            if (name == "z") {
                return OreOperator::scalar(LaurentSeries::monomial(m_ctx, 1.0, 1));
            }
            if (name == "S") {
                return OreOperator::sigma(m_ctx, 1);
            }
            if (name == "i") {
                return constant(cplx(0.0, 1.0));
            }
            if (name == "q" && m_allow_q) {
                return constant(m_ctx->q);
            }
            fail_at(start, "unknown symbol '" + std::string(name) + "'", ErrorKind::UnknownSymbol);
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_complex(cplx c)
{
    std::string s = "(" + fmt_double(c.real());
    if (c.imag() != 0.0) {
        s += c.imag() < 0.0 || std::signbit(c.imag()) ? "-" : "+";
        s += fmt_double(std::abs(c.imag())) + "i";
    }
    return s + ")";
}

} // namespace

OreOperator parse_operator(std::string_view text, const ContextPtr &ctx)
{
    return Parser(text, ctx, true).run();
}

cplx parse_complex(std::string_view text)
{
    const ContextPtr ctx = make_context(2.0);
    const OreOperator P = Parser(text, ctx, false).run();
    if (P.is_zero()) {
        return 0.0;
    }
    if (P.terms().size() != 1 || P.min_deg() != 0) {
        throw Error(ErrorKind::InvalidArgument, "expected a complex constant: " + std::string(text));
    }
    const LaurentSeries &a = P.terms().begin()->second;
    const bool higher = std::any_of(a.coeffs().begin() + 1, a.coeffs().end(), [](cplx c) { return c != 0.0; });
    if (a.v0() != 0 || higher) {
        throw Error(ErrorKind::InvalidArgument, "expected a complex constant: " + std::string(text));
    }
    return a.leading();
}

std::string render_operator(const OreOperator &P)
{
    if (P.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto &[i, a] : P.terms()) {
        std::string coef;
        for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
            const cplx c = a.coeffs()[k];
            if (c == 0.0) {
                continue;
            }
            if (!coef.empty()) {
                coef += "+";
            }
            coef += fmt_complex(c) + "*z^" + std::to_string(a.v0() + static_cast<int>(k));
        }
        if (!out.empty()) {
            out += " + ";
        }
        out += "(" + coef + ")*S^" + std::to_string(i);
    }
    return out;
}

} // namespace qdiff

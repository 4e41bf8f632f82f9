#ifndef METAB_PARSE_HPP
#define METAB_PARSE_HPP

#include <cctype>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <metab/metabelian.hpp>
#include <metab/polynomial.hpp>
#include <metab/rational.hpp>

// Element expressions:
//   element  := ["-"] term (("+" | "-") term)*
//   term     := rational | [rational] factor+
//   factor   := atom ["^" integer]
//   atom     := gen | "[" element ("," element)+ "]" | "(" element ")"
//   gen      := ("x" | "u" | "v") integer
//   rational := integer ["/" positive-integer]
// Juxtaposition is the product: in F_d for two algebra factors, the module action for an
// element of F_d' next to a polynomial in U, V. Commutators are left-normed.
namespace metab
{

class ParseError : public std::invalid_argument
{
public:
    ParseError(const std::string &msg, std::size_t pos)
        : std::invalid_argument("parse error at column " + std::to_string(pos + 1) + ": " + msg), pos_(pos)
    {
    }
    [[nodiscard]] std::size_t position() const
    {
        return pos_;
    }

private:
    std::size_t pos_;
};

namespace detail
{

// A parsed subexpression: a scalar, an element of F_d, or a polynomial in K[U_d, V_d].
struct Expr {
    enum class Kind { Scalar, Algebra, Poly } kind = Kind::Scalar;
    Rational s;
    MetabelianElement m;
    PolyUV p;

    explicit Expr(std::size_t d) : m(d) {}
};

class ExprParser
{
public:
    ExprParser(std::string_view text, std::size_t d) : text_(text), d_(d)
    {
        if (d == 0) {
            throw std::invalid_argument("rank must be positive");
        }
    }

    Expr parse()
    {
        Expr e = element();
        skip();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ParseError(msg, pos_);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    char peek()
    {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    static bool starts_factor(char c)
    {
        return c == 'x' || c == 'u' || c == 'v' || c == '[' || c == '(';
    }

    Expr scalar(const Rational &c) const
    {
        Expr e(d_);
        e.s = c;
        return e;
    }

    MetabelianElement as_algebra(const Expr &e) const
    {
        switch (e.kind) {
        case Expr::Kind::Scalar:
            return MetabelianElement::one(d_) * e.s;
        case Expr::Kind::Algebra:
            return e.m;
        case Expr::Kind::Poly:
            break;
        }
        throw ParseError("u/v variables are only allowed as polynomial factors", pos_);
    }

    PolyUV as_poly(const Expr &e) const
    {
        if (e.kind == Expr::Kind::Scalar) {
            PolyUV p = uv::one(d_);
            p *= e.s;
            return p;
        }
        return e.p;
    }

    Expr add(Expr a, const Expr &b, bool subtract)
    {
        const Rational sign = subtract ? Rational(-1) : Rational(1);
        using K = Expr::Kind;
        if (a.kind == K::Scalar && b.kind == K::Scalar) {
            a.s += sign * b.s;
            return a;
        }
        if (a.kind == K::Poly || b.kind == K::Poly) {
            if (a.kind == K::Algebra || b.kind == K::Algebra) {
                fail("cannot add an algebra element and a U/V polynomial");
            }
            Expr r(d_);
            r.kind = K::Poly;
            r.p = as_poly(a) + as_poly(b) * sign;
            return r;
        }
        Expr r(d_);
        r.kind = K::Algebra;
        r.m = as_algebra(a) + as_algebra(b) * sign;
        return r;
    }

    Expr multiply(Expr a, const Expr &b)
    {
        using K = Expr::Kind;
        if (a.kind == K::Scalar) {
            if (b.kind == K::Scalar) {
                a.s *= b.s;
                return a;
            }
            Expr r = b;
            if (r.kind == K::Algebra) {
                r.m *= a.s;
            } else {
                r.p *= a.s;
            }
            return r;
        }
        if (b.kind == K::Scalar) {
            return multiply(b, a);
        }
        Expr r(d_);
        if (a.kind == K::Poly && b.kind == K::Poly) {
            r.kind = K::Poly;
            r.p = a.p * b.p;
            return r;
        }
        if (a.kind == K::Algebra && b.kind == K::Algebra) {
            r.kind = K::Algebra;
            r.m = a.m * b.m;
            return r;
        }
        const MetabelianElement &w = a.kind == K::Algebra ? a.m : b.m;
        const PolyUV &q = a.kind == K::Poly ? a.p : b.p;
        if (!w.in_commutator_ideal()) {
            fail("U/V polynomials act only on elements of the commutator ideal");
        }
        r.kind = K::Algebra;
        r.m = act_uv(w, q);
        return r;
    }

    Expr element()
    {
        bool negate = accept('-');
        Expr acc = term();
        if (negate) {
            acc = multiply(scalar(Rational(-1)), acc);
        }
        while (true) {
            if (accept('+')) {
                acc = add(std::move(acc), term(), false);
            } else if (accept('-')) {
                acc = add(std::move(acc), term(), true);
            } else {
                return acc;
            }
        }
    }

    Expr term()
    {
        Expr acc = scalar(Rational(1));
        bool any = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::string num = digits();
            if (accept('/')) {
                const std::string den = digits();
                if (Rational::parse(den).is_zero()) {
                    fail("zero denominator");
                }
                num += "/" + den;
            }
            acc = scalar(Rational::parse(num));
            any = true;
        }
        while (starts_factor(peek())) {
            acc = multiply(std::move(acc), factor());
            any = true;
        }
        if (!any) {
            fail(pos_ < text_.size() ? "expected a term" : "unexpected end of input");
        }
        return acc;
    }

    Expr factor()
    {
        Expr base = atom();
        if (!accept('^')) {
            return base;
        }
        const unsigned long k = std::stoul(digits());
        Expr r = scalar(Rational(1));
        for (unsigned long i = 0; i < k; ++i) {
            r = multiply(std::move(r), base);
        }
        return r;
    }

    Expr atom()
    {
        const char c = peek();
        if (accept('(')) {
            Expr e = element();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return e;
        }
        if (accept('[')) {
            MetabelianElement acc = as_algebra(element());
            std::size_t parts = 1;
            while (accept(',')) {
                acc = commutator(acc, as_algebra(element()));
                ++parts;
            }
            if (parts < 2) {
                fail("a commutator needs at least two entries");
            }
            if (!accept(']')) {
                fail("expected ']'");
            }
            Expr r(d_);
            r.kind = Expr::Kind::Algebra;
            r.m = std::move(acc);
            return r;
        }
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            fail("expected a generator index after '" + std::string(1, c) + "'");
        }
        const std::size_t start = pos_;
        const unsigned long idx = std::stoul(digits());
        if (idx == 0 || idx > d_) {
            pos_ = start;
            fail("generator index " + std::to_string(idx) + " out of range 1.." + std::to_string(d_));
        }
        Expr r(d_);
        if (c == 'x') {
            r.kind = Expr::Kind::Algebra;
            r.m = MetabelianElement::generator(d_, idx - 1);
        } else {
            r.kind = Expr::Kind::Poly;
            r.p = c == 'u' ? uv::u(d_, idx - 1) : uv::v(d_, idx - 1);
        }
        return r;
    }

    std::string_view text_;
    std::size_t d_;
    std::size_t pos_ = 0;
};

inline std::string join_terms(const std::vector<std::pair<std::string, Rational>> &terms)
{
    if (terms.empty()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto &[body, c] : terms) {
        const Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            s += c.sign() < 0 ? "-" : "";
        } else {
            s += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        if (body.empty()) {
            s += mag.str();
        } else {
            if (mag != Rational(1)) {
                s += mag.str();
            }
            s += body;
        }
    }
    return s;
}

} // namespace detail

inline MetabelianElement parse_element(std::string_view text, std::size_t d)
{
    detail::ExprParser p(text, d);
    const auto e = p.parse();
    switch (e.kind) {
    case detail::Expr::Kind::Scalar:
        return MetabelianElement::one(d) * e.s;
    case detail::Expr::Kind::Algebra:
        return e.m;
    case detail::Expr::Kind::Poly:
        break;
    }
    throw ParseError("expected an element of F_d, got a U/V polynomial", 0);
}

inline PolyUV parse_polyuv(std::string_view text, std::size_t d)
{
    detail::ExprParser p(text, d);
    const auto e = p.parse();
    if (e.kind == detail::Expr::Kind::Algebra) {
        throw ParseError("expected a U/V polynomial, got an element of F_d", 0);
    }
    if (e.kind == detail::Expr::Kind::Scalar) {
        PolyUV r = uv::one(d);
        r *= e.s;
        return r;
    }
    return e.p;
}

// Canonical form: K[X_d] part in monomial order, then basis commutators x^a[x_i,x_j,...].
inline std::string to_string(const MetabelianElement &e)
{
    std::vector<std::pair<std::string, Rational>> terms;
    for (const auto &[a, c] : e.unit_part()) {
        terms.emplace_back(a.str('x'), c);
    }
    for (const auto &[k, c] : e.comm_part()) {
        terms.emplace_back(k.str(), c);
    }
    return detail::join_terms(terms);
}

// One expression per line; '#' starts a comment. A line may be prefixed by "name =".
struct ExpressionLine {
    std::string name;
    std::string text;
    std::size_t line = 0;
};

inline std::vector<ExpressionLine> read_expression_lines(std::istream &in, const std::string &default_prefix = "g")
{
    std::vector<ExpressionLine> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) {
                return std::string();
            }
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        ExpressionLine entry;
        entry.line = lineno;
        if (const auto eq = line.find('='); eq != std::string::npos) {
            entry.name = trim(line.substr(0, eq));
            entry.text = trim(line.substr(eq + 1));
            if (entry.name.empty()) {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": empty name before '='");
            }
        } else {
            entry.name = default_prefix + std::to_string(out.size() + 1);
            entry.text = line;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace metab

#endif

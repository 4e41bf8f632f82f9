#ifndef METAB_POLYNOMIAL_HPP
#define METAB_POLYNOMIAL_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <metab/monomial.hpp>
#include <metab/rational.hpp>

namespace metab
{

// Monomial u^a v^b of K[U_d, V_d].
struct UVMonomial {
    ExponentVector u;
    ExponentVector v;

    UVMonomial() = default;
    explicit UVMonomial(std::size_t d) : u(d), v(d) {}
    UVMonomial(ExponentVector uu, ExponentVector vv) : u(std::move(uu)), v(std::move(vv))
    {
        if (u.size() != v.size()) {
            throw std::invalid_argument("UVMonomial: rank mismatch");
        }
    }

    [[nodiscard]] std::size_t rank() const
    {
        return u.size();
    }
    [[nodiscard]] unsigned degree() const
    {
        return u.degree() + v.degree();
    }
    [[nodiscard]] UVMonomial resized(std::size_t d) const
    {
        return {u.resized(d), v.resized(d)};
    }

    friend bool operator==(const UVMonomial &, const UVMonomial &) = default;
    friend std::strong_ordering operator<=>(const UVMonomial &a, const UVMonomial &b)
    {
        if (auto c = a.degree() <=> b.degree(); c != 0) {
            return c;
        }
        if (auto c = a.u <=> b.u; c != 0) {
            return c;
        }
        return a.v <=> b.v;
    }

    [[nodiscard]] std::string str() const
    {
        return u.str('u') + v.str('v');
    }
};

inline ExponentVector monomial_product(const ExponentVector &a, const ExponentVector &b)
{
    return a + b;
}

inline UVMonomial monomial_product(const UVMonomial &a, const UVMonomial &b)
{
    return {a.u + b.u, a.v + b.v};
}

// Commutative polynomial with rational coefficients over a monomial type.
// No zero coefficients are stored.
template <class Mono>
class Polynomial
{
public:
    using monomial_type = Mono;
    using term_map = std::map<Mono, Rational>;

    Polynomial() = default;
    explicit Polynomial(const Mono &m, const Rational &c = 1)
    {
        add_term(m, c);
    }

    [[nodiscard]] const term_map &terms() const
    {
        return terms_;
    }
    [[nodiscard]] bool is_zero() const
    {
        return terms_.empty();
    }
    [[nodiscard]] std::size_t size() const
    {
        return terms_.size();
    }

    void add_term(const Mono &m, const Rational &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    [[nodiscard]] Rational coefficient(const Mono &m) const
    {
        const auto it = terms_.find(m);
        return it == terms_.end() ? Rational{} : it->second;
    }

    // Total degree if every term has the same degree.
    [[nodiscard]] std::optional<unsigned> homogeneous_degree() const
    {
        std::optional<unsigned> deg;
        for (const auto &[m, c] : terms_) {
            if (deg && *deg != m.degree()) {
                return std::nullopt;
            }
            deg = m.degree();
        }
        return deg;
    }

    Polynomial &operator+=(const Polynomial &o)
    {
        for (const auto &[m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }
    Polynomial &operator-=(const Polynomial &o)
    {
        for (const auto &[m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }
    Polynomial &operator*=(const Rational &s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial &b)
    {
        return a += b;
    }
    friend Polynomial operator-(Polynomial a, const Polynomial &b)
    {
        return a -= b;
    }
    friend Polynomial operator-(Polynomial a)
    {
        return a *= Rational(-1);
    }
    friend Polynomial operator*(Polynomial a, const Rational &s)
    {
        return a *= s;
    }
    friend Polynomial operator*(const Rational &s, Polynomial a)
    {
        return a *= s;
    }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        Polynomial r;
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                r.add_term(monomial_product(ma, mb), ca * cb);
            }
        }
        return r;
    }
    friend bool operator==(const Polynomial &, const Polynomial &) = default;

    [[nodiscard]] Polynomial pow(unsigned k) const
    {
        if (terms_.empty() && k > 0) {
            return {};
        }
        if (k == 0) {
            throw std::invalid_argument("Polynomial::pow: zero exponent needs a rank; multiply by one() instead");
        }
        Polynomial r = *this;
        for (unsigned i = 1; i < k; ++i) {
            r = r * *this;
        }
        return r;
    }

private:
    term_map terms_;
};

using PolyUV = Polynomial<UVMonomial>;
using PolyY = Polynomial<ExponentVector>;

namespace uv
{

inline PolyUV one(std::size_t d)
{
    return PolyUV(UVMonomial(d));
}
inline PolyUV u(std::size_t d, std::size_t i)
{
    return PolyUV(UVMonomial(ExponentVector::unit(d, i), ExponentVector(d)));
}
inline PolyUV v(std::size_t d, std::size_t i)
{
    return PolyUV(UVMonomial(ExponentVector(d), ExponentVector::unit(d, i)));
}

// Rank of the monomials, or nullopt for the zero polynomial.
inline std::optional<std::size_t> rank_of(const PolyUV &p)
{
    if (p.is_zero()) {
        return std::nullopt;
    }
    return p.terms().begin()->first.rank();
}

inline PolyUV resized(const PolyUV &p, std::size_t d)
{
    PolyUV r;
    for (const auto &[m, c] : p.terms()) {
        r.add_term(m.resized(d), c);
    }
    return r;
}

// Terms without V-variables (the K[U] part) and the rest (the K[U] (x) omega(K[V]) part).
inline std::pair<PolyUV, PolyUV> split_by_v(const PolyUV &p)
{
    std::pair<PolyUV, PolyUV> out;
    for (const auto &[m, c] : p.terms()) {
        (m.v.is_zero() ? out.first : out.second).add_term(m, c);
    }
    return out;
}

inline std::string to_string(const PolyUV &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto &[m, c] : p.terms()) {
        const std::string body = m.str();
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) {
                s += "-";
            }
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

} // namespace uv

} // namespace metab

#endif

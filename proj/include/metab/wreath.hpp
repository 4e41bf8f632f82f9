#ifndef METAB_WREATH_HPP
#define METAB_WREATH_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <metab/derivation.hpp>
#include <metab/metabelian.hpp>
#include <metab/polynomial.hpp>

namespace metab
{

// Element of W_d = K[Y_d] x| M_d with M_d = sum_i a_i K[U_d, V_d] and M_d M_d = 0.
// Coordinates use V_d (v_i = v'_i - u_i), so the bimodule action is
//   y_j a_i = a_i u_j,   a_i y_j = a_i v'_j = a_i (u_j + v_j).
class WreathElement
{
public:
    explicit WreathElement(std::size_t d) : d_(d), coords_(d) {}

    static WreathElement one(std::size_t d)
    {
        WreathElement w(d);
        w.y_.add_term(ExponentVector(d), 1);
        return w;
    }
    static WreathElement y(std::size_t d, std::size_t j)
    {
        WreathElement w(d);
        w.y_.add_term(ExponentVector::unit(d, j), 1);
        return w;
    }
    static WreathElement a(std::size_t d, std::size_t i)
    {
        WreathElement w(d);
        w.coords_.at(i) = uv::one(d);
        return w;
    }

    [[nodiscard]] std::size_t rank() const
    {
        return d_;
    }
    [[nodiscard]] const PolyY &y_part() const
    {
        return y_;
    }
    [[nodiscard]] PolyY &y_part()
    {
        return y_;
    }
    [[nodiscard]] const std::vector<PolyUV> &coords() const
    {
        return coords_;
    }
    [[nodiscard]] PolyUV &coord(std::size_t i)
    {
        return coords_.at(i);
    }
    [[nodiscard]] bool is_zero() const
    {
        if (!y_.is_zero()) {
            return false;
        }
        for (const auto &c : coords_) {
            if (!c.is_zero()) {
                return false;
            }
        }
        return true;
    }

    WreathElement &operator+=(const WreathElement &o)
    {
        check(o);
        y_ += o.y_;
        for (std::size_t i = 0; i < d_; ++i) {
            coords_[i] += o.coords_[i];
        }
        return *this;
    }
    WreathElement &operator-=(const WreathElement &o)
    {
        check(o);
        y_ -= o.y_;
        for (std::size_t i = 0; i < d_; ++i) {
            coords_[i] -= o.coords_[i];
        }
        return *this;
    }
    WreathElement &operator*=(const Rational &s)
    {
        y_ *= s;
        for (auto &c : coords_) {
            c *= s;
        }
        return *this;
    }
    friend WreathElement operator+(WreathElement a, const WreathElement &b)
    {
        return a += b;
    }
    friend WreathElement operator-(WreathElement a, const WreathElement &b)
    {
        return a -= b;
    }
    friend bool operator==(const WreathElement &, const WreathElement &) = default;

    // (p, m)(p', m') = (p p', m <| p' + p |> m')
    friend WreathElement operator*(const WreathElement &l, const WreathElement &r)
    {
        l.check(r);
        const std::size_t d = l.d_;
        WreathElement out(d);
        out.y_ = l.y_ * r.y_;
        const PolyUV right_action = y_to_uv(r.y_, true);
        const PolyUV left_action = y_to_uv(l.y_, false);
        for (std::size_t i = 0; i < d; ++i) {
            out.coords_[i] = l.coords_[i] * right_action + left_action * r.coords_[i];
        }
        return out;
    }

    // Module action of K[U_d, V_d] on the coordinates.
    [[nodiscard]] WreathElement times(const PolyUV &m) const
    {
        WreathElement out(d_);
        for (std::size_t i = 0; i < d_; ++i) {
            out.coords_[i] = coords_[i] * m;
        }
        return out;
    }

    // "a" coordinate key for rank checks and linear algebra: (i, monomial).
    [[nodiscard]] std::map<std::pair<std::size_t, UVMonomial>, Rational> coordinate_map() const
    {
        std::map<std::pair<std::size_t, UVMonomial>, Rational> out;
        for (std::size_t i = 0; i < d_; ++i) {
            for (const auto &[m, c] : coords_[i].terms()) {
                out.emplace(std::make_pair(i, m), c);
            }
        }
        return out;
    }

private:
    void check(const WreathElement &o) const
    {
        if (o.d_ != d_) {
            throw std::invalid_argument("wreath: rank mismatch");
        }
    }

    // p(Y) acting on coordinates: y_j -> u_j from the left, y_j -> u_j + v_j from the right.
    static PolyUV y_to_uv(const PolyY &p, bool from_right)
    {
        PolyUV out;
        for (const auto &[e, c] : p.terms()) {
            const std::size_t d = e.size();
            if (!from_right) {
                out.add_term(UVMonomial(e, ExponentVector(d)), c);
                continue;
            }
            for (const auto &[mu, nu, bc] : detail::expand_u_plus_v(e)) {
                out.add_term(UVMonomial(mu, nu), c * Rational(bc));
            }
        }
        return out;
    }

    std::size_t d_;
    PolyY y_;
    std::vector<PolyUV> coords_;
};

// delta on W_d: by the matrix on Y_d and on the a_i, and by the same matrix on U_d, V_d
// inside coordinates.
inline WreathElement derive(const Derivation &delta, const WreathElement &w)
{
    delta.check_rank(w.rank());
    const std::size_t d = w.rank();
    WreathElement out(d);
    out.y_part() = delta.apply(w.y_part());
    for (std::size_t j = 0; j < d; ++j) {
        const auto &cj = w.coords()[j];
        if (cj.is_zero()) {
            continue;
        }
        // delta(a_j c_j) = delta(a_j) c_j + a_j delta(c_j)
        for (const auto &[i, alpha] : delta.image(j)) {
            out.coord(i) += cj * alpha;
        }
        out.coord(j) += delta.apply(cj);
    }
    return out;
}

// The embedding x_j -> y_j + a_j. Ordered monomials are multiplied out in W_d; a commutator
// basis element x^p [x_i, x_j, tail] goes to (a_i v_j - a_j v_i) u^p v^tail.
inline WreathElement embed(const MetabelianElement &e)
{
    const std::size_t d = e.rank();
    WreathElement out(d);
    for (const auto &[a, c] : e.unit_part()) {
        WreathElement prod = WreathElement::one(d);
        for (auto j : a.letters()) {
            prod = prod * (WreathElement::y(d, j) + WreathElement::a(d, j));
        }
        prod *= c;
        out += prod;
    }
    for (const auto &[k, c] : e.comm_part()) {
        const UVMonomial base(k.prefix, k.tail);
        auto with_v = [&](std::size_t idx) {
            UVMonomial m = base;
            m.v.increment(idx);
            return PolyUV(m, c);
        };
        out.coord(k.hi) += with_v(k.lo);
        out.coord(k.lo) -= with_v(k.hi);
    }
    return out;
}

// pi: K[U_{d-1}] (x) omega(K[V_{d-1}]) -> F_d',
//   pi(u^a v_{j_1} ... v_{j_n}) = sum_k [x_d, x_{j_k}] v_{j_1} ... ^ ... v_{j_n} u^a,
// pi(pure U-monomial) = 0. Only defined for derivations with delta(x_d) = 0 on a 1x1 cell.
inline MetabelianElement pi(const PolyUV &p, const Derivation &delta)
{
    const std::size_t d = delta.rank();
    if (!delta.has_trailing_fixed_generator()) {
        throw std::invalid_argument("pi: the derivation must fix x_d on a 1x1 Jordan cell");
    }
    MetabelianElement out(d);
    const std::size_t last = d - 1;
    for (const auto &[m0, c] : p.terms()) {
        UVMonomial m = m0;
        if (m.rank() == d) {
            if (m.u[last] != 0 || m.v[last] != 0) {
                throw std::invalid_argument("pi: argument must not involve u_d or v_d");
            }
        } else if (m.rank() + 1 == d) {
            m = m.resized(d);
        } else {
            throw std::invalid_argument("pi: rank mismatch");
        }
        for (std::size_t j = 0; j < last; ++j) {
            if (m.v[j] == 0) {
                continue;
            }
            ExponentVector rest = m.v;
            rest.decrement(j);
            out.add_raw_commutator(last, j, m.u, rest, c * Rational(static_cast<long>(m.v[j])));
        }
    }
    return out;
}

} // namespace metab

#endif

#ifndef METAB_METABELIAN_HPP
#define METAB_METABELIAN_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include <metab/derivation.hpp>
#include <metab/monomial.hpp>
#include <metab/polynomial.hpp>
#include <metab/rational.hpp>

namespace metab
{

// Basis element x^prefix [x_hi, x_lo, x_{t_1}, ..., x_{t_k}] of the commutator ideal F_d',
// with hi > lo <= t_1 <= ... <= t_k. The sorted tail is stored as an exponent vector.
// Equivalently it is [x_hi, x_lo] * u^prefix v^tail under the K[U_d, V_d]-action.
struct CommutatorKey {
    ExponentVector prefix;
    std::size_t hi = 1;
    std::size_t lo = 0;
    ExponentVector tail;

    [[nodiscard]] std::size_t rank() const
    {
        return prefix.size();
    }
    [[nodiscard]] unsigned degree() const
    {
        return prefix.degree() + 2 + tail.degree();
    }
    [[nodiscard]] bool is_canonical() const
    {
        return hi > lo && hi < rank() && tail.size() == rank() && tail.min_index() >= lo;
    }

    friend bool operator==(const CommutatorKey &, const CommutatorKey &) = default;
    friend std::strong_ordering operator<=>(const CommutatorKey &a, const CommutatorKey &b)
    {
        if (auto c = a.degree() <=> b.degree(); c != 0) {
            return c;
        }
        if (auto c = a.prefix <=> b.prefix; c != 0) {
            return c;
        }
        if (auto c = std::tie(a.hi, a.lo) <=> std::tie(b.hi, b.lo); c != 0) {
            return c;
        }
        return a.tail <=> b.tail;
    }

    // "x1^2[x3,x2,x2]"
    [[nodiscard]] std::string str() const
    {
        std::string s = prefix.str('x');
        s += "[x" + std::to_string(hi + 1) + ",x" + std::to_string(lo + 1);
        for (auto t : tail.letters()) {
            s += ",x" + std::to_string(t + 1);
        }
        s += "]";
        return s;
    }
};

// Basis keys of F_d: ordered monomials of K[X_d] first, then commutator keys.
using BasisKey = std::variant<ExponentVector, CommutatorKey>;

inline unsigned key_degree(const BasisKey &k)
{
    return std::visit([](const auto &x) { return x.degree(); }, k);
}

namespace detail
{

// Expansion of prod_i (u_i + v_i)^{b_i} into (u-exponents, v-exponents, coefficient).
inline std::vector<std::tuple<ExponentVector, ExponentVector, long>> expand_u_plus_v(const ExponentVector &b)
{
    const std::size_t d = b.size();
    std::vector<std::tuple<ExponentVector, ExponentVector, long>> out;
    out.emplace_back(ExponentVector(d), ExponentVector(d), 1L);
    for (std::size_t i = 0; i < d; ++i) {
        if (b[i] == 0) {
            continue;
        }
        std::vector<std::tuple<ExponentVector, ExponentVector, long>> next;
        for (const auto &[u, v, c] : out) {
            for (unsigned k = 0; k <= b[i]; ++k) {
                auto uu = u;
                auto vv = v;
                uu.increment(i, b[i] - k);
                vv.increment(i, k);
                next.emplace_back(std::move(uu), std::move(vv), c * static_cast<long>(binomial(b[i], k)));
            }
        }
        out = std::move(next);
    }
    return out;
}

} // namespace detail

// Element of the free metabelian associative algebra F_d = K[X_d] (+) F_d', stored in
// normal form: coefficient maps over ordered monomials and canonical commutator keys.
class MetabelianElement
{
public:
    using unit_map = std::map<ExponentVector, Rational>;
    using comm_map = std::map<CommutatorKey, Rational>;

    explicit MetabelianElement(std::size_t d) : d_(d)
    {
        if (d < 2) {
            throw std::invalid_argument("rank must be at least 2");
        }
    }

    static MetabelianElement one(std::size_t d)
    {
        MetabelianElement e(d);
        e.add_unit(ExponentVector(d), 1);
        return e;
    }
    static MetabelianElement generator(std::size_t d, std::size_t i)
    {
        if (i >= d) {
            throw std::out_of_range("generator index out of range");
        }
        MetabelianElement e(d);
        e.add_unit(ExponentVector::unit(d, i), 1);
        return e;
    }
    // x_1^{a_1} ... x_d^{a_d}
    static MetabelianElement monomial(const ExponentVector &a, const Rational &c = 1)
    {
        MetabelianElement e(a.size());
        e.add_unit(a, c);
        return e;
    }
    // [x_i, x_j] * u^a v^b, brought into normal form.
    static MetabelianElement commutator(std::size_t d, std::size_t i, std::size_t j)
    {
        MetabelianElement e(d);
        e.add_raw_commutator(i, j, ExponentVector(d), ExponentVector(d), 1);
        return e;
    }
    static MetabelianElement from_key(const BasisKey &k, const Rational &c = 1)
    {
        const std::size_t d = std::holds_alternative<ExponentVector>(k) ? std::get<ExponentVector>(k).size()
                                                                         : std::get<CommutatorKey>(k).rank();
        MetabelianElement e(d);
        e.add_key(k, c);
        return e;
    }

    [[nodiscard]] std::size_t rank() const
    {
        return d_;
    }
    [[nodiscard]] const unit_map &unit_part() const
    {
        return unit_;
    }
    [[nodiscard]] const comm_map &comm_part() const
    {
        return comm_;
    }
    [[nodiscard]] bool is_zero() const
    {
        return unit_.empty() && comm_.empty();
    }
    [[nodiscard]] bool in_commutator_ideal() const
    {
        return unit_.empty();
    }
    [[nodiscard]] std::size_t term_count() const
    {
        return unit_.size() + comm_.size();
    }

    // Total degree if homogeneous; nullopt for zero or mixed degrees.
    [[nodiscard]] std::optional<unsigned> homogeneous_degree() const
    {
        std::optional<unsigned> deg;
        auto check = [&](unsigned n) {
            if (deg && *deg != n) {
                return false;
            }
            deg = n;
            return true;
        };
        for (const auto &[k, c] : unit_) {
            if (!check(k.degree())) {
                return std::nullopt;
            }
        }
        for (const auto &[k, c] : comm_) {
            if (!check(k.degree())) {
                return std::nullopt;
            }
        }
        return deg;
    }

    void add_unit(const ExponentVector &a, const Rational &c)
    {
        if (a.size() != d_) {
            throw std::invalid_argument("rank mismatch");
        }
        accumulate(unit_, a, c);
    }

    void add_comm(const CommutatorKey &k, const Rational &c)
    {
        if (k.rank() != d_ || !k.is_canonical()) {
            throw std::invalid_argument("commutator key is not canonical for this rank");
        }
        accumulate(comm_, k, c);
    }

    void add_key(const BasisKey &k, const Rational &c)
    {
        std::visit(
            [&](const auto &key) {
                if constexpr (std::is_same_v<std::decay_t<decltype(key)>, ExponentVector>) {
                    add_unit(key, c);
                } else {
                    add_comm(key, c);
                }
            },
            k);
    }

    // Adds c * [x_a, x_b] u^pre v^tail in normal form: antisymmetry of the head, and the
    // Jacobi rewrite [x_a,x_b] v_c = [x_a,x_c] v_b - [x_b,x_c] v_a when the tail holds
    // an index c below the lower head index.
    void add_raw_commutator(std::size_t a, std::size_t b, const ExponentVector &pre, const ExponentVector &tail,
                            Rational c)
    {
        if (a >= d_ || b >= d_ || pre.size() != d_ || tail.size() != d_) {
            throw std::invalid_argument("rank mismatch");
        }
        if (a == b || c.is_zero()) {
            return;
        }
        if (a < b) {
            std::swap(a, b);
            c = -c;
        }
        const std::size_t m = tail.min_index();
        if (m >= b) {
            accumulate(comm_, CommutatorKey{pre, a, b, tail}, c);
            return;
        }
        ExponentVector rest = tail;
        rest.decrement(m);
        ExponentVector t1 = rest;
        t1.increment(b);
        ExponentVector t2 = rest;
        t2.increment(a);
        accumulate(comm_, CommutatorKey{pre, a, m, t1}, c);
        accumulate(comm_, CommutatorKey{pre, b, m, t2}, -c);
    }

    // Re-read in a larger rank d' >= d (new generators unused).
    [[nodiscard]] MetabelianElement resized(std::size_t d) const
    {
        MetabelianElement r(d);
        for (const auto &[k, c] : unit_) {
            r.add_unit(k.resized(d), c);
        }
        for (const auto &[k, c] : comm_) {
            r.add_comm(CommutatorKey{k.prefix.resized(d), k.hi, k.lo, k.tail.resized(d)}, c);
        }
        return r;
    }

    // Coefficient vector indexed by basis keys.
    [[nodiscard]] std::map<BasisKey, Rational> as_key_map() const
    {
        std::map<BasisKey, Rational> out;
        for (const auto &[k, c] : unit_) {
            out.emplace(k, c);
        }
        for (const auto &[k, c] : comm_) {
            out.emplace(k, c);
        }
        return out;
    }

    MetabelianElement &operator+=(const MetabelianElement &o)
    {
        check_same_rank(o);
        for (const auto &[k, c] : o.unit_) {
            accumulate(unit_, k, c);
        }
        for (const auto &[k, c] : o.comm_) {
            accumulate(comm_, k, c);
        }
        return *this;
    }
    MetabelianElement &operator-=(const MetabelianElement &o)
    {
        check_same_rank(o);
        for (const auto &[k, c] : o.unit_) {
            accumulate(unit_, k, -c);
        }
        for (const auto &[k, c] : o.comm_) {
            accumulate(comm_, k, -c);
        }
        return *this;
    }
    MetabelianElement &operator*=(const Rational &s)
    {
        if (s.is_zero()) {
            unit_.clear();
            comm_.clear();
            return *this;
        }
        for (auto &[k, c] : unit_) {
            c *= s;
        }
        for (auto &[k, c] : comm_) {
            c *= s;
        }
        return *this;
    }

    friend MetabelianElement operator+(MetabelianElement a, const MetabelianElement &b)
    {
        return a += b;
    }
    friend MetabelianElement operator-(MetabelianElement a, const MetabelianElement &b)
    {
        return a -= b;
    }
    friend MetabelianElement operator-(MetabelianElement a)
    {
        return a *= Rational(-1);
    }
    friend MetabelianElement operator*(MetabelianElement a, const Rational &s)
    {
        return a *= s;
    }
    friend MetabelianElement operator*(const Rational &s, MetabelianElement a)
    {
        return a *= s;
    }
    friend bool operator==(const MetabelianElement &, const MetabelianElement &) = default;

    void check_same_rank(const MetabelianElement &o) const
    {
        if (o.d_ != d_) {
            throw std::invalid_argument("rank mismatch: " + std::to_string(d_) + " vs " + std::to_string(o.d_));
        }
    }

private:
    template <class Map, class Key>
    static void accumulate(Map &m, const Key &k, const Rational &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = m.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                m.erase(it);
            }
        }
    }

    std::size_t d_;
    unit_map unit_;
    comm_map comm_;
};

// e * m for e in F_d' and m in K[U_d, V_d]: u_i multiplies from the left by x_i,
// v_i applies ad x_i.
inline MetabelianElement act_uv(const MetabelianElement &e, const PolyUV &m)
{
    if (!e.in_commutator_ideal()) {
        throw std::invalid_argument("act_uv: element has a nonzero K[X_d] part");
    }
    MetabelianElement out(e.rank());
    for (const auto &[mono, mc] : m.terms()) {
        if (mono.rank() != e.rank()) {
            throw std::invalid_argument("act_uv: rank mismatch");
        }
        for (const auto &[k, c] : e.comm_part()) {
            out.add_raw_commutator(k.hi, k.lo, k.prefix + mono.u, k.tail + mono.v, c * mc);
        }
    }
    return out;
}

namespace detail
{

// Adds c * x^a * x_i in normal form. Writing x^a = L R with L on indices <= i and
// R = x_{k_1} ... x_{k_m} on indices > i:
//   x^a x_i = x^{a + e_i} + sum_t [x_{k_t}, x_i] u^L u_{k_1} ... u_{k_{t-1}} (u+v)_{k_{t+1}} ... (u+v)_{k_m}.
inline void add_monomial_times_generator(MetabelianElement &out, const ExponentVector &a, std::size_t i,
                                         const Rational &c)
{
    const std::size_t d = a.size();
    ExponentVector moved = a;
    moved.increment(i);
    out.add_unit(moved, c);

    ExponentVector left(d);
    std::vector<std::size_t> right;
    for (std::size_t k = 0; k < d; ++k) {
        if (k <= i) {
            left.increment(k, a[k]);
        } else {
            for (unsigned r = 0; r < a[k]; ++r) {
                right.push_back(k);
            }
        }
    }
    ExponentVector before = left;
    for (std::size_t t = 0; t < right.size(); ++t) {
        ExponentVector after(d);
        for (std::size_t s = t + 1; s < right.size(); ++s) {
            after.increment(right[s]);
        }
        for (const auto &[mu, nu, bc] : expand_u_plus_v(after)) {
            out.add_raw_commutator(right[t], i, before + mu, nu, c * Rational(bc));
        }
        before.increment(right[t]);
    }
}

// e * x_i.
inline MetabelianElement times_generator(const MetabelianElement &e, std::size_t i)
{
    const std::size_t d = e.rank();
    MetabelianElement out(d);
    for (const auto &[a, c] : e.unit_part()) {
        add_monomial_times_generator(out, a, i, c);
    }
    const auto ui = ExponentVector::unit(d, i);
    const ExponentVector zero(d);
    for (const auto &[k, c] : e.comm_part()) {
        // w x_i = w (u_i + v_i)
        out.add_raw_commutator(k.hi, k.lo, k.prefix + ui, k.tail, c);
        out.add_raw_commutator(k.hi, k.lo, k.prefix, k.tail + ui, c);
    }
    return out;
}

// e * x^b with x^b = x_1^{b_1} ... x_d^{b_d}.
inline MetabelianElement times_monomial(MetabelianElement e, const ExponentVector &b)
{
    for (auto i : b.letters()) {
        e = times_generator(e, i);
    }
    return e;
}

} // namespace detail

inline MetabelianElement multiply(const MetabelianElement &a, const MetabelianElement &b)
{
    a.check_same_rank(b);
    const std::size_t d = a.rank();
    MetabelianElement out(d);
    for (const auto &[mb, cb] : b.unit_part()) {
        // (unit part of a) * x^mb
        MetabelianElement au(d);
        for (const auto &[ma, ca] : a.unit_part()) {
            au.add_unit(ma, ca);
        }
        out += detail::times_monomial(std::move(au), mb) * cb;
        // (comm part of a) * x^mb = w (u+v)^mb
        for (const auto &[k, ca] : a.comm_part()) {
            for (const auto &[mu, nu, bc] : detail::expand_u_plus_v(mb)) {
                out.add_raw_commutator(k.hi, k.lo, k.prefix + mu, k.tail + nu, ca * cb * Rational(bc));
            }
        }
    }
    // x^ma * w = w u^ma; commutator times commutator vanishes.
    for (const auto &[ma, ca] : a.unit_part()) {
        for (const auto &[k, cb] : b.comm_part()) {
            out.add_comm(CommutatorKey{k.prefix + ma, k.hi, k.lo, k.tail}, ca * cb);
        }
    }
    return out;
}

inline MetabelianElement operator*(const MetabelianElement &a, const MetabelianElement &b)
{
    return multiply(a, b);
}

// [a, b] = ab - ba
inline MetabelianElement commutator(const MetabelianElement &a, const MetabelianElement &b)
{
    return multiply(a, b) - multiply(b, a);
}

// Leibniz extension of delta.
inline MetabelianElement derive(const Derivation &delta, const MetabelianElement &e)
{
    delta.check_rank(e.rank());
    const std::size_t d = e.rank();
    MetabelianElement out(d);
    for (const auto &[a, c] : e.unit_part()) {
        const auto word = a.letters();
        ExponentVector left(d);
        for (std::size_t p = 0; p < word.size(); ++p) {
            ExponentVector right(d);
            for (std::size_t q = p + 1; q < word.size(); ++q) {
                right.increment(word[q]);
            }
            for (const auto &[i, alpha] : delta.image(word[p])) {
                MetabelianElement piece(d);
                detail::add_monomial_times_generator(piece, left, i, c * alpha);
                out += detail::times_monomial(std::move(piece), right);
            }
            left.increment(word[p]);
        }
    }
    // delta([x_a, x_b] g) = [delta x_a, x_b] g + [x_a, delta x_b] g + [x_a, x_b] delta(g)
    for (const auto &[k, c] : e.comm_part()) {
        for (const auto &[i, alpha] : delta.image(k.hi)) {
            out.add_raw_commutator(i, k.lo, k.prefix, k.tail, c * alpha);
        }
        for (const auto &[i, alpha] : delta.image(k.lo)) {
            out.add_raw_commutator(k.hi, i, k.prefix, k.tail, c * alpha);
        }
        const PolyY dp = delta.apply(k.prefix);
        for (const auto &[m, mc] : dp.terms()) {
            out.add_raw_commutator(k.hi, k.lo, m, k.tail, c * mc);
        }
        const PolyY dt = delta.apply(k.tail);
        for (const auto &[m, mc] : dt.terms()) {
            out.add_raw_commutator(k.hi, k.lo, k.prefix, m, c * mc);
        }
    }
    return out;
}

// Commutator keys of total degree n, canonical order.
inline std::vector<CommutatorKey> commutator_keys(std::size_t d, unsigned n)
{
    std::vector<CommutatorKey> out;
    if (n < 2) {
        return out;
    }
    for (unsigned tail_deg = 0; tail_deg + 2 <= n; ++tail_deg) {
        const auto prefixes = monomials_of_degree(d, n - 2 - tail_deg);
        for (std::size_t lo = 0; lo < d; ++lo) {
            // tails on indices lo..d-1
            const auto tails = monomials_of_degree(d - lo, tail_deg);
            for (std::size_t hi = lo + 1; hi < d; ++hi) {
                for (const auto &t : tails) {
                    ExponentVector tail(d);
                    for (std::size_t j = 0; j < t.size(); ++j) {
                        tail.set(lo + j, t[j]);
                    }
                    for (const auto &p : prefixes) {
                        out.push_back(CommutatorKey{p, hi, lo, tail});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Basis of the degree-n component of F_d (or of F_d' when commutator_only is set).
inline std::vector<BasisKey> graded_basis(std::size_t d, unsigned n, bool commutator_only = false)
{
    if (d < 2) {
        throw std::invalid_argument("rank must be at least 2");
    }
    std::vector<BasisKey> out;
    if (!commutator_only) {
        for (auto &m : monomials_of_degree(d, n)) {
            out.emplace_back(std::move(m));
        }
    }
    for (auto &k : commutator_keys(d, n)) {
        out.emplace_back(std::move(k));
    }
    return out;
}

} // namespace metab

#endif

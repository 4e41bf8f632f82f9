#ifndef METAB_SERIES_HPP
#define METAB_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <metab/rational.hpp>

namespace metab
{

using Exponents = std::vector<int>;

// Polynomial with integer coefficients in a fixed number of variables.
class IntPoly
{
public:
    using term_map = std::map<Exponents, BigInt>;

    IntPoly() = default;
    explicit IntPoly(std::size_t nvars) : nvars_(nvars) {}

    static IntPoly constant(std::size_t nvars, const BigInt &c)
    {
        IntPoly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }
    static IntPoly monomial(const Exponents &e, const BigInt &c = 1)
    {
        IntPoly p(e.size());
        p.add_term(e, c);
        return p;
    }

    [[nodiscard]] std::size_t nvars() const
    {
        return nvars_;
    }
    [[nodiscard]] const term_map &terms() const
    {
        return terms_;
    }
    [[nodiscard]] bool is_zero() const
    {
        return terms_.empty();
    }

    void add_term(const Exponents &e, const BigInt &c)
    {
        if (e.size() != nvars_) {
            throw std::invalid_argument("IntPoly: exponent length mismatch");
        }
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    [[nodiscard]] BigInt coefficient(const Exponents &e) const
    {
        const auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    // Sum of all coefficients (every variable set to 1).
    [[nodiscard]] BigInt at_ones() const
    {
        BigInt s = 0;
        for (const auto &[e, c] : terms_) {
            s += c;
        }
        return s;
    }

    IntPoly &operator+=(const IntPoly &o)
    {
        check(o);
        for (const auto &[e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }
    IntPoly &operator-=(const IntPoly &o)
    {
        check(o);
        for (const auto &[e, c] : o.terms_) {
            add_term(e, -c);
        }
        return *this;
    }
    friend IntPoly operator+(IntPoly a, const IntPoly &b)
    {
        return a += b;
    }
    friend IntPoly operator-(IntPoly a, const IntPoly &b)
    {
        return a -= b;
    }
    friend IntPoly operator*(const IntPoly &a, const IntPoly &b)
    {
        a.check(b);
        IntPoly r(a.nvars_);
        for (const auto &[ea, ca] : a.terms_) {
            for (const auto &[eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend IntPoly operator*(IntPoly a, const BigInt &s)
    {
        if (s == 0) {
            a.terms_.clear();
            return a;
        }
        for (auto &[e, c] : a.terms_) {
            c *= s;
        }
        return a;
    }
    friend bool operator==(const IntPoly &, const IntPoly &) = default;

    // Keeps the terms whose degree under `weight` is at most `bound`.
    [[nodiscard]] IntPoly truncated(const Exponents &weight, int bound) const
    {
        IntPoly r(nvars_);
        for (const auto &[e, c] : terms_) {
            if (weighted_degree(e, weight) <= bound) {
                r.terms_.emplace(e, c);
            }
        }
        return r;
    }

    static int weighted_degree(const Exponents &e, const Exponents &weight)
    {
        int s = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            s += e[i] * weight[i];
        }
        return s;
    }

private:
    void check(const IntPoly &o) const
    {
        if (o.nvars_ != nvars_) {
            throw std::invalid_argument("IntPoly: variable count mismatch");
        }
    }

    std::size_t nvars_ = 0;
    term_map terms_;
};

inline std::string monomial_string(const Exponents &e, const std::vector<std::string> &vars)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) {
            continue;
        }
        s += vars[i];
        if (e[i] != 1) {
            s += "^" + std::to_string(e[i]);
        }
    }
    return s;
}

inline std::string to_string(const IntPoly &p, const std::vector<std::string> &vars)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string s;
    bool first = true;
    // highest total degree last reads like the paper: 1 + z^2 - ...
    for (const auto &[e, c] : p.terms()) {
        const std::string body = monomial_string(e, vars);
        const BigInt mag = abs(c);
        if (first) {
            s += c < 0 ? "-" : "";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        first = false;
        if (body.empty() || mag != 1) {
            s += mag.get_str();
        }
        s += body;
    }
    return s;
}

// Rational function num / prod (1 - m)^k with every m a nonconstant monomial.
class NiceRational
{
public:
    using denominator_map = std::map<Exponents, unsigned>;

    NiceRational() = default;
    explicit NiceRational(std::vector<std::string> vars) : vars_(std::move(vars)), num_(vars_.size()) {}
    NiceRational(std::vector<std::string> vars, IntPoly num, denominator_map den = {})
        : vars_(std::move(vars)), num_(std::move(num)), den_(std::move(den))
    {
        if (num_.nvars() != vars_.size()) {
            throw std::invalid_argument("NiceRational: numerator variable count mismatch");
        }
        for (const auto &[m, k] : den_) {
            check_factor(m);
        }
        std::erase_if(den_, [](const auto &kv) { return kv.second == 0; });
        normalize_zero();
    }

    static NiceRational constant(std::vector<std::string> vars, const BigInt &c)
    {
        const std::size_t n = vars.size();
        return {std::move(vars), IntPoly::constant(n, c)};
    }

    [[nodiscard]] const std::vector<std::string> &vars() const
    {
        return vars_;
    }
    [[nodiscard]] const IntPoly &numerator() const
    {
        return num_;
    }
    [[nodiscard]] const denominator_map &denominator() const
    {
        return den_;
    }
    [[nodiscard]] bool is_zero() const
    {
        return num_.is_zero();
    }
    [[nodiscard]] std::optional<std::size_t> var_index(const std::string &name) const
    {
        const auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - vars_.begin());
    }

    // Multiplies by (1 - m)^k.
    NiceRational &divide_by_factor(const Exponents &m, unsigned k = 1)
    {
        check_factor(m);
        if (k > 0 && !num_.is_zero()) {
            den_[m] += k;
        }
        return *this;
    }

    NiceRational &operator*=(const IntPoly &p)
    {
        num_ = num_ * p;
        normalize_zero();
        return *this;
    }

    friend NiceRational operator*(const NiceRational &a, const NiceRational &b)
    {
        a.check_vars(b);
        NiceRational r(a.vars_, a.num_ * b.num_, a.den_);
        for (const auto &[m, k] : b.den_) {
            r.divide_by_factor(m, k);
        }
        return r;
    }

    // Sum over the factorwise maximum of the two denominators.
    friend NiceRational operator+(const NiceRational &a, const NiceRational &b)
    {
        a.check_vars(b);
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        denominator_map common = a.den_;
        for (const auto &[m, k] : b.den_) {
            common[m] = std::max(common[m], k);
        }
        IntPoly num = a.num_ * a.cofactor(common) + b.num_ * b.cofactor(common);
        return {a.vars_, std::move(num), std::move(common)};
    }
    friend NiceRational operator-(const NiceRational &a)
    {
        NiceRational r = a;
        r.num_ = r.num_ * BigInt(-1);
        return r;
    }
    friend NiceRational operator-(const NiceRational &a, const NiceRational &b)
    {
        return a + (-b);
    }

    // Same variables, numerator and denominator multiset.
    friend bool operator==(const NiceRational &, const NiceRational &) = default;

    // Equality as rational functions: cross-multiplied numerators agree.
    [[nodiscard]] bool equivalent(const NiceRational &o) const
    {
        check_vars(o);
        denominator_map common = den_;
        for (const auto &[m, k] : o.den_) {
            common[m] = std::max(common[m], k);
        }
        return num_ * cofactor(common) == o.num_ * o.cofactor(common);
    }

    // Replaces variable i by the monomial images[i] in a new variable set.
    [[nodiscard]] NiceRational substitute(const std::vector<std::string> &new_vars,
                                          const std::vector<Exponents> &images) const
    {
        if (images.size() != vars_.size()) {
            throw std::invalid_argument("substitute: one image per variable is required");
        }
        auto map_mono = [&](const Exponents &e) {
            Exponents out(new_vars.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (images[i].size() != new_vars.size()) {
                    throw std::invalid_argument("substitute: image length mismatch");
                }
                for (std::size_t j = 0; j < new_vars.size(); ++j) {
                    out[j] += e[i] * images[i][j];
                }
            }
            return out;
        };
        IntPoly num(new_vars.size());
        for (const auto &[e, c] : num_.terms()) {
            num.add_term(map_mono(e), c);
        }
        denominator_map den;
        for (const auto &[m, k] : den_) {
            const auto mm = map_mono(m);
            if (std::all_of(mm.begin(), mm.end(), [](int x) { return x == 0; })) {
                throw std::invalid_argument("substitute: a denominator factor becomes constant");
            }
            den[mm] += k;
        }
        return {new_vars, std::move(num), std::move(den)};
    }

    // Exchanges two variables.
    [[nodiscard]] NiceRational swapped(std::size_t i, std::size_t j) const
    {
        std::vector<Exponents> images(vars_.size(), Exponents(vars_.size(), 0));
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            images[k][k == i ? j : (k == j ? i : k)] = 1;
        }
        return substitute(vars_, images);
    }

    [[nodiscard]] std::string str() const
    {
        std::string s = "(" + to_string(num_, vars_) + ")";
        if (den_.empty()) {
            return s;
        }
        s += "/(";
        for (const auto &[m, k] : den_) {
            s += "(1 - " + monomial_string(m, vars_) + ")";
            if (k > 1) {
                s += "^" + std::to_string(k);
            }
        }
        return s + ")";
    }

private:
    void check_factor(const Exponents &m) const
    {
        if (m.size() != vars_.size()) {
            throw std::invalid_argument("NiceRational: factor length mismatch");
        }
        bool any = false;
        for (int x : m) {
            if (x < 0) {
                throw std::invalid_argument("NiceRational: negative exponent in a factor");
            }
            any = any || x > 0;
        }
        if (!any) {
            throw std::invalid_argument("NiceRational: denominator factor must be nonconstant");
        }
    }
    void check_vars(const NiceRational &o) const
    {
        if (o.vars_ != vars_) {
            throw std::invalid_argument("NiceRational: variable sets differ");
        }
    }
    void normalize_zero()
    {
        if (num_.is_zero()) {
            den_.clear();
        }
    }

    // prod (1 - m)^(common[m] - den[m])
    [[nodiscard]] IntPoly cofactor(const denominator_map &common) const
    {
        IntPoly r = IntPoly::constant(vars_.size(), 1);
        for (const auto &[m, k] : common) {
            const auto it = den_.find(m);
            const unsigned have = it == den_.end() ? 0 : it->second;
            IntPoly f = IntPoly::constant(vars_.size(), 1);
            f.add_term(m, -1);
            for (unsigned i = have; i < k; ++i) {
                r = r * f;
            }
        }
        return r;
    }

    std::vector<std::string> vars_;
    IntPoly num_;
    denominator_map den_;
};

// Coefficients by degree up to a bound; each slice is a polynomial in the remaining variables.
struct TruncatedSeries {
    std::vector<std::string> slice_vars;
    unsigned bound = 0;
    std::vector<IntPoly> slices;

    // Degree-wise coefficient sums (all slice variables set to 1).
    [[nodiscard]] std::vector<BigInt> at_ones() const
    {
        std::vector<BigInt> out;
        out.reserve(slices.size());
        for (const auto &s : slices) {
            out.push_back(s.at_ones());
        }
        return out;
    }

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;
};

// Expands f up to degree N. The grading is the exponent of "z" when f has that variable,
// otherwise total degree; in the first case slices are polynomials in the other variables.
inline TruncatedSeries expand(const NiceRational &f, unsigned bound)
{
    const auto &vars = f.vars();
    const auto zi = f.var_index("z");
    Exponents weight(vars.size(), zi ? 0 : 1);
    if (zi) {
        weight[*zi] = 1;
    }
    for (const auto &[m, k] : f.denominator()) {
        if (IntPoly::weighted_degree(m, weight) <= 0) {
            throw std::invalid_argument("expand: denominator factor (1 - " + monomial_string(m, vars)
                                        + ") has degree zero in the grading");
        }
    }
    const int N = static_cast<int>(bound);
    IntPoly acc = f.numerator().truncated(weight, N);
    for (const auto &[m, k] : f.denominator()) {
        const int step = IntPoly::weighted_degree(m, weight);
        IntPoly geo(vars.size());
        Exponents power(vars.size(), 0);
        for (int deg = 0; deg <= N; deg += step) {
            geo.add_term(power, 1);
            for (std::size_t i = 0; i < power.size(); ++i) {
                power[i] += m[i];
            }
        }
        for (unsigned j = 0; j < k; ++j) {
            acc = (acc * geo).truncated(weight, N);
        }
    }
    TruncatedSeries out;
    out.bound = bound;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!zi || i != *zi) {
            out.slice_vars.push_back(vars[i]);
        }
    }
    out.slices.assign(bound + 1, IntPoly(out.slice_vars.size()));
    for (const auto &[e, c] : acc.terms()) {
        const int deg = IntPoly::weighted_degree(e, weight);
        Exponents rest;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!zi || i != *zi) {
                rest.push_back(e[i]);
            }
        }
        out.slices[static_cast<std::size_t>(deg)].add_term(rest, c);
    }
    return out;
}

inline std::vector<std::string> z_vars(std::size_t d)
{
    std::vector<std::string> v;
    for (std::size_t j = 1; j <= d; ++j) {
        v.push_back("z" + std::to_string(j));
    }
    return v;
}

inline const std::vector<std::string> &gl2_vars()
{
    static const std::vector<std::string> v{"t1", "t2", "z"};
    return v;
}

namespace detail
{

inline void check_series_rank(std::size_t d)
{
    if (d < 2) {
        throw std::invalid_argument("rank must be at least 2");
    }
}

// prod_j 1/(1 - z_j)^k over z_1..z_d, with the product prod (1 - z_j) and sum z_j handy.
struct FreeSeriesParts {
    std::vector<std::string> vars;
    IntPoly prod;
    IntPoly sum;
    NiceRational::denominator_map den_once;
};

inline FreeSeriesParts free_parts(std::size_t d)
{
    FreeSeriesParts p{z_vars(d), IntPoly::constant(d, 1), IntPoly(d), {}};
    for (std::size_t j = 0; j < d; ++j) {
        Exponents e(d, 0);
        e[j] = 1;
        IntPoly f = IntPoly::constant(d, 1);
        f.add_term(e, -1);
        p.prod = p.prod * f;
        p.sum.add_term(e, 1);
        p.den_once[e] = 1;
    }
    return p;
}

inline NiceRational::denominator_map scaled(NiceRational::denominator_map den, unsigned k)
{
    for (auto &[m, mult] : den) {
        mult *= k;
    }
    return den;
}

} // namespace detail

// H(F_d) = prod 1/(1-z_j) (2 + (z_1+...+z_d - 1) prod 1/(1-z_j)).
inline NiceRational hseries_free_metabelian(std::size_t d)
{
    detail::check_series_rank(d);
    auto p = detail::free_parts(d);
    IntPoly num = p.prod * BigInt(2) + p.sum - IntPoly::constant(d, 1);
    return {p.vars, std::move(num), detail::scaled(p.den_once, 2)};
}

// H(L_d'/L_d'') = 1 + (z_1+...+z_d - 1) prod 1/(1-z_j).
inline NiceRational hseries_lie_commutator(std::size_t d)
{
    detail::check_series_rank(d);
    auto p = detail::free_parts(d);
    IntPoly num = p.prod + p.sum - IntPoly::constant(d, 1);
    return {p.vars, std::move(num), p.den_once};
}

// H(F_d') = prod 1/(1-z_j) H(L_d'/L_d'').
inline NiceRational hseries_commutator_ideal(std::size_t d)
{
    detail::check_series_rank(d);
    auto p = detail::free_parts(d);
    IntPoly num = p.prod + p.sum - IntPoly::constant(d, 1);
    return {p.vars, std::move(num), detail::scaled(p.den_once, 2)};
}

// H(K[U_d]) and H(K[U_d, V_d]).
inline NiceRational hseries_polynomial(std::size_t d, unsigned copies)
{
    auto p = detail::free_parts(d);
    return {p.vars, IntPoly::constant(d, 1), detail::scaled(p.den_once, copies)};
}

// z_{j+k} -> t1^{p-k} t2^k z along each Jordan cell of size p+1.
inline NiceRational substitute_gl2(const NiceRational &f, const std::vector<unsigned> &partition)
{
    std::size_t total = 0;
    for (auto p : partition) {
        total += p + 1;
    }
    if (total != f.vars().size()) {
        throw std::invalid_argument("substitute_gl2: partition sizes sum to " + std::to_string(total) + ", series has "
                                    + std::to_string(f.vars().size()) + " variables");
    }
    std::vector<Exponents> images;
    for (auto p : partition) {
        for (unsigned k = 0; k <= p; ++k) {
            images.push_back({static_cast<int>(p - k), static_cast<int>(k), 1});
        }
    }
    return f.substitute(gl2_vars(), images);
}

struct SchurTerm {
    int lambda1;
    int lambda2;
    unsigned n;
    BigInt multiplicity;

    friend bool operator==(const SchurTerm &, const SchurTerm &) = default;
};

struct SchurDecomposition {
    unsigned bound = 0;
    std::vector<SchurTerm> terms;
};

// S_(a,b)(t1,t2) = sum_{k=b}^{a} t1^k t2^{a+b-k}
inline IntPoly schur_polynomial(int a, int b)
{
    IntPoly s(2);
    for (int k = b; k <= a; ++k) {
        s.add_term({k, a + b - k}, 1);
    }
    return s;
}

inline bool is_symmetric(const IntPoly &p)
{
    for (const auto &[e, c] : p.terms()) {
        if (p.coefficient({e[1], e[0]}) != c) {
            return false;
        }
    }
    return true;
}

// Peels off the lexicographically greatest t1^a t2^b with its coefficient m, m S_(a,b) at a time.
inline SchurDecomposition schur_extract(const TruncatedSeries &h)
{
    if (h.slice_vars != std::vector<std::string>{"t1", "t2"}) {
        throw std::invalid_argument("schur_extract: expected slices in t1, t2");
    }
    SchurDecomposition dec;
    dec.bound = h.bound;
    for (unsigned n = 0; n < h.slices.size(); ++n) {
        IntPoly rest = h.slices[n];
        if (!is_symmetric(rest)) {
            throw std::domain_error("schur_extract: slice of degree " + std::to_string(n) + " is not symmetric");
        }
        while (!rest.is_zero()) {
            const auto &[e, m] = *std::prev(rest.terms().end());
            const int a = e[0];
            const int b = e[1];
            const BigInt mult = m;
            dec.terms.push_back({a, b, n, mult});
            rest -= schur_polynomial(a, b) * mult;
        }
    }
    return dec;
}

// Each S_(l1,l2) z^n is replaced by t1^l1 t2^l2 z^n.
inline TruncatedSeries constants_series(const SchurDecomposition &dec)
{
    TruncatedSeries out;
    out.slice_vars = {"t1", "t2"};
    out.bound = dec.bound;
    out.slices.assign(dec.bound + 1, IntPoly(2));
    for (const auto &t : dec.terms) {
        if (t.n > dec.bound) {
            throw std::invalid_argument("constants_series: term above the bound");
        }
        out.slices[t.n].add_term({t.lambda1, t.lambda2}, t.multiplicity);
    }
    return out;
}

inline IntPoly swap_t(const IntPoly &p)
{
    IntPoly r(2);
    for (const auto &[e, c] : p.terms()) {
        r.add_term({e[1], e[0]}, c);
    }
    return r;
}

// Exact division by (t1 - t2): synthetic division in t1 with t2 as a scalar.
inline IntPoly divide_t1_minus_t2(const IntPoly &p)
{
    // group by power of t1: coefficient polynomials in t2 (as maps exponent -> BigInt)
    std::map<int, std::map<int, BigInt>> by_t1;
    int top = -1;
    for (const auto &[e, c] : p.terms()) {
        by_t1[e[0]][e[1]] += c;
        top = std::max(top, e[0]);
    }
    IntPoly q(2);
    std::map<int, BigInt> carry;
    for (int k = top; k >= 1; --k) {
        // coefficient of t1^(k-1) in the quotient = coeff_k + t2 * carry
        std::map<int, BigInt> qk = by_t1.count(k) ? by_t1[k] : std::map<int, BigInt>{};
        for (const auto &[j, c] : carry) {
            qk[j + 1] += c;
        }
        for (const auto &[j, c] : qk) {
            if (c != 0) {
                q.add_term({k - 1, j}, c);
            }
        }
        carry = std::move(qk);
    }
    std::map<int, BigInt> rem = by_t1.count(0) ? by_t1[0] : std::map<int, BigInt>{};
    for (const auto &[j, c] : carry) {
        rem[j + 1] += c;
    }
    for (const auto &[j, c] : rem) {
        if (c != 0) {
            throw std::domain_error("division by t1 - t2 leaves a nonzero remainder");
        }
    }
    return q;
}

struct ConsistencyResult {
    bool ok = true;
    unsigned n = 0;
    int a = 0;
    int b = 0;
    BigInt expected = 0;
    BigInt actual = 0;

    [[nodiscard]] std::string describe() const
    {
        if (ok) {
            return "consistent";
        }
        std::ostringstream os;
        os << "first mismatch at z^" << n << " t1^" << a << " t2^" << b << ": expected " << expected.get_str() << ", got "
           << actual.get_str();
        return os.str();
    }
};

// Compares (t1 f(t1,t2) - t2 f(t2,t1)) / (t1 - t2) with H degree by degree up to N.
inline ConsistencyResult consistency_check(const NiceRational &f, const NiceRational &H, unsigned bound)
{
    if (f.vars() != gl2_vars() || H.vars() != gl2_vars()) {
        throw std::invalid_argument("consistency_check: both series must be in t1, t2, z");
    }
    const auto fs = expand(f, bound);
    const auto hs = expand(H, bound);
    const IntPoly t1 = IntPoly::monomial({1, 0});
    const IntPoly t2 = IntPoly::monomial({0, 1});
    for (unsigned n = 0; n <= bound; ++n) {
        const IntPoly anti = t1 * fs.slices[n] - t2 * swap_t(fs.slices[n]);
        const IntPoly lhs = divide_t1_minus_t2(anti);
        if (lhs == hs.slices[n]) {
            continue;
        }
        // first differing coefficient in canonical order
        std::map<Exponents, std::pair<BigInt, BigInt>> diff;
        for (const auto &[e, c] : hs.slices[n].terms()) {
            diff[e].first = c;
        }
        for (const auto &[e, c] : lhs.terms()) {
            diff[e].second = c;
        }
        for (const auto &[e, pr] : diff) {
            if (pr.first != pr.second) {
                return {false, n, e[0], e[1], pr.first, pr.second};
            }
        }
    }
    return {};
}

// (h_prev + z h_omega) / (1 - z)^2
inline NiceRational reduce_series(const NiceRational &h_prev, const NiceRational &h_omega)
{
    const auto zi = h_prev.var_index("z");
    if (!zi || h_prev.vars() != h_omega.vars()) {
        throw std::invalid_argument("reduce_series: inputs must share a variable set containing z");
    }
    Exponents z(h_prev.vars().size(), 0);
    z[*zi] = 1;
    NiceRational shifted = h_omega;
    shifted *= IntPoly::monomial(z);
    NiceRational out = h_prev + shifted;
    out.divide_by_factor(z, 2);
    return out;
}

// {"vars": [...], "num": [[coeff, [exps]], ...], "den": [[[exps], multiplicity], ...]}
inline nlohmann::ordered_json to_json(const NiceRational &f)
{
    nlohmann::ordered_json j;
    j["vars"] = f.vars();
    auto num = nlohmann::ordered_json::array();
    for (const auto &[e, c] : f.numerator().terms()) {
        nlohmann::ordered_json coeff;
        if (c.fits_slong_p()) {
            coeff = c.get_si();
        } else {
            coeff = c.get_str();
        }
        num.push_back(nlohmann::ordered_json::array({coeff, e}));
    }
    j["num"] = num;
    auto den = nlohmann::ordered_json::array();
    for (const auto &[m, k] : f.denominator()) {
        den.push_back(nlohmann::ordered_json::array({m, k}));
    }
    j["den"] = den;
    return j;
}

inline NiceRational nice_rational_from_json(const nlohmann::json &j)
{
    try {
        auto vars = j.at("vars").get<std::vector<std::string>>();
        IntPoly num(vars.size());
        for (const auto &t : j.at("num")) {
            const auto &c = t.at(0);
            BigInt coeff = c.is_string() ? BigInt(c.get<std::string>()) : BigInt(c.get<long>());
            num.add_term(t.at(1).get<Exponents>(), coeff);
        }
        NiceRational::denominator_map den;
        for (const auto &t : j.at("den")) {
            const int k = t.at(1).get<int>();
            if (k < 0) {
                throw std::invalid_argument("negative multiplicity");
            }
            den[t.at(0).get<Exponents>()] += static_cast<unsigned>(k);
        }
        return {std::move(vars), std::move(num), std::move(den)};
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed series JSON: ") + e.what());
    }
}

} // namespace metab

#endif

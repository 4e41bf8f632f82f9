#ifndef METAB_EXACT_LINALG_HPP
#define METAB_EXACT_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <metab/rational.hpp>

namespace metab
{

using Vector = std::vector<Rational>;

// Rows x cols matrix over Q. Absent entries are zero; stored entries are never zero.
class SparseMatrix
{
public:
    using index_t = std::pair<std::size_t, std::size_t>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    [[nodiscard]] std::size_t rows() const
    {
        return rows_;
    }
    [[nodiscard]] std::size_t cols() const
    {
        return cols_;
    }
    [[nodiscard]] const std::map<index_t, Rational> &entries() const
    {
        return entries_;
    }

    void set(std::size_t r, std::size_t c, const Rational &v)
    {
        check_index(r, c);
        if (v.is_zero()) {
            entries_.erase({r, c});
        } else {
            entries_[{r, c}] = v;
        }
    }

    void add(std::size_t r, std::size_t c, const Rational &v)
    {
        check_index(r, c);
        if (v.is_zero()) {
            return;
        }
        auto [it, inserted] = entries_.try_emplace({r, c}, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) {
                entries_.erase(it);
            }
        }
    }

    [[nodiscard]] Rational at(std::size_t r, std::size_t c) const
    {
        const auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational{} : it->second;
    }

    [[nodiscard]] Vector apply(std::span<const Rational> v) const
    {
        if (v.size() != cols_) {
            throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
        }
        Vector out(rows_);
        for (const auto &[idx, val] : entries_) {
            out[idx.first] += val * v[idx.second];
        }
        return out;
    }

    static SparseMatrix identity(std::size_t n)
    {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.set(i, i, 1);
        }
        return m;
    }

private:
    void check_index(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_) {
            throw std::out_of_range("SparseMatrix: index out of range");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<index_t, Rational> entries_;
};

namespace detail
{

using IntRow = std::vector<std::pair<std::size_t, BigInt>>;

// Row echelon form over Z produced by fraction-free elimination.
struct IntEchelon {
    std::vector<IntRow> rows;
    std::vector<std::size_t> pivot_cols;
};

// Each row is scaled by the lcm of its denominators; this leaves the row space unchanged.
inline std::vector<IntRow> integer_rows(const SparseMatrix &m)
{
    std::vector<std::vector<std::pair<std::size_t, Rational>>> raw(m.rows());
    for (const auto &[idx, val] : m.entries()) {
        raw[idx.first].emplace_back(idx.second, val);
    }
    std::vector<IntRow> out;
    for (auto &r : raw) {
        if (r.empty()) {
            continue;
        }
        BigInt l = 1;
        for (const auto &e : r) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.denominator().get_mpz_t());
        }
        IntRow row;
        row.reserve(r.size());
        for (const auto &[c, v] : r) {
            row.emplace_back(c, BigInt(v.numerator() * (l / v.denominator())));
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline const BigInt *entry(const IntRow &r, std::size_t col)
{
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto &e, std::size_t c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? &it->second : nullptr;
}

// (a * x - b * y) / div, exact.
inline IntRow combine(const BigInt &a, const IntRow &x, const BigInt &b, const IntRow &y, const BigInt &div)
{
    IntRow out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    BigInt v;
    auto push = [&](std::size_t col) {
        if (v != 0) {
            if (!mpz_divisible_p(v.get_mpz_t(), div.get_mpz_t())) {
                throw std::logic_error("Bareiss elimination: inexact division");
            }
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), div.get_mpz_t());
            out.emplace_back(col, v);
        }
    };
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            v = a * x[i].second;
            push(x[i].first);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            v = -(b * y[j].second);
            push(y[j].first);
            ++j;
        } else {
            v = a * x[i].second - b * y[j].second;
            push(x[i].first);
            ++i;
            ++j;
        }
    }
    return out;
}

// Bareiss fraction-free elimination. Pivot column = leftmost column still carrying a
// nonzero entry; pivot row = first remaining row whose leading entry sits there.
inline IntEchelon bareiss_echelon(const SparseMatrix &m)
{
    std::vector<IntRow> rows = integer_rows(m);
    IntEchelon ech;
    BigInt prev = 1;
    std::size_t done = 0;
    while (true) {
        // drop rows that became zero
        std::vector<IntRow> live;
        live.reserve(rows.size());
        for (std::size_t i = done; i < rows.size(); ++i) {
            if (!rows[i].empty()) {
                live.push_back(std::move(rows[i]));
            }
        }
        rows.resize(done);
        for (auto &r : live) {
            rows.push_back(std::move(r));
        }
        if (done == rows.size()) {
            break;
        }
        std::size_t best = done;
        for (std::size_t i = done + 1; i < rows.size(); ++i) {
            if (rows[i].front().first < rows[best].front().first) {
                best = i;
            }
        }
        std::swap(rows[done], rows[best]);
        const std::size_t col = rows[done].front().first;
        const BigInt p = rows[done].front().second;
        for (std::size_t i = done + 1; i < rows.size(); ++i) {
            const BigInt *a = entry(rows[i], col);
            if (a != nullptr) {
                rows[i] = combine(p, rows[i], *a, rows[done], prev);
            } else {
                rows[i] = combine(p, rows[i], BigInt(0), IntRow{}, prev);
            }
        }
        ech.pivot_cols.push_back(col);
        prev = p;
        ++done;
    }
    ech.rows = std::move(rows);
    return ech;
}

} // namespace detail

inline std::size_t rank(const SparseMatrix &m)
{
    return detail::bareiss_echelon(m).pivot_cols.size();
}

// Basis of the right null space. One vector per non-pivot column f, with 1 at f and 0 at
// every other non-pivot column, in increasing order of f.
inline std::vector<Vector> kernel_basis(const SparseMatrix &m)
{
    const auto ech = detail::bareiss_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : ech.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        Vector x(m.cols());
        x[f] = 1;
        for (std::size_t k = ech.rows.size(); k-- > 0;) {
            const auto &row = ech.rows[k];
            Rational acc;
            for (std::size_t e = 1; e < row.size(); ++e) {
                const auto &xv = x[row[e].first];
                if (!xv.is_zero()) {
                    acc += Rational(row[e].second) * xv;
                }
            }
            x[row.front().first] = -acc / Rational(row.front().second);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

// Incrementally built echelon basis of sparse vectors indexed by an ordered key type.
// Each stored row has leading (smallest) key with coefficient 1, and leading keys are
// distinct, so insertion reduces a candidate by leading terms only.
template <class Key>
class EchelonBasis
{
public:
    using vector_type = std::map<Key, Rational>;

    // Returns true if v was independent of the current span (and adds it).
    bool insert(vector_type v)
    {
        reduce(v);
        if (v.empty()) {
            return false;
        }
        const Rational lead = v.begin()->second;
        for (auto &[k, c] : v) {
            c /= lead;
        }
        const Key key = v.begin()->first;
        rows_.emplace(key, std::move(v));
        return true;
    }

    [[nodiscard]] bool contains(vector_type v) const
    {
        reduce(v);
        return v.empty();
    }

    [[nodiscard]] std::size_t size() const
    {
        return rows_.size();
    }

private:
    void reduce(vector_type &v) const
    {
        std::erase_if(v, [](const auto &kv) { return kv.second.is_zero(); });
        while (!v.empty()) {
            const auto it = rows_.find(v.begin()->first);
            if (it == rows_.end()) {
                return;
            }
            const Rational c = v.begin()->second;
            for (const auto &[k, rc] : it->second) {
                auto [pos, ins] = v.try_emplace(k, -(c * rc));
                if (!ins) {
                    pos->second -= c * rc;
                    if (pos->second.is_zero()) {
                        v.erase(pos);
                    }
                }
            }
        }
    }

    std::map<Key, vector_type> rows_;
};

} // namespace metab

#endif

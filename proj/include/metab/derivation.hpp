#ifndef METAB_DERIVATION_HPP
#define METAB_DERIVATION_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <metab/monomial.hpp>
#include <metab/polynomial.hpp>
#include <metab/rational.hpp>

namespace metab
{

// A linear nilpotent derivation of rank d: delta(x_j) = sum_i alpha(i, j) x_i.
// The same matrix acts on the generators of K[U_d, V_d] and of the wreath product.
class Derivation
{
public:
    using Matrix = std::vector<std::vector<Rational>>;
    using Image = std::vector<std::pair<std::size_t, Rational>>;

    // Jordan form delta(p_1, ..., p_s): one cell of size p_i + 1 per part, zero diagonal,
    // delta(first of cell) = 0 and delta(x_{j+k}) = x_{j+k-1} inside a cell.
    static Derivation from_partition(const std::vector<unsigned> &parts)
    {
        if (parts.empty()) {
            throw std::invalid_argument("partition must not be empty");
        }
        std::size_t d = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i > 0 && parts[i] > parts[i - 1]) {
                throw std::invalid_argument("partition must be sorted in descending order");
            }
            d += parts[i] + 1;
        }
        Derivation D(d);
        std::size_t j = 0;
        for (std::size_t cell = 0; cell < parts.size(); ++cell) {
            for (unsigned k = 0; k <= parts[cell]; ++k) {
                D.cell_[j + k] = cell;
                D.position_[j + k] = k;
                if (k > 0) {
                    D.alpha_[j + k - 1][j + k] = 1;
                }
            }
            j += parts[cell] + 1;
        }
        D.partition_ = parts;
        D.cells_ = parts.size();
        D.rebuild_images();
        return D;
    }

    // Partition together with a rank check: sum(p_i + 1) must equal d.
    static Derivation from_partition(std::size_t d, const std::vector<unsigned> &parts)
    {
        std::size_t total = 0;
        for (auto p : parts) {
            total += p + 1;
        }
        if (total != d) {
            throw std::invalid_argument("partition sizes sum to " + std::to_string(total) + ", rank is "
                                        + std::to_string(d));
        }
        return from_partition(parts);
    }

    // Arbitrary nilpotent matrix; no Jordan structure is assumed.
    static Derivation from_matrix(Matrix alpha)
    {
        const std::size_t d = alpha.size();
        for (const auto &row : alpha) {
            if (row.size() != d) {
                throw std::invalid_argument("derivation matrix must be square");
            }
        }
        Derivation D(d);
        D.alpha_ = std::move(alpha);
        if (!D.is_nilpotent()) {
            throw std::invalid_argument("derivation matrix is not nilpotent");
        }
        D.rebuild_images();
        return D;
    }

    [[nodiscard]] std::size_t rank() const
    {
        return d_;
    }
    [[nodiscard]] const Rational &alpha(std::size_t i, std::size_t j) const
    {
        return alpha_[i][j];
    }
    [[nodiscard]] const Matrix &matrix() const
    {
        return alpha_;
    }
    [[nodiscard]] const std::optional<std::vector<unsigned>> &partition() const
    {
        return partition_;
    }

    // delta(x_j) as sparse list of (i, alpha_ij).
    [[nodiscard]] const Image &image(std::size_t j) const
    {
        return images_[j];
    }

    // Jordan cell of generator j and its position inside the cell. Without a partition
    // every generator sits in cell 0 at position 0.
    [[nodiscard]] std::size_t cell_of(std::size_t j) const
    {
        return cell_[j];
    }
    [[nodiscard]] unsigned position_of(std::size_t j) const
    {
        return position_[j];
    }
    [[nodiscard]] std::size_t cell_count() const
    {
        return cells_;
    }

    // True when x_d spans a 1x1 cell: delta(x_d) = 0 and x_d occurs in no delta(x_j).
    [[nodiscard]] bool has_trailing_fixed_generator() const
    {
        const std::size_t last = d_ - 1;
        for (std::size_t i = 0; i < d_; ++i) {
            if (!alpha_[i][last].is_zero() || !alpha_[last][i].is_zero()) {
                return false;
            }
        }
        return true;
    }

    // The action on the first k generators, valid when they span an invariant subspace.
    [[nodiscard]] Derivation restricted(std::size_t k) const
    {
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = k; i < d_; ++i) {
                if (!alpha_[i][j].is_zero()) {
                    throw std::invalid_argument("leading generators do not span an invariant subspace");
                }
            }
        }
        if (partition_ && partition_->back() == 0 && k + 1 == d_) {
            auto parts = *partition_;
            parts.pop_back();
            return from_partition(parts);
        }
        Matrix m(k, std::vector<Rational>(k));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                m[i][j] = alpha_[i][j];
            }
        }
        return from_matrix(std::move(m));
    }

    // delta on a commutative monomial in one set of variables, as a polynomial.
    [[nodiscard]] PolyY apply(const ExponentVector &e) const
    {
        PolyY out;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) {
                continue;
            }
            for (const auto &[i, a] : images_[j]) {
                ExponentVector m = e;
                m.decrement(j);
                m.increment(i);
                out.add_term(m, a * Rational(static_cast<long>(e[j])));
            }
        }
        return out;
    }

    // delta on K[U_d, V_d], acting on U and on V by the same matrix.
    [[nodiscard]] PolyUV apply(const PolyUV &p) const
    {
        PolyUV out;
        for (const auto &[m, c] : p.terms()) {
            check_rank(m.rank());
            const PolyY du = apply(m.u);
            const PolyY dv = apply(m.v);
            for (const auto &[mu, cu] : du.terms()) {
                out.add_term(UVMonomial(mu, m.v), c * cu);
            }
            for (const auto &[mv, cv] : dv.terms()) {
                out.add_term(UVMonomial(m.u, mv), c * cv);
            }
        }
        return out;
    }

    [[nodiscard]] PolyY apply(const PolyY &p) const
    {
        PolyY out;
        for (const auto &[m, c] : p.terms()) {
            check_rank(m.size());
            const PolyY dm = apply(m);
            for (const auto &[mm, cc] : dm.terms()) {
                out.add_term(mm, c * cc);
            }
        }
        return out;
    }

    void check_rank(std::size_t d) const
    {
        if (d != d_) {
            throw std::invalid_argument("rank mismatch: derivation has rank " + std::to_string(d_) + ", operand has rank "
                                        + std::to_string(d));
        }
    }

private:
    explicit Derivation(std::size_t d)
        : d_(d), alpha_(d, std::vector<Rational>(d)), cell_(d, 0), position_(d, 0), cells_(1)
    {
        if (d < 2) {
            throw std::invalid_argument("rank must be at least 2");
        }
    }

    [[nodiscard]] bool is_nilpotent() const
    {
        Matrix p = alpha_;
        for (std::size_t step = 1; step < d_; ++step) {
            Matrix next(d_, std::vector<Rational>(d_));
            for (std::size_t i = 0; i < d_; ++i) {
                for (std::size_t k = 0; k < d_; ++k) {
                    if (p[i][k].is_zero()) {
                        continue;
                    }
                    for (std::size_t j = 0; j < d_; ++j) {
                        next[i][j] += p[i][k] * alpha_[k][j];
                    }
                }
            }
            p = std::move(next);
        }
        for (const auto &row : p) {
            for (const auto &x : row) {
                if (!x.is_zero()) {
                    return false;
                }
            }
        }
        return true;
    }

    void rebuild_images()
    {
        images_.assign(d_, {});
        for (std::size_t j = 0; j < d_; ++j) {
            for (std::size_t i = 0; i < d_; ++i) {
                if (!alpha_[i][j].is_zero()) {
                    images_[j].emplace_back(i, alpha_[i][j]);
                }
            }
        }
    }

    std::size_t d_;
    Matrix alpha_;
    std::vector<Image> images_;
    std::vector<std::size_t> cell_;
    std::vector<unsigned> position_;
    std::size_t cells_;
    std::optional<std::vector<unsigned>> partition_;
};

} // namespace metab

#endif

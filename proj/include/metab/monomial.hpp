#ifndef METAB_MONOMIAL_HPP
#define METAB_MONOMIAL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace metab
{

// Exponents of a commutative monomial in d variables (indices are 0-based internally,
// printed 1-based).
class ExponentVector
{
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t d) : e_(d, 0) {}
    ExponentVector(std::initializer_list<unsigned> exps)
    {
        e_.reserve(exps.size());
        for (auto x : exps) {
            e_.push_back(static_cast<std::uint16_t>(x));
        }
    }

    static ExponentVector unit(std::size_t d, std::size_t i, unsigned power = 1)
    {
        ExponentVector r(d);
        r.e_.at(i) = static_cast<std::uint16_t>(power);
        return r;
    }

    [[nodiscard]] std::size_t size() const
    {
        return e_.size();
    }
    [[nodiscard]] unsigned operator[](std::size_t i) const
    {
        return e_[i];
    }
    void set(std::size_t i, unsigned v)
    {
        e_.at(i) = static_cast<std::uint16_t>(v);
    }
    void increment(std::size_t i, unsigned by = 1)
    {
        e_.at(i) = static_cast<std::uint16_t>(e_.at(i) + by);
    }
    void decrement(std::size_t i)
    {
        if (e_.at(i) == 0) {
            throw std::logic_error("ExponentVector: negative exponent");
        }
        --e_[i];
    }

    [[nodiscard]] unsigned degree() const
    {
        unsigned s = 0;
        for (auto x : e_) {
            s += x;
        }
        return s;
    }
    [[nodiscard]] bool is_zero() const
    {
        for (auto x : e_) {
            if (x != 0) {
                return false;
            }
        }
        return true;
    }

    // Smallest index with a positive exponent, or size() if none.
    [[nodiscard]] std::size_t min_index() const
    {
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] != 0) {
                return i;
            }
        }
        return e_.size();
    }

    // Same exponents, padded with zeros (or truncated, if the dropped entries are zero).
    [[nodiscard]] ExponentVector resized(std::size_t d) const
    {
        ExponentVector r(d);
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i < d) {
                r.e_[i] = e_[i];
            } else if (e_[i] != 0) {
                throw std::invalid_argument("ExponentVector: cannot drop a used variable");
            }
        }
        return r;
    }

    // Indices with repetition, ascending: x1^2 x3 -> {0, 0, 2}.
    [[nodiscard]] std::vector<std::size_t> letters() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            for (unsigned k = 0; k < e_[i]; ++k) {
                out.push_back(i);
            }
        }
        return out;
    }

    friend ExponentVector operator+(const ExponentVector &a, const ExponentVector &b)
    {
        if (a.size() != b.size()) {
            throw std::invalid_argument("ExponentVector: rank mismatch");
        }
        ExponentVector r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            r.e_[i] = static_cast<std::uint16_t>(a.e_[i] + b.e_[i]);
        }
        return r;
    }

    friend bool operator==(const ExponentVector &, const ExponentVector &) = default;

    // Total degree first; within a degree, larger exponents of earlier variables first,
    // so x1^2 < x1x2 < x2^2.
    friend std::strong_ordering operator<=>(const ExponentVector &a, const ExponentVector &b)
    {
        if (auto c = a.degree() <=> b.degree(); c != 0) {
            return c;
        }
        if (auto c = a.size() <=> b.size(); c != 0) {
            return c;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a.e_[i] != b.e_[i]) {
                return a.e_[i] > b.e_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
            }
        }
        return std::strong_ordering::equal;
    }

    // "x1^2x3" style, "" for the empty monomial.
    [[nodiscard]] std::string str(char letter) const
    {
        std::string s;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] == 0) {
                continue;
            }
            s += letter;
            s += std::to_string(i + 1);
            if (e_[i] > 1) {
                s += '^';
                s += std::to_string(e_[i]);
            }
        }
        return s;
    }

private:
    std::vector<std::uint16_t> e_;
};

// All exponent vectors of length d and total degree n, in ExponentVector order.
inline std::vector<ExponentVector> monomials_of_degree(std::size_t d, unsigned n)
{
    std::vector<ExponentVector> out;
    ExponentVector cur(d);
    auto rec = [&](auto &&self, std::size_t i, unsigned left) -> void {
        if (i + 1 == d) {
            cur.set(i, left);
            out.push_back(cur);
            return;
        }
        for (unsigned k = left + 1; k-- > 0;) {
            cur.set(i, k);
            self(self, i + 1, left - k);
        }
        cur.set(i, 0);
    };
    if (d == 0) {
        if (n == 0) {
            out.emplace_back();
        }
        return out;
    }
    rec(rec, 0, n);
    return out;
}

inline unsigned long long binomial(unsigned n, unsigned k)
{
    if (k > n) {
        return 0;
    }
    unsigned long long r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace metab

#endif

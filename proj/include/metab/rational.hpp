#ifndef METAB_RATIONAL_HPP
#define METAB_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace metab
{

using BigInt = mpz_class;

// Exact element of Q. The stored fraction is always canonical: gcd(|num|, den) = 1,
// den > 0, and zero is 0/1.
class Rational
{
public:
    Rational() = default;
    Rational(int v) : q_(static_cast<long>(v)) {}
    Rational(long v) : q_(v) {}
    Rational(long long v) : q_(static_cast<long>(v)) {}
    explicit Rational(const BigInt &n) : q_(n) {}
    Rational(const BigInt &n, const BigInt &d)
    {
        if (d == 0) {
            throw std::domain_error("Rational: zero denominator");
        }
        q_ = mpq_class(n, d);
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q))
    {
        q_.canonicalize();
    }

    // Accepts "p" or "p/q" with optional leading sign.
    static Rational parse(std::string_view text)
    {
        const auto slash = text.find('/');
        auto to_int = [](std::string_view s) {
            if (s.empty()) {
                throw std::invalid_argument("Rational: empty integer");
            }
            BigInt v;
            if (v.set_str(std::string(s), 10) != 0) {
                throw std::invalid_argument("Rational: bad integer '" + std::string(s) + "'");
            }
            return v;
        };
        if (slash == std::string_view::npos) {
            return Rational(to_int(text));
        }
        return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
    }

    [[nodiscard]] const mpq_class &value() const
    {
        return q_;
    }
    [[nodiscard]] BigInt numerator() const
    {
        return q_.get_num();
    }
    [[nodiscard]] BigInt denominator() const
    {
        return q_.get_den();
    }
    [[nodiscard]] bool is_zero() const
    {
        return sgn(q_) == 0;
    }
    [[nodiscard]] bool is_integer() const
    {
        return q_.get_den() == 1;
    }
    [[nodiscard]] int sign() const
    {
        return sgn(q_);
    }
    [[nodiscard]] std::string str() const
    {
        return q_.get_str();
    }

    Rational &operator+=(const Rational &o)
    {
        q_ += o.q_;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        q_ -= o.q_;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        q_ *= o.q_;
        return *this;
    }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero()) {
            throw std::domain_error("Rational: division by zero");
        }
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b)
    {
        return a += b;
    }
    friend Rational operator-(Rational a, const Rational &b)
    {
        return a -= b;
    }
    friend Rational operator*(Rational a, const Rational &b)
    {
        return a *= b;
    }
    friend Rational operator/(Rational a, const Rational &b)
    {
        return a /= b;
    }
    friend Rational operator-(const Rational &a)
    {
        return Rational(mpq_class(-a.q_));
    }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.q_ == b.q_;
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r)
    {
        return os << r.str();
    }

private:
    mpq_class q_{0};
};

} // namespace metab

#endif

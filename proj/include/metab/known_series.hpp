#ifndef METAB_KNOWN_SERIES_HPP
#define METAB_KNOWN_SERIES_HPP

#include <initializer_list>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <metab/series.hpp>

// Published closed forms of constants series for small Weitzenboeck derivations.
namespace metab::known
{

// sum c_k z^k / prod (1 - z^m)^k
inline NiceRational univariate(std::initializer_list<long> num, std::initializer_list<std::pair<int, unsigned>> den)
{
    IntPoly p(1);
    int k = 0;
    for (long c : num) {
        p.add_term({k++}, c);
    }
    NiceRational::denominator_map dm;
    for (const auto &[m, mult] : den) {
        dm[{m}] += mult;
    }
    return {{"z"}, std::move(p), std::move(dm)};
}

// Terms (c, a, b, n) meaning c t1^a t2^b z^n, over factors (1 - t1^a t2^b z^n)^k.
inline NiceRational bigraded(std::initializer_list<std::tuple<long, int, int, int>> num,
                             std::initializer_list<std::pair<Exponents, unsigned>> den)
{
    IntPoly p(3);
    for (const auto &[c, a, b, n] : num) {
        p.add_term({a, b, n}, c);
    }
    NiceRational::denominator_map dm;
    for (const auto &[m, mult] : den) {
        dm[m] += mult;
    }
    return {gl2_vars(), std::move(p), std::move(dm)};
}

// Product of two polynomials given as term lists, for numerators displayed in factored form.
inline IntPoly bigraded_poly(std::initializer_list<std::tuple<long, int, int, int>> terms)
{
    IntPoly p(3);
    for (const auto &[c, a, b, n] : terms) {
        p.add_term({a, b, n}, c);
    }
    return p;
}

struct SeriesCase {
    std::string name;
    std::size_t rank;
    std::vector<unsigned> partition;
    NiceRational algebra;                   // H(F_d^delta, z)
    NiceRational polynomial;                // H(K[U_d, V_d]^delta, z)
    std::optional<NiceRational> algebra_gl2;
    std::optional<NiceRational> polynomial_gl2;
    std::optional<NiceRational> commutator_gl2;
};

inline SeriesCase d2_block2()
{
    SeriesCase c{"d2-block2", 2, {1},
                 univariate({1}, {{1, 1}}) + univariate({0, 0, 1}, {{1, 2}, {2, 1}}),
                 univariate({1}, {{1, 2}, {2, 1}}),
                 {}, {}, {}};
    c.algebra_gl2 = bigraded({{1, 0, 0, 0}}, {{{1, 0, 1}, 1}})
                    + bigraded({{1, 1, 1, 2}}, {{{1, 0, 1}, 2}, {{1, 1, 2}, 1}});
    c.polynomial_gl2 = bigraded({{1, 0, 0, 0}}, {{{1, 0, 1}, 2}, {{1, 1, 2}, 1}});
    c.commutator_gl2 = bigraded({{1, 1, 1, 2}}, {{{1, 0, 1}, 2}, {{1, 1, 2}, 1}});
    return c;
}

inline SeriesCase d3_block3()
{
    // z^2 (1 + z)(1 + 2z - z^2) = z^2 + 3z^3 + z^4 - z^5
    SeriesCase c{"d3-block3", 3, {2},
                 univariate({1}, {{1, 1}, {2, 1}}) + univariate({0, 0, 1, 3, 1, -1}, {{1, 2}, {2, 3}}),
                 univariate({1, 0, 1}, {{1, 2}, {2, 3}}),
                 {}, {}, {}};
    const IntPoly p1 = bigraded_poly({{1, 3, 1, 2}});
    const IntPoly p2 = bigraded_poly({{1, 0, 0, 0}, {1, 1, 1, 1}});
    const IntPoly p3 = bigraded_poly({{1, 0, 0, 0}, {1, 1, 1, 1}, {1, 0, 2, 1}, {-1, 2, 2, 2}});
    NiceRational second(gl2_vars(), p1 * p2 * p3, {{{2, 0, 1}, 2}, {{2, 2, 2}, 3}});
    c.algebra_gl2 = bigraded({{1, 0, 0, 0}}, {{{2, 0, 1}, 1}, {{2, 2, 2}, 1}}) + second;
    c.polynomial_gl2 = bigraded({{1, 0, 0, 0}, {1, 3, 1, 2}}, {{{2, 0, 1}, 2}, {{2, 2, 2}, 3}});
    const IntPoly q = bigraded_poly({{1, 3, 1, 2}, {1, 4, 2, 3}});
    c.commutator_gl2 = NiceRational(gl2_vars(), p3 * q, {{{2, 0, 1}, 2}, {{2, 2, 2}, 3}});
    return c;
}

inline SeriesCase d4_block4()
{
    const auto p = {2L, 1L, 3L, 4L, -6L, -13L, 13L, -14L, 2L, 9L, -5L, 4L, 2L};
    std::vector<long> shifted{0, 0};
    shifted.insert(shifted.end(), p.begin(), p.end());
    IntPoly num(1);
    for (std::size_t k = 0; k < shifted.size(); ++k) {
        num.add_term({static_cast<int>(k)}, shifted[k]);
    }
    NiceRational second({"z"}, num, {{{1}, 4}, {{2}, 2}, {{4}, 3}});
    return {"d4-block4", 4, {3},
            univariate({1, -1, 1}, {{1, 2}, {4, 1}}) + second,
            univariate({1, -2, 4, 0, -3, 0, 0, 0, -3, 0, 4, -2, 1}, {{1, 4}, {2, 2}, {4, 3}}),
            {}, {}, {}};
}

inline SeriesCase d4_block22()
{
    return {"d4-block22", 4, {1, 1},
            univariate({1}, {{1, 2}, {2, 1}})
                + univariate({0, 0, 4, 2, 1, -22, 9, 10, -3, -2, 1}, {{1, 4}, {2, 5}}),
            univariate({1, 0, 1, -4, 1, 0, 1}, {{1, 4}, {2, 5}}),
            {}, {}, {}};
}

inline SeriesCase d5_block5()
{
    return {"d5-block5", 5, {4},
            univariate({1, -1, 1}, {{1, 2}, {2, 1}, {3, 1}})
                + univariate({0, 0, 2, 4, 5, -6, -15, 11, -10, 3, 5, 2, 1, -5, 4, -1}, {{1, 5}, {2, 3}, {3, 3}}),
            univariate({1, -3, 6, -7, 3, 2, 1, -9, 8, -3, 1}, {{1, 5}, {2, 3}, {3, 3}}),
            {}, {}, {}};
}

inline SeriesCase d5_block32()
{
    return {"d5-block32", 5, {2, 1},
            univariate({1, 0, 1}, {{1, 2}, {2, 1}, {3, 1}})
                + univariate({0, 0, 4, 8, 8, -9, -20, -5, -2, 9, 7, 0, 0, -2, 3, -1}, {{1, 5}, {2, 3}, {3, 3}}),
            univariate({1, 0, 5, 1, -4, -3, -3, -4, 1, 5, 0, 1}, {{1, 5}, {2, 3}, {3, 3}}),
            {}, {}, {}};
}

// Bigraded series of the commutator ideal for delta(1,0) on three generators.
inline NiceRational d3_block21_commutator_gl2()
{
    return bigraded({{1, 1, 0, 2}, {1, 1, 1, 2}, {1, 1, 1, 3}, {-1, 2, 1, 4}},
                    {{{0, 0, 1}, 2}, {{1, 0, 1}, 2}, {{1, 1, 2}, 1}});
}

// H(K[U_2]^delta(1)) = 1 / (1 - t1 z)
inline NiceRational d2_block2_u_only_gl2()
{
    return bigraded({{1, 0, 0, 0}}, {{{1, 0, 1}, 1}});
}

inline std::vector<SeriesCase> all_cases()
{
    return {d2_block2(), d3_block3(), d4_block4(), d4_block22(), d5_block5(), d5_block32()};
}

} // namespace metab::known

#endif

#include <catch_amalgamated.hpp>

#include <random>

#include <metab/exact_linalg.hpp>
#include <metab/rational.hpp>

using metab::Rational;
using metab::SparseMatrix;

namespace
{

bool all_zero(const metab::Vector &v)
{
    for (const auto &x : v) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("rational arithmetic stays reduced", "[rational]")
{
    Rational a(6, 4);
    CHECK(a.str() == "3/2");
    CHECK((a - Rational(3, 2)).is_zero());
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(4, -6).str() == "-2/3");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1) / Rational(0));
    CHECK(Rational(0).str() == "0");
}

TEST_CASE("kernel of trivial matrices", "[linalg]")
{
    SparseMatrix zero(2, 2);
    CHECK(metab::rank(zero) == 0);
    auto k = metab::kernel_basis(zero);
    REQUIRE(k.size() == 2);
    CHECK(k[0] == metab::Vector{1, 0});
    CHECK(k[1] == metab::Vector{0, 1});

    auto id = SparseMatrix::identity(3);
    CHECK(metab::rank(id) == 3);
    CHECK(metab::kernel_basis(id).empty());

    SparseMatrix empty(0, 4);
    CHECK(metab::kernel_basis(empty).size() == 4);
}

TEST_CASE("degree two slice of F_2 under delta(1)", "[linalg]")
{
    // columns x1^2, x1x2, x2^2, [x2,x1]; rows are the same keys
    SparseMatrix m(4, 4);
    m.set(0, 1, 1);
    m.set(1, 2, 2);
    m.set(3, 2, 1);
    CHECK(metab::rank(m) == 2);
    auto k = metab::kernel_basis(m);
    REQUIRE(k.size() == 2);
    CHECK(k[0] == metab::Vector{1, 0, 0, 0});
    CHECK(k[1] == metab::Vector{0, 0, 0, 1});
}

TEST_CASE("rational entries are scaled exactly", "[linalg]")
{
    SparseMatrix m(2, 3);
    m.set(0, 0, Rational(1, 2));
    m.set(0, 1, Rational(1, 3));
    m.set(1, 0, Rational(1, 4));
    m.set(1, 1, Rational(1, 6));
    m.set(1, 2, Rational(5, 7));
    CHECK(metab::rank(m) == 2);
    auto k = metab::kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == metab::Vector{Rational(-2, 3), 1, 0});
}

TEST_CASE("rank-nullity and exact annihilation on random matrices", "[linalg][property]")
{
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> dim(1, 9);
    std::uniform_int_distribution<int> val(-3, 3);
    std::bernoulli_distribution dense(0.4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = static_cast<std::size_t>(dim(rng));
        const auto c = static_cast<std::size_t>(dim(rng));
        SparseMatrix m(r, c);
        // low-rank products make dependent rows likely
        const std::size_t inner = 1 + static_cast<std::size_t>(dim(rng)) % std::max<std::size_t>(1, std::min(r, c));
        std::vector<std::vector<int>> a(r, std::vector<int>(inner)), b(inner, std::vector<int>(c));
        for (auto &row : a) {
            for (auto &x : row) {
                x = dense(rng) ? val(rng) : 0;
            }
        }
        for (auto &row : b) {
            for (auto &x : row) {
                x = dense(rng) ? val(rng) : 0;
            }
        }
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                long s = 0;
                for (std::size_t t = 0; t < inner; ++t) {
                    s += a[i][t] * b[t][j];
                }
                m.set(i, j, Rational(s, 1 + static_cast<long>(trial % 3)));
            }
        }
        const auto rk = metab::rank(m);
        const auto ker = metab::kernel_basis(m);
        CHECK(rk + ker.size() == c);
        CHECK(rk <= inner);
        for (const auto &v : ker) {
            CHECK(all_zero(m.apply(v)));
        }
        // independence: a kernel basis has an identity block on its free columns
        SparseMatrix kt(ker.size(), c);
        for (std::size_t i = 0; i < ker.size(); ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                kt.set(i, j, ker[i][j]);
            }
        }
        CHECK(metab::rank(kt) == ker.size());
        CHECK(metab::kernel_basis(m) == ker);
    }
}

TEST_CASE("echelon basis detects dependence", "[linalg]")
{
    metab::EchelonBasis<int> basis;
    CHECK(basis.insert({{1, 1}, {2, 1}}));
    CHECK(basis.insert({{2, 1}, {3, 1}}));
    CHECK_FALSE(basis.insert({{1, 2}, {3, -2}, {2, 0}}));
    CHECK(basis.contains({{1, 1}, {3, -1}}));
    CHECK_FALSE(basis.contains({{3, 1}}));
    CHECK(basis.insert({{3, 5}}));
    CHECK(basis.size() == 3);
    CHECK_FALSE(basis.insert({}));
}

TEST_CASE("sparse matrix bounds", "[linalg]")
{
    SparseMatrix m(2, 2);
    CHECK_THROWS_AS(m.set(2, 0, 1), std::out_of_range);
    m.set(0, 0, 3);
    m.set(0, 0, 0);
    CHECK(m.entries().empty());
}

#include <catch_amalgamated.hpp>

#include <random>

#include <metab/exact_linalg.hpp>
#include <metab/wreath.hpp>

#include "random_elements.hpp"

using metab::Derivation;
using metab::MetabelianElement;
using metab::PolyUV;
using metab::WreathElement;

namespace
{

MetabelianElement x(std::size_t d, std::size_t i)
{
    return MetabelianElement::generator(d, i - 1);
}

MetabelianElement comm(std::size_t d, std::size_t i, std::size_t j)
{
    return MetabelianElement::commutator(d, i - 1, j - 1);
}

PolyUV u(std::size_t d, std::size_t i)
{
    return metab::uv::u(d, i - 1);
}

PolyUV v(std::size_t d, std::size_t i)
{
    return metab::uv::v(d, i - 1);
}

// Flattened coordinates; slot d holds the Y-part (stored as a U-monomial).
std::map<std::pair<std::size_t, metab::UVMonomial>, metab::Rational> flatten(const WreathElement &w)
{
    auto out = w.coordinate_map();
    for (const auto &[e, c] : w.y_part().terms()) {
        out.emplace(std::make_pair(w.rank(), metab::UVMonomial(e, metab::ExponentVector(w.rank()))), c);
    }
    return out;
}

} // namespace

TEST_CASE("embedding of generators, unit and a commutator", "[wreath]")
{
    const std::size_t d = 2;
    const auto e1 = metab::embed(x(d, 1));
    CHECK(e1 == WreathElement::y(d, 0) + WreathElement::a(d, 0));

    const auto one = metab::embed(MetabelianElement::one(d));
    CHECK(one == WreathElement::one(d));

    // [x2,x1] -> a2 v1 - a1 v2
    const auto c = metab::embed(comm(d, 2, 1));
    CHECK(c.y_part().is_zero());
    CHECK(c.coords()[1] == v(d, 1));
    CHECK(c.coords()[0] == -v(d, 2));

    CHECK(metab::embed(MetabelianElement(d)).is_zero());
}

TEST_CASE("embedding of a commutator agrees with the product in W", "[wreath]")
{
    const std::size_t d = 3;
    const auto y2 = metab::embed(x(d, 2));
    const auto y1 = metab::embed(x(d, 1));
    CHECK(metab::embed(comm(d, 2, 1)) == y2 * y1 - y1 * y2);
    // coordinate formula for x^p [x_i,x_j,tail]
    const auto e = metab::act_uv(comm(d, 3, 1), u(d, 2) * v(d, 1) * v(d, 2));
    const auto w = metab::embed(e);
    CHECK(w.coords()[2] == v(d, 1) * u(d, 2) * v(d, 1) * v(d, 2));
    CHECK(w.coords()[0] == -(v(d, 3) * u(d, 2) * v(d, 1) * v(d, 2)));
    CHECK(w.coords()[1].is_zero());
}

TEST_CASE("pi on the displayed examples", "[wreath][pi]")
{
    const std::size_t d = 3;
    const auto delta = Derivation::from_partition(d, {1, 0});
    CHECK(metab::pi(v(2, 1), delta) == comm(d, 3, 1));
    CHECK(metab::pi(u(2, 1) * v(2, 2) - u(2, 2) * v(2, 1), delta)
          == x(d, 1) * comm(d, 3, 2) - x(d, 2) * comm(d, 3, 1));
    CHECK(metab::pi(v(2, 1) * v(2, 1), delta) == metab::act_uv(comm(d, 3, 1), v(d, 1)) * metab::Rational(2));
    CHECK(metab::pi(u(2, 1) * u(2, 2), delta).is_zero());
    CHECK(metab::pi(PolyUV{}, delta).is_zero());
    // rank d input without u_d, v_d is accepted
    CHECK(metab::pi(v(3, 1), delta) == comm(d, 3, 1));
    CHECK_THROWS(metab::pi(v(3, 3), delta));
    CHECK_THROWS(metab::pi(u(3, 3) * v(3, 1), delta));
    CHECK_THROWS(metab::pi(v(3, 1), Derivation::from_partition({2})));
}

TEST_CASE("embedding is multiplicative", "[wreath][property]")
{
    std::mt19937 rng(8001);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
        const auto a = testing_support::random_mixed(rng, d, 3);
        const auto b = testing_support::random_mixed(rng, d, 2);
        CHECK(metab::embed(a * b) == metab::embed(a) * metab::embed(b));
        CHECK(metab::embed(a + b) == metab::embed(a) + metab::embed(b));
    }
}

TEST_CASE("embedding is injective on graded slices", "[wreath][property]")
{
    for (std::size_t d = 2; d <= 4; ++d) {
        for (unsigned n = 0; n <= (d == 4 ? 5U : 6U); ++n) {
            metab::EchelonBasis<std::pair<std::size_t, metab::UVMonomial>> images;
            std::size_t count = 0;
            for (const auto &k : metab::graded_basis(d, n)) {
                CHECK(images.insert(flatten(metab::embed(MetabelianElement::from_key(k)))));
                ++count;
            }
            CHECK(images.size() == count);
        }
    }
}

TEST_CASE("embedding commutes with the derivation", "[wreath][property]")
{
    std::mt19937 rng(8002);
    const std::vector<std::vector<unsigned>> partitions{{1}, {2}, {1, 0}, {3}, {1, 1}, {2, 1}};
    for (int trial = 0; trial < 150; ++trial) {
        const auto delta = Derivation::from_partition(partitions[static_cast<std::size_t>(trial) % partitions.size()]);
        const std::size_t d = delta.rank();
        std::uniform_int_distribution<unsigned> deg(0, 5);
        const auto e = testing_support::random_element(rng, d, deg(rng));
        CHECK(metab::embed(metab::derive(delta, e)) == metab::derive(delta, metab::embed(e)));
    }
}

TEST_CASE("module action agrees through the embedding", "[wreath][property]")
{
    std::mt19937 rng(8003);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
        std::uniform_int_distribution<unsigned> deg(2, 4);
        const auto e = testing_support::random_element(rng, d, deg(rng), true);
        const auto m = testing_support::random_uv(rng, d, d, 2, false);
        CHECK(metab::embed(metab::act_uv(e, m)) == metab::embed(e).times(m));
    }
}

TEST_CASE("pi satisfies the product rule", "[wreath][pi][property]")
{
    std::mt19937 rng(8004);
    const std::vector<std::vector<unsigned>> partitions{{1, 0}, {2, 0}, {1, 1, 0}, {1, 0, 0}};
    for (int trial = 0; trial < 150; ++trial) {
        const auto delta = Derivation::from_partition(partitions[static_cast<std::size_t>(trial) % partitions.size()]);
        const std::size_t d = delta.rank();
        std::uniform_int_distribution<unsigned> deg(1, 2);
        // v, w in omega(K[V_{d-1}]): pure V polynomials
        auto pure_v = [&](unsigned n) {
            PolyUV p;
            const auto src = testing_support::random_uv(rng, d, d - 1, n, true);
            for (const auto &[m, c] : src.terms()) {
                p.add_term(metab::UVMonomial(metab::ExponentVector(d), m.v), c);
            }
            return p;
        };
        const auto a = pure_v(deg(rng));
        const auto b = pure_v(deg(rng));
        CHECK(metab::pi(a * b, delta) == metab::act_uv(metab::pi(a, delta), b) + metab::act_uv(metab::pi(b, delta), a));
    }
}

TEST_CASE("pi commutes with the derivation", "[wreath][pi][property]")
{
    std::mt19937 rng(8005);
    const std::vector<std::vector<unsigned>> partitions{{1, 0}, {2, 0}, {1, 1, 0}, {3, 0}};
    for (int trial = 0; trial < 150; ++trial) {
        const auto delta = Derivation::from_partition(partitions[static_cast<std::size_t>(trial) % partitions.size()]);
        const std::size_t d = delta.rank();
        std::uniform_int_distribution<unsigned> deg(1, 4);
        const auto p = testing_support::random_uv(rng, d, d - 1, deg(rng), true);
        CHECK(metab::derive(delta, metab::pi(p, delta)) == metab::pi(delta.apply(p), delta));
    }
}

#include <catch_amalgamated.hpp>

#include <metab/constants.hpp>
#include <metab/known_series.hpp>

using metab::Derivation;
using metab::GeneratorSet;
using metab::MetabelianElement;
using metab::PolyUV;
using metab::Space;

namespace
{

PolyUV u(std::size_t d, std::size_t i)
{
    return metab::uv::u(d, i - 1);
}

PolyUV v(std::size_t d, std::size_t i)
{
    return metab::uv::v(d, i - 1);
}

MetabelianElement comm(std::size_t d, std::size_t i, std::size_t j)
{
    return MetabelianElement::commutator(d, i - 1, j - 1);
}

GeneratorSet d2_generators()
{
    return {2, {comm(2, 2, 1)}, {u(2, 1), v(2, 1), u(2, 1) * v(2, 2) - u(2, 2) * v(2, 1)}};
}

// Kernel dimension from one unblocked matrix per degree.
std::size_t dense_kernel_dim(const Derivation &delta, unsigned n, bool commutator_only)
{
    const auto keys = metab::graded_basis(delta.rank(), n, commutator_only);
    std::map<metab::BasisKey, std::size_t> rows;
    std::vector<std::map<metab::BasisKey, metab::Rational>> images;
    for (const auto &k : keys) {
        images.push_back(metab::derive(delta, MetabelianElement::from_key(k)).as_key_map());
        for (const auto &[rk, c] : images.back()) {
            rows.try_emplace(rk, rows.size());
        }
    }
    metab::SparseMatrix m(rows.size(), keys.size());
    for (std::size_t j = 0; j < keys.size(); ++j) {
        for (const auto &[rk, c] : images[j]) {
            m.set(rows.at(rk), j, c);
        }
    }
    return keys.size() - metab::rank(m);
}

std::vector<std::size_t> series_dims(const metab::NiceRational &f, unsigned bound)
{
    std::vector<std::size_t> out;
    for (const auto &s : metab::expand(f, bound).slices) {
        out.push_back(static_cast<std::size_t>(s.at_ones().get_si()));
    }
    return out;
}

} // namespace

TEST_CASE("small kernel slices", "[constants]")
{
    const auto d1 = Derivation::from_partition({1});
    CHECK(metab::kernel_slice(d1, 2, Space::Full).dimension() == 2);
    CHECK(metab::kernel_slice(d1, 1, Space::PolyUV).dimension() == 2);
    CHECK(metab::kernel_slice(d1, 0, Space::PolyUV).dimension() == 1);
    CHECK(metab::kernel_slice(d1, 0, Space::PolyUVOmega).dimension() == 0);
    CHECK(metab::kernel_slice(d1, 1, Space::Commutator).dimension() == 0);
    CHECK(metab::kernel_slice(Derivation::from_partition({2}), 2, Space::Full).dimension() == 3);

    const auto slice = metab::kernel_slice(d1, 2, Space::Commutator);
    REQUIRE(slice.elements.size() == 1);
    CHECK(metab::derive(d1, slice.elements[0]).is_zero());
    CHECK(slice.elements[0].in_commutator_ideal());
}

TEST_CASE("every kernel vector is a constant", "[constants]")
{
    for (const auto &parts : std::vector<std::vector<unsigned>>{{2}, {1, 0}, {1, 1}}) {
        const auto delta = Derivation::from_partition(parts);
        for (unsigned n = 0; n <= 5; ++n) {
            for (const auto &e : metab::kernel_slice(delta, n, Space::Full).elements) {
                CHECK(metab::derive(delta, e).is_zero());
                CHECK(e.homogeneous_degree() == n);
            }
            for (const auto &p : metab::kernel_slice(delta, n, Space::PolyUV).polynomials) {
                CHECK(delta.apply(p).is_zero());
            }
        }
    }
}

TEST_CASE("block decomposition agrees with the unblocked matrix", "[constants]")
{
    for (const auto &parts : std::vector<std::vector<unsigned>>{{1}, {2}, {1, 0}, {3}, {1, 1}, {2, 0}}) {
        const auto delta = Derivation::from_partition(parts);
        for (unsigned n = 0; n <= 5; ++n) {
            CHECK(metab::kernel_slice(delta, n, Space::Full).dimension() == dense_kernel_dim(delta, n, false));
            CHECK(metab::kernel_slice(delta, n, Space::Commutator).dimension() == dense_kernel_dim(delta, n, true));
        }
    }
    // a nilpotent matrix without Jordan layout: everything falls into one block
    const auto generic = Derivation::from_matrix({{0, 1, 1}, {0, 0, 1}, {0, 0, 0}});
    for (unsigned n = 0; n <= 4; ++n) {
        CHECK(metab::kernel_slice(generic, n, Space::Full).dimension() == dense_kernel_dim(generic, n, false));
    }
    CHECK(metab::kernel_dims(generic, 4, Space::Full) == metab::kernel_dims(Derivation::from_partition({2}), 4, Space::Full));
}

TEST_CASE("kernel dimensions match the published series", "[constants][series]")
{
    for (const auto &c : metab::known::all_cases()) {
        const auto delta = Derivation::from_partition(c.partition);
        const unsigned bound = c.rank >= 5 ? 4 : 6;
        INFO(c.name);
        CHECK(metab::kernel_dims(delta, bound, Space::Full) == series_dims(c.algebra, bound));
        if (c.rank < 5) {
            CHECK(metab::kernel_dims(delta, bound, Space::PolyUV) == series_dims(c.polynomial, bound));
        }
    }
}

TEST_CASE("frozen kernel dimensions", "[constants]")
{
    using V = std::vector<std::size_t>;
    CHECK(metab::kernel_dims(Derivation::from_partition({1}), 6, Space::Commutator) == V{0, 0, 1, 2, 4, 6, 9});
    CHECK(metab::kernel_dims(Derivation::from_partition({1}), 6, Space::PolyUV) == V{1, 2, 4, 6, 9, 12, 16});
    CHECK(metab::kernel_dims(Derivation::from_partition({2}), 6, Space::PolyUV) == V{1, 2, 7, 12, 26, 40, 70});
    CHECK(metab::kernel_dims(Derivation::from_partition({4}), 6, Space::PolyUV) == V{1, 2, 11, 32, 87, 210, 467});
    CHECK(metab::kernel_dims(Derivation::from_partition({2, 1}), 6, Space::PolyUV) == V{1, 4, 19, 60, 167, 408, 911});
    // total minus the U-only part, whose series is 1/(1 - t1 z)
    CHECK(metab::kernel_dims(Derivation::from_partition({1}), 4, Space::PolyUVOmega) == V{0, 1, 3, 5, 8});
}

TEST_CASE("span of the rank two generators", "[constants][span]")
{
    const auto delta = Derivation::from_partition({1});
    const auto gens = d2_generators();
    using V = std::vector<std::size_t>;
    CHECK(metab::module_span_dims(gens, delta, 6) == V{0, 0, 1, 2, 4, 6, 9});
    CHECK(metab::subalgebra_span_dims(gens.ring_gens, delta, 6) == V{1, 2, 4, 6, 9, 12, 16});
    CHECK(metab::subalgebra_span_dims({metab::uv::one(2)}, delta, 3) == V{1, 0, 0, 0});
    CHECK(metab::subalgebra_span_dims({}, delta, 2) == V{1, 0, 0});
}

TEST_CASE("span of the rank three ring generators", "[constants][span]")
{
    const std::size_t d = 3;
    const auto delta = Derivation::from_partition({2});
    const std::vector<PolyUV> ring{
        u(d, 1),
        v(d, 1),
        u(d, 2) * u(d, 2) - metab::Rational(2) * u(d, 1) * u(d, 3),
        v(d, 2) * v(d, 2) - metab::Rational(2) * v(d, 1) * v(d, 3),
        u(d, 1) * v(d, 3) - u(d, 2) * v(d, 2) + u(d, 3) * v(d, 1),
        u(d, 1) * v(d, 2) - u(d, 2) * v(d, 1),
    };
    CHECK(metab::subalgebra_span_dims(ring, delta, 6) == std::vector<std::size_t>{1, 2, 7, 12, 26, 40, 70});
}

TEST_CASE("non-constant and malformed generators are rejected", "[constants][span]")
{
    const auto delta = Derivation::from_partition({1});
    GeneratorSet bad{2, {comm(2, 2, 1)}, {u(2, 2)}};
    try {
        (void)metab::module_span_dims(bad, delta, 3);
        FAIL("expected rejection");
    } catch (const metab::NonConstantGenerator &e) {
        CHECK(std::string(e.what()).find("u1") != std::string::npos);
    }
    CHECK_THROWS_AS(metab::subalgebra_span_dims({v(2, 2)}, delta, 2), metab::NonConstantGenerator);
    GeneratorSet unit_gen{2, {MetabelianElement::generator(2, 0)}, {}};
    CHECK_THROWS_AS(metab::module_span_dims(unit_gen, delta, 2), std::invalid_argument);
    GeneratorSet mixed{2, {comm(2, 2, 1)}, {u(2, 1) + u(2, 1) * v(2, 1)}};
    CHECK_THROWS_AS(metab::module_span_dims(mixed, delta, 2), std::invalid_argument);
    CHECK_THROWS_AS(metab::subalgebra_span_dims({u(3, 1)}, delta, 2), std::invalid_argument);
}

TEST_CASE("relations are evaluated exactly", "[constants][relations]")
{
    const std::size_t d = 2;
    const auto delta = Derivation::from_partition({1});
    const auto c = comm(d, 2, 1);
    metab::ModuleCombination zero{{{c, u(d, 1)}, {c * metab::Rational(-1), u(d, 1)}}};
    CHECK(metab::verify_relation(zero, delta).holds);
    metab::ModuleCombination nonzero{{{c, u(d, 1)}, {c, v(d, 1)}}};
    const auto r = metab::verify_relation(nonzero, delta);
    CHECK_FALSE(r.holds);
    CHECK(r.residual_terms == 2);
    CHECK(metab::verify_ring_relation(u(d, 1) * v(d, 1), v(d, 1) * u(d, 1)).holds);
    CHECK_FALSE(metab::verify_ring_relation(u(d, 1), v(d, 1)).holds);
}

TEST_CASE("lifting generators from rank two to delta(1,0)", "[constants][lift]")
{
    const auto delta = Derivation::from_partition({1, 0});
    const auto lifted = metab::lift_generators(d2_generators(), delta);
    CHECK(lifted.rank == 3);
    // [x2,x1], pi(v1) = [x3,x1], pi(u1v2 - u2v1)
    REQUIRE(lifted.module_gens.size() == 3);
    CHECK(lifted.module_gens[1] == comm(3, 3, 1));
    // u1, v1 and u1v2 - u2v1 resized, then u3, v3
    REQUIRE(lifted.ring_gens.size() == 5);
    CHECK(lifted.ring_gens[3] == u(3, 3));
    CHECK(lifted.ring_gens[4] == v(3, 3));
    CHECK(metab::module_span_dims(lifted, delta, 6) == metab::kernel_dims(delta, 6, Space::Commutator));

    CHECK_THROWS(metab::lift_generators(d2_generators(), Derivation::from_partition({2})));
    CHECK_THROWS(metab::lift_generators(d2_generators(), Derivation::from_partition({1, 0, 0})));
}

TEST_CASE("lifted basis has the kernel dimensions", "[constants][lift]")
{
    for (const auto &parts : std::vector<std::vector<unsigned>>{{1, 0}, {2, 0}, {1, 1, 0}}) {
        const auto delta = Derivation::from_partition(parts);
        const auto prev = delta.restricted(delta.rank() - 1);
        const unsigned bound = delta.rank() == 4 ? 4 : 6;
        std::vector<std::vector<MetabelianElement>> comm_bases;
        std::vector<std::vector<PolyUV>> omega_bases;
        for (unsigned n = 0; n <= bound; ++n) {
            comm_bases.push_back(metab::kernel_slice(prev, n, Space::Commutator).elements);
            omega_bases.push_back(metab::kernel_slice(prev, n, Space::PolyUVOmega).polynomials);
        }
        const auto lifted = metab::lift_basis(comm_bases, omega_bases, delta, bound);
        const auto dims = metab::kernel_dims(delta, bound, Space::Commutator);
        for (unsigned n = 0; n <= bound; ++n) {
            CHECK(lifted[n].size() == dims[n]);
        }
    }
}

// Generators of (F_3')^delta(1,0) obtained from those of rank two via pi.
#include <iostream>

#include <metab/metab.hpp>

int main()
{
    const std::size_t d = 2;
    const metab::GeneratorSet rank2{d,
                                    {metab::parse_element("[x2,x1]", d)},
                                    {metab::parse_polyuv("u1", d), metab::parse_polyuv("v1", d),
                                     metab::parse_polyuv("u1v2 - u2v1", d)}};
    const auto delta = metab::Derivation::from_partition({1, 0});
    const auto lifted = metab::lift_generators(rank2, delta);

    std::cout << "module generators:\n";
    for (const auto &c : lifted.module_gens) {
        std::cout << "  " << metab::to_string(c) << '\n';
    }
    std::cout << "ring generators:\n";
    for (const auto &f : lifted.ring_gens) {
        std::cout << "  " << metab::uv::to_string(f) << '\n';
    }

    const unsigned N = 6;
    const auto span = metab::module_span_dims(lifted, delta, N);
    const auto kernel = metab::kernel_dims(delta, N, metab::Space::Commutator);
    std::cout << "n  span  kernel\n";
    for (unsigned n = 0; n <= N; ++n) {
        std::cout << n << "  " << span[n] << "  " << kernel[n] << '\n';
    }
    return 0;
}

// Bases of the constants of delta(2) on F_3 in low degrees, next to the series prediction.
#include <iostream>

#include <metab/metab.hpp>

int main()
{
    const auto delta = metab::Derivation::from_partition({2});
    const auto predicted = metab::expand(metab::known::d3_block3().algebra, 4).at_ones();
    for (unsigned n = 0; n <= 4; ++n) {
        const auto slice = metab::kernel_slice(delta, n, metab::Space::Full);
        std::cout << "degree " << n << ": " << slice.dimension() << " (series " << predicted[n] << ")\n";
        for (const auto &e : slice.elements) {
            std::cout << "  " << metab::to_string(e) << '\n';
        }
    }

    // The constant x2^2 - (x1x3 + x3x1) acts on F_3' like u2^2 - 2u1u3.
    const auto L = metab::parse_element("x2^2 - (x1x3 + x3x1)", 3);
    const auto w = metab::parse_element("[x3,x1,x2]", 3);
    std::cout << "delta(L) = " << metab::to_string(metab::derive(delta, L)) << '\n';
    std::cout << "L w        = " << metab::to_string(L * w) << '\n';
    std::cout << "w f3       = " << metab::to_string(metab::act_uv(w, metab::parse_polyuv("u2^2 - 2u1u3", 3))) << '\n';
    return 0;
}

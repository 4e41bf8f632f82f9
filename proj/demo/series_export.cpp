// Writes the bigraded series of the small cases as JSON, ready for `metab check-series`.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <metab/known_series.hpp>

namespace fs = std::filesystem;

static void write(const fs::path &path, const metab::NiceRational &f)
{
    std::ofstream out(path);
    out << metab::to_json(f).dump(2) << '\n';
    std::cout << path.string() << ": " << f.str() << '\n';
}

int main(int argc, char **argv)
{
    const fs::path dir = argc > 1 ? argv[1] : ".";
    fs::create_directories(dir);
    for (const auto &c : {metab::known::d2_block2(), metab::known::d3_block3()}) {
        write(dir / (c.name + "-constants.json"), *c.algebra_gl2);
        write(dir / (c.name + "-free.json"), metab::substitute_gl2(metab::hseries_free_metabelian(c.rank), c.partition));
        // t1 z added to the constants series
        write(dir / (c.name + "-perturbed.json"), *c.algebra_gl2 + metab::known::bigraded({{1, 1, 0, 1}}, {}));
    }
    return 0;
}

#ifndef METAB_CONSTANTS_HPP
#define METAB_CONSTANTS_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <metab/derivation.hpp>
#include <metab/exact_linalg.hpp>
#include <metab/metabelian.hpp>
#include <metab/polynomial.hpp>
#include <metab/wreath.hpp>

namespace metab
{

enum class Space {
    Full,        // F_d
    Commutator,  // F_d'
    PolyUV,      // K[U_d, V_d]
    PolyUVOmega, // K[U_d] (x) omega(K[V_d])
};

inline std::string to_string(Space s)
{
    switch (s) {
    case Space::Full:
        return "full";
    case Space::Commutator:
        return "commutator";
    case Space::PolyUV:
        return "polyUV";
    case Space::PolyUVOmega:
        return "polyUV-omega";
    }
    return "?";
}

// Basis of the constants in one homogeneous degree. Exactly one of the two lists is used,
// depending on the space.
struct GradedConstantsBasis {
    unsigned n = 0;
    Space space = Space::Full;
    std::vector<MetabelianElement> elements;
    std::vector<PolyUV> polynomials;

    [[nodiscard]] std::size_t dimension() const
    {
        return elements.size() + polynomials.size();
    }
};

class NonConstantGenerator : public std::runtime_error
{
public:
    NonConstantGenerator(const std::string &which, const std::string &image)
        : std::runtime_error(which + " is not a constant: its image under the derivation is " + image)
    {
    }
};

namespace detail
{

// Block label of a basis vector: degrees in each Jordan cell and the sum of positions.
// The derivation keeps the cell degrees and lowers the position sum by one.
struct BlockLabel {
    std::vector<unsigned> cell_degrees;
    unsigned weight = 0;
    friend auto operator<=>(const BlockLabel &, const BlockLabel &) = default;
};

inline void add_letters(const Derivation &delta, BlockLabel &b, const ExponentVector &e)
{
    for (std::size_t j = 0; j < e.size(); ++j) {
        b.cell_degrees[delta.cell_of(j)] += e[j];
        b.weight += e[j] * delta.position_of(j);
    }
}

inline BlockLabel block_of(const Derivation &delta, const BasisKey &k)
{
    BlockLabel b{std::vector<unsigned>(delta.cell_count(), 0), 0};
    if (const auto *e = std::get_if<ExponentVector>(&k)) {
        add_letters(delta, b, *e);
        return b;
    }
    const auto &c = std::get<CommutatorKey>(k);
    add_letters(delta, b, c.prefix);
    add_letters(delta, b, c.tail);
    add_letters(delta, b, ExponentVector::unit(c.rank(), c.hi));
    add_letters(delta, b, ExponentVector::unit(c.rank(), c.lo));
    return b;
}

inline BlockLabel block_of(const Derivation &delta, const UVMonomial &m)
{
    BlockLabel b{std::vector<unsigned>(delta.cell_count(), 0), 0};
    add_letters(delta, b, m.u);
    add_letters(delta, b, m.v);
    return b;
}

inline std::vector<UVMonomial> uv_monomials(std::size_t d, unsigned n, bool need_v)
{
    std::vector<UVMonomial> out;
    for (unsigned k = need_v ? 1 : 0; k <= n; ++k) {
        const auto us = monomials_of_degree(d, n - k);
        const auto vs = monomials_of_degree(d, k);
        for (const auto &u : us) {
            for (const auto &v : vs) {
                out.emplace_back(u, v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Kernel of the derivation restricted to the span of `keys`, block by block.
template <class Key, class Image>
std::vector<std::map<Key, Rational>> block_kernels(const Derivation &delta, const std::vector<Key> &keys, Image image)
{
    std::map<BlockLabel, std::vector<Key>> blocks;
    for (const auto &k : keys) {
        blocks[block_of(delta, k)].push_back(k);
    }
    std::vector<std::map<Key, Rational>> out;
    for (const auto &[label, cols] : blocks) {
        std::map<Key, std::size_t> row_index;
        std::vector<std::map<Key, Rational>> images;
        images.reserve(cols.size());
        for (const auto &k : cols) {
            images.push_back(image(k));
            for (const auto &[rk, c] : images.back()) {
                row_index.try_emplace(rk, 0);
            }
        }
        std::size_t r = 0;
        for (auto &[rk, idx] : row_index) {
            idx = r++;
        }
        SparseMatrix m(row_index.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            for (const auto &[rk, c] : images[j]) {
                m.set(row_index.at(rk), j, c);
            }
        }
        for (const auto &v : kernel_basis(m)) {
            std::map<Key, Rational> vec;
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (!v[j].is_zero()) {
                    vec.emplace(cols[j], v[j]);
                }
            }
            out.push_back(std::move(vec));
        }
    }
    return out;
}

inline std::map<UVMonomial, Rational> as_map(const PolyUV &p)
{
    return {p.terms().begin(), p.terms().end()};
}

inline std::map<CommutatorKey, Rational> comm_map(const MetabelianElement &e)
{
    return {e.comm_part().begin(), e.comm_part().end()};
}

} // namespace detail

// Constants of degree n in the chosen space, as a kernel basis of the derivation matrix.
inline GradedConstantsBasis kernel_slice(const Derivation &delta, unsigned n, Space space)
{
    const std::size_t d = delta.rank();
    GradedConstantsBasis out;
    out.n = n;
    out.space = space;
    if (space == Space::PolyUV || space == Space::PolyUVOmega) {
        const auto keys = detail::uv_monomials(d, n, space == Space::PolyUVOmega);
        const auto kernels = detail::block_kernels(delta, keys, [&](const UVMonomial &m) {
            return detail::as_map(delta.apply(PolyUV(m)));
        });
        for (const auto &vec : kernels) {
            PolyUV p;
            for (const auto &[m, c] : vec) {
                p.add_term(m, c);
            }
            out.polynomials.push_back(std::move(p));
        }
        return out;
    }
    const auto keys = graded_basis(d, n, space == Space::Commutator);
    const auto kernels = detail::block_kernels(delta, keys, [&](const BasisKey &k) {
        return derive(delta, MetabelianElement::from_key(k)).as_key_map();
    });
    for (const auto &vec : kernels) {
        MetabelianElement e(d);
        for (const auto &[k, c] : vec) {
            e.add_key(k, c);
        }
        out.elements.push_back(std::move(e));
    }
    return out;
}

inline std::vector<std::size_t> kernel_dims(const Derivation &delta, unsigned bound, Space space)
{
    std::vector<std::size_t> out;
    for (unsigned n = 0; n <= bound; ++n) {
        out.push_back(kernel_slice(delta, n, space).dimension());
    }
    return out;
}

// Module generators in F_d' and algebra generators of (part of) K[U_d, V_d]^delta.
struct GeneratorSet {
    std::size_t rank = 0;
    std::vector<MetabelianElement> module_gens;
    std::vector<PolyUV> ring_gens;
};

namespace detail
{

inline unsigned require_homogeneous(const std::optional<unsigned> &deg, const std::string &what)
{
    if (!deg) {
        throw std::invalid_argument(what + " must be nonzero and homogeneous");
    }
    return *deg;
}

inline void check_constant(const Derivation &delta, const MetabelianElement &e, const std::string &name)
{
    const auto image = derive(delta, e);
    if (!image.is_zero()) {
        std::string s;
        for (const auto &[k, c] : image.comm_part()) {
            s += (s.empty() ? "" : " + ") + c.str() + "*" + k.str();
        }
        for (const auto &[k, c] : image.unit_part()) {
            s += (s.empty() ? "" : " + ") + c.str() + "*" + k.str('x');
        }
        throw NonConstantGenerator(name, s);
    }
}

inline void check_constant(const Derivation &delta, const PolyUV &p, const std::string &name)
{
    const auto image = delta.apply(p);
    if (!image.is_zero()) {
        throw NonConstantGenerator(name, uv::to_string(image));
    }
}

inline void check_ring_rank(const PolyUV &p, std::size_t d)
{
    const auto r = uv::rank_of(p);
    if (r && *r != d) {
        throw std::invalid_argument("ring generator has rank " + std::to_string(*r) + ", expected " + std::to_string(d));
    }
}

} // namespace detail

// Per-degree bases (as independent element lists) of the K[ring_gens]-module generated by
// module_gens, up to degree N.
inline std::vector<std::vector<MetabelianElement>> module_span(const GeneratorSet &gens, const Derivation &delta,
                                                               unsigned bound)
{
    const std::size_t d = delta.rank();
    std::vector<std::pair<unsigned, const MetabelianElement *>> mods;
    for (std::size_t i = 0; i < gens.module_gens.size(); ++i) {
        const auto &g = gens.module_gens[i];
        g.check_same_rank(MetabelianElement(d));
        if (!g.in_commutator_ideal()) {
            throw std::invalid_argument("module generator " + std::to_string(i + 1) + " is not in the commutator ideal");
        }
        detail::check_constant(delta, g, "module generator " + std::to_string(i + 1));
        mods.emplace_back(detail::require_homogeneous(g.homogeneous_degree(), "module generator"), &g);
    }
    std::vector<std::pair<unsigned, const PolyUV *>> rings;
    for (std::size_t i = 0; i < gens.ring_gens.size(); ++i) {
        const auto &r = gens.ring_gens[i];
        detail::check_ring_rank(r, d);
        detail::check_constant(delta, r, "ring generator " + std::to_string(i + 1));
        const unsigned deg = detail::require_homogeneous(r.homogeneous_degree(), "ring generator");
        if (deg == 0) {
            continue;
        }
        rings.emplace_back(deg, &r);
    }
    std::vector<std::vector<MetabelianElement>> bases(bound + 1);
    for (unsigned n = 0; n <= bound; ++n) {
        EchelonBasis<CommutatorKey> span;
        auto offer = [&](const MetabelianElement &e) {
            if (span.insert(detail::comm_map(e))) {
                bases[n].push_back(e);
            }
        };
        for (const auto &[deg, g] : mods) {
            if (deg == n) {
                offer(*g);
            }
        }
        for (const auto &[deg, r] : rings) {
            if (deg > n) {
                continue;
            }
            for (const auto &b : bases[n - deg]) {
                offer(act_uv(b, *r));
            }
        }
    }
    return bases;
}

inline std::vector<std::size_t> module_span_dims(const GeneratorSet &gens, const Derivation &delta, unsigned bound)
{
    std::vector<std::size_t> out;
    for (const auto &b : module_span(gens, delta, bound)) {
        out.push_back(b.size());
    }
    return out;
}

// Per-degree dimensions of the unital subalgebra generated by ring_gens.
inline std::vector<std::size_t> subalgebra_span_dims(const std::vector<PolyUV> &ring_gens, const Derivation &delta,
                                                     unsigned bound)
{
    const std::size_t d = delta.rank();
    std::vector<std::pair<unsigned, const PolyUV *>> rings;
    for (std::size_t i = 0; i < ring_gens.size(); ++i) {
        const auto &r = ring_gens[i];
        detail::check_ring_rank(r, d);
        detail::check_constant(delta, r, "ring generator " + std::to_string(i + 1));
        const unsigned deg = detail::require_homogeneous(r.homogeneous_degree(), "ring generator");
        if (deg > 0) {
            rings.emplace_back(deg, &r);
        }
    }
    std::vector<std::vector<PolyUV>> bases(bound + 1);
    bases[0].push_back(uv::one(d));
    for (unsigned n = 1; n <= bound; ++n) {
        EchelonBasis<UVMonomial> span;
        for (const auto &[deg, r] : rings) {
            if (deg > n) {
                continue;
            }
            for (const auto &b : bases[n - deg]) {
                PolyUV p = b * *r;
                if (span.insert(detail::as_map(p))) {
                    bases[n].push_back(std::move(p));
                }
            }
        }
    }
    std::vector<std::size_t> out;
    for (const auto &b : bases) {
        out.push_back(b.size());
    }
    return out;
}

// sum_i e_i p_i with e_i in F_d' and p_i in K[U_d, V_d].
struct ModuleCombination {
    std::vector<std::pair<MetabelianElement, PolyUV>> terms;
};

struct RelationCheck {
    bool holds = false;
    std::size_t residual_terms = 0;
};

inline MetabelianElement evaluate(const ModuleCombination &combo, std::size_t d)
{
    MetabelianElement sum(d);
    for (const auto &[e, p] : combo.terms) {
        if (e.rank() != d) {
            throw std::invalid_argument("relation term has the wrong rank");
        }
        if (!p.is_zero()) {
            detail::check_ring_rank(p, d);
            sum += act_uv(e, p);
        }
    }
    return sum;
}

inline RelationCheck verify_relation(const ModuleCombination &combo, const Derivation &delta)
{
    const auto value = evaluate(combo, delta.rank());
    return {value.is_zero(), value.term_count()};
}

// lhs = rhs in K[U_d, V_d].
inline RelationCheck verify_ring_relation(const PolyUV &lhs, const PolyUV &rhs)
{
    const auto diff = lhs - rhs;
    return {diff.is_zero(), diff.size()};
}

// Generators for rank d from those for rank d - 1, when x_d spans a 1x1 cell: the old module
// generators, pi of the V-parts of the ring generators, and ring generators extended by u_d, v_d.
inline GeneratorSet lift_generators(const GeneratorSet &prev, const Derivation &delta)
{
    if (!delta.has_trailing_fixed_generator()) {
        throw std::invalid_argument("lift_generators: the derivation must fix x_d on a 1x1 Jordan cell");
    }
    const std::size_t d = delta.rank();
    if (prev.rank + 1 != d) {
        throw std::invalid_argument("lift_generators: the previous set must have rank d - 1");
    }
    GeneratorSet out;
    out.rank = d;
    for (const auto &c : prev.module_gens) {
        out.module_gens.push_back(c.resized(d));
    }
    std::vector<PolyUV> e_parts;
    std::vector<PolyUV> f_parts;
    for (const auto &r : prev.ring_gens) {
        detail::check_ring_rank(r, prev.rank);
        const auto [e, f] = uv::split_by_v(r);
        if (!e.is_zero()) {
            e_parts.push_back(uv::resized(e, d));
        }
        if (!f.is_zero()) {
            f_parts.push_back(uv::resized(f, d));
        }
    }
    for (const auto &f : f_parts) {
        out.module_gens.push_back(pi(f, delta));
    }
    out.ring_gens = e_parts;
    out.ring_gens.insert(out.ring_gens.end(), f_parts.begin(), f_parts.end());
    out.ring_gens.push_back(uv::u(d, d - 1));
    out.ring_gens.push_back(uv::v(d, d - 1));
    return out;
}

// Basis {d_i u_d^m v_d^n, pi(g_j) u_d^m v_d^n} of (F_d')^delta up to degree N, from per-degree
// bases d_i of (F_{d-1}')^delta and g_j of K[U_{d-1}, V_{d-1}]_omega^delta. Each vector is
// checked to be a constant, and each degree to be linearly independent.
inline std::vector<std::vector<MetabelianElement>> lift_basis(const std::vector<std::vector<MetabelianElement>> &prev_comm,
                                                              const std::vector<std::vector<PolyUV>> &prev_omega,
                                                              const Derivation &delta, unsigned bound)
{
    if (!delta.has_trailing_fixed_generator()) {
        throw std::invalid_argument("lift_basis: the derivation must fix x_d on a 1x1 Jordan cell");
    }
    const std::size_t d = delta.rank();
    const std::size_t last = d - 1;
    std::vector<std::vector<MetabelianElement>> out(bound + 1);
    auto spread = [&](const MetabelianElement &base, unsigned base_deg) {
        for (unsigned m = 0; base_deg + m <= bound; ++m) {
            for (unsigned k = 0; base_deg + m + k <= bound; ++k) {
                ExponentVector u(d), v(d);
                u.set(last, m);
                v.set(last, k);
                out[base_deg + m + k].push_back(act_uv(base, PolyUV(UVMonomial(u, v))));
            }
        }
    };
    for (unsigned n = 0; n < prev_comm.size() && n <= bound; ++n) {
        for (const auto &di : prev_comm[n]) {
            spread(di.resized(d), n);
        }
    }
    for (unsigned n = 0; n < prev_omega.size() && n + 1 <= bound; ++n) {
        for (const auto &g : prev_omega[n]) {
            spread(pi(g, delta), n + 1);
        }
    }
    for (unsigned n = 0; n <= bound; ++n) {
        EchelonBasis<CommutatorKey> span;
        for (const auto &e : out[n]) {
            detail::check_constant(delta, e, "lifted basis vector of degree " + std::to_string(n));
            if (!span.insert(detail::comm_map(e))) {
                throw std::logic_error("lift_basis: lifted vectors of degree " + std::to_string(n)
                                       + " are linearly dependent");
            }
        }
    }
    return out;
}

} // namespace metab

#endif

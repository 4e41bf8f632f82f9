#ifndef METAB_CASES_HPP
#define METAB_CASES_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <metab/constants.hpp>
#include <metab/known_series.hpp>
#include <metab/parse.hpp>
#include <metab/series.hpp>

// Generator sets and relations of the small cases, and the checks that certify them.
namespace metab
{

struct DegreeCheck {
    unsigned n = 0;
    std::size_t kernel_dim = 0;
    std::size_t span_dim = 0;
    bool match = false;
};

struct NamedCheck {
    std::string name;
    bool holds = false;
};

struct VerificationReport {
    std::string case_name;
    std::vector<DegreeCheck> degrees;      // module span against (F_d')^delta
    std::vector<DegreeCheck> ring_degrees; // subalgebra span against K[U_d, V_d]^delta
    std::vector<NamedCheck> relations;

    [[nodiscard]] std::optional<std::string> first_failure() const
    {
        for (const auto &r : relations) {
            if (!r.holds) {
                return "relation " + r.name;
            }
        }
        for (const auto &dc : degrees) {
            if (!dc.match) {
                return "module span in degree " + std::to_string(dc.n);
            }
        }
        for (const auto &dc : ring_degrees) {
            if (!dc.match) {
                return "subalgebra span in degree " + std::to_string(dc.n);
            }
        }
        return std::nullopt;
    }
    [[nodiscard]] bool ok() const
    {
        return !first_failure();
    }
};

template <class T>
struct Named {
    std::string name;
    T value;
};

namespace detail
{

inline std::vector<DegreeCheck> compare_dims(const std::vector<std::size_t> &kernel, const std::vector<std::size_t> &span)
{
    std::vector<DegreeCheck> out;
    for (std::size_t n = 0; n < kernel.size() && n < span.size(); ++n) {
        out.push_back({static_cast<unsigned>(n), kernel[n], span[n], kernel[n] == span[n]});
    }
    return out;
}

template <class T>
std::vector<T> values(const std::vector<Named<T>> &xs)
{
    std::vector<T> out;
    for (const auto &x : xs) {
        out.push_back(x.value);
    }
    return out;
}

// Exponent tuples (e_1, ..., e_k) with sum e_i * weights[i] == n.
inline void weighted_tuples(const std::vector<unsigned> &weights, unsigned n, std::vector<unsigned> &cur,
                            const std::function<void(const std::vector<unsigned> &)> &emit)
{
    const std::size_t i = cur.size();
    if (i == weights.size()) {
        if (n == 0) {
            emit(cur);
        }
        return;
    }
    for (unsigned e = 0; e * weights[i] <= n; ++e) {
        cur.push_back(e);
        weighted_tuples(weights, n - e * weights[i], cur, emit);
        cur.pop_back();
    }
}

} // namespace detail

// Constants checks for every generator, then module and subalgebra spans against the kernels.
inline VerificationReport verify_generators(const std::string &case_name, const Derivation &delta,
                                            const std::vector<Named<MetabelianElement>> &module_gens,
                                            const std::vector<Named<PolyUV>> &ring_gens, unsigned bound)
{
    VerificationReport rep;
    rep.case_name = case_name;
    bool all_constant = true;
    for (const auto &g : module_gens) {
        const bool ok = derive(delta, g.value).is_zero();
        all_constant = all_constant && ok;
        rep.relations.push_back({"delta(" + g.name + ") = 0", ok});
    }
    for (const auto &g : ring_gens) {
        const bool ok = delta.apply(g.value).is_zero();
        all_constant = all_constant && ok;
        rep.relations.push_back({"delta(" + g.name + ") = 0", ok});
    }
    if (!all_constant) {
        return rep;
    }
    const GeneratorSet gens{delta.rank(), detail::values(module_gens), detail::values(ring_gens)};
    if (!module_gens.empty()) {
        rep.degrees = detail::compare_dims(kernel_dims(delta, bound, Space::Commutator),
                                           module_span_dims(gens, delta, bound));
    }
    if (!ring_gens.empty()) {
        rep.ring_degrees = detail::compare_dims(kernel_dims(delta, bound, Space::PolyUV),
                                                subalgebra_span_dims(gens.ring_gens, delta, bound));
    }
    return rep;
}

namespace cases
{

// Named elements in one rank, written in the expression grammar.
class Table
{
public:
    explicit Table(std::size_t d) : d_(d) {}

    const MetabelianElement &elem(const std::string &name, const std::string &text)
    {
        return elems_.insert_or_assign(name, parse_element(text, d_)).first->second;
    }
    const PolyUV &poly(const std::string &name, const std::string &text)
    {
        return polys_.insert_or_assign(name, parse_polyuv(text, d_)).first->second;
    }
    void set(const std::string &name, MetabelianElement e)
    {
        elems_.insert_or_assign(name, std::move(e));
    }
    [[nodiscard]] const MetabelianElement &c(const std::string &name) const
    {
        return elems_.at(name);
    }
    [[nodiscard]] const PolyUV &f(const std::string &name) const
    {
        return polys_.at(name);
    }
    [[nodiscard]] std::vector<Named<MetabelianElement>> elems(std::initializer_list<const char *> names) const
    {
        std::vector<Named<MetabelianElement>> out;
        for (const char *n : names) {
            out.push_back({n, elems_.at(n)});
        }
        return out;
    }
    [[nodiscard]] std::vector<Named<PolyUV>> polys(std::initializer_list<const char *> names) const
    {
        std::vector<Named<PolyUV>> out;
        for (const char *n : names) {
            out.push_back({n, polys_.at(n)});
        }
        return out;
    }

private:
    std::size_t d_;
    std::map<std::string, MetabelianElement> elems_;
    std::map<std::string, PolyUV> polys_;
};

inline Table d2_table()
{
    Table t(2);
    t.elem("c1", "[x2,x1]");
    t.poly("f1", "u1");
    t.poly("f2", "v1");
    t.poly("f3", "u1v2 - u2v1");
    return t;
}

// [x2,x1] K[U_2,V_2]^delta is free: span dims equal dim K[U_2,V_2]^delta in degree n - 2.
inline VerificationReport d2_block2(unsigned bound)
{
    const auto delta = Derivation::from_partition({1});
    const auto t = d2_table();
    auto rep = verify_generators("d2-block2", delta, t.elems({"c1"}), t.polys({"f1", "f2", "f3"}), bound);
    const auto ring = kernel_dims(delta, bound, Space::PolyUV);
    bool free = !rep.degrees.empty();
    for (const auto &dc : rep.degrees) {
        const std::size_t expected = dc.n >= 2 ? ring[dc.n - 2] : 0;
        free = free && dc.span_dim == expected;
    }
    rep.relations.push_back({"free cyclic module count", free});
    return rep;
}

// Lift of the rank two generators along delta(1,0).
inline VerificationReport d3_block21(unsigned bound)
{
    const auto delta = Derivation::from_partition({1, 0});
    const auto t2 = d2_table();
    const GeneratorSet prev{2, detail::values(t2.elems({"c1"})), detail::values(t2.polys({"f1", "f2", "f3"}))};
    const auto lifted = lift_generators(prev, delta);

    std::vector<Named<MetabelianElement>> mods{{"c1", lifted.module_gens[0]},
                                               {"pi(f1)", lifted.module_gens[1]},
                                               {"pi(f2)", lifted.module_gens[2]}};
    const std::vector<std::string> ring_names{"e1", "f1", "f2", "u3", "v3"};
    std::vector<Named<PolyUV>> rings;
    for (std::size_t i = 0; i < lifted.ring_gens.size(); ++i) {
        rings.push_back({ring_names.at(i), lifted.ring_gens[i]});
    }
    auto rep = verify_generators("d3-block21", delta, mods, rings, bound);

    Table t(3);
    t.elem("pi(f1)", "[x3,x1]");
    t.elem("pi(f2)", "x1[x3,x2] - x2[x3,x1]");
    rep.relations.push_back({"pi(f1) = [x3,x1]", t.c("pi(f1)") == lifted.module_gens[1]});
    rep.relations.push_back({"pi(f2) = x1[x3,x2] - x2[x3,x1]", t.c("pi(f2)") == lifted.module_gens[2]});

    const ModuleCombination rel{{{lifted.module_gens[0], parse_polyuv("u1v3", 3)},
                                 {lifted.module_gens[1], parse_polyuv("-(u1v2 - u2v1)", 3)},
                                 {lifted.module_gens[2], parse_polyuv("v1", 3)}}};
    rep.relations.push_back({"c1 u1v3 - pi(f1)(u1v2 - u2v1) + pi(f2) v1 = 0", verify_relation(rel, delta).holds});

    // basis from the rank two constants
    const auto prev_delta = delta.restricted(2);
    std::vector<std::vector<MetabelianElement>> comm_bases;
    std::vector<std::vector<PolyUV>> omega_bases;
    for (unsigned n = 0; n <= bound; ++n) {
        comm_bases.push_back(kernel_slice(prev_delta, n, Space::Commutator).elements);
        omega_bases.push_back(kernel_slice(prev_delta, n, Space::PolyUVOmega).polynomials);
    }
    bool basis_ok = true;
    try {
        const auto basis = lift_basis(comm_bases, omega_bases, delta, bound);
        for (const auto &dc : rep.degrees) {
            basis_ok = basis_ok && basis[dc.n].size() == dc.kernel_dim;
        }
    } catch (const std::logic_error &) {
        basis_ok = false;
    }
    rep.relations.push_back({"lifted basis is a basis", basis_ok});

    const auto series = expand(known::d3_block21_commutator_gl2(), bound);
    bool series_ok = true;
    for (const auto &dc : rep.degrees) {
        series_ok = series_ok && series.at_ones()[dc.n] == static_cast<long>(dc.kernel_dim);
    }
    rep.relations.push_back({"kernel dims match the bigraded series", series_ok});
    return rep;
}

inline Table d3_table()
{
    Table t(3);
    t.poly("f1", "u1");
    t.poly("f2", "v1");
    t.poly("f3", "u2^2 - 2u1u3");
    t.poly("f4", "v2^2 - 2v1v3");
    t.poly("f5", "u1v3 - u2v2 + u3v1");
    t.poly("f6", "u1v2 - u2v1");
    t.poly("f7", "2u1^2v3 - 2u1u2v2 + u2^2v1");
    t.poly("f8", "u1v2^2 - 2v1u2v2 + 2u3v1^2");
    t.elem("c1", "[x2,x1]");
    t.elem("c2", "[x3,x1]v1 - [x2,x1]v2");
    t.elem("c3", "[x3,x1]u1 - [x2,x1]u2");
    t.elem("c4", "[x3,x2]u1 - [x3,x1]u2 + [x2,x1]u3");
    t.elem("c5", "[x3,x1]u3v1 - [x3,x1]u1v3 + [x3,x2]u1v2 - [x3,x2]u2v1 - [x2,x1]u3v2 + [x2,x1]u2v3");
    t.elem("c2'", "[x3,x1,x1] - [x2,x1,x2]");
    t.elem("c3'", "x1[x3,x1] - x2[x2,x1]");
    t.elem("c4'", "x1[x3,x2] - x2[x3,x1] + x3[x2,x1]");
    t.elem("L", "x2^2 - (x1x3 + x3x1)");
    return t;
}

namespace detail
{

// Span closure of seeds under left and right multiplication by x1 and L, degree by degree.
inline std::vector<std::size_t> two_sided_span_dims(const std::vector<std::pair<unsigned, MetabelianElement>> &seeds,
                                                    const MetabelianElement &x1, const MetabelianElement &L,
                                                    unsigned bound)
{
    std::vector<std::vector<MetabelianElement>> bases(bound + 1);
    for (unsigned n = 0; n <= bound; ++n) {
        EchelonBasis<CommutatorKey> span;
        auto offer = [&](const MetabelianElement &e) {
            if (span.insert(metab::detail::comm_map(e))) {
                bases[n].push_back(e);
            }
        };
        for (const auto &[deg, s] : seeds) {
            if (deg == n) {
                offer(s);
            }
        }
        for (const auto &[m, step] : {std::pair{&x1, 1U}, std::pair{&L, 2U}}) {
            if (step > n) {
                continue;
            }
            for (const auto &b : bases[n - step]) {
                offer(*m * b);
                offer(b * *m);
            }
        }
    }
    std::vector<std::size_t> out;
    for (const auto &b : bases) {
        out.push_back(b.size());
    }
    return out;
}

} // namespace detail

inline VerificationReport d3_block3(unsigned bound)
{
    const std::size_t d = 3;
    const auto delta = Derivation::from_partition({2});
    const auto t = d3_table();
    auto rep = verify_generators("d3-block3", delta, t.elems({"c1", "c2", "c3", "c4", "c5"}),
                                 t.polys({"f1", "f2", "f3", "f4", "f5", "f6"}), bound);
    auto check = [&](const std::string &name, bool holds) { rep.relations.push_back({name, holds}); };
    const auto &f = [&](const char *n) -> const PolyUV & { return t.f(n); };
    const auto &c = [&](const char *n) -> const MetabelianElement & { return t.c(n); };

    check("delta(f7) = 0", delta.apply(f("f7")).is_zero());
    check("delta(f8) = 0", delta.apply(f("f8")).is_zero());
    check("c2 = [x3,x1,x1] - [x2,x1,x2]", c("c2") == c("c2'"));
    check("c3 = x1[x3,x1] - x2[x2,x1]", c("c3") == c("c3'"));
    check("c4 = x1[x3,x2] - x2[x3,x1] + x3[x2,x1]", c("c4") == c("c4'"));

    auto rel = [&](const std::string &name, std::vector<std::pair<const char *, PolyUV>> terms) {
        ModuleCombination combo;
        for (auto &[g, p] : terms) {
            combo.terms.emplace_back(c(g), std::move(p));
        }
        check(name, verify_relation(combo, delta).holds);
    };
    const PolyUV &f1 = f("f1"), &f2 = f("f2"), &f3 = f("f3"), &f4 = f("f4"), &f5 = f("f5"), &f6 = f("f6");
    rel("R1: c1f6 = c3f2 - c2f1", {{"c1", f6}, {"c3", -f2}, {"c2", f1}});
    rel("R2: c2f6 = c4f2^2 - c1(f1f4 + f2f5)", {{"c2", f6}, {"c4", -(f2 * f2)}, {"c1", f1 * f4 + f2 * f5}});
    rel("R3: c3f6 = c4f1f2 + c1(f1f5 + f2f3)", {{"c3", f6}, {"c4", -(f1 * f2)}, {"c1", -(f1 * f5 + f2 * f3)}});
    rel("R4: c4f6 = c2f3 + c3f5 + c5f1", {{"c4", f6}, {"c2", -f3}, {"c3", -f5}, {"c5", -f1}});
    rel("R5: c5f2 = c2f5 + c3f4", {{"c5", f2}, {"c2", -f5}, {"c3", -f4}});
    rel("R6: c5f6 = c1(f3f4 - f5^2) + c4(f1f4 + f2f5)",
        {{"c5", f6}, {"c1", -(f3 * f4 - f5 * f5)}, {"c4", -(f1 * f4 + f2 * f5)}});

    const Rational two(2);
    check("f6^2 = f1^2f4 + f2^2f3 + 2f1f2f5",
          verify_ring_relation(f6 * f6, f1 * f1 * f4 + f2 * f2 * f3 + two * f1 * f2 * f5).holds);
    check("f7 = f2f3 + 2f1f5", verify_ring_relation(f("f7"), f2 * f3 + two * f1 * f5).holds);
    check("f8 = f1f4 + 2f2f5", verify_ring_relation(f("f8"), f1 * f4 + two * f2 * f5).holds);

    // E: c_j times monomials in f1..f5, without f2 for c5; a basis of (F_3')^delta
    const auto kernel = kernel_dims(delta, bound, Space::Commutator);
    bool e_ok = true;
    for (unsigned n = 0; n <= bound && e_ok; ++n) {
        EchelonBasis<CommutatorKey> span;
        std::size_t count = 0;
        for (const char *g : {"c1", "c2", "c3", "c4", "c5"}) {
            const unsigned deg = *c(g).homogeneous_degree();
            if (deg > n) {
                continue;
            }
            const bool is_c5 = std::string(g) == "c5";
            const std::vector<const PolyUV *> ring = is_c5 ? std::vector{&f1, &f3, &f4, &f5}
                                                           : std::vector{&f1, &f2, &f3, &f4, &f5};
            const std::vector<unsigned> weights = is_c5 ? std::vector{1U, 2U, 2U, 2U} : std::vector{1U, 1U, 2U, 2U, 2U};
            std::vector<unsigned> cur;
            metab::detail::weighted_tuples(weights, n - deg, cur, [&](const std::vector<unsigned> &ex) {
                PolyUV p = uv::one(d);
                for (std::size_t i = 0; i < ex.size(); ++i) {
                    if (ex[i] > 0) {
                        p = p * ring[i]->pow(ex[i]);
                    }
                }
                e_ok = span.insert(metab::detail::comm_map(act_uv(c(g), p))) && e_ok;
                ++count;
            });
        }
        e_ok = e_ok && count == kernel[n];
    }
    check("E is a basis of (F_3')^delta", e_ok);

    // two-sided multiplications by x1 and L = x2^2 - (x1x3 + x3x1)
    const auto x1 = parse_element("x1", d);
    const auto &L = c("L");
    check("delta(x2^2 - (x1x3 + x3x1)) = 0", derive(delta, L).is_zero());
    bool left_ok = true;
    bool right_ok = true;
    for (unsigned n = 2; n <= std::min(bound, 5U); ++n) {
        for (const auto &k : commutator_keys(d, n)) {
            const auto w = MetabelianElement::from_key(k);
            left_ok = left_ok && x1 * w == act_uv(w, f1) && L * w == act_uv(w, f3);
            right_ok = right_ok && w * x1 - x1 * w == act_uv(w, f2)
                       && w * L - L * w + act_uv(w, two * f5) == act_uv(w, f4);
        }
    }
    check("x1 w = w f1 and (x2^2 - (x1x3 + x3x1)) w = w f3 on F_3'", left_ok);
    check("w x1 - x1 w = w f2 and wL - Lw + 2wf5 = w f4 on F_3'", right_ok);

    std::vector<std::pair<unsigned, MetabelianElement>> seeds;
    for (const char *g : {"c1", "c2", "c3", "c4", "c5"}) {
        const unsigned deg = *c(g).homogeneous_degree();
        for (unsigned p = 0; deg + 2 * p <= bound; ++p) {
            seeds.emplace_back(deg + 2 * p, p == 0 ? c(g) : act_uv(c(g), f5.pow(p)));
        }
    }
    check("(F_3')^delta = sum K[x1,L](c_j K[f5])K[x1,L]",
          detail::two_sided_span_dims(seeds, x1, L, bound) == kernel);
    return rep;
}

inline const std::vector<std::string> &names()
{
    static const std::vector<std::string> n{"d2-block2", "d3-block21", "d3-block3"};
    return n;
}

inline VerificationReport run(const std::string &name, unsigned bound)
{
    if (name == "d2-block2") {
        return d2_block2(bound);
    }
    if (name == "d3-block21") {
        return d3_block21(bound);
    }
    if (name == "d3-block3") {
        return d3_block3(bound);
    }
    throw std::invalid_argument("unknown case '" + name + "'");
}

} // namespace cases

} // namespace metab

#endif

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace synclat;
using namespace testing_support;

namespace {

QSubspace complement_e() { return from_equations(5, {eq(5, 2, 3), eq(5, 4, 5), {1, 1, 0, 1, 0}}); }
QSubspace w1() { return from_equations(5, {eq(5, 1, 2), eq(5, 2, 3), eq(5, 4, 5), {2, 0, 0, 1, 0}}); }
QSubspace w2() { return from_equations(5, {eq(5, 1, 4), eq(5, 4, 5), eq(5, 2, 3), {2, 1, 0, 0, 0}}); }
QSubspace w3() { return from_equations(5, {eq(5, 2, 3), eq(5, 3, 4), eq(5, 4, 5), {1, 2, 0, 0, 0}}); }

std::multiset<std::string> partitions_of(const std::vector<SpecialJordan>& sp) {
    std::multiset<std::string> out;
    for (const auto& s : sp) out.insert(s.p_partition.to_string());
    return out;
}

std::vector<QSubspace> hulls(const std::vector<SpecialJordan>& sp) {
    std::vector<QSubspace> out;
    for (const auto& s : sp) out.push_back(s.hull);
    return out;
}

bool contains_space(const std::vector<QSubspace>& v, const QSubspace& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(SpecialsIn, ThreeLinesInComplement) {
    auto sp = specials_in(complement_e(), 1);
    ASSERT_EQ(sp.size(), 3u);
    EXPECT_TRUE(contains_space(sp, w1()));
    EXPECT_TRUE(contains_space(sp, w2()));
    EXPECT_TRUE(contains_space(sp, w3()));
}

TEST(SpecialsIn, FullDimensionReturnsItself) {
    auto e = complement_e();
    auto sp = specials_in(e, 2);
    ASSERT_EQ(sp.size(), 1u);
    EXPECT_EQ(sp[0], e);
    EXPECT_THROW(specials_in(e, 3), std::invalid_argument);
    EXPECT_THROW(specials_in(e, 0), std::invalid_argument);
}

TEST(SpecialsIn, FullSynchronyIsItsOwnSpecial) {
    auto f = polydiagonal_of(Partition::one_class(5));
    auto sp = specials_in(f, 1);
    ASSERT_EQ(sp.size(), 1u);
    EXPECT_EQ(sp[0], f);
}

TEST(SpecialsIn, MatchesDefinitionByBruteForce) {
    // special = no same-dim subspace of E with strictly more equalities; for
    // lines, compare against P-images of all lines E ∩ Δ over all partitions.
    auto e = complement_e();
    std::set<std::string> lines;
    std::vector<Partition> line_parts;
    for (const auto& p : enumerate_partitions(5)) {
        auto w = intersect(e, polydiagonal_of(p));
        if (w.dim() == 1 && lines.insert(w.key()).second) line_parts.push_back(smallest_polydiagonal(w));
    }
    std::size_t minimal = 0;
    for (const auto& a : line_parts) {
        bool is_min = true;
        for (const auto& b : line_parts)
            if (a != b && a.refines(b)) is_min = false;
        minimal += is_min;
    }
    EXPECT_EQ(minimal, specials_in(e, 1).size());
}

TEST(IsSpecial, ExampleSubspaces) {
    auto e = from_equations(5, {{3, 4, -1, 0, 3}, {0, 1, -1, -1, 1}});
    auto u = from_equations(5, {eq(5, 2, 3), zero(5, 4), zero(5, 5), {1, 1, 0, 0, 0}});
    auto w = from_equations(5, {eq(5, 2, 3), eq(5, 3, 4), eq(5, 4, 5), {1, 2, 0, 0, 0}});
    ASSERT_TRUE(e.contains(u));
    ASSERT_TRUE(e.contains(w));
    EXPECT_FALSE(is_special(u, e));
    EXPECT_TRUE(is_special(w, e));
    EXPECT_TRUE(is_special(e, e));
    EXPECT_THROW(is_special(QSubspace::zero(RationalField{}, 5), e), std::invalid_argument);
    EXPECT_THROW(is_special(polydiagonal_of(Partition::one_class(5)), e), std::invalid_argument);
}

TEST(DecomposeIntoSpecials, ComplementSplitsIntoTwoLines) {
    auto e = complement_e();
    auto parts = decompose_into_specials(e);
    ASSERT_EQ(parts.size(), 2u);
    auto s = sum(parts[0], parts[1]);
    EXPECT_TRUE(s.direct);
    EXPECT_EQ(s.space, e);
    for (const auto& p : parts) {
        EXPECT_TRUE(p == w1() || p == w2() || p == w3());
        EXPECT_TRUE(is_special(p, e));
    }
}

TEST(DecomposeIntoSpecials, LineIsItself) {
    auto parts = decompose_into_specials(w3());
    ASSERT_EQ(parts.size(), 1u);
    EXPECT_EQ(parts[0], w3());
}

TEST(DecomposeIntoSpecials, CoordinatePlane) {
    // {x3 = 0} in dimension 3: the coordinate axes along x1 and x2
    auto e = from_equations(3, {zero(3, 3)});
    auto parts = decompose_into_specials(e);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_TRUE(contains_space(parts, span_of(3, {{1, 0, 0}})));
    EXPECT_TRUE(contains_space(parts, span_of(3, {{0, 1, 0}})));
}

TEST(DecomposeIntoSpecials, RejectsSubspaceWithF) {
    EXPECT_THROW(decompose_into_specials(from_equations(4, {eq(4, 1, 2)})), std::invalid_argument);
}

TEST(DecomposeIntoSpecials, RandomSubspacesWithoutF) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 3 + i % 4;
        std::vector<std::vector<long>> vs(1 + i % (n - 1), std::vector<long>(n));
        for (auto& v : vs)
            for (auto& x : v) x = coef(rng);
        auto e = span_of(n, vs);
        if (e.is_zero() || contains_full_synchrony(e)) continue;
        auto parts = decompose_into_specials(e);
        ASSERT_EQ(parts.size(), e.dim());
        auto acc = QSubspace::zero(RationalField{}, n);
        for (const auto& p : parts) {
            EXPECT_EQ(p.dim(), 1u);
            EXPECT_TRUE(is_special(p, e));
            auto s = sum(acc, p);
            EXPECT_TRUE(s.direct);
            acc = s.space;
        }
        EXPECT_EQ(acc, e);
    }
}

TEST(ValencyComplement, FourCellExample) {
    auto comps = spectral_components(corpus("valency_triple"));
    const auto& v = comps.front();
    ASSERT_TRUE(v.is_valency);
    auto g = rational_hull(v.generalized());
    EXPECT_EQ(g, from_equations(4, {{1, -3, 1, 1}}));
    auto e = rational_hull(valency_complement(v));
    EXPECT_EQ(e.dim(), 2u);
    auto f = polydiagonal_of(Partition::one_class(4));
    auto s = sum(f, e);
    EXPECT_TRUE(s.direct);
    EXPECT_EQ(s.space, g);
    // the alternative complement {x1 + x3 + x4 = 0, x2 = 0} has the same special P-images
    auto alt = from_equations(4, {{1, 0, 1, 1}, zero(4, 2)});
    std::set<std::string> ours, theirs;
    for (const auto& w : specials_in(e, 1)) ours.insert(smallest_polydiagonal(w).to_string());
    for (const auto& w : specials_in(alt, 1)) theirs.insert(smallest_polydiagonal(w).to_string());
    EXPECT_EQ(ours, theirs);
    EXPECT_EQ(ours.size(), 6u);
}

TEST(ValencyComplement, ThreeCellExample) {
    auto comps = spectral_components(net_of({{2, 0, 0}, {1, 0, 1}, {0, 0, 2}}));
    auto e = rational_hull(valency_complement(comps.front()));
    EXPECT_EQ(rational_hull(comps.front().generalized()), from_equations(3, {{1, -2, 1}}));
    EXPECT_EQ(e, span_of(3, {{1, 0, -1}}));
}

TEST(ValencyComplement, Errors) {
    auto comps = spectral_components(corpus("fig_pm_i"));
    EXPECT_THROW(valency_complement(comps.front()), std::invalid_argument);
    EXPECT_THROW(valency_complement(comps.back()), std::invalid_argument);
}

TEST(ValencyComplement, EveryLineHasARepresentative) {
    auto comps = spectral_components(corpus("valency_triple"));
    auto sj = special_jordans_component(comps.front(), 0);
    auto g = comps.front().generalized();
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int i = 0; i < 40; ++i) {
        std::vector<ExtElem> x(4, comps.front().field.zero());
        for (std::size_t r = 0; r < g.dim(); ++r) {
            auto c = comps.front().field.from_rational(coef(rng));
            for (std::size_t j = 0; j < 4; ++j)
                x[j] = comps.front().field.add(x[j], comps.front().field.mul(c, g.basis()(r, j)));
        }
        auto line = Subspace<ExtField>::span(comps.front().field, 4, {x});
        if (line.is_zero() || contains_full_synchrony(line)) continue;
        auto p = smallest_polydiagonal(line);
        bool found = false;
        for (const auto& s : sj) {
            if (s.is_fully_synchronous) continue;
            auto plane_ok = sum(sj.front().basis, line).space == s.family;
            // a line with the same P as a special shares its F-plane or has a finer P
            if (s.p_partition == p && plane_ok) found = true;
            if (p.refines(s.p_partition) && p != s.p_partition) found = true;
        }
        EXPECT_TRUE(found) << p.to_string();
    }
}

TEST(SpecialJordans, PlusMinusISix) {
    auto comps = spectral_components(corpus("fig_pm_i"));
    auto sp = special_jordans(comps);
    EXPECT_EQ(special_count(sp), 6u);
    auto h = hulls(sp);
    EXPECT_TRUE(contains_space(h, polydiagonal_of(Partition::one_class(5))));
    EXPECT_TRUE(contains_space(h, w1()));
    EXPECT_TRUE(contains_space(h, w2()));
    EXPECT_TRUE(contains_space(h, w3()));
    // the complex pair: one record of weight 2 whose hull is Ker(A^2 + I)
    auto a = corpus("fig_pm_i").adjacency();
    auto gi = nullspace(a * a + QMatrix::identity(RationalField{}, 5));
    EXPECT_TRUE(contains_space(h, gi));
    EXPECT_EQ(smallest_polydiagonal(gi), Partition::parse("{1,4}{2}{3}{5}", 5));
}

TEST(SpecialJordans, Nd1Eight) {
    auto sp = special_jordans(spectral_components(corpus("fig_nd1")));
    EXPECT_EQ(special_count(sp), 8u);
    auto h = hulls(sp);
    EXPECT_TRUE(contains_space(h, from_equations(5, {eq(5, 2, 4), eq(5, 3, 5), {3, 4, 2, 0, 0}})));
    EXPECT_TRUE(contains_space(h, from_equations(5, {eq(5, 2, 5), {3, 7, -1, 0, 0}, {0, 2, -1, -1, 0}})));
    EXPECT_TRUE(contains_space(h, from_equations(5, {eq(5, 3, 4), {3, 4, -1, 0, 3}, {0, 1, -2, 0, 1}})));
    EXPECT_TRUE(contains_space(h, w1()));
    EXPECT_TRUE(contains_space(h, w2()));
    EXPECT_TRUE(contains_space(h, w3()));
    EXPECT_EQ(partitions_of(sp), (std::multiset<std::string>{"{1,2,3,4,5}", "{1}{2,5}{3,4}", "{1,2,3}{4,5}",
                                                             "{1,4,5}{2,3}", "{1}{2,3,4,5}", "{1}{2,4}{3,5}",
                                                             "{1}{2,5}{3}{4}", "{1}{2}{3,4}{5}"}));
}

TEST(SpecialJordans, Net6Thirteen) {
    EXPECT_EQ(special_count(special_jordans(spectral_components(corpus("fig_net6")))), 13u);
}

TEST(SpecialJordans, MeuExTwelve) {
    auto sp = special_jordans(spectral_components(corpus("fig_meu_ex")));
    EXPECT_EQ(special_count(sp), 12u);
    const std::size_t n = 6;
    auto h = hulls(sp);
    std::vector<QSubspace> listed = {
        from_equations(n, {zero(n, 1), zero(n, 2), zero(n, 3), zero(n, 4), zero(n, 5)}),             // W1
        from_equations(n, {zero(n, 1), zero(n, 2), zero(n, 4), zero(n, 5), zero(n, 6)}),             // W2
        from_equations(n, {zero(n, 1), zero(n, 2), zero(n, 4), zero(n, 5), eq(n, 3, 6)}),              // W3
        from_equations(n, {zero(n, 1), zero(n, 2), zero(n, 3), zero(n, 4)}),                         // U1
        from_equations(n, {zero(n, 1), zero(n, 2), zero(n, 4), eq(n, 3, 5)}),                        // U4
        from_equations(n, {zero(n, 1), zero(n, 4), zero(n, 5), zero(n, 6)}),                         // U8
        from_equations(n, {zero(n, 1), zero(n, 4), zero(n, 5), eq(n, 2, 6)}),                        // U10
        from_equations(n, {zero(n, 1), zero(n, 4), eq(n, 2, 5), eq(n, 3, 6)}),                       // U15
        from_equations(n, {zero(n, 1), zero(n, 2), zero(n, 3)}),                                     // V1
        from_equations(n, {zero(n, 1), zero(n, 2), eq(n, 3, 4)}),                                    // V2
        from_equations(n, {eq(n, 2, 4), eq(n, 3, 5), zero(n, 1)}),                                   // V3
    };
    for (const auto& s : listed) EXPECT_TRUE(contains_space(h, s)) << s.key();
}

TEST(SpecialJordans, Invariants) {
    for (auto name : {"fig_pm_i", "fig_nd1", "fig_se", "fig_net6", "fig_meu_ex", "valency_triple"}) {
        auto net = corpus(name);
        auto comps = spectral_components(net);
        auto sp = special_jordans(comps);
        auto a = net.adjacency();
        for (const auto& s : sp) {
            const auto& c = comps[s.component];
            EXPECT_EQ(Subspace<ExtField>::span(c.field, net.cells(), jordan_chain(c, s.chain_seed, s.dim)), s.basis);
            EXPECT_EQ(vector_order(c, s.chain_seed), s.dim);
            EXPECT_EQ(s.hull.dim(), c.degree() * s.dim);
            EXPECT_TRUE(s.hull.contains(image(a, s.hull)));
            EXPECT_EQ(smallest_polydiagonal(s.hull), s.p_partition);
            EXPECT_EQ(s.is_fully_synchronous, c.is_valency && s.p_partition.num_classes() == 1);
            EXPECT_TRUE(s.family.contains(s.basis));
        }
        for (const auto& x : sp)
            for (const auto& y : sp) {
                if (x.component != y.component || x.dim != y.dim || y.is_fully_synchronous) continue;
                EXPECT_FALSE(x.p_partition != y.p_partition && x.p_partition.refines(y.p_partition)) << name;
            }
    }
}

TEST(SpecialJordans, OrderTwoMatchesExhaustiveLineSearch) {
    // over Q, every 2-dim Jordan subspace of the order-2 component is the
    // chain span of an order-2 vector; P-images of those through
    // polydiagonal intersections bound the specials from below
    auto net = corpus("fig_nd1");
    auto comps = spectral_components(net);
    const SpectralComponent* c = nullptr;
    for (const auto& x : comps)
        if (x.order == 2) c = &x;
    ASSERT_NE(c, nullptr);
    std::set<Partition> images;
    for (const auto& p : enumerate_partitions(5)) {
        auto w = intersect_polydiagonal(c->kernel(2), p);
        for (std::size_t r = 0; r < w.dim(); ++r) {
            auto x = w.basis_vector(r);
            if (vector_order(*c, x) != 2) continue;
            auto j = Subspace<ExtField>::span(c->field, 5, jordan_chain(*c, x, 2));
            images.insert(smallest_polydiagonal(j));
        }
    }
    std::set<std::string> minimal;
    for (const auto& a : images) {
        bool is_min = true;
        for (const auto& b : images)
            if (a != b && a.refines(b)) is_min = false;
        if (is_min) minimal.insert(a.to_string());
    }
    std::set<std::string> ours;
    for (const auto& s : special_jordans(comps))
        if (s.dim == 2) ours.insert(s.p_partition.to_string());
    EXPECT_EQ(ours, minimal);
}

TEST(RationalHull, ComplexPair) {
    auto comps = spectral_components(corpus("fig_pm_i"));
    for (const auto& c : comps) {
        if (c.degree() != 2) continue;
        auto h = rational_hull(c.generalized());
        EXPECT_EQ(h.dim(), 2u);
        auto a = corpus("fig_pm_i").adjacency();
        EXPECT_EQ(h, nullspace(a * a + QMatrix::identity(RationalField{}, 5)));
        EXPECT_EQ(smallest_polydiagonal(h).to_string(), "{1,4}{2}{3}{5}");
    }
}

TEST(RationalHull, RationalComponentAndF) {
    auto comps = spectral_components(corpus("fig_se"));
    for (const auto& c : comps) EXPECT_EQ(rational_hull(c.kernel(1)).dim(), c.kernel(1).dim());
    auto sp = special_jordans(comps);
    EXPECT_EQ(sp.front().hull, polydiagonal_of(Partition::one_class(4)));
}

TEST(DecomposeCn, CorpusHullsSpan) {
    for (auto name : {"fig_pm_i", "fig_nd1", "fig_se", "fig_net6", "fig_meu_ex", "single_cell", "valency_triple"}) {
        auto net = corpus(name);
        auto comps = spectral_components(net);
        auto d = decompose_Cn(comps, special_jordans(comps));
        std::size_t total = 0;
        QMatrix stacked(RationalField{}, 0, net.cells());
        for (const auto& s : d) {
            total += s.hull.dim();
            stacked = QMatrix::stack(stacked, s.hull.basis());
        }
        EXPECT_EQ(total, net.cells()) << name;
        EXPECT_EQ(rank_oracle(stacked), net.cells()) << name;
    }
}

TEST(DecomposeCn, PlusMinusIDims) {
    auto comps = spectral_components(corpus("fig_pm_i"));
    auto d = decompose_Cn(comps, special_jordans(comps));
    std::multiset<std::size_t> dims;
    for (const auto& s : d) dims.insert(s.hull.dim());
    EXPECT_EQ(dims, (std::multiset<std::size_t>{1, 1, 1, 2}));
}

TEST(DecomposeCn, MeuExChainLengths) {
    auto comps = spectral_components(corpus("fig_meu_ex"));
    auto d = decompose_Cn(comps, special_jordans(comps));
    std::multiset<std::size_t> zero_chains;
    for (const auto& s : d)
        if (!comps[s.component].is_valency) zero_chains.insert(s.dim);
        else EXPECT_EQ(s.dim, 1u);
    EXPECT_EQ(zero_chains, (std::multiset<std::size_t>{3, 2}));
}

TEST(DecomposeCn, OneCell) {
    auto comps = spectral_components(corpus("single_cell"));
    auto d = decompose_Cn(comps, special_jordans(comps));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_TRUE(d[0].is_fully_synchronous);
}

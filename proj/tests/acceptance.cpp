// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "test_support.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <set>

using namespace synclat;
using namespace testing_support;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> failures;
    std::string note;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::set<std::string> nontrivial(const SynchronyLattice& lat) {
    std::set<std::string> out;
    for (const auto& e : lat.elements())
        if (!e.trivial) out.insert(e.partition.to_string());
    return out;
}

std::multiset<std::string> special_partitions(const std::vector<SpecialJordan>& sp) {
    std::multiset<std::string> out;
    for (const auto& s : sp) out.insert(s.p_partition.to_string());
    return out;
}

std::multiset<std::string> members(const Analysis& an, const std::string& p) {
    std::multiset<std::string> out;
    auto idx = an.lattice.index_of(Partition::parse(p, an.net.cells()));
    if (!idx) return out;
    for (const auto& m : an.lattice[*idx].decomposition) out.insert(an.specials[m.special].p_partition.to_string());
    return out;
}

std::vector<Network> random_networks(std::size_t count) {
    std::vector<Network> out;
    for (std::uint64_t s = 0; s < count; ++s) out.push_back(random_regular(1 + s % 6, 1 + (s / 6) % 3, 100000 + s));
    return out;
}

const char* kCorpus[] = {"fig_pm_i", "fig_nd1", "fig_se", "fig_net6", "fig_meu_ex", "single_cell", "valency_triple"};

void golden(Criterion& c) {
    double worst = 0;
    auto timed = [&](const char* name) {
        auto t = Clock::now();
        auto an = analyze(corpus(name));
        double s = seconds_since(t);
        worst = std::max(worst, s);
        c.require(s < 5.0, std::string(name) + " took " + std::to_string(s) + " s");
        return an;
    };

    auto pm = timed("fig_pm_i");
    c.require(nontrivial(pm.lattice) == std::set<std::string>{"{1,2,3}{4,5}", "{1,4,5}{2,3}", "{1}{2,3,4,5}",
                                                              "{1}{2,3}{4,5}", "{1,4}{2}{3}{5}"},
              "Fig+-i synchrony subspaces");
    c.require(special_count(pm.specials) == 6, "Fig+-i special count");
    const std::string g2 = "{1,2,3,4,5}";
    c.require(members(pm, "{1,2,3}{4,5}") == std::multiset<std::string>{g2, "{1,2,3}{4,5}"}, "Fig+-i S1");
    c.require(members(pm, "{1,4,5}{2,3}") == std::multiset<std::string>{g2, "{1,4,5}{2,3}"}, "Fig+-i S2");
    c.require(members(pm, "{1}{2,3,4,5}") == std::multiset<std::string>{g2, "{1}{2,3,4,5}"}, "Fig+-i S3");
    c.require(members(pm, "{1}{2,3}{4,5}") == std::multiset<std::string>{g2, "{1,2,3}{4,5}", "{1,4,5}{2,3}"},
              "Fig+-i S4");
    c.require(members(pm, "{1,4}{2}{3}{5}") == std::multiset<std::string>{g2, "{1,4,5}{2,3}", "{1,4}{2}{3}{5}"},
              "Fig+-i S5");

    auto nd = timed("fig_nd1");
    c.require(special_count(nd.specials) == 8, "FigND1 special count");
    c.require(special_partitions(nd.specials) ==
                  std::multiset<std::string>{"{1,2,3,4,5}", "{1}{2,5}{3,4}", "{1,2,3}{4,5}", "{1,4,5}{2,3}",
                                             "{1}{2,3,4,5}", "{1}{2,4}{3,5}", "{1}{2,5}{3}{4}", "{1}{2}{3,4}{5}"},
              "FigND1 special partitions");
    bool order_ok = false;
    for (const auto& comp : nd.components)
        if (comp.factor == RationalPoly{1, 1})
            order_ok = comp.order == 2 &&
                       rational_hull(comp.kernel(1)) == from_equations(5, {eq(5, 2, 3), eq(5, 4, 5), {1, 1, 0, 1, 0}});
    c.require(order_ok, "FigND1 eigenvalue -1 order and kernel");

    auto se = timed("fig_se");
    c.require(nontrivial(se.lattice) == std::set<std::string>{"{1,2,3}{4}", "{1,4}{2,3}", "{1,3}{2}{4}", "{1}{2,3}{4}"},
              "FigSE synchrony subspaces");

    auto n6 = timed("fig_net6");
    c.require(special_count(n6.specials) == 13, "FigNet6 special count");
    c.require(nontrivial(n6.lattice) ==
                  std::set<std::string>{"{1,2,4}{3,5}", "{1,2,3}{4,5}", "{1,2,5}{3,4}", "{1,3,4}{2,5}",
                                        "{1,4,5}{2,3}", "{1}{2,3,4,5}", "{1,2,4}{3}{5}", "{1}{2,4}{3,5}",
                                        "{1,2}{3,5}{4}", "{1,4}{2}{3,5}", "{1}{2,3}{4,5}", "{1}{2,5}{3,4}",
                                        "{1,2}{3}{4}{5}", "{1,4}{2}{3}{5}", "{1}{2,4}{3}{5}", "{1}{2}{3,5}{4}"},
              "FigNet6 synchrony subspaces");
    c.require(n6.lattice.join_irreducibles().size() == 10, "FigNet6 join-irreducibles");

    auto meu = timed("fig_meu_ex");
    c.require(nontrivial(meu.lattice).size() == 18, "FigMeuEx synchrony count");
    c.require(special_count(meu.specials) == 12, "FigMeuEx special count");
    c.require(meu.lattice.join_irreducibles().size() == 12, "FigMeuEx join-irreducibles");
    c.note = "slowest network " + std::to_string(worst) + " s";
}

void equivalence(Criterion& c) {
    auto t = Clock::now();
    std::size_t n = 0;
    for (const auto& net : random_networks(200)) {
        auto comps = spectral_components(net);
        auto sp = special_jordans(comps);
        auto oracle = enumerate_synchrony_oracle(net);
        auto spectral = enumerate_synchrony_paper(comps, sp);
        try {
            cross_validate(net, oracle, spectral, sp);
        } catch (const CrossCheckFailure& e) {
            c.require(false, e.bundle().dump());
        }
        ++n;
    }
    double s = seconds_since(t);
    c.require(s < 60.0, "runtime " + std::to_string(s) + " s");
    c.note = std::to_string(n) + " networks in " + std::to_string(s) + " s";
}

void full_space(Criterion& c) {
    std::vector<Network> nets;
    for (auto name : kCorpus) nets.push_back(corpus(name));
    for (auto& net : random_networks(200)) nets.push_back(net);
    for (const auto& net : nets) {
        auto comps = spectral_components(net);
        auto cn = decompose_Cn(comps, special_jordans(comps));
        std::size_t total = 0;
        std::vector<std::vector<Rational>> rows;
        for (const auto& s : cn) {
            total += s.hull.dim();
            for (std::size_t r = 0; r < s.hull.dim(); ++r) rows.push_back(s.hull.basis_vector(r));
        }
        QMatrix stacked(RationalField{}, 0, net.cells());
        for (const auto& r : rows) stacked.append_row(r);
        c.require(total == net.cells() && rank_oracle(stacked) == net.cells(), network_to_json(net).dump());
    }
    c.note = std::to_string(nets.size()) + " networks";
}

std::vector<Analysis> analyses() {
    std::vector<Analysis> out;
    for (auto name : kCorpus) out.push_back(analyze(corpus(name)));
    for (auto& net : random_networks(60)) out.push_back(analyze(net));
    return out;
}

void sum_criterion(Criterion& c, const std::vector<Analysis>& all) {
    std::size_t pairs = 0;
    for (const auto& an : all) {
        const auto& lat = an.lattice;
        for (std::size_t a = 0; a < lat.size(); ++a)
            for (std::size_t b = 0; b < lat.size(); ++b, ++pairs) {
                auto s = sum(polydiagonal_of(lat[a].partition), polydiagonal_of(lat[b].partition)).space;
                const bool is_poly = polydiagonal_of(smallest_polydiagonal(s)) == s;
                const bool is_elem = lat.index_of(smallest_polydiagonal(s)).has_value() && is_poly;
                auto chk = sum_polydiagonal_check(an.net, lat[a].partition, lat[b].partition);
                c.require(is_poly == is_elem && chk.is_polydiagonal == is_poly && chk.is_synchrony == is_elem,
                          lat[a].partition.to_string() + " + " + lat[b].partition.to_string());
            }
    }
    c.note = std::to_string(pairs) + " pairs";
}

void join_irreducibles(Criterion& c, const std::vector<Analysis>& all) {
    for (const auto& an : all) {
        auto ji = an.lattice.join_irreducibles();
        c.require(ji.size() <= special_count(an.specials), network_to_json(an.net).dump());
        try {
            auto w = join_irreducible_witnesses(an.lattice, an.specials);
            for (auto [elem, s] : w)
                c.require(an.lattice.smallest_containing(an.specials[s].p_partition) == elem, "witness mismatch");
        } catch (const std::logic_error& e) {
            c.require(false, e.what());
        }
    }
    c.note = std::to_string(all.size()) + " networks";
}

void admissibility(Criterion& c) {
    std::size_t balanced = 0, unbalanced = 0;
    for (auto name : kCorpus) {
        auto net = corpus(name);
        std::vector<Partition> bad;
        for (const auto& p : enumerate_partitions(net.cells())) {
            if (invariant_oracle(net, p)) {
                c.require(sampled_invariance(net, p, 4242 + balanced, 20, 5), std::string(name) + " " + p.to_string());
                ++balanced;
            } else {
                bad.push_back(p);
            }
        }
        std::mt19937_64 rng(77);
        std::shuffle(bad.begin(), bad.end(), rng);
        if (bad.size() > 50) bad.resize(50);
        for (const auto& p : bad) {
            auto w = invariance_witness(net, p);
            c.require(w && in_polydiagonal(w->point, p) && !in_polydiagonal(eval_admissible(net, w->field, w->point), p),
                      std::string(name) + " witness " + p.to_string());
            ++unbalanced;
        }
    }
    c.note = std::to_string(balanced) + " balanced, " + std::to_string(unbalanced) + " unbalanced";
}

QSubspace random_subspace(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> rows(0, static_cast<int>(n)), coef(-4, 4), den(1, 3);
    QMatrix m(RationalField{}, 0, n);
    for (int r = rows(rng); r > 0; --r) {
        std::vector<Rational> v(n);
        for (auto& x : v) x = Rational(coef(rng), den(rng)), x.canonicalize();
        m.append_row(v);
    }
    return QSubspace::span(m);
}

void exactlin(Criterion& c) {
    std::mt19937_64 rng(500);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + i % 7;
        auto u = random_subspace(rng, n), v = random_subspace(rng, n);
        c.require(intersect(u, v).dim() + sum(u, v).space.dim() == u.dim() + v.dim(), "Grassmann case " + std::to_string(i));
        c.require(QSubspace::span(u.basis()) == u && rref(u.basis()).reduced == u.basis(), "idempotence " + std::to_string(i));
        c.require(u.dim() == rank_oracle(u.basis()), "rank " + std::to_string(i));
    }
    c.note = "500 subspace pairs";
}

SynchronyLattice hand_lattice(const std::vector<std::string>& parts, std::size_t n) {
    std::vector<SynchronySubspace> v;
    for (const auto& p : parts) {
        SynchronySubspace s;
        s.partition = Partition::parse(p, n);
        s.dim = s.partition.num_classes();
        v.push_back(s);
    }
    return build_lattice(v);
}

void pentagons(Criterion& c) {
    c.require(find_N5(hand_lattice({"{1,2,3,4}", "{1,2,3}{4}", "{1,2}{3}{4}", "{1,4}{2,3}", "{1}{2}{3}{4}"}, 4)).size() == 1,
              "pentagon not detected");
    c.require(find_N5(hand_lattice({"{1,2,3}", "{1,2}{3}", "{1}{2}{3}"}, 3)).empty(), "chain reported");
    c.require(find_N5(hand_lattice({"{1,2,3,4}", "{1,2}{3,4}", "{1,3}{2,4}", "{1}{2}{3}{4}"}, 4)).empty(),
              "diamond reported");

    // L14: three codimension-2 synchrony subspaces of a 4-cell network, with
    // exactly one pairwise sum equal to a codimension-1 polydiagonal
    const std::vector<std::string> codim2 = {"{1,2,3}{4}", "{1,2,4}{3}", "{1,3,4}{2}", "{1}{2,3,4}",
                                             "{1,2}{3,4}", "{1,3}{2,4}", "{1,4}{2,3}"};
    auto codim1_poly = [](const std::string& a, const std::string& b) {
        auto s = sum(polydiagonal_of(Partition::parse(a, 4)), polydiagonal_of(Partition::parse(b, 4))).space;
        return s.dim() == 3 && polydiagonal_of(smallest_polydiagonal(s)) == s;
    };
    std::size_t triples = 0, realizable = 0;
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = i + 1; j < 7; ++j)
            for (std::size_t k = j + 1; k < 7; ++k, ++triples) {
                int hits = codim1_poly(codim2[i], codim2[j]) + codim1_poly(codim2[i], codim2[k]) +
                           codim1_poly(codim2[j], codim2[k]);
                realizable += hits == 1;
            }
    c.require(triples == 35 && realizable == 0, "L14 shape realizable");
    c.note = "N5 detector checks; L14 shape ruled out over " + std::to_string(triples) + " triples";
}

}  // namespace

int main() {
    std::vector<Criterion> cs = {
        {1, "golden corpus", {}, ""},
        {2, "oracle and spectral enumeration agree on random networks", {}, ""},
        {3, "special Jordan decomposition of the full space", {}, ""},
        {4, "sum of synchrony subspaces is synchrony iff polydiagonal", {}, ""},
        {5, "join-irreducibles witnessed by special Jordans", {}, ""},
        {6, "admissible fields preserve exactly the balanced polydiagonals", {}, ""},
        {7, "exact linear algebra kernel properties", {}, ""},
        {8, "pentagon detector and L14 elimination", {}, ""},
    };
    auto guard = [](Criterion& c, auto&& fn) {
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
    };
    guard(cs[0], golden);
    guard(cs[1], equivalence);
    guard(cs[2], full_space);
    std::vector<Analysis> all;
    guard(cs[3], [&](Criterion& c) {
        all = analyses();
        sum_criterion(c, all);
    });
    guard(cs[4], [&](Criterion& c) { join_irreducibles(c, all); });
    guard(cs[5], admissibility);
    guard(cs[6], exactlin);
    guard(cs[7], pentagons);

    bool ok = true;
    for (const auto& c : cs) {
        ok = ok && c.failures.empty();
        std::cout << (c.failures.empty() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title;
        if (!c.note.empty()) std::cout << " (" << c.note << ")";
        std::cout << "\n";
        for (std::size_t i = 0; i < c.failures.size() && i < 5; ++i) std::cout << "    " << c.failures[i] << "\n";
    }
    return ok ? 0 : 1;
}

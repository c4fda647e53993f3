#pragma once

// Consistency checks over a completed analysis.

#include <synclat/admissible.hpp>
#include <synclat/synchrony.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace synclat {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

namespace detail {

inline CheckResult check_specials(const Analysis& an) {
    CheckResult r{"special_jordan_invariants", true, ""};
    for (std::size_t i = 0; i < an.specials.size() && r.passed; ++i) {
        const auto& s = an.specials[i];
        const auto& comp = an.components[s.component];
        auto chain = Subspace<ExtField>::span(comp.field, comp.cells(), jordan_chain(comp, s.chain_seed, s.dim));
        const auto q = an.net.adjacency();
        if (chain != s.basis) r = {r.name, false, "chain of seed does not reproduce basis"};
        else if (!s.basis.contains(image(comp.shifted, s.basis))) r = {r.name, false, "basis not invariant"};
        else if (s.hull.dim() != comp.degree() * s.dim) r = {r.name, false, "hull dimension"};
        else if (!s.hull.contains(image(q, s.hull))) r = {r.name, false, "hull not invariant"};
        else if (smallest_polydiagonal(s.hull) != s.p_partition) r = {r.name, false, "hull partition"};
        if (!r.passed) r.detail += " for special " + std::to_string(i);
    }
    // minimality: no same-dim special of the component with a strictly smaller polydiagonal
    for (const auto& a : an.specials)
        for (const auto& b : an.specials) {
            if (!r.passed) break;
            if (a.component != b.component || a.dim != b.dim || b.is_fully_synchronous) continue;
            if (a.p_partition != b.p_partition && a.p_partition.refines(b.p_partition))
                r = {r.name, false, "special " + a.p_partition.to_string() + " is not minimal"};
        }
    return r;
}

inline CheckResult check_cn(const Analysis& an) {
    const std::size_t n = an.net.cells();
    auto acc = QSubspace::zero(RationalField{}, n);
    std::size_t total = 0;
    for (const auto& s : an.cn_decomposition) {
        total += s.hull.dim();
        acc = sum(acc, s.hull).space;
    }
    bool ok = total == n && acc.dim() == n;
    return {"full_space_decomposition", ok,
            "hull dims sum " + std::to_string(total) + ", rank " + std::to_string(acc.dim()) + " of " + std::to_string(n)};
}

inline CheckResult check_decompositions(const Analysis& an) {
    for (const auto& e : an.lattice.elements())
        if (!decomposition_valid(an.net, e))
            return {"synchrony_decompositions", false, "invalid decomposition of " + e.partition.to_string()};
    return {"synchrony_decompositions", true, std::to_string(an.lattice.size()) + " elements"};
}

inline CheckResult check_lattice_laws(const SynchronyLattice& lat) {
    const std::size_t m = lat.size();
    for (std::size_t a = 0; a < m; ++a) {
        if (lat.meet(a, a) != a || lat.join(a, a) != a) return {"lattice_laws", false, "idempotence"};
        for (std::size_t b = 0; b < m; ++b) {
            if (lat.meet(a, b) != lat.meet(b, a) || lat.join(a, b) != lat.join(b, a))
                return {"lattice_laws", false, "commutativity"};
            if (lat.meet(a, lat.join(a, b)) != a || lat.join(a, lat.meet(a, b)) != a)
                return {"lattice_laws", false, "absorption"};
            if (m <= 40)
                for (std::size_t c = 0; c < m; ++c)
                    if (lat.meet(a, lat.meet(b, c)) != lat.meet(lat.meet(a, b), c) ||
                        lat.join(a, lat.join(b, c)) != lat.join(lat.join(a, b), c))
                        return {"lattice_laws", false, "associativity"};
        }
    }
    return {"lattice_laws", true, std::to_string(m) + " elements"};
}

inline CheckResult check_sum_criterion(const Network& net, const SynchronyLattice& lat) {
    std::size_t violations = 0, pairs = 0;
    for (std::size_t a = 0; a < lat.size(); ++a)
        for (std::size_t b = a; b < lat.size(); ++b) {
            ++pairs;
            auto chk = sum_polydiagonal_check(net, lat[a].partition, lat[b].partition);
            auto s = sum(polydiagonal_of(lat[a].partition), polydiagonal_of(lat[b].partition)).space;
            const bool join_is_sum = lat[lat.join(a, b)].dim == s.dim();
            if (chk.is_polydiagonal != chk.is_synchrony || chk.is_polydiagonal != join_is_sum) ++violations;
        }
    return {"sum_criterion", violations == 0,
            std::to_string(violations) + " violations over " + std::to_string(pairs) + " pairs"};
}

inline CheckResult check_join_irreducibles(const Analysis& an) {
    try {
        auto w = join_irreducible_witnesses(an.lattice, an.specials);
        return {"join_irreducible_witnesses", true,
                std::to_string(w.size()) + " join-irreducible, " + std::to_string(special_count(an.specials)) +
                    " special Jordan"};
    } catch (const std::logic_error& e) {
        return {"join_irreducible_witnesses", false, e.what()};
    }
}

inline CheckResult check_admissible(const Analysis& an, std::uint64_t seed, std::size_t samples) {
    const std::size_t n = an.net.cells();
    std::size_t balanced = 0, unbalanced = 0;
    for (const auto& e : an.lattice.elements()) {
        if (!sampled_invariance(an.net, e.partition, seed + balanced, samples, 5))
            return {"admissible_invariance", false, "field leaves " + e.partition.to_string()};
        ++balanced;
    }
    // unbalanced partitions: a seeded sample of up to 50
    std::vector<Partition> bad;
    for (PartitionStream s(n); !s.done(); s.next())
        if (!is_balanced(an.net, s.current())) bad.push_back(s.current());
    std::mt19937_64 rng(seed);
    std::shuffle(bad.begin(), bad.end(), rng);
    if (bad.size() > 50) bad.resize(50);
    for (const auto& pi : bad) {
        if (!invariance_witness(an.net, pi)) return {"admissible_invariance", false, "no witness for " + pi.to_string()};
        ++unbalanced;
    }
    return {"admissible_invariance", true,
            std::to_string(balanced) + " balanced sampled, " + std::to_string(unbalanced) + " unbalanced witnessed"};
}

}  // namespace detail

/// All checks except the enumeration cross-check, which analyze() performs.
inline std::vector<CheckResult> run_checks(const Analysis& an, std::uint64_t seed = 1, std::size_t samples = 20) {
    std::vector<CheckResult> out;
    out.push_back({"oracle_equals_paper_method", true, std::to_string(an.oracle.size()) + " synchrony subspaces"});
    out.push_back(detail::check_specials(an));
    out.push_back(detail::check_cn(an));
    out.push_back(detail::check_decompositions(an));
    out.push_back(detail::check_lattice_laws(an.lattice));
    out.push_back(detail::check_sum_criterion(an.net, an.lattice));
    out.push_back(detail::check_join_irreducibles(an));
    out.push_back(detail::check_admissible(an, seed, samples));
    return out;
}

}  // namespace synclat

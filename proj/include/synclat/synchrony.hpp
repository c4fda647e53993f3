#pragma once

// Synchrony subspaces: combinatorial oracle, enumeration through special
// Jordan decompositions, the lattice, join-irreducibles and pentagons.

#include <synclat/jordan_special.hpp>
#include <synclat/network.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace synclat {

/// Δ_pi is A-invariant, i.e. pi is balanced.
inline bool is_synchrony(const Network& net, const Partition& pi) { return is_balanced(net, pi); }

struct SynchronySubspace {
    Partition partition;
    std::size_t dim = 0;
    std::vector<DecompositionMember> decomposition;  // empty for oracle results
    bool trivial = false;                            // F or the total phase space
};

namespace detail {

inline SynchronySubspace make_element(Partition pi) {
    SynchronySubspace s;
    s.dim = pi.num_classes();
    s.trivial = s.dim == 1 || s.dim == pi.size();
    s.partition = std::move(pi);
    return s;
}

inline void sort_elements(std::vector<SynchronySubspace>& v) {
    std::sort(v.begin(), v.end(), [](const SynchronySubspace& a, const SynchronySubspace& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.partition < b.partition;
    });
}

// Runs `test` on every partition of n cells, spread round-robin over threads.
template <class Test>
std::vector<SynchronySubspace> parallel_filter(std::size_t n, unsigned threads, Test test) {
    threads = std::max(1u, threads);
    std::vector<std::vector<SynchronySubspace>> found(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            std::size_t i = 0;
            for (PartitionStream s(n); !s.done(); s.next(), ++i) {
                if (i % threads != t) continue;
                if (auto e = test(s.current())) found[t].push_back(std::move(*e));
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<SynchronySubspace> out;
    for (auto& f : found) out.insert(out.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
    sort_elements(out);
    return out;
}

}  // namespace detail

/// Every balanced partition, by brute force over all set partitions.
inline std::vector<SynchronySubspace> enumerate_synchrony_oracle(const Network& net, unsigned threads = 1) {
    return detail::parallel_filter(net.cells(), threads, [&](const Partition& pi) -> std::optional<SynchronySubspace> {
        if (!is_synchrony(net, pi)) return std::nullopt;
        return detail::make_element(pi);
    });
}

/// Every partition whose polydiagonal is a direct sum of special Jordan
/// subspaces (hull level). Balance is never consulted.
inline std::vector<SynchronySubspace> enumerate_synchrony_paper(const std::vector<SpectralComponent>& comps,
                                                                const std::vector<SpecialJordan>& specials,
                                                                unsigned threads = 1) {
    const std::size_t n = comps.front().cells();
    return detail::parallel_filter(n, threads, [&](const Partition& pi) -> std::optional<SynchronySubspace> {
        auto members = decompose_polydiagonal(comps, specials, pi);
        if (!members) return std::nullopt;
        auto e = detail::make_element(pi);
        e.decomposition = std::move(*members);
        return e;
    });
}

/// Δ_pi equals the direct sum of its decomposition hulls.
inline bool decomposition_valid(const Network& net, const SynchronySubspace& s) {
    const std::size_t n = net.cells();
    const auto delta = polydiagonal_of(s.partition);
    const auto a = net.adjacency();
    auto acc = QSubspace::zero(RationalField{}, n);
    for (const auto& m : s.decomposition) {
        if (!delta.contains(m.hull)) return false;
        if (!m.hull.contains(image(a, m.hull))) return false;
        auto grown = sum(acc, m.hull);
        if (!grown.direct) return false;
        acc = std::move(grown.space);
    }
    return acc == delta;
}

/// Raised when the two enumerations disagree; carries a JSON bundle with the
/// network, the offending partitions and the special Jordan list.
class CrossCheckFailure : public std::runtime_error {
public:
    CrossCheckFailure(const std::string& what, nlohmann::json bundle)
        : std::runtime_error(what), bundle_(std::move(bundle)) {}
    const nlohmann::json& bundle() const { return bundle_; }

private:
    nlohmann::json bundle_;
};

inline nlohmann::json specials_to_json(const std::vector<SpecialJordan>& specials) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : specials) {
        nlohmann::json hull = nlohmann::json::array();
        for (std::size_t r = 0; r < s.hull.dim(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < s.hull.ambient_dim(); ++j) row.push_back(to_string(s.hull.basis()(r, j)));
            hull.push_back(row);
        }
        arr.push_back({{"component", s.component},
                       {"dim", s.dim},
                       {"weight", s.weight},
                       {"p_partition", s.p_partition.to_string()},
                       {"fully_synchronous", s.is_fully_synchronous},
                       {"unique", s.unique()},
                       {"hull", hull}});
    }
    return arr;
}

/// Throws CrossCheckFailure unless both lists hold the same partitions.
inline void cross_validate(const Network& net, const std::vector<SynchronySubspace>& oracle,
                           const std::vector<SynchronySubspace>& paper, const std::vector<SpecialJordan>& specials) {
    std::vector<Partition> a, b;
    for (const auto& s : oracle) a.push_back(s.partition);
    for (const auto& s : paper) b.push_back(s.partition);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == b) return;
    std::vector<Partition> only_oracle, only_paper;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_oracle));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_paper));
    nlohmann::json bundle{{"network", network_to_json(net)}, {"specials", specials_to_json(specials)}};
    bundle["only_oracle"] = nlohmann::json::array();
    bundle["only_paper_method"] = nlohmann::json::array();
    for (const auto& p : only_oracle) bundle["only_oracle"].push_back(p.to_string());
    for (const auto& p : only_paper) bundle["only_paper_method"].push_back(p.to_string());
    throw CrossCheckFailure("synchrony enumerations disagree", std::move(bundle));
}

struct TwoClassWitness {
    Partition partition;
    std::vector<Rational> eigenvector;
};

/// A 2-dim synchrony subspace exists iff some rational eigenvector (other
/// than the valency's F) has exactly two distinct coordinates.
inline std::optional<TwoClassWitness> has_2dim_synchrony(const std::vector<SpectralComponent>& comps,
                                                          const std::vector<SpecialJordan>& specials) {
    for (const auto& s : specials) {
        if (s.dim != 1 || s.is_fully_synchronous || comps[s.component].degree() != 1) continue;
        if (s.p_partition.num_classes() != 2) continue;
        TwoClassWitness w{s.p_partition, {}};
        for (const auto& x : s.chain_seed) w.eigenvector.push_back(x.c[0]);
        return w;
    }
    return std::nullopt;
}

/// Synchrony subspaces ordered by inclusion. Index 0 is the bottom F and the
/// last index the total phase space.
class SynchronyLattice {
public:
    SynchronyLattice() = default;

    explicit SynchronyLattice(std::vector<SynchronySubspace> elements) : elements_(std::move(elements)) {
        detail::sort_elements(elements_);
        if (elements_.size() < 2 && !(elements_.size() == 1 && elements_[0].partition.size() == 1))
            throw std::invalid_argument("lattice needs both trivial synchrony subspaces");
        const std::size_t m = elements_.size();
        for (std::size_t i = 0; i < m; ++i) index_.emplace(elements_[i].partition, i);
        if (elements_.front().dim != 1 || elements_.back().dim != elements_.back().partition.size())
            throw std::invalid_argument("lattice is missing F or the total phase space");
        lower_covers_.assign(m, {});
        for (std::size_t hi = 0; hi < m; ++hi)
            for (std::size_t lo = 0; lo < m; ++lo) {
                if (lo == hi || !leq(lo, hi)) continue;
                bool cover = true;
                for (std::size_t mid = 0; mid < m && cover; ++mid)
                    if (mid != lo && mid != hi && leq(lo, mid) && leq(mid, hi)) cover = false;
                if (cover) {
                    lower_covers_[hi].push_back(lo);
                    hasse_.emplace_back(lo, hi);
                }
            }
        std::sort(hasse_.begin(), hasse_.end());
    }

    std::size_t size() const { return elements_.size(); }
    const std::vector<SynchronySubspace>& elements() const { return elements_; }
    const SynchronySubspace& operator[](std::size_t i) const { return elements_[i]; }
    std::size_t bottom() const { return 0; }
    std::size_t top() const { return elements_.size() - 1; }
    /// (lower, upper) cover pairs.
    const std::vector<std::pair<std::size_t, std::size_t>>& hasse_edges() const { return hasse_; }
    const std::vector<std::size_t>& lower_covers(std::size_t i) const { return lower_covers_[i]; }

    std::optional<std::size_t> index_of(const Partition& pi) const {
        auto it = index_.find(pi);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Δ_a ⊆ Δ_b.
    bool leq(std::size_t a, std::size_t b) const { return elements_[b].partition.refines(elements_[a].partition); }

    std::size_t meet(std::size_t a, std::size_t b) const {
        auto idx = index_of(merge_closure(elements_[a].partition, elements_[b].partition));
        if (!idx) throw std::logic_error("meet of synchrony subspaces is not in the lattice");
        return *idx;
    }

    std::size_t join(std::size_t a, std::size_t b) const {
        for (std::size_t i = 0; i < elements_.size(); ++i)  // sorted by dim: first upper bound is least
            if (leq(a, i) && leq(b, i)) {
                for (std::size_t j = i + 1; j < elements_.size(); ++j)
                    if (leq(a, j) && leq(b, j) && !leq(i, j)) throw std::logic_error("join is not unique");
                return i;
            }
        throw std::logic_error("no upper bound in lattice");
    }

    /// Smallest element whose polydiagonal contains Δ_pi.
    std::size_t smallest_containing(const Partition& pi) const {
        for (std::size_t i = 0; i < elements_.size(); ++i)
            if (elements_[i].partition.refines(pi)) return i;
        throw std::logic_error("no lattice element contains the polydiagonal");
    }

    /// Exactly one lower cover. With include_bottom the bottom F also counts,
    /// as the smallest synchrony subspace containing the special F.
    bool is_join_irreducible(std::size_t i, bool include_bottom = true) const {
        if (i == bottom()) return include_bottom;
        return lower_covers_[i].size() == 1;
    }

    std::vector<std::size_t> join_irreducibles(bool include_bottom = true) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < elements_.size(); ++i)
            if (is_join_irreducible(i, include_bottom)) out.push_back(i);
        return out;
    }

private:
    std::vector<SynchronySubspace> elements_;
    std::map<Partition, std::size_t> index_;
    std::vector<std::vector<std::size_t>> lower_covers_;
    std::vector<std::pair<std::size_t, std::size_t>> hasse_;
};

inline SynchronyLattice build_lattice(std::vector<SynchronySubspace> elements) {
    return SynchronyLattice(std::move(elements));
}

/// For each join-irreducible element, the first special Jordan subspace whose
/// smallest containing synchrony subspace is that element.
inline std::map<std::size_t, std::size_t> join_irreducible_witnesses(const SynchronyLattice& lat,
                                                                     const std::vector<SpecialJordan>& specials,
                                                                     bool include_bottom = true) {
    std::map<std::size_t, std::size_t> closure_of;  // special -> element
    std::map<std::size_t, std::size_t> witness;
    for (std::size_t s = 0; s < specials.size(); ++s) {
        auto e = lat.smallest_containing(specials[s].p_partition);
        witness.emplace(e, s);
    }
    std::map<std::size_t, std::size_t> out;
    for (auto ji : lat.join_irreducibles(include_bottom)) {
        auto it = witness.find(ji);
        if (it == witness.end())
            throw std::logic_error("join-irreducible element " + lat[ji].partition.to_string() +
                                   " has no special Jordan witness");
        out.emplace(ji, it->second);
    }
    if (out.size() > special_count(specials)) throw std::logic_error("more join-irreducibles than special Jordans");
    return out;
}

struct Pentagon {
    std::size_t bottom, a, b, c, top;  // a < b, c incomparable to both
    friend bool operator==(const Pentagon&, const Pentagon&) = default;
};

/// All N5 sublattices {a∧c, a, b, c, a∨c} with a < b, c ∥ a, c ∥ b,
/// a∧c = b∧c and a∨c = b∨c.
inline std::vector<Pentagon> find_N5(const SynchronyLattice& lat) {
    std::vector<Pentagon> out;
    const std::size_t m = lat.size();
    auto incomparable = [&](std::size_t x, std::size_t y) { return !lat.leq(x, y) && !lat.leq(y, x); };
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b || !lat.leq(a, b)) continue;
            for (std::size_t c = 0; c < m; ++c) {
                if (!incomparable(a, c) || !incomparable(b, c)) continue;
                auto lo = lat.meet(a, c), hi = lat.join(a, c);
                if (lat.meet(b, c) == lo && lat.join(b, c) == hi) out.push_back({lo, a, b, c, hi});
            }
        }
    return out;
}

struct SumCheck {
    bool is_polydiagonal = false;
    bool is_synchrony = false;
};

/// Whether Δ_a + Δ_b is itself polydiagonal, and whether it is a synchrony
/// subspace. For synchrony a, b the two must agree.
inline SumCheck sum_polydiagonal_check(const Network& net, const Partition& a, const Partition& b) {
    auto s = sum(polydiagonal_of(a), polydiagonal_of(b)).space;
    auto p = smallest_polydiagonal(s);
    SumCheck r;
    r.is_polydiagonal = polydiagonal_of(p) == s;
    r.is_synchrony = r.is_polydiagonal && is_synchrony(net, p);
    return r;
}

/// Lifts a subspace of the quotient phase space to the network by copying
/// each class coordinate onto its cells.
inline QSubspace lift_via_partition(const Network& net, const QSubspace& q, const Partition& pi) {
    if (!is_balanced(net, pi)) throw InputError("partition " + pi.to_string() + " is not balanced");
    if (q.ambient_dim() != pi.num_classes()) throw std::invalid_argument("lift: dimension mismatch");
    const std::size_t n = pi.size();
    QMatrix rows(RationalField{}, 0, n);
    std::vector<Rational> v(n);
    for (std::size_t r = 0; r < q.dim(); ++r) {
        for (std::size_t i = 0; i < n; ++i) v[i] = q.basis()(r, pi.label(i));
        rows.append_row(v);
    }
    return QSubspace::span(rows);
}

/// Everything the analysis commands report on.
struct Analysis {
    Network net;
    std::vector<SpectralComponent> components;
    std::vector<SpecialJordan> specials;
    std::vector<SpecialJordan> cn_decomposition;
    std::vector<SynchronySubspace> oracle;
    SynchronyLattice lattice;  // built from the paper-method elements
};

/// Runs the full pipeline; throws CrossCheckFailure if the enumerations differ.
inline Analysis analyze(const Network& net, unsigned threads = 1) {
    Analysis an;
    an.net = net;
    an.components = spectral_components(net);
    an.specials = special_jordans(an.components);
    an.cn_decomposition = decompose_Cn(an.components, an.specials);
    an.oracle = enumerate_synchrony_oracle(net, threads);
    auto paper = enumerate_synchrony_paper(an.components, an.specials, threads);
    cross_validate(net, an.oracle, paper, an.specials);
    an.lattice = build_lattice(std::move(paper));
    return an;
}

}  // namespace synclat

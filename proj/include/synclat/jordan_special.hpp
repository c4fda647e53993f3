#pragma once

// Special subspaces, special Jordan subspaces per spectral component, rational
// hulls, and direct-sum decompositions into special Jordan subspaces.
//
// A Jordan subspace J of dimension k in G_λ is special when no other k-dim
// Jordan subspace U ≠ F of G_λ satisfies strictly more coordinate equalities.
// Writing M_k for the set of partitions π whose polydiagonal contains some
// k-dim Jordan subspace other than F, J is special exactly when P(J) is a
// minimal element of M_k. M_k is closed under refinement, so its minimal
// elements are found by walking down from the total phase space through
// single class merges.
//
// For a minimal π, the k-dim Jordan subspaces with P = π are the chain spans
// of order-k vectors in the largest (A-λ)-invariant subspace of
// Δ_π ∩ Ker (A-λ)^k. That "family" span is kept alongside one canonical
// representative; when it is larger than k the family is infinite and
// decompositions may use other members with the same P-image.

#include <synclat/polydiag.hpp>
#include <synclat/spectral.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace synclat {

/// All k-dimensional special subspaces of e: intersections of e with
/// polydiagonals of codimension dim(e) - k that have dimension exactly k.
template <class Field>
std::vector<Subspace<Field>> specials_in(const Subspace<Field>& e, std::size_t k) {
    if (k < 1 || k > e.dim()) throw std::invalid_argument("specials_in: k out of range");
    const std::size_t n = e.ambient_dim();
    const std::size_t nu = e.dim() - k;
    if (nu == 0) return {e};
    std::vector<Subspace<Field>> out;
    std::set<std::string> seen;
    if (nu >= n) return out;
    for (PartitionStream s(n, n - nu); !s.done(); s.next()) {
        auto w = intersect_polydiagonal(e, s.current());
        if (w.dim() != k) continue;
        if (seen.insert(w.key()).second) out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        auto pa = smallest_polydiagonal(a).to_string(), pb = smallest_polydiagonal(b).to_string();
        return pa != pb ? pa < pb : a.key() < b.key();
    });
    return out;
}

/// w is special in e iff w = e ∩ Δ_{P(w)}.
template <class Field>
bool is_special(const Subspace<Field>& w, const Subspace<Field>& e) {
    if (w.is_zero()) throw std::invalid_argument("is_special: w must be nonzero");
    if (!e.contains(w)) throw std::invalid_argument("is_special: w is not contained in e");
    return intersect_polydiagonal(e, smallest_polydiagonal(w)) == w;
}

template <class Field>
bool contains_full_synchrony(const Subspace<Field>& e) {
    std::vector<typename Field::value_type> ones(e.ambient_dim(), e.field().one());
    return e.contains(ones);
}

/// Direct-sum decomposition of e into dim(e) one-dimensional special
/// subspaces of e. Picks k equalities x_n = x_j that are independent on e
/// (their common solution meets e in zero) and intersects e with each
/// codimension-(k-1) polydiagonal obtained by dropping one of them.
template <class Field>
std::vector<Subspace<Field>> decompose_into_specials(const Subspace<Field>& e) {
    if (contains_full_synchrony(e)) throw std::invalid_argument("decompose_into_specials: e contains the fully synchrony subspace");
    const Field& f = e.field();
    const std::size_t n = e.ambient_dim(), k = e.dim();
    if (k == 0) return {};
    const std::size_t center = n - 1;
    std::vector<std::size_t> chosen;
    Subspace<Field> restricted = Subspace<Field>::zero(f, k);
    for (std::size_t j = 0; j < n && chosen.size() < k; ++j) {
        if (j == center) continue;
        std::vector<typename Field::value_type> func(k);
        for (std::size_t r = 0; r < k; ++r) func[r] = f.sub(e.basis()(r, center), e.basis()(r, j));
        auto grown = sum(restricted, Subspace<Field>::span(f, k, {func}));
        if (grown.space.dim() > restricted.dim()) {
            restricted = std::move(grown.space);
            chosen.push_back(j);
        }
    }
    if (chosen.size() != k) throw std::logic_error("decompose_into_specials: equalities do not separate e");
    std::vector<Subspace<Field>> out;
    for (std::size_t drop = 0; drop < k; ++drop) {
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i);
        for (std::size_t m = 0; m < k; ++m)
            if (m != drop) labels[chosen[m]] = static_cast<int>(center);
        out.push_back(intersect_polydiagonal(e, Partition(labels)));
    }
    return out;
}

/// Canonical direct complement of F inside the valency eigenspace: the
/// zero-coordinate-sum slice.
inline Subspace<ExtField> valency_complement(const SpectralComponent& comp) {
    if (!comp.is_valency) throw std::invalid_argument("valency_complement: not the valency component");
    const auto& g = comp.generalized();
    if (g.dim() <= 1) throw std::invalid_argument("valency_complement: valency eigenspace is one-dimensional");
    Matrix<ExtField> sum_row(comp.field, 1, comp.cells());
    for (std::size_t j = 0; j < comp.cells(); ++j) sum_row(0, j) = comp.field.one();
    return intersect(g, nullspace(sum_row));
}

/// Smallest rational subspace containing w: span of the rational coordinate
/// vectors of each basis row in powers 1, t, ..., t^{d-1}.
inline QSubspace rational_hull(const Subspace<ExtField>& w) {
    const std::size_t n = w.ambient_dim(), d = w.field().degree();
    QMatrix rows(RationalField{}, 0, n);
    std::vector<Rational> v(n);
    for (std::size_t r = 0; r < w.dim(); ++r)
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < n; ++j) v[j] = w.basis()(r, j).c[i];
            rows.append_row(v);
        }
    return QSubspace::span(rows);
}

inline Subspace<ExtField> embed_subspace(const ExtField& field, const QSubspace& q) {
    return Subspace<ExtField>::span(Matrix<ExtField>::embed(field, q.basis()));
}

/// Largest (A-λ)-invariant subspace of w.
inline Subspace<ExtField> largest_invariant_subspace(const Matrix<ExtField>& shifted, Subspace<ExtField> w) {
    for (;;) {
        auto next = intersect(w, preimage(shifted, w));
        if (next.dim() == w.dim()) return w;
        w = std::move(next);
    }
}

struct SpecialJordan {
    std::size_t component = 0;         // index into the component list
    std::size_t dim = 0;               // chain length k
    Subspace<ExtField> basis;          // span of the chain of chain_seed
    std::vector<ExtElem> chain_seed;   // top vector x of the chain
    Partition p_partition;             // P(basis)
    QSubspace hull;
    bool is_fully_synchronous = false;
    // Span of every k-dim Jordan subspace of the component with the same
    // P-image (minus F for the valency component). Equal to `basis` when the
    // special Jordan subspace is the only one with its P-image.
    Subspace<ExtField> family;
    std::size_t weight = 1;            // conjugate roots represented (deg p)

    bool unique() const { return family.dim() == dim; }
};

namespace detail {

inline SpecialJordan make_special(const SpectralComponent& comp, std::size_t index, std::vector<ExtElem> seed,
                                  std::size_t k, Subspace<ExtField> family) {
    SpecialJordan sj;
    sj.component = index;
    sj.dim = k;
    sj.basis = Subspace<ExtField>::span(comp.field, comp.cells(), jordan_chain(comp, seed, k));
    sj.chain_seed = std::move(seed);
    sj.p_partition = smallest_polydiagonal(sj.basis);
    sj.hull = rational_hull(sj.basis);
    sj.family = std::move(family);
    sj.weight = comp.degree();
    sj.is_fully_synchronous = comp.is_valency && sj.p_partition.num_classes() == 1;
    return sj;
}

// First basis vector of an invariant subspace with order exactly k.
inline std::vector<ExtElem> order_k_vector(const SpectralComponent& comp, const Subspace<ExtField>& v, std::size_t k) {
    const auto lower = comp.kernel(k - 1);
    for (std::size_t r = 0; r < v.dim(); ++r)
        if (!lower.contains(v.basis().row(r))) return v.basis_vector(r);
    throw std::logic_error("subspace has no vector of the requested order");
}

// Minimal partitions whose polydiagonal holds a k-dim Jordan subspace of the
// component, with the corresponding family spans.
inline std::vector<std::pair<Partition, Subspace<ExtField>>> minimal_jordan_classes(const SpectralComponent& comp,
                                                                                   std::size_t k) {
    const auto kk = comp.kernel(k);
    const auto lower = comp.kernel(k - 1);
    std::map<Partition, std::optional<Subspace<ExtField>>> memo;
    auto family_of = [&](const Partition& pi) -> const std::optional<Subspace<ExtField>>& {
        auto it = memo.find(pi);
        if (it != memo.end()) return it->second;
        std::optional<Subspace<ExtField>> result;
        auto w = intersect_polydiagonal(kk, pi);
        if (w.dim() >= k) {
            auto v = largest_invariant_subspace(comp.shifted, std::move(w));
            if (!lower.contains(v)) result = std::move(v);
        }
        return memo.emplace(pi, std::move(result)).first->second;
    };

    std::vector<std::pair<Partition, Subspace<ExtField>>> minimal;
    const Partition top = Partition::singletons(comp.cells());
    if (!family_of(top)) return minimal;
    std::queue<Partition> todo;
    std::set<Partition> queued{top};
    todo.push(top);
    while (!todo.empty()) {
        Partition pi = todo.front();
        todo.pop();
        bool has_lower = false;
        const int c = static_cast<int>(pi.num_classes());
        for (int a = 0; a < c; ++a)
            for (int b = a + 1; b < c; ++b) {
                Partition lower_pi = pi.merged(a, b);
                if (!family_of(lower_pi)) continue;
                has_lower = true;
                if (queued.insert(lower_pi).second) todo.push(lower_pi);
            }
        if (!has_lower) minimal.emplace_back(pi, *family_of(pi));
    }
    return minimal;
}

}  // namespace detail

/// Representatives of all special Jordan subspaces of one component, sorted
/// by (dim, P-partition, basis); F leads the valency component.
inline std::vector<SpecialJordan> special_jordans_component(const SpectralComponent& comp, std::size_t index) {
    const ExtField& f = comp.field;
    const std::size_t n = comp.cells();
    std::vector<SpecialJordan> out;

    if (comp.is_valency) {
        std::vector<ExtElem> ones(n, f.one());
        auto full_sync = Subspace<ExtField>::span(f, n, {ones});
        out.push_back(detail::make_special(comp, index, ones, 1, full_sync));
        if (comp.generalized().dim() > 1) {
            for (auto& w : specials_in(valency_complement(comp), 1)) {
                auto plane = sum(full_sync, w).space;
                out.push_back(detail::make_special(comp, index, w.basis_vector(0), 1, std::move(plane)));
            }
        }
    } else {
        for (auto& w : specials_in(comp.kernel(1), 1)) {
            auto seed = w.basis_vector(0);
            out.push_back(detail::make_special(comp, index, std::move(seed), 1, w));
        }
        for (std::size_t k = 2; k <= comp.order; ++k) {
            for (auto& [pi, fam] : detail::minimal_jordan_classes(comp, k)) {
                auto seed = detail::order_k_vector(comp, fam, k);
                out.push_back(detail::make_special(comp, index, std::move(seed), k, std::move(fam)));
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const SpecialJordan& a, const SpecialJordan& b) {
        if (a.is_fully_synchronous != b.is_fully_synchronous) return a.is_fully_synchronous;
        if (a.dim != b.dim) return a.dim < b.dim;
        auto pa = a.p_partition.to_string(), pb = b.p_partition.to_string();
        if (pa != pb) return pa < pb;
        return a.basis.key() < b.basis.key();
    });
    return out;
}

inline std::vector<SpecialJordan> special_jordans(const std::vector<SpectralComponent>& comps) {
    std::vector<SpecialJordan> out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto part = special_jordans_component(comps[i], i);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

/// Number of special Jordan subspaces counting conjugates separately.
inline std::size_t special_count(const std::vector<SpecialJordan>& specials) {
    std::size_t c = 0;
    for (const auto& s : specials) c += s.weight;
    return c;
}

/// One summand of a direct-sum decomposition.
struct DecompositionMember {
    std::size_t special = 0;       // index of its class in the special list
    Subspace<ExtField> jordan;     // the Jordan subspace used
    std::vector<ExtElem> seed;
    QSubspace hull;
    bool representative = true;    // jordan equals the class representative
};

/// Tries to write Δ_sigma as a direct sum of special Jordan subspaces lying
/// in it. Per component, chains are chosen longest first; a chain is taken
/// when it meets the running sum trivially. Returns nothing when the special
/// Jordan subspaces inside Δ_sigma do not span it.
inline std::optional<std::vector<DecompositionMember>> decompose_polydiagonal(
    const std::vector<SpectralComponent>& comps, const std::vector<SpecialJordan>& specials, const Partition& sigma) {
    const std::size_t target = sigma.num_classes();
    // cheap necessary condition: enough room in the families inside Δ_sigma
    std::size_t room = 0;
    for (const auto& s : specials)
        if (sigma.refines(s.p_partition)) room += s.weight * s.family.dim();
    if (room < target) return std::nullopt;

    std::vector<DecompositionMember> members;
    std::size_t total = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& comp = comps[c];
        const auto local = intersect_polydiagonal(comp.generalized(), sigma);
        if (local.is_zero()) continue;
        auto running = Subspace<ExtField>::zero(comp.field, comp.cells());
        for (std::size_t k = comp.order; k >= 1 && running.dim() < local.dim(); --k) {
            for (std::size_t si = 0; si < specials.size() && running.dim() < local.dim(); ++si) {
                const auto& s = specials[si];
                if (s.component != c || s.dim != k || !sigma.refines(s.p_partition)) continue;
                auto try_seed = [&](const std::vector<ExtElem>& x, bool rep) {
                    auto chain = rep ? s.basis : Subspace<ExtField>::span(comp.field, comp.cells(), jordan_chain(comp, x, k));
                    auto grown = sum(running, chain);
                    if (!grown.direct) return;
                    running = std::move(grown.space);
                    members.push_back({si, chain, x, rep ? s.hull : rational_hull(chain), rep});
                };
                try_seed(s.chain_seed, true);
                if (s.unique() || running.dim() >= local.dim()) continue;
                // other members of the family: basis vectors lifted to order k
                const auto lower = comp.kernel(k - 1);
                for (std::size_t r = 0; r < s.family.dim() && running.dim() < local.dim(); ++r) {
                    auto x = s.family.basis_vector(r);
                    if (lower.contains(x))
                        for (std::size_t j = 0; j < x.size(); ++j) x[j] = comp.field.add(x[j], s.chain_seed[j]);
                    if (comp.is_valency && contains_full_synchrony(Subspace<ExtField>::span(comp.field, comp.cells(), {x})))
                        continue;
                    try_seed(x, false);
                }
            }
            if (k == 1) break;
        }
        total += comp.degree() * running.dim();
    }
    if (total != target) return std::nullopt;
    return members;
}

/// Direct-sum decomposition of the whole rational space into special Jordan
/// subspaces (hull level), one record per summand.
inline std::vector<SpecialJordan> decompose_Cn(const std::vector<SpectralComponent>& comps,
                                                const std::vector<SpecialJordan>& specials) {
    if (comps.empty()) throw std::invalid_argument("decompose_Cn: no spectral components");
    const std::size_t n = comps.front().cells();
    auto members = decompose_polydiagonal(comps, specials, Partition::singletons(n));
    if (!members) throw std::logic_error("decompose_Cn: special Jordan subspaces do not span the phase space");
    std::vector<SpecialJordan> out;
    for (auto& m : *members) {
        SpecialJordan sj = specials[m.special];
        if (!m.representative) {
            sj.basis = m.jordan;
            sj.chain_seed = m.seed;
            sj.hull = m.hull;
        }
        out.push_back(std::move(sj));
    }
    return out;
}

}  // namespace synclat

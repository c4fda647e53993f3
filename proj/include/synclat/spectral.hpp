#pragma once

// Exact spectral structure of an adjacency matrix: characteristic
// polynomial, factorization over Q, and one primary component per
// irreducible factor with its kernel chain and the N^j spaces.

#include <synclat/network.hpp>
#include <synclat/subspace.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace synclat {

/// Monic characteristic polynomial det(tI - A) by Faddeev-LeVerrier.
inline RationalPoly char_poly(const QMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("char_poly: matrix must be square");
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    QMatrix m(RationalField{}, n, n);
    const QMatrix id = QMatrix::identity(RationalField{}, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + id.scaled(c[n - k + 1]);
        QMatrix am = a * m;
        Rational trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
        c[n - k] = -trace / static_cast<long>(k);
    }
    return RationalPoly(std::move(c));
}

inline RationalPoly char_poly(const Network& net) { return char_poly(net.adjacency()); }

struct PolyFactor {
    RationalPoly factor;  // monic irreducible
    unsigned multiplicity = 0;
};

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class v) {
    v = abs(v);
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            small.push_back(d);
            if (d * d != v) large.push_back(v / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Scales to a primitive integer polynomial with positive leading coefficient.
inline RationalPoly primitive_part(const RationalPoly& p) {
    mpz_class l = 1;
    for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    mpz_class g = 0;
    for (const auto& c : p.coefficients()) {
        mpz_class v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    Rational scale(l, g);
    scale.canonicalize();
    if (p.leading() < 0) scale = -scale;
    return scale * p;
}

inline bool has_integer_coefficients(const RationalPoly& p) {
    for (const auto& c : p.coefficients())
        if (c.get_den() != 1) return false;
    return true;
}

// Kronecker's method: search for an integer factor of exactly `degree` of the
// primitive polynomial f by interpolating through divisors of f at degree+1
// sample points. Candidate coefficients are pruned by the Mignotte bound.
inline std::optional<RationalPoly> kronecker_factor(const RationalPoly& f, int degree) {
    const int k = degree;
    // Pick sample points with few divisors.
    std::vector<std::pair<std::size_t, long>> scored;
    for (long x = -3 * (k + 2); x <= 3 * (k + 2); ++x) {
        Rational v = f.eval(x);
        if (v == 0) continue;
        scored.emplace_back(positive_divisors(v.get_num()).size(), x);
    }
    std::sort(scored.begin(), scored.end());
    if (scored.size() < static_cast<std::size_t>(k + 1)) return std::nullopt;
    std::vector<long> xs;
    std::vector<std::vector<mpz_class>> divs;
    for (int i = 0; i <= k; ++i) {
        const long x = scored[i].second;
        xs.push_back(x);
        auto pos = positive_divisors(f.eval(x).get_num());
        std::vector<mpz_class> d;
        for (auto& p : pos) {
            d.push_back(p);
            if (i > 0) d.push_back(-p);  // fix the sign at the first point
        }
        divs.push_back(std::move(d));
    }
    // Lagrange basis polynomials through xs.
    std::vector<RationalPoly> basis;
    for (int i = 0; i <= k; ++i) {
        RationalPoly li = RationalPoly::constant(1);
        for (int j = 0; j <= k; ++j) {
            if (j == i) continue;
            li = li * RationalPoly::linear_factor(xs[j]);
            li = (Rational(1) / Rational(xs[i] - xs[j])) * li;
        }
        basis.push_back(std::move(li));
    }
    // Mignotte: |h_j| <= binom(k, j) * ||f||_2 * |lc(f)|; use 2^k for the binomial.
    mpz_class norm2 = 0;
    for (const auto& c : f.coefficients()) norm2 += c.get_num() * c.get_num();
    mpz_class norm = sqrt(norm2) + 1;
    const mpz_class bound = (mpz_class(1) << k) * norm * abs(f.leading().get_num());
    const mpz_class lead = f.leading().get_num();

    std::vector<std::size_t> idx(k + 1, 0);
    for (;;) {
        std::vector<Rational> coeffs(k + 1, Rational(0));
        for (int i = 0; i <= k; ++i) {
            const Rational d(divs[i][idx[i]]);
            for (std::size_t j = 0; j < basis[i].coefficients().size(); ++j) coeffs[j] += d * basis[i].coefficients()[j];
        }
        RationalPoly h(coeffs);
        bool ok = h.degree() == k && has_integer_coefficients(h);
        if (ok) {
            for (const auto& c : h.coefficients())
                if (abs(c.get_num()) > bound) ok = false;
        }
        if (ok && lead % h.leading().get_num() == 0 && (f % h).is_zero()) return h;
        int pos = 0;
        while (pos <= k && ++idx[pos] == divs[pos].size()) idx[pos++] = 0;
        if (pos > k) break;
    }
    return std::nullopt;
}

inline void add_factor(std::vector<PolyFactor>& out, const RationalPoly& monic_factor) {
    for (auto& pf : out)
        if (pf.factor == monic_factor) {
            ++pf.multiplicity;
            return;
        }
    out.push_back({monic_factor, 1});
}

// Factors a primitive polynomial without rational roots.
inline void factor_no_linear(RationalPoly f, std::vector<PolyFactor>& out) {
    while (f.degree() >= 4) {
        bool split = false;
        for (int k = 2; 2 * k <= f.degree() && !split; ++k) {
            if (auto h = kronecker_factor(f, k)) {
                RationalPoly g = *h;
                factor_no_linear(primitive_part(g), out);
                f = primitive_part(f / g);
                split = true;
            }
        }
        if (!split) break;
    }
    if (f.degree() >= 1) add_factor(out, f.monic());
}

}  // namespace detail

/// Complete factorization of a nonconstant polynomial into monic
/// irreducibles over Q. Rational roots are stripped first; the remaining
/// part is split by Kronecker's interpolation search, which is exponential in
/// the worst case but fine for characteristic polynomials of desk-scale
/// networks.
inline std::vector<PolyFactor> factor_over_Q(const RationalPoly& p) {
    if (p.degree() < 1) throw std::invalid_argument("factor_over_Q: polynomial must be nonconstant");
    std::vector<PolyFactor> out;
    RationalPoly f = detail::primitive_part(p);
    while (f.coeff(0) == 0) {
        detail::add_factor(out, RationalPoly{0, 1});
        f = f / RationalPoly{0, 1};
    }
    if (f.degree() >= 1) {
        const auto nums = detail::positive_divisors(f.coeff(0).get_num());
        const auto dens = detail::positive_divisors(f.leading().get_num());
        for (const auto& a : nums)
            for (const auto& b : dens)
                for (int sign : {1, -1}) {
                    Rational r(a * sign, b);
                    r.canonicalize();
                    while (f.degree() >= 1 && f.eval(r) == 0) {
                        detail::add_factor(out, RationalPoly::linear_factor(r));
                        f = detail::primitive_part(f / RationalPoly::linear_factor(r));
                    }
                }
    }
    if (f.degree() >= 1) detail::factor_no_linear(f, out);
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        return std::lexicographical_compare(a.factor.coefficients().begin(), a.factor.coefficients().end(),
                                            b.factor.coefficients().begin(), b.factor.coefficients().end());
    });
    return out;
}

/// Data attached to one irreducible factor p of the characteristic
/// polynomial. Everything over `field` refers to the single root λ = [t] of
/// Q[t]/(p); conjugate roots are never materialized.
struct SpectralComponent {
    RationalPoly factor;
    unsigned multiplicity = 0;
    ExtField field;
    std::size_t order = 0;                          // μ: Ker (A-λ)^μ is stationary
    Matrix<ExtField> adjacency;                     // A over the component field
    Matrix<ExtField> shifted;                       // A - λI
    std::vector<Subspace<ExtField>> kernel_chain;   // K^1 ⊆ ... ⊆ K^μ
    std::vector<Subspace<ExtField>> n_spaces;       // N^j = K^1 ∩ Im (A-λ)^{j-1}, j = 1..μ
    QSubspace primary;                              // Ker p(A)^m over Q
    bool is_valency = false;

    std::size_t degree() const { return field.degree(); }
    ExtElem eigenvalue() const { return field.generator(); }
    std::size_t cells() const { return shifted.rows(); }
    /// G_λ over the component field.
    const Subspace<ExtField>& generalized() const { return kernel_chain.back(); }
    /// K^r with K^0 = 0 and K^r = G_λ for r >= μ.
    Subspace<ExtField> kernel(std::size_t r) const {
        if (r == 0) return Subspace<ExtField>::zero(field, cells());
        return kernel_chain[std::min(r, order) - 1];
    }
    /// Rational eigenvalue of a degree-1 component.
    Rational rational_eigenvalue() const {
        if (degree() != 1) throw std::logic_error("component eigenvalue is not rational");
        return -factor.coeff(0);
    }
};

/// Smallest r with (A-λ)^r x = 0 (0 for x = 0).
inline std::size_t vector_order(const SpectralComponent& comp, std::vector<ExtElem> x) {
    const ExtField& f = comp.field;
    auto is_zero = [&](const std::vector<ExtElem>& v) {
        return std::all_of(v.begin(), v.end(), [&](const ExtElem& e) { return f.is_zero(e); });
    };
    std::size_t r = 0;
    while (!is_zero(x)) {
        x = comp.shifted.apply(x);
        ++r;
        if (r > comp.cells()) throw std::logic_error("vector is not in the generalized eigenspace");
    }
    return r;
}

/// Jordan chain {(A-λ)^{k-1}x, ..., (A-λ)x, x} ending at x.
inline std::vector<std::vector<ExtElem>> jordan_chain(const SpectralComponent& comp, const std::vector<ExtElem>& x,
                                                      std::size_t length) {
    std::vector<std::vector<ExtElem>> chain(length);
    chain[length - 1] = x;
    for (std::size_t i = length - 1; i-- > 0;) chain[i] = comp.shifted.apply(chain[i + 1]);
    return chain;
}

inline SpectralComponent make_component(const Network& net, const PolyFactor& pf) {
    SpectralComponent comp;
    comp.factor = pf.factor;
    comp.multiplicity = pf.multiplicity;
    comp.field = ExtField(pf.factor);
    const std::size_t n = net.cells();
    const QMatrix a = net.adjacency();
    comp.adjacency = Matrix<ExtField>::embed(comp.field, a);
    comp.shifted = comp.adjacency - Matrix<ExtField>::identity(comp.field, n).scaled(comp.eigenvalue());

    // Kernel chain until the dimension reaches the algebraic multiplicity.
    Matrix<ExtField> power = comp.shifted;
    for (std::size_t r = 1; r <= pf.multiplicity; ++r) {
        comp.kernel_chain.push_back(nullspace(power));
        if (comp.kernel_chain.back().dim() == pf.multiplicity) break;
        power = power * comp.shifted;
    }
    comp.order = comp.kernel_chain.size();
    if (comp.kernel_chain.back().dim() != pf.multiplicity)
        throw std::logic_error("generalized eigenspace dimension differs from multiplicity");

    Matrix<ExtField> image_power = Matrix<ExtField>::identity(comp.field, n);
    for (std::size_t j = 1; j <= comp.order; ++j) {
        comp.n_spaces.push_back(intersect(comp.kernel_chain[0], columnspace(image_power)));
        image_power = image_power * comp.shifted;
    }

    comp.primary = nullspace(apply_poly(a, pf.factor.pow(pf.multiplicity)));
    comp.is_valency = pf.factor == RationalPoly::linear_factor(Rational(static_cast<long>(net.valency())));
    return comp;
}

/// One component per irreducible factor; the valency component first, the
/// rest ordered by factor degree and coefficients.
inline std::vector<SpectralComponent> spectral_components(const Network& net) {
    auto factors = factor_over_Q(char_poly(net));
    std::vector<SpectralComponent> comps;
    for (const auto& pf : factors) comps.push_back(make_component(net, pf));
    std::stable_partition(comps.begin(), comps.end(), [](const SpectralComponent& c) { return c.is_valency; });
    return comps;
}

/// Jordan block sizes for λ = [t], largest first, from kernel-chain
/// dimension differences.
inline std::vector<std::size_t> jordan_structure(const SpectralComponent& comp) {
    std::vector<std::size_t> at_least(comp.order + 2, 0);  // blocks of size >= r
    for (std::size_t r = 1; r <= comp.order; ++r) at_least[r] = comp.kernel(r).dim() - comp.kernel(r - 1).dim();
    std::vector<std::size_t> blocks;
    for (std::size_t r = comp.order; r >= 1; --r)
        for (std::size_t c = 0; c < at_least[r] - at_least[r + 1]; ++c) blocks.push_back(r);
    return blocks;
}

}  // namespace synclat

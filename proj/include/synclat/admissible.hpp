#pragma once

// Polynomial admissible vector fields with additive coupling:
//   f_i(x) = g(x_i) + Σ_j a_ij h(x_i, x_j).

#include <synclat/network.hpp>
#include <synclat/polynomial.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace synclat {

struct AdmissibleField {
    RationalPoly internal;                                 // g
    std::map<std::pair<unsigned, unsigned>, Rational> coupling;  // h = Σ c_ij x^i y^j

    static AdmissibleField linear() {
        AdmissibleField f;
        f.coupling[{0, 1}] = 1;
        return f;
    }

    Rational h(const Rational& x, const Rational& y) const {
        Rational s = 0;
        for (const auto& [e, c] : coupling) {
            Rational term = c;
            for (unsigned k = 0; k < e.first; ++k) term *= x;
            for (unsigned k = 0; k < e.second; ++k) term *= y;
            s += term;
        }
        return s;
    }
};

inline std::vector<Rational> eval_admissible(const Network& net, const AdmissibleField& f,
                                             const std::vector<Rational>& x) {
    const std::size_t n = net.cells();
    if (x.size() != n) throw std::invalid_argument("eval_admissible: point has wrong length");
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational s = f.internal.eval(x[i]);
        for (std::size_t j = 0; j < n; ++j)
            if (auto a = net.arrows(i, j)) s += Rational(static_cast<long>(a)) * f.h(x[i], x[j]);
        out[i] = s;
    }
    return out;
}

inline bool in_polydiagonal(const std::vector<Rational>& x, const Partition& pi) {
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (pi.same_class(i, j) && x[i] != x[j]) return false;
    return true;
}

/// Coefficients in [-5, 5], degrees at most 3 (total degree for h).
inline AdmissibleField random_admissible(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-5, 5);
    AdmissibleField f;
    std::vector<Rational> g(4);
    for (auto& c : g) c = coef(rng);
    f.internal = RationalPoly(g);
    for (unsigned i = 0; i <= 3; ++i)
        for (unsigned j = 0; i + j <= 3; ++j)
            if (int c = coef(rng)) f.coupling[{i, j}] = c;
    return f;
}

/// A point of Δ_pi with class values p/q, |p| ≤ 5, 1 ≤ q ≤ 5.
inline std::vector<Rational> random_point(const Partition& pi, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 5);
    std::vector<Rational> cls(pi.num_classes());
    for (auto& c : cls) {
        c = Rational(num(rng), den(rng));
        c.canonicalize();
    }
    std::vector<Rational> x(pi.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = cls[pi.label(i)];
    return x;
}

struct InvarianceWitness {
    AdmissibleField field;
    std::vector<Rational> point;
};

/// For an unbalanced pi, the linear field h(x, y) = y and a class indicator
/// whose image leaves Δ_pi. Nothing for balanced pi.
inline std::optional<InvarianceWitness> invariance_witness(const Network& net, const Partition& pi) {
    if (is_balanced(net, pi)) return std::nullopt;
    const auto f = AdmissibleField::linear();
    for (std::size_t c = 0; c < pi.num_classes(); ++c) {
        std::vector<Rational> x(pi.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = pi.label(i) == static_cast<int>(c) ? 1 : 0;
        if (!in_polydiagonal(eval_admissible(net, f, x), pi)) return InvarianceWitness{f, x};
    }
    throw std::logic_error("unbalanced partition without a linear witness");
}

/// Samples `fields` random fields at `points` random points of Δ_pi and
/// reports whether every image stays in Δ_pi.
inline bool sampled_invariance(const Network& net, const Partition& pi, std::uint64_t seed, std::size_t fields = 20,
                               std::size_t points = 5) {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < fields; ++k) {
        auto f = random_admissible(rng);
        for (std::size_t p = 0; p < points; ++p)
            if (!in_polydiagonal(eval_admissible(net, f, random_point(pi, rng)), pi)) return false;
    }
    return true;
}

}  // namespace synclat

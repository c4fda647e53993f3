#pragma once

// Coefficient fields for exact linear algebra: the rationals and simple
// algebraic extensions Q[t]/(p(t)). Both expose the same policy interface
// so Matrix and Subspace are written once over `Field`.

#include <synclat/polynomial.hpp>

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace synclat {

struct RationalField {
    using value_type = Rational;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_rational(const Rational& q) const { return q; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw std::domain_error("inversion of zero");
        return 1 / a;
    }
    value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }
    bool is_zero(const value_type& a) const { return a == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    /// Rational coordinates of `a` in the basis 1, t, ..., t^{d-1}.
    std::vector<Rational> coordinates(const value_type& a) const { return {a}; }
    std::size_t degree() const { return 1; }
    std::string to_string(const value_type& a) const { return a.get_str(); }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Residue of Q[t] modulo the field's defining polynomial, as a length-d
/// coefficient vector (ascending powers of t).
struct ExtElem {
    std::vector<Rational> c;

    friend bool operator==(const ExtElem& a, const ExtElem& b) { return a.c == b.c; }
    friend bool operator!=(const ExtElem& a, const ExtElem& b) { return !(a == b); }
};

/// The number field Q[t]/(p) for a monic irreducible p. Irreducibility is the
/// caller's contract; the spectral module only builds fields from factors it
/// has proven irreducible.
class ExtField {
public:
    using value_type = ExtElem;

    ExtField() : ExtField(RationalPoly{0, 1}) {}
    explicit ExtField(RationalPoly modulus) {
        if (modulus.degree() < 1) throw std::invalid_argument("extension modulus must have degree >= 1");
        if (!modulus.is_monic()) throw std::invalid_argument("extension modulus must be monic");
        modulus_ = std::make_shared<const RationalPoly>(std::move(modulus));
    }

    const RationalPoly& modulus() const { return *modulus_; }
    std::size_t degree() const { return static_cast<std::size_t>(modulus_->degree()); }

    value_type zero() const { return ExtElem{std::vector<Rational>(degree(), Rational(0))}; }
    value_type one() const { return from_rational(1); }
    value_type from_rational(const Rational& q) const {
        ExtElem e = zero();
        e.c[0] = q;
        return e;
    }
    /// The class of t, i.e. the adjoined root.
    value_type generator() const { return reduce(RationalPoly::monomial(1)); }

    value_type reduce(const RationalPoly& p) const {
        RationalPoly r = p % *modulus_;
        ExtElem e = zero();
        for (std::size_t i = 0; i < r.coefficients().size(); ++i) e.c[i] = r.coefficients()[i];
        return e;
    }
    RationalPoly lift(const value_type& a) const { return RationalPoly(a.c); }

    value_type add(const value_type& a, const value_type& b) const {
        ExtElem e = a;
        for (std::size_t i = 0; i < e.c.size(); ++i) e.c[i] += b.c[i];
        return e;
    }
    value_type sub(const value_type& a, const value_type& b) const {
        ExtElem e = a;
        for (std::size_t i = 0; i < e.c.size(); ++i) e.c[i] -= b.c[i];
        return e;
    }
    value_type neg(const value_type& a) const {
        ExtElem e = a;
        for (auto& x : e.c) x = -x;
        return e;
    }
    value_type mul(const value_type& a, const value_type& b) const {
        const std::size_t d = degree();
        if (d == 1) return ExtElem{{a.c[0] * b.c[0]}};
        std::vector<Rational> prod(2 * d - 1, Rational(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (a.c[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (b.c[j] == 0) continue;
                prod[i + j] += a.c[i] * b.c[j];
            }
        }
        // t^d = -(p_0 + ... + p_{d-1} t^{d-1})
        const auto& p = modulus_->coefficients();
        for (std::size_t k = prod.size() - 1; k >= d; --k) {
            if (prod[k] == 0) continue;
            Rational top = prod[k];
            prod[k] = 0;
            for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= top * p[i];
        }
        prod.resize(d);
        return ExtElem{std::move(prod)};
    }
    value_type inv(const value_type& a) const {
        if (is_zero(a)) throw std::domain_error("inversion of zero");
        if (degree() == 1) return ExtElem{{Rational(1) / a.c[0]}};
        auto [g, s] = RationalPoly::gcd_inverse(lift(a), *modulus_);
        if (g.degree() != 0) throw std::domain_error("element is not invertible: modulus is reducible");
        return reduce(s);
    }
    value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
    bool is_zero(const value_type& a) const {
        for (const auto& x : a.c)
            if (x != 0) return false;
        return true;
    }
    bool equal(const value_type& a, const value_type& b) const { return a.c == b.c; }

    std::vector<Rational> coordinates(const value_type& a) const { return a.c; }
    std::string to_string(const value_type& a) const { return lift(a).to_string("t"); }

    friend bool operator==(const ExtField& a, const ExtField& b) {
        return a.modulus_ == b.modulus_ || *a.modulus_ == *b.modulus_;
    }

private:
    std::shared_ptr<const RationalPoly> modulus_;
};

}  // namespace synclat

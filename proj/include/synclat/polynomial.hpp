#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace synclat {

/// Exact rational as used throughout the library.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// "p/q" form, or "p" for integers.
inline std::string to_string(const Rational& q) {
    return q.get_str();
}

inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) {
        throw std::invalid_argument("not a rational number: " + text);
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator: " + text);
    }
    q.canonicalize();
    return q;
}

/// Univariate polynomial with rational coefficients, stored in ascending
/// degree. The zero polynomial has no coefficients.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    RationalPoly(std::initializer_list<long> coeffs) {
        for (long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }

    static RationalPoly constant(const Rational& c) { return RationalPoly(std::vector<Rational>{c}); }
    static RationalPoly monomial(std::size_t degree, const Rational& c = 1) {
        std::vector<Rational> v(degree + 1, Rational(0));
        v[degree] = c;
        return RationalPoly(std::move(v));
    }
    /// t - root
    static RationalPoly linear_factor(const Rational& root) {
        return RationalPoly(std::vector<Rational>{Rational(-root), Rational(1)});
    }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    RationalPoly monic() const {
        if (is_zero()) return *this;
        std::vector<Rational> v = coeffs_;
        Rational lc = v.back();
        for (auto& c : v) c /= lc;
        return RationalPoly(std::move(v));
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    RationalPoly derivative() const {
        std::vector<Rational> v;
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(coeffs_[i] * static_cast<long>(i));
        return RationalPoly(std::move(v));
    }

    friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
        return RationalPoly(std::move(v));
    }
    friend RationalPoly operator-(const RationalPoly& a) {
        std::vector<Rational> v = a.coeffs_;
        for (auto& c : v) c = -c;
        return RationalPoly(std::move(v));
    }
    friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) { return a + (-b); }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return RationalPoly(std::move(v));
    }
    friend RationalPoly operator*(const Rational& s, const RationalPoly& a) {
        return RationalPoly::constant(s) * a;
    }
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const RationalPoly& a, const RationalPoly& b) { return !(a == b); }

    RationalPoly pow(unsigned e) const {
        RationalPoly result = constant(1);
        for (unsigned i = 0; i < e; ++i) result = result * *this;
        return result;
    }

    /// Quotient and remainder of Euclidean division.
    static std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        if (a.degree() < b.degree()) return {RationalPoly{}, a};
        std::vector<Rational> rem = a.coeffs_;
        std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1, Rational(0));
        const Rational& lb = b.coeffs_.back();
        for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
            Rational q = rem[i + b.coeffs_.size() - 1] / lb;
            quot[i] = q;
            if (q == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[i + j] -= q * b.coeffs_[j];
        }
        return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
    }
    friend RationalPoly operator/(const RationalPoly& a, const RationalPoly& b) { return divmod(a, b).first; }
    friend RationalPoly operator%(const RationalPoly& a, const RationalPoly& b) { return divmod(a, b).second; }

    /// Monic greatest common divisor (zero if both are zero).
    static RationalPoly gcd(RationalPoly a, RationalPoly b) {
        while (!b.is_zero()) {
            RationalPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Returns (g, s) with s*a = g (mod m), g = gcd(a, m) monic.
    static std::pair<RationalPoly, RationalPoly> gcd_inverse(const RationalPoly& a, const RationalPoly& m) {
        RationalPoly r0 = m, r1 = a % m;
        RationalPoly s0, s1 = constant(1);
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            RationalPoly s = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r0.is_zero()) return {r0, s0};
        Rational lc = r0.leading();
        return {r0.monic(), (Rational(1) / lc) * s0};
    }

    /// Human-readable form in the variable `var`, highest degree first.
    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Rational& c = coeffs_[i];
            if (c == 0) continue;
            Rational mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            bool show_coeff = (mag != 1) || i == 0;
            if (show_coeff) os << mag.get_str();
            if (i > 0) {
                if (show_coeff) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// Number of distinct real roots of `p` in the half-open interval (lo, hi],
/// by Sturm's theorem.
inline int count_real_roots(const RationalPoly& p, const Rational& lo, const Rational& hi) {
    if (p.degree() <= 0) return 0;
    RationalPoly sq = p / RationalPoly::gcd(p, p.derivative());
    std::vector<RationalPoly> seq{sq, sq.derivative()};
    while (seq.back().degree() > 0) {
        RationalPoly r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    auto sign_changes = [&](const Rational& x) {
        int changes = 0;
        int prev = 0;
        for (const auto& q : seq) {
            int s = sgn(q.eval(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    };
    return sign_changes(lo) - sign_changes(hi);
}

/// Cauchy bound: every complex root has modulus below the returned value.
inline Rational root_bound(const RationalPoly& p) {
    if (p.degree() <= 0) return 1;
    Rational lc = abs(p.leading());
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = abs(p.coeff(i)) / lc;
        if (r > m) m = r;
    }
    return m + 1;
}

inline int count_real_roots(const RationalPoly& p) {
    Rational b = root_bound(p);
    return count_real_roots(p, Rational(-b), b);
}

}  // namespace synclat

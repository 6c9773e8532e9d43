#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "rur/errors.hpp"

namespace rur {

/// Dense univariate polynomial with ascending coefficients and no stored
/// leading zeros; the empty list is the zero polynomial.
template <class K>
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly constant(const K& a) { return a.is_zero() ? UPoly() : UPoly(std::vector<K>{a}); }
    static UPoly monomial(const K& a, std::size_t e) {
        if (a.is_zero()) return UPoly();
        std::vector<K> c(e + 1, a.zero());
        c[e] = a;
        return UPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<K>& coeffs() const { return c_; }
    const K& lead() const { return c_.back(); }
    const K& operator[](std::size_t i) const { return c_[i]; }

    /// Coefficient of T^i, valid for any i (returns a zero past the degree).
    K coeff_or_zero(std::size_t i, const K& sample) const {
        return i < c_.size() ? c_[i] : sample.zero();
    }

    bool operator==(const UPoly& b) const { return c_ == b.c_; }
    bool operator!=(const UPoly& b) const { return c_ != b.c_; }

    K eval(const K& x) const {
        if (c_.empty()) return x.zero();
        K r = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) r = r * x + c_[i];
        return r;
    }

    std::string str(const std::string& var = "T") const;

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<K> c_;
};

namespace detail {
// A zero element of the coefficient field, stolen from whichever operand has one.
template <class K>
const K* sample_coeff(const UPoly<K>& a, const UPoly<K>& b) {
    if (!a.is_zero()) return &a.coeffs()[0];
    if (!b.is_zero()) return &b.coeffs()[0];
    return nullptr;
}
}  // namespace detail

template <class K>
UPoly<K> operator+(const UPoly<K>& a, const UPoly<K>& b) {
    const K* s = detail::sample_coeff(a, b);
    if (!s) return UPoly<K>();
    std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<K> c(n, s->zero());
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
    return UPoly<K>(std::move(c));
}

template <class K>
UPoly<K> operator-(const UPoly<K>& a) {
    std::vector<K> c = a.coeffs();
    for (auto& x : c) x = -x;
    return UPoly<K>(std::move(c));
}

template <class K>
UPoly<K> operator-(const UPoly<K>& a, const UPoly<K>& b) {
    return a + (-b);
}

template <class K>
UPoly<K> operator*(const UPoly<K>& a, const UPoly<K>& b) {
    if (a.is_zero() || b.is_zero()) return UPoly<K>();
    const K zero = a.coeffs()[0].zero();
    std::vector<K> c(a.coeffs().size() + b.coeffs().size() - 1, zero);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
    return UPoly<K>(std::move(c));
}

template <class K>
UPoly<K> scale(const UPoly<K>& a, const K& s) {
    if (s.is_zero()) return UPoly<K>();
    std::vector<K> c = a.coeffs();
    for (auto& x : c) x = x * s;
    return UPoly<K>(std::move(c));
}

template <class K>
UPoly<K> make_monic(const UPoly<K>& a) {
    if (a.is_zero()) throw Error("cannot normalize the zero polynomial");
    if (a.lead().is_one()) return a;
    return scale(a, a.lead().inv());
}

template <class K>
std::pair<UPoly<K>, UPoly<K>> divrem(const UPoly<K>& a, const UPoly<K>& b) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    if (a.degree() < b.degree()) return {UPoly<K>(), a};
    const K zero = b.lead().zero();
    K lcinv = b.lead().inv();
    std::vector<K> r = a.coeffs();
    std::vector<K> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), zero);
    for (int i = a.degree(); i >= b.degree(); --i) {
        K f = r[static_cast<std::size_t>(i)] * lcinv;
        if (f.is_zero()) continue;
        q[static_cast<std::size_t>(i - b.degree())] = f;
        for (int j = 0; j <= b.degree(); ++j)
            r[static_cast<std::size_t>(i - b.degree() + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {UPoly<K>(std::move(q)), UPoly<K>(std::move(r))};
}

template <class K>
UPoly<K> poly_rem(const UPoly<K>& a, const UPoly<K>& f) {
    return divrem(a, f).second;
}

template <class K>
UPoly<K> exact_div(const UPoly<K>& a, const UPoly<K>& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw NotDivisible("nonzero remainder in exact division");
    return q;
}

/// Monic gcd, with gcd(a, 0) = monic(a).
template <class K>
UPoly<K> poly_gcd_monic(UPoly<K> a, UPoly<K> b) {
    if (a.is_zero() && b.is_zero()) throw ZeroGcd("gcd(0, 0) undefined");
    while (!b.is_zero()) {
        UPoly<K> r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

template <class K>
UPoly<K> derivative(const UPoly<K>& a) {
    if (a.degree() < 1) return UPoly<K>();
    std::vector<K> c;
    c.reserve(static_cast<std::size_t>(a.degree()));
    for (int i = 1; i <= a.degree(); ++i)
        c.push_back(a.coeffs()[static_cast<std::size_t>(i)] * a.coeffs()[0].embed(i));
    return UPoly<K>(std::move(c));
}

/// Monic f / gcd(f, f'). Requires characteristic 0 or > deg f so the root
/// set is preserved with all roots simple.
template <class K>
UPoly<K> squarefree_part(const UPoly<K>& f) {
    if (f.is_zero()) throw Error("squarefree part of zero polynomial");
    uint64_t ch = f.lead().characteristic();
    if (ch != 0 && ch <= static_cast<uint64_t>(f.degree()))
        throw UnsupportedCharacteristic("characteristic " + std::to_string(ch) +
                                        " <= degree " + std::to_string(f.degree()));
    if (f.degree() == 0) return UPoly<K>::constant(f.lead().one());
    UPoly<K> g = poly_gcd_monic(f, derivative(f));
    return make_monic(exact_div(f, g));
}

template <class K>
UPoly<K> poly_mul_mod(const UPoly<K>& a, const UPoly<K>& b, const UPoly<K>& f) {
    return poly_rem(a * b, f);
}

template <class K>
UPoly<K> poly_pow_mod(UPoly<K> base, uint64_t e, const UPoly<K>& f) {
    if (f.is_zero()) throw Error("zero modulus");
    const K one = f.lead().one();
    UPoly<K> r = poly_rem(UPoly<K>::constant(one), f);
    base = poly_rem(base, f);
    while (e) {
        if (e & 1) r = poly_mul_mod(r, base, f);
        base = poly_mul_mod(base, base, f);
        e >>= 1;
    }
    return r;
}

/// Inverse of g modulo f (extended Euclid). Throws NotInvertibleModF when
/// gcd(g, f) != 1, which upstream treats as evidence of non-separation.
template <class K>
UPoly<K> mod_inverse(const UPoly<K>& g, const UPoly<K>& f) {
    if (f.degree() < 1) throw Error("modulus must have degree >= 1");
    UPoly<K> r0 = f, r1 = poly_rem(g, f);
    UPoly<K> t0, t1 = UPoly<K>::constant(f.lead().one());
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        UPoly<K> t2 = t0 - q * t1;
        r0 = std::move(r1);
        t0 = std::move(t1);
        r1 = std::move(r2);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0) throw NotInvertibleModF("gcd has degree " + std::to_string(r0.degree()));
    return poly_rem(scale(t0, r0.lead().inv()), f);
}

template <class K>
std::string UPoly<K>::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        std::ostringstream cs;
        cs << c_[i];
        std::string coeff = cs.str();
        bool neg = !coeff.empty() && coeff[0] == '-';
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        if (neg) coeff = coeff.substr(1);
        if (i == 0) {
            os << coeff;
        } else {
            if (coeff != "1") os << coeff << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace rur

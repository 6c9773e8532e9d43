#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rur/errors.hpp"
#include "rur/fields.hpp"

namespace rur {

/// Exponent vector over a fixed set of variables; per-variable exponents
/// capped at 16 bits, overflow raises instead of wrapping.
class Monomial {
  public:
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<uint16_t> exps) : e_(std::move(exps)) {}

    static Monomial variable(std::size_t nvars, std::size_t var, uint32_t pow = 1);

    std::size_t nvars() const { return e_.size(); }
    uint16_t operator[](std::size_t i) const { return e_[i]; }
    const std::vector<uint16_t>& exponents() const { return e_; }
    uint32_t degree() const;
    bool is_one() const;

    Monomial operator*(const Monomial& b) const;
    bool divides(const Monomial& b) const;
    /// this / b, requiring b | this.
    Monomial operator/(const Monomial& b) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool coprime_with(const Monomial& b) const;

    /// Same exponents with one fresh variable appended (exponent 0).
    Monomial extended() const;

    bool operator==(const Monomial& b) const { return e_ == b.e_; }
    bool operator!=(const Monomial& b) const { return e_ != b.e_; }

  private:
    std::vector<uint16_t> e_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = m.nvars();
        for (std::size_t i = 0; i < m.nvars(); ++i) h = h * 1000003u + m[i];
        return h;
    }
};

enum class Ordering { less = -1, equal = 0, greater = 1 };

/// Total multiplicative monomial order. The permutation lists variable
/// indices from biggest to smallest; identity means the first declared
/// variable is the biggest.
class MonomialOrder {
  public:
    enum class Kind { lex, degrevlex };

    MonomialOrder(Kind kind, std::size_t nvars);
    MonomialOrder(Kind kind, std::vector<std::size_t> perm);

    static MonomialOrder lex(std::size_t nvars) { return {Kind::lex, nvars}; }
    static MonomialOrder degrevlex(std::size_t nvars) { return {Kind::degrevlex, nvars}; }

    Kind kind() const { return kind_; }
    std::size_t nvars() const { return perm_.size(); }
    const std::vector<std::size_t>& permutation() const { return perm_; }

    Ordering compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const {
        return compare(a, b) == Ordering::less;
    }
    bool greater(const Monomial& a, const Monomial& b) const {
        return compare(a, b) == Ordering::greater;
    }

    bool operator==(const MonomialOrder& o) const {
        return kind_ == o.kind_ && perm_ == o.perm_;
    }
    bool operator!=(const MonomialOrder& o) const { return !(*this == o); }

  private:
    Kind kind_;
    std::vector<std::size_t> perm_;
};

template <class K>
struct Term {
    Monomial mono;
    K coeff;
};

/// Multivariate polynomial: terms sorted descending under the carried order,
/// no zero coefficients stored.
template <class K>
class MPoly {
  public:
    explicit MPoly(MonomialOrder order) : order_(std::move(order)) {}

    static MPoly from_terms(const MonomialOrder& order, std::vector<Term<K>> terms) {
        MPoly p(order);
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const MonomialOrder& order() const { return order_; }
    std::size_t nvars() const { return order_.nvars(); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term<K>>& terms() const { return terms_; }

    const Term<K>& lead() const {
        if (terms_.empty()) throw ZeroPolynomial("leading term of zero polynomial");
        return terms_.front();
    }
    const Monomial& lead_mono() const { return lead().mono; }
    const K& lead_coeff() const { return lead().coeff; }

    uint32_t total_degree() const {
        uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    MPoly reordered(const MonomialOrder& order) const {
        return from_terms(order, terms_);
    }

    bool operator==(const MPoly& b) const {
        if (terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != b.terms_[i].mono || !(terms_[i].coeff == b.terms_[i].coeff))
                return false;
        return true;
    }
    bool operator!=(const MPoly& b) const { return !(*this == b); }

    MPoly operator-() const {
        MPoly r(order_);
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    MPoly operator+(const MPoly& b) const {
        check_compatible(b);
        MPoly r(order_);
        r.terms_.reserve(terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < b.terms_.size()) {
            Ordering c = order_.compare(terms_[i].mono, b.terms_[j].mono);
            if (c == Ordering::greater) {
                r.terms_.push_back(terms_[i++]);
            } else if (c == Ordering::less) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                K s = terms_[i].coeff + b.terms_[j].coeff;
                if (!s.is_zero()) r.terms_.push_back({terms_[i].mono, s});
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }
    MPoly operator-(const MPoly& b) const { return *this + (-b); }

    /// this * (coeff · mono)
    MPoly term_mul(const Monomial& m, const K& c) const {
        MPoly r(order_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            K pc = t.coeff * c;
            if (!pc.is_zero()) r.terms_.push_back({t.mono * m, pc});
        }
        return r;
    }

    MPoly operator*(const MPoly& b) const {
        check_compatible(b);
        MPoly r(order_);
        for (const auto& t : b.terms_) r = r + term_mul(t.mono, t.coeff);
        return r;
    }

    MPoly scale(const K& c) const { return term_mul(Monomial(nvars()), c); }

    MPoly make_monic() const {
        if (is_zero()) throw ZeroPolynomial("cannot normalize zero polynomial");
        if (lead_coeff().is_one()) return *this;
        return scale(lead_coeff().inv());
    }

    K eval(const std::vector<K>& point) const {
        if (point.size() != nvars()) throw InternalInvariantViolation("point arity mismatch");
        if (terms_.empty() && point.empty())
            throw InternalInvariantViolation("cannot evaluate zero polynomial in zero variables without a sample");
        K acc = terms_.empty() ? point.front().zero() : terms_.front().coeff.zero();
        for (const auto& t : terms_) {
            K m = t.coeff;
            for (std::size_t i = 0; i < point.size(); ++i) {
                uint16_t e = t.mono[i];
                if (e) m *= pow_elem(point[i], e);
            }
            acc += m;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& names) const;

  private:
    static K pow_elem(K base, uint32_t e) {
        K r = base.one();
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    void check_compatible(const MPoly& b) const {
        if (order_ != b.order_)
            throw InternalInvariantViolation("mixed monomial orders in polynomial arithmetic");
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [&](const Term<K>& a, const Term<K>& b) {
            return order_.greater(a.mono, b.mono);
        });
        std::vector<Term<K>> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono) {
                out.back().coeff += t.coeff;
                if (out.back().coeff.is_zero()) out.pop_back();
            } else if (!t.coeff.is_zero()) {
                out.push_back(std::move(t));
            }
        }
        terms_ = std::move(out);
    }

    MonomialOrder order_;
    std::vector<Term<K>> terms_;
};

template <class K>
std::string MPoly<K>::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        std::ostringstream cs;
        cs << t.coeff;
        std::string c = cs.str();
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c = c.substr(1);
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (c != "1" || t.mono.is_one()) {
            os << c;
            wrote = true;
        }
        for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
            if (t.mono[i] == 0) continue;
            if (wrote) os << "*";
            os << names[i];
            if (t.mono[i] > 1) os << "^" << t.mono[i];
            wrote = true;
        }
    }
    return os.str();
}

/// Integer-coefficient polynomial as produced by the parser, before
/// embedding into a concrete field.
using ZTerm = std::pair<Monomial, mpz_class>;
using ZPoly = std::vector<ZTerm>;

struct FieldSpec {
    uint64_t prime = 0;  // 0 means the rationals
    bool is_rational() const { return prime == 0; }
    bool operator==(const FieldSpec&) const = default;
};

struct ParsedSystem {
    std::vector<std::string> vars;
    FieldSpec field;
    std::vector<ZPoly> polys;
};

/// Parse the text format: `vars:` line, `field:` line, then one polynomial
/// per non-empty non-comment line. Throws ParseError with line/column,
/// ZeroPolynomial if a listed polynomial cancels to zero.
ParsedSystem parse_system(const std::string& text);

/// Single polynomial in the context of known variables (test convenience).
ZPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);

template <class K>
MPoly<K> embed_poly(const ZPoly& zp, const MonomialOrder& order, const K& sample) {
    std::vector<Term<K>> terms;
    terms.reserve(zp.size());
    for (const auto& [m, c] : zp) terms.push_back({m, embed_mpz(c, sample)});
    return MPoly<K>::from_terms(order, std::move(terms));
}

/// Generator T − t₁X₁ − … − t_nXn of the augmented ideal; T is the appended
/// last (lex-smallest) variable. `order` is over n+1 variables.
template <class K>
MPoly<K> linear_form_generator(const std::vector<int64_t>& t, const MonomialOrder& order,
                               const K& sample) {
    std::size_t n = t.size();
    if (order.nvars() != n + 1)
        throw InternalInvariantViolation("order must cover the fresh variable");
    std::vector<Term<K>> terms;
    terms.push_back({Monomial::variable(n + 1, n), sample.one()});
    for (std::size_t i = 0; i < n; ++i)
        terms.push_back({Monomial::variable(n + 1, i), -sample.embed(t[i])});
    return MPoly<K>::from_terms(order, std::move(terms));
}

template <class K>
MPoly<K> extend_vars(const MPoly<K>& p, const MonomialOrder& order) {
    std::vector<Term<K>> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) terms.push_back({t.mono.extended(), t.coeff});
    return MPoly<K>::from_terms(order, std::move(terms));
}

}  // namespace rur

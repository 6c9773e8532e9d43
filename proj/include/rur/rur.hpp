#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rur/bivar.hpp"
#include "rur/errors.hpp"
#include "rur/fglm.hpp"
#include "rur/groebner.hpp"

namespace rur {

/// Integer coefficients of the linear form t = Σ t_i·X_i.
using LinearForm = std::vector<int64_t>;

inline void validate_form(const LinearForm& t) {
    for (int64_t c : t)
        if (c != 0) return;
    throw InternalInvariantViolation("linear form must not be identically zero");
}

/// first(T) = 0, X_i = coords[i](T)/f0(T). For the radical, `first` is the
/// squarefree minimal polynomial of M_t; the full-ideal variant swaps in the
/// characteristic polynomial while keeping f0 and the coordinates.
template <class K>
struct ReducedRUR {
    UPoly<K> first;
    UPoly<K> f0;
    std::vector<UPoly<K>> coords;
    LinearForm form;
    std::size_t delta = 0;  // degree of the minimal polynomial of M_t
    std::size_t bigD = 0;   // quotient dimension
    bool full = false;      // first is the characteristic polynomial
};

template <class K>
struct RurOutcome {
    std::optional<ReducedRUR<K>> rur;
    std::size_t fail_index = 0;  // 1-based coordinate that failed separation
    std::string reason;

    bool success() const { return rur.has_value(); }
};

/// M_t = Σ t_i·M_{X_i} — multiplication by the form in the quotient, and by
/// the fresh variable T in the augmented quotient.
template <class K>
DenseMatrix<K> form_matrix(const QuotientStructure<K>& q, const LinearForm& t) {
    if (t.size() != q.nvars()) throw InternalInvariantViolation("form arity mismatch");
    validate_form(t);
    const K zero = q.sample().zero();
    DenseMatrix<K> M(q.dimension, q.dimension, zero);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] != 0) M.add_scaled(q.mats[i], zero.embed(t[i]));
    return M;
}

namespace detail {

template <class K>
RurOutcome<K> rur_pipeline(const QuotientStructure<K>& q, const LinearForm& t,
                           bool check_separation) {
    const K sample = q.sample();
    require_characteristic_above(sample, q.dimension, "parametrization pipeline");

    DenseMatrix<K> MT = form_matrix(q, t);
    auto [ftilde, state] = minimal_polynomial(MT, sample);
    UPoly<K> fbar = squarefree_part(ftilde);

    ReducedRUR<K> out;
    out.form = t;
    out.delta = static_cast<std::size_t>(ftilde.degree());
    out.bigD = q.dimension;
    out.first = fbar;
    out.f0 = scale(derivative(fbar), sample.embed(fbar.degree()).inv());

    for (std::size_t i = 0; i < q.nvars(); ++i) {
        BivariateLexBasis<K> basis = coordinate(q.mats[i], ftilde, state);
        if (check_separation && !separation_test(basis))
            return {std::nullopt, i + 1,
                    "coordinate " + std::to_string(i + 1) + " not separated by the form"};
        CoordinateParametrization<K> param = bivariate_parametrization(basis);
        out.coords.push_back(param_to_rur_coordinate(fbar, param));
    }
    return {std::move(out), 0, ""};
}

}  // namespace detail

/// Parametrization of the radical without any separation check: correct
/// exactly when t separates the variety.
template <class K>
ReducedRUR<K> radical_rur_candidate(const QuotientStructure<K>& q, const LinearForm& t) {
    return *detail::rur_pipeline(q, t, false).rur;
}

/// Las Vegas variant: every coordinate passes the bivariate separation test
/// before being parametrized, so Success is certified correct.
template <class K>
RurOutcome<K> las_vegas_radical_rur(const QuotientStructure<K>& q, const LinearForm& t) {
    return detail::rur_pipeline(q, t, true);
}

/// Swap in the characteristic polynomial of M_t (degree exactly D), keeping
/// the denominator and coordinate numerators.
template <class K>
ReducedRUR<K> full_ideal_rur(const QuotientStructure<K>& q, const LinearForm& t,
                             const ReducedRUR<K>& radical) {
    const K sample = q.sample();
    UPoly<K> chi = characteristic_polynomial(form_matrix(q, t), sample);
    if (static_cast<std::size_t>(chi.degree()) != q.dimension)
        throw InternalInvariantViolation("characteristic polynomial degree differs from dimension");
    if (!poly_rem(chi, radical.first).is_zero())
        throw InternalInvariantViolation("first polynomial does not divide the characteristic polynomial");
    ReducedRUR<K> out = radical;
    out.first = std::move(chi);
    out.full = true;
    return out;
}

/// Uniform nonzero integers in [−B, B], reproducible across platforms.
inline LinearForm strategy_random(std::size_t n, int64_t bound, uint64_t seed) {
    if (bound < 1) throw InternalInvariantViolation("bound must be positive");
    std::mt19937_64 gen(seed);
    LinearForm t(n);
    for (auto& c : t) {
        uint64_t r = gen() % (2 * static_cast<uint64_t>(bound));
        c = r < static_cast<uint64_t>(bound) ? -static_cast<int64_t>(r) - 1
                                             : static_cast<int64_t>(r - bound) + 1;
    }
    return t;
}

/// The guaranteed family {Σ_i j^i·X_i : j = 1..(n−1)D(D−1)/2}; a single
/// variable always separates itself.
inline std::vector<LinearForm> strategy_sequence(std::size_t n, std::size_t D) {
    if (n == 1) return {LinearForm{1}};
    uint64_t bound = static_cast<uint64_t>(n - 1) * D * (D - 1) / 2;
    std::vector<LinearForm> out;
    for (uint64_t j = 1; j <= bound; ++j) {
        LinearForm t(n);
        int64_t p = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (p > std::numeric_limits<int64_t>::max() / static_cast<int64_t>(j))
                throw ResourceExceeded("sequence form coefficients exceed 64 bits");
            p *= static_cast<int64_t>(j);
            t[i] = p;
        }
        out.push_back(std::move(t));
    }
    return out;
}

template <class K>
struct StrategyResult {
    LinearForm form;
    ReducedRUR<K> rur;
    std::size_t attempts = 0;
};

/// Deterministic search: start from X_{n−1} − X_n (X_1 when n = 1) and, on
/// failure at coordinate i, increment t_i; Las Vegas certifies the winner.
template <class K>
StrategyResult<K> strategy_certified(const QuotientStructure<K>& q) {
    std::size_t n = q.nvars();
    LinearForm t(n, 0);
    if (n == 1) {
        t[0] = 1;
    } else {
        t[n - 2] = 1;
        t[n - 1] = -1;
    }
    std::size_t cap = q.dimension * q.dimension * n;
    for (std::size_t attempt = 1; attempt <= cap; ++attempt) {
        RurOutcome<K> o = las_vegas_radical_rur(q, t);
        if (o.success()) return {t, std::move(*o.rur), attempt};
        t[o.fail_index - 1] += 1;
    }
    throw StrategyExhausted("no separating form found within " + std::to_string(cap) + " attempts");
}

/// Walk the guaranteed family in order; requires the family bound to stay
/// below the characteristic so the guarantee survives reduction mod p.
template <class K>
StrategyResult<K> strategy_sequence_run(const QuotientStructure<K>& q) {
    std::size_t n = q.nvars();
    uint64_t bound = n == 1 ? 0 : static_cast<uint64_t>(n - 1) * q.dimension * (q.dimension - 1) / 2;
    uint64_t ch = q.sample().characteristic();
    if (ch != 0 && ch <= bound)
        throw UnsupportedCharacteristic("sequence strategy needs characteristic > " +
                                        std::to_string(bound));
    std::size_t attempt = 0;
    for (const LinearForm& t : strategy_sequence(n, q.dimension)) {
        ++attempt;
        RurOutcome<K> o = las_vegas_radical_rur(q, t);
        if (o.success()) return {t, std::move(*o.rur), attempt};
    }
    throw StrategyExhausted("guaranteed family exhausted without a separating form");
}

struct RurMetrics {
    double matrix_sparsity = 0.0;   // nonzero fraction of M_t
    std::size_t form_nonzeros = 0;  // support of t
    std::size_t form_size = 0;      // n
    long bitsize = 0;               // max over coefficients of bits(num) + bits(den)
    long bitsize_integer = 0;       // after clearing denominators and content per polynomial
};

namespace detail {

inline void num_den(const Rat& c, mpz_class& num, mpz_class& den) {
    num = c.numerator();
    den = c.denominator();
}
inline void num_den(const Fp& c, mpz_class& num, mpz_class& den) {
    num = mpz_class(static_cast<unsigned long>(c.value()));
    den = 1;
}

inline long bits_of(const mpz_class& z) {
    if (z == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

/// Combined size of a rational: ordinary bit length for integers, plus the
/// denominator's bit length otherwise.
inline long combined_bits(const mpz_class& num, const mpz_class& den) {
    if (num == 0) return 0;
    return bits_of(num) + bits_of(den) - 1;
}

template <class K>
void poly_bit_metrics(const UPoly<K>& p, long& bitsize, long& bitsize_integer) {
    if (p.is_zero()) return;
    mpz_class num, den, l(1);
    for (const K& c : p.coeffs()) {
        num_den(c, num, den);
        bitsize = std::max(bitsize, combined_bits(num, den));
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        l = l / g * den;
    }
    std::vector<mpz_class> ints;
    mpz_class content(0);
    for (const K& c : p.coeffs()) {
        num_den(c, num, den);
        mpz_class v = num * (l / den);
        ints.push_back(v);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    if (content == 0) content = 1;
    for (const mpz_class& v : ints)
        bitsize_integer = std::max(bitsize_integer, bits_of(mpz_class(v / content)));
}

}  // namespace detail

template <class K>
RurMetrics metrics(const QuotientStructure<K>& q, const LinearForm& t, const ReducedRUR<K>& r) {
    RurMetrics m;
    m.matrix_sparsity = form_matrix(q, t).sparsity();
    m.form_size = t.size();
    for (int64_t c : t)
        if (c != 0) ++m.form_nonzeros;
    detail::poly_bit_metrics(r.first, m.bitsize, m.bitsize_integer);
    detail::poly_bit_metrics(r.f0, m.bitsize, m.bitsize_integer);
    for (const auto& p : r.coords) detail::poly_bit_metrics(p, m.bitsize, m.bitsize_integer);
    return m;
}

}  // namespace rur

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rur/errors.hpp"
#include "rur/fglm.hpp"
#include "rur/upoly.hpp"

namespace rur {

/// h_0 ⊇ h_1 ⊇ … ⊇ h_m = 1 with h_0 the squarefree part of f,
/// h_k = gcd(h_{k−1}, a_{k,k}) and f_k = h_{k−1}/h_k. The f_k are monic,
/// squarefree, pairwise coprime, and multiply back to h_0.
template <class K>
struct GcdChain {
    std::vector<UPoly<K>> h;    // h[0..m]
    std::vector<UPoly<K>> fks;  // fks[k-1] = f_k for k = 1..m
};

template <class K>
GcdChain<K> gcd_chain(const BivariateLexBasis<K>& basis) {
    GcdChain<K> chain;
    chain.h.push_back(squarefree_part(basis.f));
    uint32_t m = basis.gks.empty() ? 0 : basis.gks.back().k;
    std::size_t next = 0;
    for (uint32_t k = 1; k <= m; ++k) {
        const UPoly<K>& prev = chain.h.back();
        bool present = next < basis.gks.size() && basis.gks[next].k == k;
        if (present) {
            const UPoly<K>& akk = basis.gks[next].leading();
            ++next;
            chain.h.push_back(prev.degree() == 0 ? prev : poly_gcd_monic(prev, akk));
        } else {
            chain.h.push_back(prev);  // gcd with the zero polynomial
        }
        chain.fks.push_back(exact_div(chain.h[k - 1], chain.h[k]));
    }
    if (!chain.h.back().is_one())
        throw InternalInvariantViolation("gcd chain does not terminate at 1");
    UPoly<K> prod = UPoly<K>::constant(basis.f.lead().one());
    for (const auto& fk : chain.fks) prod = prod * fk;
    if (prod != chain.h.front())
        throw InternalInvariantViolation("gcd chain factors do not multiply to the squarefree part");
    return chain;
}

/// All solutions over the factor f_k have X-coordinate multiplicity k.
template <class K>
std::vector<std::pair<uint32_t, UPoly<K>>> multiplicity_decomposition(const GcdChain<K>& chain) {
    std::vector<std::pair<uint32_t, UPoly<K>>> out;
    for (std::size_t i = 0; i < chain.fks.size(); ++i)
        if (chain.fks[i].degree() >= 1)
            out.emplace_back(static_cast<uint32_t>(i + 1), chain.fks[i]);
    return out;
}

/// fbar(T) = 0, h1(T)·X + h0(T) = 0 — parametrization candidate of the
/// bivariate variety associated to T.
template <class K>
struct CoordinateParametrization {
    UPoly<K> fbar;
    UPoly<K> h1;
    UPoly<K> h0;
    GcdChain<K> chain;
};

namespace detail {

template <class K>
void require_characteristic_above(const K& sample, uint64_t bound, const char* what) {
    uint64_t ch = sample.characteristic();
    if (ch != 0 && ch <= bound)
        throw UnsupportedCharacteristic(std::string(what) + " needs characteristic 0 or > " +
                                        std::to_string(bound));
}

}  // namespace detail

/// Combine the per-multiplicity blocks into a single candidate:
///   h0 = Σ_k a_{k,k−1}·∏_{i<k} f_i,  h1 = Σ_k k·a_{k,k}·∏_{i<k} f_i  (mod fbar).
template <class K>
CoordinateParametrization<K> bivariate_parametrization(const BivariateLexBasis<K>& basis) {
    const K sample = basis.f.lead();
    uint32_t m = basis.gks.empty() ? 0 : basis.gks.back().k;
    detail::require_characteristic_above(sample, m, "parametrization");

    GcdChain<K> chain = gcd_chain(basis);
    const UPoly<K>& fbar = chain.h.front();
    UPoly<K> rho = UPoly<K>::constant(sample.one());
    UPoly<K> h1, h0;
    std::size_t next = 0;
    for (uint32_t k = 1; k <= m; ++k) {
        bool present = next < basis.gks.size() && basis.gks[next].k == k;
        if (present) {
            const auto& g = basis.gks[next];
            ++next;
            h1 = poly_rem(h1 + scale(g.coeff[k] * rho, sample.embed(k)), fbar);
            h0 = poly_rem(h0 + g.coeff[k - 1] * rho, fbar);
        }
        rho = rho * chain.fks[k - 1];
    }
    return {fbar, std::move(h1), std::move(h0), std::move(chain)};
}

/// True iff T separates the bivariate variety: over each factor f_k the
/// element g_k must collapse to a_{k,k}(T)·(X − β(T))^k, which the
/// coefficient-ratio congruences detect.
template <class K>
bool separation_test(const BivariateLexBasis<K>& basis) {
    const K sample = basis.f.lead();
    uint32_t m = basis.gks.empty() ? 0 : basis.gks.back().k;
    detail::require_characteristic_above(sample, m, "separation test");

    GcdChain<K> chain = gcd_chain(basis);
    for (const auto& g : basis.gks) {
        const UPoly<K>& fk = chain.fks[g.k - 1];
        if (fk.degree() == 0) continue;
        const UPoly<K>& akk = g.coeff[g.k];
        const UPoly<K>& akk1 = g.coeff[g.k - 1];
        for (uint32_t i = 0; i < g.k; ++i) {
            K c = sample.embed(static_cast<int64_t>(g.k) - i) * sample.embed(i + 1).inv() *
                  sample.embed(g.k);
            UPoly<K> lhs = scale(akk * g.coeff[i], c);
            UPoly<K> rhs = g.coeff[i + 1] * akk1;
            if (!poly_rem(lhs - rhs, fk).is_zero()) return false;
        }
    }
    return true;
}

/// Reduced-RUR numerator for one coordinate:
///   f_X = (−1/deg fbar)·h0·h1^{−1}·fbar′ mod fbar.
/// A non-invertible h1 is evidence that T does not separate.
template <class K>
UPoly<K> param_to_rur_coordinate(const UPoly<K>& fbar, const CoordinateParametrization<K>& param) {
    if (fbar != param.fbar)
        throw InternalInvariantViolation("parametrization belongs to a different minimal polynomial");
    const K sample = fbar.lead();
    if (fbar.degree() < 1) throw InternalInvariantViolation("minimal polynomial must be nonconstant");
    detail::require_characteristic_above(sample, static_cast<uint64_t>(fbar.degree()),
                                         "parametrization conversion");
    UPoly<K> h1inv;
    try {
        h1inv = mod_inverse(param.h1, fbar);
    } catch (const NotInvertibleModF&) {
        throw NonSeparatingEvidence("coordinate denominator shares a factor with the minimal polynomial");
    }
    K c = -(sample.embed(fbar.degree()).inv());
    UPoly<K> r = poly_mul_mod(param.h0, h1inv, fbar);
    r = poly_mul_mod(r, derivative(fbar), fbar);
    return scale(r, c);
}

}  // namespace rur

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "rur/errors.hpp"
#include "rur/linalg.hpp"
#include "rur/mpoly.hpp"

namespace rur {

template <class K>
struct GroebnerBasis {
    std::vector<MPoly<K>> gens;  // monic, sorted by ascending leading monomial
    MonomialOrder order;
    bool reduced = false;

    bool is_unit_ideal() const {
        return gens.size() == 1 && gens[0].lead_mono().is_one();
    }
};

/// Full reduction: no term of the result is divisible by any leading
/// monomial of G.
template <class K>
MPoly<K> normal_form(const MPoly<K>& p, const std::vector<MPoly<K>>& G) {
    MPoly<K> rem(p.order());
    MPoly<K> work = p;
    while (!work.is_zero()) {
        const Monomial& lm = work.lead_mono();
        bool reduced_step = false;
        for (const auto& g : G) {
            if (!g.is_zero() && g.lead_mono().divides(lm)) {
                K c = work.lead_coeff() * g.lead_coeff().inv();
                work = work - g.term_mul(lm / g.lead_mono(), c);
                reduced_step = true;
                break;
            }
        }
        if (!reduced_step) {
            MPoly<K> lt = MPoly<K>::from_terms(p.order(), {work.lead()});
            rem = rem + lt;
            work = work - lt;
        }
    }
    return rem;
}

template <class K>
MPoly<K> s_polynomial(const MPoly<K>& f, const MPoly<K>& g) {
    Monomial l = Monomial::lcm(f.lead_mono(), g.lead_mono());
    MPoly<K> a = f.term_mul(l / f.lead_mono(), f.lead_coeff().inv());
    MPoly<K> b = g.term_mul(l / g.lead_mono(), g.lead_coeff().inv());
    return a - b;
}

namespace detail {

/// Minimalize + inter-reduce + make monic + sort.
template <class K>
std::vector<MPoly<K>> reduce_basis(std::vector<MPoly<K>> gens, const MonomialOrder& order) {
    std::vector<MPoly<K>> minimal;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (i == j) continue;
            const Monomial& mi = gens[i].lead_mono();
            const Monomial& mj = gens[j].lead_mono();
            if (!mj.divides(mi)) continue;
            if (mj == mi && j > i) continue;  // duplicate leading monomials: keep the first
            redundant = true;
            break;
        }
        if (!redundant) minimal.push_back(gens[i]);
    }
    std::vector<MPoly<K>> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MPoly<K>> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        MPoly<K> r = normal_form(minimal[i], others);
        if (!r.is_zero()) out.push_back(r.make_monic());
    }
    std::sort(out.begin(), out.end(), [&](const MPoly<K>& a, const MPoly<K>& b) {
        return order.less(a.lead_mono(), b.lead_mono());
    });
    return out;
}

}  // namespace detail

/// Buchberger with the normal (degree) selection strategy and the two
/// classical pair-elimination criteria; returns the reduced basis.
template <class K>
GroebnerBasis<K> buchberger(const std::vector<MPoly<K>>& F, const MonomialOrder& order,
                            std::size_t pair_limit = 2'000'000) {
    std::vector<MPoly<K>> G;
    for (const auto& f : F) {
        MPoly<K> p = f.order() == order ? f : f.reordered(order);
        if (!p.is_zero()) G.push_back(p.make_monic());
    }
    if (G.empty()) throw ZeroPolynomial("ideal generated by zero polynomials");

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        uint32_t deg;
    };
    std::vector<Pair> pending;
    auto add_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            Monomial l = Monomial::lcm(G[i].lead_mono(), G[k].lead_mono());
            pending.push_back({i, k, l, l.degree()});
        }
    };
    for (std::size_t k = 1; k < G.size(); ++k) add_pairs(k);

    std::size_t processed = 0;
    while (!pending.empty()) {
        if (++processed > pair_limit)
            throw ResourceExceeded("pair limit " + std::to_string(pair_limit) +
                                   " exceeded in basis construction");
        std::size_t best = 0;
        for (std::size_t i = 1; i < pending.size(); ++i) {
            if (pending[i].deg < pending[best].deg ||
                (pending[i].deg == pending[best].deg &&
                 order.less(pending[i].lcm, pending[best].lcm)))
                best = i;
        }
        Pair pr = pending[best];
        pending[best] = pending.back();
        pending.pop_back();

        // First criterion: coprime leading monomials.
        if (G[pr.i].lead_mono().coprime_with(G[pr.j].lead_mono())) continue;
        // Second criterion: some other generator divides the lcm and both
        // companion pairs are no longer pending.
        bool skip = false;
        for (std::size_t k = 0; k < G.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!G[k].lead_mono().divides(pr.lcm)) continue;
            bool pending_ik = false, pending_jk = false;
            for (const auto& q : pending) {
                if ((q.i == pr.i && q.j == k) || (q.i == k && q.j == pr.i)) pending_ik = true;
                if ((q.i == pr.j && q.j == k) || (q.i == k && q.j == pr.j)) pending_jk = true;
            }
            if (!pending_ik && !pending_jk) skip = true;
        }
        if (skip) continue;

        MPoly<K> r = normal_form(s_polynomial(G[pr.i], G[pr.j]), G);
        if (r.is_zero()) continue;
        G.push_back(r.make_monic());
        add_pairs(G.size() - 1);
    }

    GroebnerBasis<K> out{detail::reduce_basis(std::move(G), order), order, true};
    return out;
}

/// Monomials outside the leading-term ideal, ascending; empty for the unit
/// ideal. Throws NotZeroDimensional when the staircase is infinite.
template <class K>
std::vector<Monomial> quotient_basis(const GroebnerBasis<K>& G) {
    if (!G.reduced) throw InternalInvariantViolation("quotient basis requires a reduced basis");
    if (G.is_unit_ideal()) return {};
    std::size_t n = G.order.nvars();
    std::vector<uint32_t> cap(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        bool found = false;
        for (const auto& g : G.gens) {
            const Monomial& m = g.lead_mono();
            bool pure = m[v] > 0;
            for (std::size_t w = 0; w < n && pure; ++w)
                if (w != v && m[w] > 0) pure = false;
            if (pure) {
                cap[v] = m[v];
                found = true;
                break;
            }
        }
        if (!found)
            throw NotZeroDimensional("no pure power of variable " + std::to_string(v) +
                                     " among leading terms");
    }

    std::vector<Monomial> basis;
    std::vector<uint16_t> e(n, 0);
    while (true) {
        Monomial m{std::vector<uint16_t>(e)};
        bool in_ideal = false;
        for (const auto& g : G.gens)
            if (g.lead_mono().divides(m)) {
                in_ideal = true;
                break;
            }
        if (!in_ideal) basis.push_back(m);
        std::size_t v = 0;
        while (v < n) {
            if (uint32_t(e[v]) + 1 < cap[v]) {
                ++e[v];
                break;
            }
            e[v] = 0;
            ++v;
        }
        if (v == n) break;
    }
    std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) {
        return G.order.less(a, b);
    });
    return basis;
}

/// Monomial basis, dimension, and the n multiplication matrices of the
/// quotient algebra.
template <class K>
struct QuotientStructure {
    MonomialOrder order;
    std::vector<Monomial> basis;       // ascending; basis[0] = 1 when D >= 1
    std::size_t dimension;             // D
    std::vector<DenseMatrix<K>> mats;  // one per variable

    std::size_t nvars() const { return mats.size(); }
    const K& sample() const { return mats.front().at(0, 0); }
};

template <class K>
QuotientStructure<K> multiplication_matrices(const GroebnerBasis<K>& G,
                                             const std::vector<Monomial>& basis,
                                             bool check_commutativity = true) {
    std::size_t n = G.order.nvars();
    std::size_t D = basis.size();
    if (D == 0) throw InternalInvariantViolation("empty quotient basis");
    const K sample = G.gens.front().lead_coeff();
    const K zero = sample.zero();

    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    for (std::size_t j = 0; j < D; ++j) index[basis[j]] = j;

    std::vector<DenseMatrix<K>> mats;
    mats.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        DenseMatrix<K> M(D, D, zero);
        for (std::size_t j = 0; j < D; ++j) {
            Monomial xw = basis[j] * Monomial::variable(n, v);
            MPoly<K> nf = normal_form(
                MPoly<K>::from_terms(G.order, {Term<K>{xw, sample.one()}}), G.gens);
            for (const auto& t : nf.terms()) {
                auto it = index.find(t.mono);
                if (it == index.end())
                    throw InternalInvariantViolation("normal form leaves the quotient basis");
                M.at(it->second, j) = t.coeff;
            }
        }
        mats.push_back(std::move(M));
    }

    if (check_commutativity) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!(mats[i] * mats[j] == mats[j] * mats[i]))
                    throw InternalInvariantViolation("multiplication matrices do not commute");
    }
    return QuotientStructure<K>{G.order, basis, D, std::move(mats)};
}

}  // namespace rur

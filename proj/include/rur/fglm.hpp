#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rur/errors.hpp"
#include "rur/linalg.hpp"
#include "rur/upoly.hpp"

namespace rur {

/// Monomial X^xdeg · T^tdeg of the bivariate elimination subring.
struct BivarLabel {
    uint32_t xdeg = 0;
    uint32_t tdeg = 0;
    bool operator==(const BivarLabel&) const = default;
};

/// Incremental row echelon form with change-of-basis record: inserted
/// vectors are remembered so that dependencies come out expressed over the
/// labelled independent set.
template <class K, class Label = BivarLabel>
class EchelonState {
  public:
    explicit EchelonState(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<Label>& labels() const { return labels_; }
    const std::vector<K>& vector_of(std::size_t idx) const { return inserted_[idx]; }

    /// Insert `v` under `label`. Returns nullopt when v is independent
    /// (label joins the basis); otherwise the coefficients expressing v
    /// over the previously inserted vectors, in insertion order.
    std::optional<std::vector<K>> push_and_reduce(const std::vector<K>& v, Label label) {
        if (v.size() != dim_) throw InternalInvariantViolation("vector dimension mismatch");
        if (dim_ == 0) return std::vector<K>{};
        const K zero = v.front().zero();

        std::vector<K> w = v;
        std::vector<K> c(urows_.size(), zero);  // elimination multipliers
        for (std::size_t r = 0; r < urows_.size(); ++r) {
            const K x = w[pivots_[r]];  // copy: the loop below zeroes this slot
            if (x.is_zero()) continue;
            c[r] = x;
            for (std::size_t j = 0; j < dim_; ++j)
                if (!urows_[r][j].is_zero()) w[j] -= x * urows_[r][j];
        }

        std::size_t piv = dim_;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!w[j].is_zero()) {
                piv = j;
                break;
            }

        if (piv == dim_) {
            // Dependent: v = sum_r c[r]·u_r = sum_j (sum_r c[r]·L[r][j])·v_j.
            std::vector<K> d(lrows_.size(), zero);
            for (std::size_t r = 0; r < lrows_.size(); ++r) {
                if (c[r].is_zero()) continue;
                for (std::size_t j = 0; j < lrows_[r].size(); ++j)
                    d[j] += c[r] * lrows_[r][j];
            }
            return d;
        }

        K s = w[piv].inv();
        for (auto& x : w) x *= s;
        std::vector<K> lrow(labels_.size() + 1, zero);
        for (std::size_t r = 0; r < lrows_.size(); ++r) {
            if (c[r].is_zero()) continue;
            for (std::size_t j = 0; j < lrows_[r].size(); ++j)
                lrow[j] -= s * c[r] * lrows_[r][j];
        }
        lrow[labels_.size()] = s;

        labels_.push_back(label);
        inserted_.push_back(v);
        pivots_.push_back(piv);
        urows_.push_back(std::move(w));
        lrows_.push_back(std::move(lrow));
        if (labels_.size() > dim_)
            throw InternalInvariantViolation("independent set exceeds the ambient dimension");
        return std::nullopt;
    }

  private:
    std::size_t dim_;
    std::vector<Label> labels_;
    std::vector<std::vector<K>> inserted_;
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<K>> urows_;  // echelon rows, pivot normalized to 1
    std::vector<std::vector<K>> lrows_;  // row r expresses u_r over inserted vectors
};

/// Minimal polynomial of the multiplication matrix M acting on the vector
/// of the algebra element 1 (first basis coordinate) — a Krylov sequence
/// 1, T, T², … fed through the echelon state. The returned state retains
/// the powers for reuse by coordinate().
template <class K>
std::pair<UPoly<K>, EchelonState<K>> minimal_polynomial(const DenseMatrix<K>& M, const K& sample) {
    std::size_t D = M.rows();
    if (D == 0 || M.cols() != D) throw InternalInvariantViolation("square nonempty matrix required");
    EchelonState<K> st(D);
    const K zero = sample.zero();

    std::vector<K> v(D, zero);
    v[0] = sample.one();
    uint32_t j = 0;
    while (true) {
        auto dep = st.push_and_reduce(v, BivarLabel{0, j});
        if (dep) {
            std::vector<K> coeffs(j + 1, zero);
            for (std::size_t i = 0; i < dep->size(); ++i) coeffs[i] = -(*dep)[i];
            coeffs[j] = sample.one();
            UPoly<K> f(std::move(coeffs));
            if (static_cast<std::size_t>(f.degree()) != st.size())
                throw InternalInvariantViolation("minimal polynomial degree disagrees with basis");
            return {std::move(f), std::move(st)};
        }
        v = M.mul_vec(v);
        ++j;
        if (j > D) throw InternalInvariantViolation("Krylov sequence exceeded dimension");
    }
}

/// One element g_k(T, X) = sum_i coeff[i](T)·X^i of a bivariate
/// lexicographic basis (X > T).
template <class K>
struct BivarGk {
    uint32_t k = 0;
    std::vector<UPoly<K>> coeff;  // size k+1; coeff[k] monic, nonzero

    const UPoly<K>& leading() const { return coeff[k]; }
};

/// {f(T)} ∪ {g_k} — the reduced lexicographic basis of the elimination
/// ideal in K[T, X].
template <class K>
struct BivariateLexBasis {
    UPoly<K> f;                   // monic, degree delta
    std::vector<BivarGk<K>> gks;  // increasing k; absent k means g_k = 0
    std::size_t delta = 0;
    std::size_t bigD = 0;

    void validate() const {
        if (f.is_zero() || static_cast<std::size_t>(f.degree()) != delta)
            throw InternalInvariantViolation("first basis element degree mismatch");
        if (gks.size() > 2 * (bigD - delta) + 1)
            throw InternalInvariantViolation("bivariate basis larger than structural bound");
        int prev_t = f.degree();
        uint32_t prev_k = 0;
        for (const auto& g : gks) {
            if (g.k <= prev_k)
                throw InternalInvariantViolation("X-degrees not strictly increasing");
            if (g.coeff.size() != g.k + 1 || g.coeff[g.k].is_zero())
                throw InternalInvariantViolation("malformed bivariate element");
            if (g.coeff[g.k].degree() >= prev_t)
                throw InternalInvariantViolation("leading T-degrees not strictly decreasing");
            prev_t = g.coeff[g.k].degree();
            prev_k = g.k;
        }
        if (!gks.empty() && gks.back().leading().degree() != 0)
            throw InternalInvariantViolation("basis does not terminate at T-degree zero");
    }
};

/// FGLM staircase scan over the columns X^k: for each k feed X^k·T^j
/// (j below the current column height) through the echelon state; the first
/// dependence emits the basis element with leading monomial X^k T^j and
/// lowers the column height to j. Stops when the height reaches zero.
template <class K>
BivariateLexBasis<K> coordinate(const DenseMatrix<K>& MX, const UPoly<K>& f,
                                const EchelonState<K>& minpoly_state) {
    std::size_t D = MX.rows();
    std::size_t delta = static_cast<std::size_t>(f.degree());
    if (delta == 0) throw InternalInvariantViolation("minimal polynomial must have positive degree");
    const K sample = f.lead();
    const K zero = sample.zero();

    EchelonState<K> st = minpoly_state;
    BivariateLexBasis<K> out{f, {}, delta, D};

    // Vectors of X^{k-1}·T^j for the current column.
    std::vector<std::vector<K>> prev;
    for (std::size_t j = 0; j < delta; ++j) prev.push_back(st.vector_of(j));

    std::size_t height = delta;
    for (uint32_t k = 1; height > 0; ++k) {
        if (k > D + 1) throw InternalInvariantViolation("column scan exceeded dimension bound");
        std::vector<std::vector<K>> cur;
        bool dropped = false;
        for (uint32_t j = 0; j < height; ++j) {
            std::vector<K> v = MX.mul_vec(prev[j]);
            auto dep = st.push_and_reduce(v, BivarLabel{k, j});
            if (!dep) {
                cur.push_back(std::move(v));
                continue;
            }
            // Dependence: emit g with leading monomial X^k T^j.
            BivarGk<K> g;
            g.k = k;
            std::vector<std::vector<K>> cs(k + 1);  // cs[x][t] = coefficient of X^x T^t
            for (std::size_t l = 0; l < dep->size(); ++l) {
                if ((*dep)[l].is_zero()) continue;
                BivarLabel lb = st.labels()[l];
                auto& row = cs[lb.xdeg];
                if (row.size() <= lb.tdeg) row.resize(lb.tdeg + 1, zero);
                row[lb.tdeg] -= (*dep)[l];
            }
            {
                auto& row = cs[k];
                if (row.size() <= j) row.resize(j + 1, zero);
                row[j] += sample.one();
            }
            for (auto& row : cs) g.coeff.emplace_back(std::move(row));
            out.gks.push_back(std::move(g));
            height = j;
            dropped = true;
            break;
        }
        if (!dropped && st.size() > D)
            throw InternalInvariantViolation("staircase scan escaped the quotient");
        prev = std::move(cur);
    }

    out.validate();
    return out;
}

/// Characteristic polynomial via similarity reduction to Hessenberg form
/// and the determinant recurrence on leading principal minors.
template <class K>
UPoly<K> characteristic_polynomial(const DenseMatrix<K>& M, const K& sample) {
    std::size_t n = M.rows();
    if (n == 0 || M.cols() != n) throw InternalInvariantViolation("square nonempty matrix required");
    DenseMatrix<K> H = M;
    const K zero = sample.zero();

    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t piv = n;
        for (std::size_t i = m; i < n; ++i)
            if (!H.at(i, m - 1).is_zero()) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        H.swap_rows(piv, m);
        H.swap_cols(piv, m);
        K inv = H.at(m, m - 1).inv();
        for (std::size_t i = m + 1; i < n; ++i) {
            if (H.at(i, m - 1).is_zero()) continue;
            K u = H.at(i, m - 1) * inv;
            for (std::size_t j = 0; j < n; ++j) H.at(i, j) -= u * H.at(m, j);
            for (std::size_t j = 0; j < n; ++j) H.at(j, m) += u * H.at(j, i);
        }
    }

    // p_m(T) = det(T·I − H_m) over leading principal m×m blocks.
    std::vector<UPoly<K>> p;
    p.push_back(UPoly<K>::constant(sample.one()));
    for (std::size_t m = 1; m <= n; ++m) {
        UPoly<K> tm({-H.at(m - 1, m - 1), sample.one()});
        UPoly<K> pm = tm * p[m - 1];
        K prod = sample.one();
        for (std::size_t i = m - 1; i >= 1; --i) {
            prod *= H.at(i, i - 1);
            K w = prod * H.at(i - 1, m - 1);
            if (!w.is_zero()) pm = pm - scale(p[i - 1], w);
        }
        p.push_back(std::move(pm));
    }
    return p[n];
}

}  // namespace rur

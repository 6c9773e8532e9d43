#pragma once

// Multi-modular driver for rational-coefficient systems: independent
// per-prime parametrizations, coefficient-wise CRT lifting with rational
// reconstruction, and a stabilization step that upgrades the Monte Carlo
// reconstruction to certified-on-success via a fresh prime and an exact
// back-substitution over the rationals.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rur/fields.hpp"
#include "rur/mpoly.hpp"
#include "rur/rur.hpp"

namespace rur {

/// One prime's view of the answer. Polynomials are normalized identically
/// across primes (first monic, f0 monic, coords reduced mod first), so that
/// coefficients are CRT-compatible.
struct ModularImage {
    uint64_t prime = 0;
    std::size_t dimension = 0;            ///< D mod p
    std::size_t delta = 0;                ///< deg of the minimal polynomial mod p
    std::vector<Monomial> fingerprint;    ///< sorted leading monomials of the reduced GB
    LinearForm form;
    ReducedRUR<Fp> rur;                   ///< radical parametrization mod p
    UPoly<Fp> full_first;                 ///< characteristic polynomial of M_t mod p
    double mt_sparsity = 0.0;             ///< nonzero density of the multiplication matrix
};

/// Structural expectations subsequent primes are compared against. The
/// first-polynomial degree is part of the structure: a prime where the
/// squarefree part degenerates (divides the discriminant) must be rejected.
struct ImageReference {
    std::size_t dimension = 0;
    std::size_t delta = 0;
    std::size_t first_degree = 0;
    std::vector<Monomial> fingerprint;

    static ImageReference of(const ModularImage& img) {
        return {img.dimension, img.delta,
                static_cast<std::size_t>(img.rur.first.degree() < 0 ? 0 : img.rur.first.degree()),
                img.fingerprint};
    }
    bool matches(const ModularImage& img) const {
        return dimension == img.dimension && delta == img.delta &&
               first_degree == static_cast<std::size_t>(
                                   img.rur.first.degree() < 0 ? 0 : img.rur.first.degree()) &&
               fingerprint == img.fingerprint;
    }
};

/// Full pipeline mod p with the fixed form t. Throws BadPrime when p ≤ D,
/// a generator collapses mod p, the structure disagrees with `ref`, or t
/// fails the separation test mod p.
ModularImage compute_image(const std::vector<ZPoly>& gens, std::size_t nvars,
                           const PrimeModulus& p, const LinearForm& t,
                           const ImageReference* ref = nullptr);

/// Rational candidate assembled from images agreeing on structure.
struct LiftedRur {
    ReducedRUR<Rat> radical;
    std::optional<ReducedRUR<Rat>> full;
    mpz_class modulus;  ///< product of the primes consumed
};

/// Per-coefficient CRT grid; the shape is fixed by the first absorbed image.
class LiftState {
  public:
    explicit LiftState(bool want_full) : want_full_(want_full) {}

    void absorb(const ModularImage& img);
    std::size_t primes_consumed() const { return primes_; }

    /// Coefficient-wise rational reconstruction; nullopt = need more primes.
    std::optional<LiftedRur> reconstruct() const;

  private:
    bool want_full_;
    bool shaped_ = false;
    std::size_t primes_ = 0;
    std::size_t delta_ = 0, bigD_ = 0, nvars_ = 0;
    std::size_t first_len_ = 0;  // coefficients of the (squarefree) first polynomial
    LinearForm form_;
    std::vector<std::vector<CrtAccumulator>> grid_;  // first, f0, coords..., [full]
};

/// Coefficient-wise CRT over all images, then rational reconstruction.
std::optional<LiftedRur> lift(const std::vector<ModularImage>& images, bool want_full);

/// Exact check: substituting X_i = coords[i]/f0 into every generator g
/// (homogenized by f0^deg(g)) reduces to 0 mod the squarefree first
/// polynomial. Returns the description of the first failing generator, or
/// nullopt when all pass.
template <class K>
std::optional<std::string> back_substitution_failure(const std::vector<ZPoly>& gens,
                                                     std::size_t nvars,
                                                     const ReducedRUR<K>& candidate,
                                                     const K& sample) {
    if (candidate.coords.size() != nvars)
        throw InternalInvariantViolation("candidate arity differs from the system");
    UPoly<K> fbar = candidate.full ? squarefree_part(candidate.first) : candidate.first;
    if (fbar.degree() <= 0) return std::nullopt;  // empty variety: nothing to substitute

    for (std::size_t k = 0; k < gens.size(); ++k) {
        const ZPoly& g = gens[k];
        uint32_t d = 0;
        for (const auto& [m, c] : g) d = std::max(d, m.degree());
        // sum of c * prod_i coords[i]^{e_i} * f0^{d-|e|} mod fbar; zero iff g
        // vanishes at every parametrized point.
        UPoly<K> acc;
        for (const auto& [m, c] : g) {
            UPoly<K> term = UPoly<K>::constant(embed_mpz(c, sample));
            for (std::size_t i = 0; i < nvars; ++i)
                if (m[i])
                    term = poly_mul_mod(term, poly_pow_mod(candidate.coords[i], m[i], fbar), fbar);
            term = poly_mul_mod(term, poly_pow_mod(candidate.f0, d - m.degree(), fbar), fbar);
            acc = acc + term;
        }
        acc = poly_rem(acc, fbar);
        if (!acc.is_zero())
            return "generator " + std::to_string(k + 1) + " does not vanish on the parametrization";
    }
    return std::nullopt;
}

struct VerifyOutcome {
    bool verified = false;
    std::string reason;  ///< first failing generator or prime when refuted
};

/// (a) candidate mod p* must equal the freshly computed image at p*, and
/// (b) back-substitution of every generator must vanish mod first over ℚ.
VerifyOutcome stabilize_and_verify(const std::vector<ZPoly>& gens, std::size_t nvars,
                                   const LiftedRur& candidate, const ModularImage& fresh);

enum class StrategyKind { certified, random, sequence };

struct DriveConfig {
    unsigned prime_bits = 31;       ///< primes drawn descending below 2^bits
    std::size_t initial_batch = 1;  ///< batch doubles while reconstruction starves
    std::size_t max_primes = 512;
    uint64_t seed = 0;              ///< seeds the random strategy
    int64_t bound = 10;             ///< coefficient box for the random strategy
    std::size_t threads = 1;        ///< concurrent per-prime workers
    StrategyKind strategy = StrategyKind::certified;
    bool want_full = false;         ///< also lift the characteristic polynomial
};

struct DriveResult {
    ReducedRUR<Rat> radical;
    std::optional<ReducedRUR<Rat>> full;
    LinearForm form;
    std::size_t dimension = 0;
    std::size_t delta = 0;
    std::size_t primes_used = 0;     ///< good primes consumed by the lift
    std::size_t primes_tried = 0;    ///< including bad and verification primes
    double mt_sparsity = 0.0;        ///< nonzero fraction of M_t at the first good prime
};

/// Loop compute_image / lift / stabilize_and_verify until Verified.
/// Deterministic for a fixed config. Throws VerificationRefuted when a
/// stable candidate keeps failing verification, ResourceExceeded when the
/// prime budget runs out first.
DriveResult drive(const std::vector<ZPoly>& gens, std::size_t nvars, const DriveConfig& cfg);

}  // namespace rur

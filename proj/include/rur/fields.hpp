#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rur/errors.hpp"

namespace rur {

bool is_prime_u64(uint64_t n);

/// Odd machine-word prime, at most 62 bits so that sums of two residues
/// and 128-bit products never overflow.
class PrimeModulus {
  public:
    static constexpr uint64_t max_value = uint64_t(1) << 62;

    explicit PrimeModulus(uint64_t p);
    uint64_t value() const { return p_; }
    bool operator==(const PrimeModulus& o) const { return p_ == o.p_; }

  private:
    uint64_t p_;
};

/// The `count` largest primes below 2^bits, descending.
std::vector<uint64_t> largest_primes_below(unsigned bits, std::size_t count);

/// Element of Z/pZ; carries its modulus so that mixed-field operations are
/// detected instead of silently wrapping.
class Fp {
  public:
    Fp(uint64_t value, const PrimeModulus& m) : v_(value % m.value()), p_(m.value()) {}

    static Fp from_int(int64_t z, const PrimeModulus& m) {
        uint64_t p = m.value();
        int64_t r = z % static_cast<int64_t>(p);
        if (r < 0) r += static_cast<int64_t>(p);
        return Fp(static_cast<uint64_t>(r), raw{}, p);
    }

    uint64_t value() const { return v_; }
    uint64_t modulus() const { return p_; }
    uint64_t characteristic() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp zero() const { return Fp(0, raw{}, p_); }
    Fp one() const { return Fp(1 % p_, raw{}, p_); }
    Fp embed(int64_t z) const {
        int64_t r = z % static_cast<int64_t>(p_);
        if (r < 0) r += static_cast<int64_t>(p_);
        return Fp(static_cast<uint64_t>(r), raw{}, p_);
    }

    Fp operator+(const Fp& b) const {
        check(b);
        uint64_t s = v_ + b.v_;
        if (s >= p_) s -= p_;
        return Fp(s, raw{}, p_);
    }
    Fp operator-(const Fp& b) const {
        check(b);
        uint64_t s = v_ >= b.v_ ? v_ - b.v_ : v_ + p_ - b.v_;
        return Fp(s, raw{}, p_);
    }
    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, raw{}, p_); }
    Fp operator*(const Fp& b) const {
        check(b);
        unsigned __int128 t = static_cast<unsigned __int128>(v_) * b.v_;
        return Fp(static_cast<uint64_t>(t % p_), raw{}, p_);
    }
    Fp& operator+=(const Fp& b) { return *this = *this + b; }
    Fp& operator-=(const Fp& b) { return *this = *this - b; }
    Fp& operator*=(const Fp& b) { return *this = *this * b; }

    Fp pow(uint64_t e) const {
        Fp r = one(), base = *this;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    Fp inv() const {
        if (v_ == 0) throw NotInvertible("inverse of zero mod " + std::to_string(p_));
        return pow(p_ - 2);
    }

    bool operator==(const Fp& b) const { return p_ == b.p_ && v_ == b.v_; }
    bool operator!=(const Fp& b) const { return !(*this == b); }

  private:
    struct raw {};
    Fp(uint64_t v, raw, uint64_t p) : v_(v), p_(p) {}

    void check(const Fp& b) const {
        if (p_ != b.p_)
            throw ModulusMismatch("moduli " + std::to_string(p_) + " and " + std::to_string(b.p_));
    }

    uint64_t v_;
    uint64_t p_;
};

inline std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value(); }

inline Fp ff_add(const Fp& a, const Fp& b) { return a + b; }
inline Fp ff_mul(const Fp& a, const Fp& b) { return a * b; }
inline Fp ff_neg(const Fp& a) { return -a; }
inline Fp ff_inv(const Fp& a) { return a.inv(); }

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (GMP canonical form).
class Rat {
  public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}
    Rat(long num, long den) : q_(num, den) {
        if (den == 0) throw Error("zero denominator");
        q_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rat(const mpz_class& z) : q_(z) {}
    explicit Rat(const std::string& s) : q_(s) { q_.canonicalize(); }

    const mpq_class& value() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    uint64_t characteristic() const { return 0; }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }

    Rat zero() const { return Rat(); }
    Rat one() const { return Rat(1); }
    Rat embed(int64_t z) const { return Rat(mpz_class(static_cast<long>(z))); }

    Rat operator+(const Rat& b) const { return Rat(mpq_class(q_ + b.q_)); }
    Rat operator-(const Rat& b) const { return Rat(mpq_class(q_ - b.q_)); }
    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat operator*(const Rat& b) const { return Rat(mpq_class(q_ * b.q_)); }
    Rat& operator+=(const Rat& b) { q_ += b.q_; return *this; }
    Rat& operator-=(const Rat& b) { q_ -= b.q_; return *this; }
    Rat& operator*=(const Rat& b) { q_ *= b.q_; return *this; }

    Rat inv() const {
        if (is_zero()) throw NotInvertible("inverse of zero rational");
        return Rat(mpq_class(1 / q_));
    }

    bool operator==(const Rat& b) const { return q_ == b.q_; }
    bool operator!=(const Rat& b) const { return q_ != b.q_; }

    std::string str() const { return q_.get_str(); }

  private:
    mpq_class q_;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& a) { return os << a.str(); }

/// Embed an arbitrary-precision integer into the field of `sample`.
inline Fp embed_mpz(const mpz_class& z, const Fp& sample) {
    uint64_t r = mpz_fdiv_ui(z.get_mpz_t(), sample.modulus());
    return Fp(r, PrimeModulus(sample.modulus()));
}
inline Rat embed_mpz(const mpz_class& z, const Rat&) { return Rat(z); }

/// Residue of an integer modulo a growing product of pairwise-distinct primes.
class CrtAccumulator {
  public:
    CrtAccumulator() : residue_(0), modulus_(1) {}
    CrtAccumulator(const mpz_class& residue, const mpz_class& modulus);

    const mpz_class& residue() const { return residue_; }
    const mpz_class& modulus() const { return modulus_; }

    /// Fold in one more modular image. The new prime must be coprime to the
    /// accumulated modulus.
    CrtAccumulator combine(const Fp& r) const;
    CrtAccumulator combine(uint64_t residue, uint64_t prime) const;

  private:
    mpz_class residue_;
    mpz_class modulus_;
};

/// Rational number reconstruction with balanced Wang bounds
/// N = D = floor(sqrt(m/2)): returns a/b with a = r*b mod m, |a| <= N,
/// 0 < b <= D, gcd(a,b) = 1, or nullopt when no such pair exists.
std::optional<Rat> rational_reconstruct(const mpz_class& r, const mpz_class& m);

/// r mod p for a rational with denominator invertible mod p.
/// Throws NotInvertible when p divides the denominator.
Fp reduce_mod(const Rat& r, const PrimeModulus& m);

}  // namespace rur

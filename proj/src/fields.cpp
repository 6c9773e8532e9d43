#include "rur/fields.hpp"

namespace rur {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin witness set for n < 2^64.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(uint64_t p) : p_(p) {
    if (p <= 2) throw Error("modulus must be an odd prime > 2, got " + std::to_string(p));
    if (p > max_value) throw Error("modulus exceeds 62 bits: " + std::to_string(p));
    if (!is_prime_u64(p)) throw Error("modulus is not prime: " + std::to_string(p));
}

std::vector<uint64_t> largest_primes_below(unsigned bits, std::size_t count) {
    if (bits < 3 || bits > 62) throw Error("prime bit length must be in [3, 62]");
    std::vector<uint64_t> out;
    uint64_t c = (uint64_t(1) << bits) - 1;
    while (out.size() < count && c > 2) {
        if (is_prime_u64(c)) out.push_back(c);
        c -= (c & 1) ? 2 : 1;
    }
    if (out.size() < count) throw Error("not enough primes below 2^" + std::to_string(bits));
    return out;
}

CrtAccumulator::CrtAccumulator(const mpz_class& residue, const mpz_class& modulus)
    : residue_(residue), modulus_(modulus) {
    if (modulus_ < 1) throw Error("CRT modulus must be positive");
    if (residue_ < 0 || residue_ >= modulus_) throw Error("CRT residue out of range");
}

CrtAccumulator CrtAccumulator::combine(const Fp& r) const {
    return combine(r.value(), r.modulus());
}

CrtAccumulator CrtAccumulator::combine(uint64_t residue, uint64_t prime) const {
    mpz_class p(static_cast<unsigned long>(prime));
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), modulus_.get_mpz_t(), p.get_mpz_t());
    if (g != 1) throw NonCoprimeModuli("prime " + std::to_string(prime) + " repeats in CRT modulus");
    // x = residue_ + modulus_ * ((r - residue_) / modulus_ mod p)
    mpz_class minv;
    if (mpz_invert(minv.get_mpz_t(), modulus_.get_mpz_t(), p.get_mpz_t()) == 0)
        throw NonCoprimeModuli("modulus not invertible");
    mpz_class diff = mpz_class(static_cast<unsigned long>(residue)) - residue_;
    mpz_class k = (diff * minv) % p;
    if (k < 0) k += p;
    return CrtAccumulator(residue_ + modulus_ * k, modulus_ * p);
}

std::optional<Rat> rational_reconstruct(const mpz_class& r, const mpz_class& m) {
    if (r < 0 || r >= m) throw Error("residue out of range for reconstruction");
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());  // N = D = floor(sqrt(m/2))
    if (bound == 0) return std::nullopt;

    mpz_class r0 = m, t0 = 0;
    mpz_class r1 = r, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1;
        t0 = t1;
        r1 = r2;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    mpz_class a = r1, b = t1;
    if (b < 0) {
        a = -a;
        b = -b;
    }
    if (b > bound) return std::nullopt;
    mpz_class g;
    mpz_class absa = abs(a);
    mpz_gcd(g.get_mpz_t(), absa.get_mpz_t(), b.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpq_class q(a);
    q /= mpq_class(b);
    return Rat(q);
}

Fp reduce_mod(const Rat& r, const PrimeModulus& m) {
    mpz_class p(static_cast<unsigned long>(m.value()));
    mpz_class num = r.numerator() % p;
    if (num < 0) num += p;
    mpz_class den = r.denominator() % p;
    Fp n(num.get_ui(), m);
    Fp d(den.get_ui(), m);
    if (d.is_zero()) throw NotInvertible("denominator divisible by " + std::to_string(m.value()));
    return n * d.inv();
}

}  // namespace rur

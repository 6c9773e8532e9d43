#include "rur/modular.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

#include "rur/errors.hpp"
#include "rur/groebner.hpp"

namespace rur {

namespace {

/// Groebner-side work shared by every per-prime computation.
struct ModPrep {
    std::size_t dimension = 0;
    std::vector<Monomial> fingerprint;
    std::optional<QuotientStructure<Fp>> q;  // absent for the unit ideal
};

ModPrep prepare_mod_p(const std::vector<ZPoly>& gens, std::size_t nvars,
                      const PrimeModulus& p) {
    MonomialOrder ord = MonomialOrder::degrevlex(nvars);
    Fp sample(0, p);
    std::vector<MPoly<Fp>> F;
    F.reserve(gens.size());
    for (const ZPoly& zp : gens) {
        if (zp.empty()) continue;
        MPoly<Fp> f = embed_poly(zp, ord, sample);
        // A dropped leading term distorts the ideal's staircase mod p.
        Monomial lead = zp.front().first;
        for (const auto& [m, c] : zp)
            if (ord.greater(m, lead)) lead = m;
        if (f.is_zero() || f.lead_mono() != lead)
            throw BadPrime("leading coefficient vanishes mod " + std::to_string(p.value()));
        F.push_back(std::move(f));
    }
    GroebnerBasis<Fp> gb = buchberger(F, ord);

    ModPrep prep;
    for (const auto& g : gb.gens) prep.fingerprint.push_back(g.lead_mono());
    if (gb.is_unit_ideal()) return prep;

    std::vector<Monomial> basis = quotient_basis(gb);
    prep.dimension = basis.size();
    if (p.value() <= prep.dimension)
        throw BadPrime("prime " + std::to_string(p.value()) + " not larger than the dimension");
    prep.q = multiplication_matrices(gb, basis);
    return prep;
}

UPoly<Fp> unit_poly(const PrimeModulus& p) { return UPoly<Fp>::constant(Fp(1, p)); }

/// Image of the empty variety: first = 1, f0 = 1, zero coordinates.
ModularImage unit_image(const ModPrep& prep, const PrimeModulus& p, std::size_t nvars,
                        const LinearForm& t) {
    ModularImage img;
    img.prime = p.value();
    img.fingerprint = prep.fingerprint;
    img.form = t;
    img.rur.first = unit_poly(p);
    img.rur.f0 = unit_poly(p);
    img.rur.coords.assign(nvars, UPoly<Fp>());
    img.rur.form = t;
    img.full_first = unit_poly(p);
    img.mt_sparsity = 0.0;
    return img;
}

ModularImage assemble_image(const ModPrep& prep, const PrimeModulus& p,
                            const LinearForm& t, ReducedRUR<Fp> rur) {
    ModularImage img;
    img.prime = p.value();
    img.dimension = prep.dimension;
    img.delta = rur.delta;
    img.fingerprint = prep.fingerprint;
    img.form = t;
    DenseMatrix<Fp> MT = form_matrix(*prep.q, t);
    img.mt_sparsity = MT.sparsity();
    img.full_first = characteristic_polynomial(MT, prep.q->sample());
    img.rur = std::move(rur);
    return img;
}

std::string fingerprint_key(const ModularImage& img) {
    std::ostringstream os;
    os << img.dimension << "|" << img.delta << "|" << img.rur.first.degree();
    for (const auto& m : img.fingerprint) {
        os << "|";
        for (std::size_t i = 0; i < m.nvars(); ++i) os << m[i] << ",";
    }
    return os.str();
}

UPoly<Fp> reduce_poly(const UPoly<Rat>& f, const PrimeModulus& p) {
    std::vector<Fp> c;
    c.reserve(f.coeffs().size());
    for (const Rat& r : f.coeffs()) c.push_back(reduce_mod(r, p));
    return UPoly<Fp>(std::move(c));
}

bool equal_mod_p(const ReducedRUR<Rat>& cand, const ReducedRUR<Fp>& img,
                 const PrimeModulus& p) {
    if (reduce_poly(cand.first, p) != img.first) return false;
    if (reduce_poly(cand.f0, p) != img.f0) return false;
    if (cand.coords.size() != img.coords.size()) return false;
    for (std::size_t i = 0; i < cand.coords.size(); ++i)
        if (reduce_poly(cand.coords[i], p) != img.coords[i]) return false;
    return true;
}

}  // namespace

ModularImage compute_image(const std::vector<ZPoly>& gens, std::size_t nvars,
                           const PrimeModulus& p, const LinearForm& t,
                           const ImageReference* ref) {
    ModPrep prep = prepare_mod_p(gens, nvars, p);
    ModularImage img;
    if (!prep.q) {
        img = unit_image(prep, p, nvars, t);
    } else {
        RurOutcome<Fp> o = las_vegas_radical_rur(*prep.q, t);
        if (!o.success())
            throw BadPrime("separation failed mod " + std::to_string(p.value()) + ": " + o.reason);
        img = assemble_image(prep, p, t, std::move(*o.rur));
    }
    if (ref && !ref->matches(img))
        throw BadPrime("structure mod " + std::to_string(p.value()) + " differs from the reference");
    return img;
}

void LiftState::absorb(const ModularImage& img) {
    // The radical first polynomial is the squarefree part, so its degree can
    // be below delta; the grid is shaped by the polynomials actually stored.
    const std::size_t first_len =
        static_cast<std::size_t>(img.rur.first.degree() < 0 ? 0 : img.rur.first.degree()) + 1;
    const std::size_t tail_len = std::max<std::size_t>(first_len - 1, 1);
    if (!shaped_) {
        shaped_ = true;
        delta_ = img.delta;
        bigD_ = img.dimension;
        nvars_ = img.rur.coords.size();
        first_len_ = first_len;
        form_ = img.form;
        grid_.emplace_back(first_len);
        grid_.emplace_back(tail_len);
        for (std::size_t i = 0; i < nvars_; ++i) grid_.emplace_back(tail_len);
        if (want_full_) grid_.emplace_back(bigD_ + 1);
    } else if (img.delta != delta_ || img.dimension != bigD_ || first_len != first_len_ ||
               img.rur.coords.size() != nvars_ || img.form != form_) {
        throw InternalInvariantViolation("image shape differs from the lift grid");
    }
    const Fp zero(0, PrimeModulus(img.prime));
    auto put = [&](std::vector<CrtAccumulator>& row, const UPoly<Fp>& f) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            Fp c = f.coeff_or_zero(j, zero);
            row[j] = row[j].combine(c.value(), img.prime);
        }
    };
    std::size_t r = 0;
    put(grid_[r++], img.rur.first);
    put(grid_[r++], img.rur.f0);
    for (std::size_t i = 0; i < nvars_; ++i) put(grid_[r++], img.rur.coords[i]);
    if (want_full_) put(grid_[r++], img.full_first);
    ++primes_;
}

std::optional<LiftedRur> LiftState::reconstruct() const {
    if (!shaped_) return std::nullopt;
    auto rebuild = [&](const std::vector<CrtAccumulator>& row) -> std::optional<UPoly<Rat>> {
        std::vector<Rat> c;
        c.reserve(row.size());
        for (const auto& acc : row) {
            auto r = rational_reconstruct(acc.residue(), acc.modulus());
            if (!r) return std::nullopt;
            c.push_back(std::move(*r));
        }
        return UPoly<Rat>(std::move(c));
    };
    LiftedRur out;
    std::size_t r = 0;
    auto first = rebuild(grid_[r++]);
    auto f0 = rebuild(grid_[r++]);
    if (!first || !f0) return std::nullopt;
    std::vector<UPoly<Rat>> coords;
    for (std::size_t i = 0; i < nvars_; ++i) {
        auto c = rebuild(grid_[r++]);
        if (!c) return std::nullopt;
        coords.push_back(std::move(*c));
    }
    if (static_cast<std::size_t>(first->degree() < 0 ? 0 : first->degree()) + 1 != first_len_)
        return std::nullopt;  // leading coefficient failed to lift to 1
    out.radical.first = std::move(*first);
    out.radical.f0 = std::move(*f0);
    out.radical.coords = std::move(coords);
    out.radical.form = form_;
    out.radical.delta = delta_;
    out.radical.bigD = bigD_;
    if (want_full_) {
        auto full = rebuild(grid_[r++]);
        if (!full) return std::nullopt;
        out.full = out.radical;
        out.full->first = std::move(*full);
        out.full->full = true;
    }
    out.modulus = grid_[0][0].modulus();
    return out;
}

std::optional<LiftedRur> lift(const std::vector<ModularImage>& images, bool want_full) {
    if (images.empty()) return std::nullopt;
    LiftState st(want_full);
    for (const auto& img : images) st.absorb(img);
    return st.reconstruct();
}

VerifyOutcome stabilize_and_verify(const std::vector<ZPoly>& gens, std::size_t nvars,
                                   const LiftedRur& candidate, const ModularImage& fresh) {
    PrimeModulus p(fresh.prime);
    try {
        if (!equal_mod_p(candidate.radical, fresh.rur, p))
            return {false, "prime " + std::to_string(fresh.prime) +
                               ": reduction differs from the fresh image"};
        if (candidate.full && reduce_poly(candidate.full->first, p) != fresh.full_first)
            return {false, "prime " + std::to_string(fresh.prime) +
                               ": characteristic polynomial differs from the fresh image"};
    } catch (const NotInvertible&) {
        throw BadPrime("candidate denominator vanishes mod " + std::to_string(fresh.prime));
    }
    if (auto fail = back_substitution_failure(gens, nvars, candidate.radical, Rat()))
        return {false, *fail};
    return {true, ""};
}

namespace {

/// First prime: run the configured search for a separating form.
ModularImage search_image(const std::vector<ZPoly>& gens, std::size_t nvars,
                          const PrimeModulus& p, const DriveConfig& cfg) {
    ModPrep prep = prepare_mod_p(gens, nvars, p);
    if (!prep.q) {
        LinearForm t(nvars, 0);
        t[0] = 1;  // placeholder form; the empty variety needs none
        return unit_image(prep, p, nvars, t);
    }
    if (p.value() <= prep.dimension)
        throw BadPrime("prime not larger than the dimension");
    switch (cfg.strategy) {
        case StrategyKind::certified: {
            StrategyResult<Fp> s = strategy_certified(*prep.q);
            return assemble_image(prep, p, s.form, std::move(s.rur));
        }
        case StrategyKind::sequence: {
            StrategyResult<Fp> s = strategy_sequence_run(*prep.q);
            return assemble_image(prep, p, s.form, std::move(s.rur));
        }
        case StrategyKind::random: {
            std::size_t cap = prep.dimension * prep.dimension * nvars;
            for (std::size_t a = 0; a <= cap; ++a) {
                LinearForm t = strategy_random(nvars, cfg.bound, cfg.seed + a);
                RurOutcome<Fp> o = las_vegas_radical_rur(*prep.q, t);
                if (o.success()) return assemble_image(prep, p, t, std::move(*o.rur));
            }
            throw StrategyExhausted("no separating form among " + std::to_string(cap + 1) +
                                    " random draws");
        }
    }
    throw InternalInvariantViolation("unknown strategy");
}

bool is_separation_failure(const BadPrime& e) {
    return std::string(e.what()).rfind("separation", 0) == 0;
}

/// Images for a batch of primes, computed concurrently but merged in
/// schedule order so the drive stays deterministic.
std::vector<std::pair<std::optional<ModularImage>, std::exception_ptr>> compute_batch(
    const std::vector<ZPoly>& gens, std::size_t nvars, const std::vector<uint64_t>& primes,
    const LinearForm& t, std::size_t threads) {
    std::vector<std::pair<std::optional<ModularImage>, std::exception_ptr>> slots(primes.size());
    auto work = [&](std::size_t w, std::size_t stride) {
        for (std::size_t i = w; i < primes.size(); i += stride) {
            try {
                slots[i].first = compute_image(gens, nvars, PrimeModulus(primes[i]), t, nullptr);
            } catch (...) {
                slots[i].second = std::current_exception();
            }
        }
    };
    std::size_t nw = std::max<std::size_t>(1, std::min(threads, primes.size()));
    if (nw == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < nw; ++w) pool.emplace_back(work, w, nw);
        for (auto& th : pool) th.join();
    }
    return slots;
}

}  // namespace

DriveResult drive(const std::vector<ZPoly>& gens, std::size_t nvars, const DriveConfig& cfg) {
    if (gens.empty()) throw ZeroPolynomial("drive: no generators");
    std::vector<uint64_t> schedule = largest_primes_below(cfg.prime_bits, cfg.max_primes + 16);
    std::size_t next = 0;
    std::size_t tried = 0;
    auto take = [&]() -> uint64_t {
        if (next >= schedule.size()) throw ResourceExceeded("prime schedule exhausted");
        ++tried;
        return schedule[next++];
    };

    bool have_t = false;
    LinearForm t;
    // Images grouped by structural fingerprint; the reference group is the
    // largest one, earliest seen winning ties (majority vote on divergence).
    struct Group {
        std::vector<ModularImage> images;
        std::size_t first_seen = 0;
    };
    std::map<std::string, Group> groups;
    std::string ref_key;
    std::optional<LiftState> lift_state;
    std::size_t absorbed = 0;  // images of the reference group already in lift_state
    std::size_t sep_streak = 0;
    std::string refuted_reason;
    std::size_t seen_counter = 0;

    auto add_image = [&](ModularImage img) {
        std::string key = fingerprint_key(img);
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) it->second.first_seen = seen_counter++;
        it->second.images.push_back(std::move(img));
        // re-elect the reference
        const std::string* best = nullptr;
        for (const auto& [k, g] : groups) {
            if (!best) { best = &k; continue; }
            const Group& bg = groups.at(*best);
            if (g.images.size() > bg.images.size() ||
                (g.images.size() == bg.images.size() && g.first_seen < bg.first_seen))
                best = &k;
        }
        if (*best != ref_key) {
            ref_key = *best;
            lift_state.reset();
            absorbed = 0;
        }
    };
    auto refresh_lift = [&]() {
        Group& g = groups.at(ref_key);
        if (!lift_state) {
            lift_state.emplace(cfg.want_full);
            absorbed = 0;
        }
        for (; absorbed < g.images.size(); ++absorbed) lift_state->absorb(g.images[absorbed]);
    };
    auto reset_all = [&]() {
        have_t = false;
        groups.clear();
        ref_key.clear();
        lift_state.reset();
        absorbed = 0;
        sep_streak = 0;
    };

    std::size_t batch = std::max<std::size_t>(1, cfg.initial_batch);
    std::size_t search_exhausted = 0;
    try {
    while (tried < cfg.max_primes) {
        if (!have_t) {
            uint64_t p = take();
            try {
                ModularImage img = search_image(gens, nvars, PrimeModulus(p), cfg);
                t = img.form;
                have_t = true;
                sep_streak = 0;
                add_image(std::move(img));
            } catch (const BadPrime&) {
                continue;
            } catch (const StrategyExhausted&) {
                // one retry guards against an unlucky first prime
                if (++search_exhausted >= 2) throw;
                continue;
            }
        } else {
            std::vector<uint64_t> primes;
            while (primes.size() < batch && tried < cfg.max_primes) primes.push_back(take());
            if (primes.empty()) break;
            auto slots = compute_batch(gens, nvars, primes, t, cfg.threads);
            for (auto& [img, eptr] : slots) {
                if (img) {
                    sep_streak = 0;
                    add_image(std::move(*img));
                    continue;
                }
                try {
                    std::rethrow_exception(eptr);
                } catch (const BadPrime& e) {
                    if (is_separation_failure(e) && ++sep_streak >= 3) {
                        // the form itself looks non-separating: search again
                        reset_all();
                        break;
                    }
                }
            }
            batch *= 2;
        }
        if (!have_t || ref_key.empty()) continue;

        refresh_lift();
        auto cand = lift_state->reconstruct();
        if (!cand) continue;

        // candidate stabilized: verify against a fresh prime, then exactly
        ImageReference ref = ImageReference::of(groups.at(ref_key).images.front());
        std::size_t fresh_tries = 0;
        while (fresh_tries < 5 && tried < cfg.max_primes) {
            uint64_t p = take();
            ++fresh_tries;
            try {
                ModularImage img = compute_image(gens, nvars, PrimeModulus(p), t, &ref);
                VerifyOutcome v = stabilize_and_verify(gens, nvars, *cand, img);
                if (v.verified) {
                    DriveResult out;
                    out.radical = std::move(cand->radical);
                    out.full = std::move(cand->full);
                    out.form = t;
                    out.dimension = ref.dimension;
                    out.delta = ref.delta;
                    out.primes_used = lift_state->primes_consumed();
                    out.primes_tried = tried;
                    out.mt_sparsity = groups.at(ref_key).images.front().mt_sparsity;
                    return out;
                }
                refuted_reason = v.reason;
                add_image(std::move(img));  // a good image either way: reuse it
                break;
            } catch (const BadPrime&) {
                continue;  // unusable verification prime, draw another
            }
        }
    }
    } catch (const ResourceExceeded&) {
        if (!refuted_reason.empty())
            throw VerificationRefuted("verification kept failing: " + refuted_reason);
        throw;
    }
    if (!refuted_reason.empty())
        throw VerificationRefuted("verification kept failing: " + refuted_reason);
    throw ResourceExceeded("prime budget exhausted before stabilization");
}

}  // namespace rur

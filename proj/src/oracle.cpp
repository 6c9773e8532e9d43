#include "rur/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "rur/errors.hpp"
#include "rur/fglm.hpp"
#include "rur/upoly.hpp"

namespace rur {

namespace {

Fp eval_at(const MPoly<Fp>& f, const Point& pt, const PrimeModulus& p) {
    std::vector<Fp> vals;
    vals.reserve(pt.size());
    for (uint64_t c : pt) vals.push_back(Fp(c, p));
    return f.eval(vals);
}

uint64_t form_value(const LinearForm& t, const Point& a, const PrimeModulus& p) {
    Fp acc(0, p);
    for (std::size_t i = 0; i < t.size(); ++i)
        acc = acc + Fp::from_int(t[i], p) * Fp(a[i], p);
    return acc.value();
}

}  // namespace

PointSet enumerate_variety(const std::vector<MPoly<Fp>>& gens,
                           const PrimeModulus& p, uint64_t budget) {
    if (gens.empty()) throw ZeroPolynomial("enumerate_variety: no generators");
    const std::size_t n = gens.front().order().nvars();
    // Tuple count p^n with overflow-safe budget check.
    uint64_t tuples = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (tuples > budget / p.value()) throw BudgetExceeded("enumerate_variety: p^n exceeds budget");
        tuples *= p.value();
    }
    if (tuples > budget) throw BudgetExceeded("enumerate_variety: p^n exceeds budget");

    PointSet out;
    Point pt(n, 0);
    for (uint64_t count = 0; count < tuples; ++count) {
        bool zero = true;
        for (const auto& g : gens) {
            if (!eval_at(g, pt, p).is_zero()) { zero = false; break; }
        }
        if (zero) out.insert(pt);
        // odometer increment
        for (std::size_t i = 0; i < n; ++i) {
            if (++pt[i] < p.value()) break;
            pt[i] = 0;
        }
    }
    return out;
}

bool is_separating(const LinearForm& t, const PointSet& V, const PrimeModulus& p) {
    std::set<uint64_t> seen;
    for (const Point& a : V) {
        if (!seen.insert(form_value(t, a, p)).second) return false;
    }
    return true;
}

std::optional<std::pair<Point, Point>> collision_witness(const LinearForm& t,
                                                         const PointSet& V,
                                                         std::size_t var,
                                                         const PrimeModulus& p) {
    std::map<uint64_t, std::vector<const Point*>> buckets;
    for (const Point& a : V) buckets[form_value(t, a, p)].push_back(&a);
    for (const auto& [val, pts] : buckets) {
        (void)val;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if ((*pts[i])[var] != (*pts[j])[var]) return std::make_pair(*pts[i], *pts[j]);
    }
    return std::nullopt;
}

LinearForm colliding_form(const Point& a, const Point& b, const PrimeModulus& p) {
    if (a.size() != b.size() || a.size() < 2)
        throw InternalInvariantViolation("colliding_form: need two points of F_p^n, n >= 2");
    const std::size_t n = a.size();
    std::vector<uint64_t> d(n);
    bool equal = true;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = (Fp(a[i], p) - Fp(b[i], p)).value();
        if (d[i] != 0) equal = false;
    }
    if (equal) throw InternalInvariantViolation("colliding_form: points coincide");
    std::size_t i = 0;
    while (d[i] == 0) ++i;
    std::size_t j = (i == 0) ? 1 : 0;
    // t_i = -d_j, t_j = d_i kills the difference vector: t.(a-b) = 0.
    LinearForm t(n, 0);
    t[i] = -static_cast<int64_t>(d[j]);
    t[j] = static_cast<int64_t>(d[i]);
    return t;
}

PointSet points_of_rur(const ReducedRUR<Fp>& r, const PrimeModulus& p) {
    UPoly<Fp> fbar = r.full ? squarefree_part(r.first) : r.first;
    if (fbar.degree() < 1) return {};
    PointSet out;
    uint64_t roots = 0;
    for (uint64_t v = 0; v < p.value(); ++v) {
        Fp tau(v, p);
        if (!fbar.eval(tau).is_zero()) continue;
        ++roots;
        Fp denom = r.f0.eval(tau);
        if (denom.is_zero())
            throw InternalInvariantViolation("points_of_rur: denominator vanishes at a root");
        Fp dinv = denom.inv();
        Point pt;
        pt.reserve(r.coords.size());
        for (const auto& c : r.coords) pt.push_back((c.eval(tau) * dinv).value());
        out.insert(std::move(pt));
    }
    if (roots != static_cast<uint64_t>(fbar.degree()))
        throw NonSplitMinimalPolynomial("points_of_rur: minimal polynomial does not split over F_p");
    return out;
}

std::vector<MPoly<Fp>> vanishing_ideal(const std::vector<Point>& pts,
                                       const PrimeModulus& p) {
    if (pts.empty()) throw InternalInvariantViolation("vanishing_ideal: empty point set");
    const std::size_t n = pts.front().size();
    for (const auto& q : pts)
        if (q.size() != n) throw InternalInvariantViolation("vanishing_ideal: mixed arities");
    {
        std::set<Point> distinct(pts.begin(), pts.end());
        if (distinct.size() != pts.size())
            throw InternalInvariantViolation("vanishing_ideal: duplicate points");
    }
    MonomialOrder order = MonomialOrder::degrevlex(n);
    const std::size_t s = pts.size();

    auto eval_mono = [&](const Monomial& m) {
        std::vector<Fp> v;
        v.reserve(s);
        for (const auto& q : pts) {
            Fp acc(1, p);
            for (std::size_t i = 0; i < n; ++i)
                for (uint16_t e = 0; e < m.exponents()[i]; ++e) acc = acc * Fp(q[i], p);
            v.push_back(acc);
        }
        return v;
    };

    struct OrderLess {
        MonomialOrder o;
        bool operator()(const Monomial& a, const Monomial& b) const { return o.less(a, b); }
    };

    // Candidate monomials, smallest first; quotient basis monomials join
    // `basis` and spawn their variable multiples, dependent ones emit a
    // reduced Groebner generator.
    std::set<Monomial, OrderLess> pending{OrderLess{order}};
    pending.insert(Monomial(std::vector<uint16_t>(n, 0)));
    std::vector<Monomial> basis;
    std::vector<Monomial> lead_terms;
    std::vector<MPoly<Fp>> gens;
    EchelonState<Fp, std::size_t> ech(s);

    while (!pending.empty()) {
        Monomial m = *pending.begin();
        pending.erase(pending.begin());
        bool redundant = false;
        for (const auto& lt : lead_terms)
            if (lt.divides(m)) { redundant = true; break; }
        if (redundant) continue;

        auto dep = ech.push_and_reduce(eval_mono(m), basis.size());
        if (dep) {
            // m - sum dep_r * basis[label_r] vanishes on all the points.
            std::vector<Term<Fp>> terms;
            terms.push_back({m, Fp(1, p)});
            for (std::size_t r = 0; r < dep->size(); ++r) {
                if ((*dep)[r].is_zero()) continue;
                terms.push_back({basis[ech.labels()[r]], Fp(0, p) - (*dep)[r]});
            }
            gens.push_back(MPoly<Fp>::from_terms(order, std::move(terms)));
            lead_terms.push_back(m);
        } else {
            basis.push_back(m);
            for (std::size_t i = 0; i < n; ++i)
                pending.insert(m * Monomial::variable(n, i));
        }
    }

    if (basis.size() != s)
        throw InternalInvariantViolation("vanishing_ideal: quotient dimension mismatch");
    std::sort(gens.begin(), gens.end(), [&](const MPoly<Fp>& a, const MPoly<Fp>& b) {
        return order.less(a.lead_mono(), b.lead_mono());
    });
    return gens;
}

SplitSystem random_split_system(std::size_t nvars, std::size_t npoints,
                                std::size_t nfattened, const PrimeModulus& p,
                                uint64_t seed) {
    if (nvars == 0 || npoints == 0 || nfattened > npoints)
        throw InternalInvariantViolation("random_split_system: bad shape");
    if (p.value() < 2 * npoints)
        throw InternalInvariantViolation("random_split_system: field too small for distinct points");
    std::mt19937_64 gen(seed);
    std::set<Point> chosen;
    while (chosen.size() < npoints) {
        Point q(nvars);
        for (auto& c : q) c = gen() % p.value();
        chosen.insert(q);
    }
    std::vector<Point> pts(chosen.begin(), chosen.end());
    std::shuffle(pts.begin(), pts.end(), gen);

    SplitSystem sys;
    sys.points = chosen;
    sys.fattened = nfattened;
    sys.expected_dimension = (npoints - nfattened) + nfattened * (nvars + 1);

    std::vector<MPoly<Fp>> all = vanishing_ideal(pts, p);
    if (nfattened == 0) {
        sys.gens = std::move(all);
        return sys;
    }
    std::vector<Point> fat(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(nfattened));
    std::vector<MPoly<Fp>> sub = vanishing_ideal(fat, p);
    // Product ideal I(S) * I(S_fat): simple points keep multiplicity one,
    // fattened ones get the square of their maximal ideal.
    for (const auto& a : all)
        for (const auto& b : sub) sys.gens.push_back(a * b);
    return sys;
}

}  // namespace rur

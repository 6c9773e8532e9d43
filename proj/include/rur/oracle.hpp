#pragma once

// Ground-truth checks over small prime fields: exhaustive variety
// enumeration, separation testing of linear forms against an explicit
// point set, extraction of points from a parametrization, and a
// generator of systems whose variety is known by construction.

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "rur/fields.hpp"
#include "rur/mpoly.hpp"
#include "rur/rur.hpp"

namespace rur {

/// A point of F_p^n, coordinates as canonical representatives in [0, p).
using Point = std::vector<uint64_t>;

using PointSet = std::set<Point>;

/// All common zeros of `gens` in F_p^n by exhaustive scan.  Throws
/// BudgetExceeded when p^n exceeds `budget` tuples.
PointSet enumerate_variety(const std::vector<MPoly<Fp>>& gens,
                           const PrimeModulus& p,
                           uint64_t budget = 10'000'000);

/// Whether t(a) = sum t_i a_i takes distinct values on all points of V.
bool is_separating(const LinearForm& t, const PointSet& V, const PrimeModulus& p);

/// Two points of V with equal t-value whose coordinate `var` (0-based)
/// differs, if any.  Such a pair witnesses that coordinate `var` cannot be
/// expressed as a function of t on V.
std::optional<std::pair<Point, Point>> collision_witness(const LinearForm& t,
                                                         const PointSet& V,
                                                         std::size_t var,
                                                         const PrimeModulus& p);

/// A linear form with t(a) = t(b) and t != 0; requires a != b and n >= 2.
LinearForm colliding_form(const Point& a, const Point& b, const PrimeModulus& p);

/// Points encoded by a parametrization: for each root tau of the squarefree
/// part of `first` in F_p, the point (coords[i](tau) / f0(tau))_i.  Throws
/// NonSplitMinimalPolynomial when the root count falls short of the degree,
/// i.e. some coordinates live in a proper extension.
PointSet points_of_rur(const ReducedRUR<Fp>& r, const PrimeModulus& p);

/// Reduced degrevlex Groebner basis of the vanishing ideal of a finite set
/// of distinct points (Buchberger--Moeller): the returned generators vanish
/// exactly on `pts`, and the quotient has dimension |pts|.
std::vector<MPoly<Fp>> vanishing_ideal(const std::vector<Point>& pts,
                                       const PrimeModulus& p);

/// A zero-dimensional system with its variety known by construction.
struct SplitSystem {
    std::vector<MPoly<Fp>> gens;     ///< generators, degrevlex order
    PointSet points;                 ///< exact variety in F_p^n
    std::size_t fattened = 0;        ///< points carrying an m^2 local structure
    std::size_t expected_dimension = 0;  ///< (|points| - fattened) + fattened*(n+1)
};

/// Random system vanishing exactly on `npoints` distinct random points of
/// F_p^n, the first `nfattened` of which are doubled to the square of their
/// maximal ideal (multiplicity n+1, non-cyclic local quotient for n >= 2).
/// Built as the product ideal I(S) * I(S_fat), so the variety and the
/// quotient dimension are exact by construction.
SplitSystem random_split_system(std::size_t nvars, std::size_t npoints,
                                std::size_t nfattened, const PrimeModulus& p,
                                uint64_t seed);

}  // namespace rur

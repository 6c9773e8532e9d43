#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rur/groebner.hpp"

using namespace rur;

namespace {

const PrimeModulus P(101);
const Fp S0(0, P);

std::vector<MPoly<Fp>> sys(const std::vector<std::string>& vars, const MonomialOrder& ord,
                           std::initializer_list<const char*> polys) {
    std::vector<MPoly<Fp>> out;
    for (const char* s : polys) out.push_back(embed_poly(parse_poly(s, vars), ord, S0));
    return out;
}

Monomial mono(std::initializer_list<uint16_t> e) { return Monomial(std::vector<uint16_t>(e)); }

}  // namespace

TEST_CASE("normal form against a reduced basis") {
    std::vector<std::string> vars{"x", "y"};
    auto ord = MonomialOrder::degrevlex(2);
    auto F = sys(vars, ord, {"x^2 - 1", "y - x"});
    auto G = buchberger(F, ord);
    // reduced basis is {x - y, y^2 - 1}
    REQUIRE(G.gens.size() == 2);
    CHECK(G.gens[0] == embed_poly(parse_poly("x - y", vars), ord, S0));
    CHECK(G.gens[1] == embed_poly(parse_poly("y^2 - 1", vars), ord, S0));
    // x^3 + y^2 = y + 1 on the two points (1,1), (-1,-1)
    auto p = embed_poly(parse_poly("x^3 + y^2", vars), ord, S0);
    CHECK(normal_form(p, G.gens) == embed_poly(parse_poly("y + 1", vars), ord, S0));
    for (const auto& f : F) CHECK(normal_form(f, G.gens).is_zero());
}

TEST_CASE("s-polynomial cancels leading terms") {
    std::vector<std::string> vars{"x", "y"};
    auto ord = MonomialOrder::degrevlex(2);
    auto f = embed_poly(parse_poly("x^2 + y", vars), ord, S0);
    auto g = embed_poly(parse_poly("x*y + x", vars), ord, S0);
    auto s = s_polynomial(f, g);
    // lcm = x^2 y; y*f - x*g = y^2 - x^2
    CHECK(s == embed_poly(parse_poly("y^2 - x^2", vars), ord, S0));
}

TEST_CASE("basis of two squares under lex with swapped variables") {
    std::vector<std::string> vars{"x", "y"};
    MonomialOrder ord(MonomialOrder::Kind::lex, std::vector<std::size_t>{1, 0});  // y > x
    auto G = buchberger(sys(vars, ord, {"x^2 - 1", "y - x"}), ord);
    REQUIRE(G.gens.size() == 2);
    // ascending leading monomials: x^2 - 1 first, then y - x
    CHECK(G.gens[0] == embed_poly(parse_poly("x^2 - 1", vars), ord, S0));
    CHECK(G.gens[1] == embed_poly(parse_poly("y - x", vars), ord, S0));
}

TEST_CASE("unit ideal collapses to one") {
    std::vector<std::string> vars{"x", "y"};
    auto ord = MonomialOrder::degrevlex(2);
    auto G = buchberger(sys(vars, ord, {"x", "x + 1"}), ord);
    CHECK(G.is_unit_ideal());
    CHECK(quotient_basis(G).empty());
}

TEST_CASE("monomial ideal is its own basis") {
    std::vector<std::string> vars{"x", "y"};
    auto ord = MonomialOrder::degrevlex(2);
    auto F = sys(vars, ord, {"x^2", "x*y", "y^2"});
    auto G = buchberger(F, ord);
    REQUIRE(G.gens.size() == 3);
    // ascending degrevlex within degree 2: y^2 < x*y < x^2
    CHECK(G.gens[0].lead_mono() == mono({0, 2}));
    CHECK(G.gens[1].lead_mono() == mono({1, 1}));
    CHECK(G.gens[2].lead_mono() == mono({2, 0}));
}

TEST_CASE("quotient basis from the staircase") {
    std::vector<std::string> vars{"x", "y"};
    auto ord = MonomialOrder::degrevlex(2);

    auto G1 = buchberger(sys(vars, ord, {"x^2", "x*y", "y^2"}), ord);
    auto b1 = quotient_basis(G1);
    REQUIRE(b1.size() == 3);
    CHECK(b1[0] == mono({0, 0}));
    // ascending degrevlex: 1 < y < x (y smaller because its exponent sits in the last slot)
    CHECK(b1[1] == mono({0, 1}));
    CHECK(b1[2] == mono({1, 0}));

    auto G2 = buchberger(sys(vars, ord, {"x", "y"}), ord);
    auto b2 = quotient_basis(G2);
    REQUIRE(b2.size() == 1);
    CHECK(b2[0].is_one());

    // a positive-dimensional ideal is rejected
    auto G3 = buchberger(sys(vars, ord, {"x*y - 1"}), ord);
    CHECK_THROWS_AS(quotient_basis(G3), NotZeroDimensional);
}

TEST_CASE("multiplication matrix of a single relation") {
    std::vector<std::string> vars{"x"};
    auto ord = MonomialOrder::degrevlex(1);
    auto G = buchberger(sys(vars, ord, {"x^2 - 1"}), ord);
    auto basis = quotient_basis(G);
    REQUIRE(basis.size() == 2);  // {1, x}
    auto Q = multiplication_matrices(G, basis);
    CHECK(Q.dimension == 2);
    // x*1 = x, x*x = 1
    CHECK(Q.mats[0].at(0, 0).value() == 0);
    CHECK(Q.mats[0].at(1, 0).value() == 1);
    CHECK(Q.mats[0].at(0, 1).value() == 1);
    CHECK(Q.mats[0].at(1, 1).value() == 0);

    auto Gx = buchberger(sys(vars, ord, {"x"}), ord);
    auto bx = quotient_basis(Gx);
    auto Qx = multiplication_matrices(Gx, bx);
    CHECK(Qx.dimension == 1);
    CHECK(Qx.mats[0].at(0, 0).is_zero());
}

TEST_CASE("multiplication matrices of the fat origin") {
    std::vector<std::string> vars{"x", "y"};
    auto ord = MonomialOrder::degrevlex(2);
    auto G = buchberger(sys(vars, ord, {"x^2", "x*y", "y^2"}), ord);
    auto basis = quotient_basis(G);
    auto Q = multiplication_matrices(G, basis);
    REQUIRE(Q.dimension == 3);  // basis {1, y, x}
    // x*1 = x (index 2), x*y = 0, x*x = 0
    CHECK(Q.mats[0].at(2, 0).value() == 1);
    for (std::size_t r = 0; r < 3; ++r) {
        CHECK(Q.mats[0].at(r, 1).is_zero());
        CHECK(Q.mats[0].at(r, 2).is_zero());
        if (r != 2) CHECK(Q.mats[0].at(r, 0).is_zero());
    }
    // y*1 = y (index 1)
    CHECK(Q.mats[1].at(1, 0).value() == 1);
    CHECK(Q.mats[1].sparsity() == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("normal form detects ideal membership") {
    std::vector<std::string> vars{"x", "y"};
    auto ord = MonomialOrder::degrevlex(2);
    auto F = sys(vars, ord, {"x^2 + y^2 - 1", "x - y"});
    auto G = buchberger(F, ord);

    std::mt19937_64 gen(5);
    for (int i = 0; i < 50; ++i) {
        // random combination h = a*f0 + b*f1 must reduce to zero
        std::vector<Term<Fp>> ta, tb;
        for (int j = 0; j < 3; ++j) {
            std::vector<uint16_t> e{static_cast<uint16_t>(gen() % 3),
                                    static_cast<uint16_t>(gen() % 3)};
            ta.push_back({Monomial(e), Fp(gen() % 101, P)});
            tb.push_back({Monomial(e), Fp(gen() % 101, P)});
        }
        auto a = MPoly<Fp>::from_terms(ord, std::move(ta));
        auto b = MPoly<Fp>::from_terms(ord, std::move(tb));
        auto h = a * F[0] + b * F[1];
        CHECK(normal_form(h, G.gens).is_zero());
    }
    // and something outside the ideal must not
    CHECK_FALSE(normal_form(embed_poly(parse_poly("x", vars), ord, S0), G.gens).is_zero());
}

TEST_CASE("all s-polynomials of a computed basis reduce to zero") {
    std::vector<std::string> vars{"x", "y", "z"};
    auto ord = MonomialOrder::degrevlex(3);
    auto F = sys(vars, ord,
                 {"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"});  // cyclic-3
    auto G = buchberger(F, ord);
    for (std::size_t i = 0; i < G.gens.size(); ++i)
        for (std::size_t j = i + 1; j < G.gens.size(); ++j)
            CHECK(normal_form(s_polynomial(G.gens[i], G.gens[j]), G.gens).is_zero());
    // original generators lie in the ideal of the basis
    for (const auto& f : F) CHECK(normal_form(f, G.gens).is_zero());
    CHECK(quotient_basis(G).size() == 6);
}

TEST_CASE("pair limit aborts runaway computations") {
    std::vector<std::string> vars{"x", "y", "z"};
    auto ord = MonomialOrder::degrevlex(3);
    auto F = sys(vars, ord, {"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"});
    CHECK_THROWS_AS(buchberger(F, ord, 2), ResourceExceeded);
}

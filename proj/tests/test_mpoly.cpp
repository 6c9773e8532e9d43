#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rur/mpoly.hpp"

using namespace rur;

namespace {

Monomial mono(std::initializer_list<uint16_t> e) { return Monomial(std::vector<uint16_t>(e)); }

Monomial random_mono(std::mt19937_64& gen, std::size_t nvars, uint16_t maxexp) {
    std::vector<uint16_t> e(nvars);
    for (auto& x : e) x = static_cast<uint16_t>(gen() % (maxexp + 1));
    return Monomial(std::move(e));
}

}  // namespace

TEST_CASE("monomial arithmetic") {
    auto xy = mono({1, 1});
    auto x2 = mono({2, 0});
    CHECK((xy * x2) == mono({3, 1}));
    CHECK(x2.divides(mono({3, 1})));
    CHECK_FALSE(xy.divides(x2));
    CHECK((mono({3, 1}) / x2) == mono({1, 1}));
    CHECK(Monomial::lcm(xy, x2) == mono({2, 1}));
    CHECK(x2.coprime_with(mono({0, 5})));
    CHECK_FALSE(x2.coprime_with(xy));
    CHECK(mono({0, 0}).is_one());
    CHECK(xy.degree() == 2);
    CHECK(Monomial::variable(3, 1, 4) == mono({0, 4, 0}));
    CHECK(xy.extended() == mono({1, 1, 0}));
    CHECK_THROWS_AS(mono({1, 0}) / mono({0, 1}), Error);

    // exponent overflow is detected, not wrapped
    auto big = mono({65535, 0});
    CHECK_THROWS_AS(big * mono({1, 0}), ExponentOverflow);
}

TEST_CASE("lex order") {
    auto ord = MonomialOrder::lex(2);  // x > y
    CHECK(ord.greater(mono({1, 0}), mono({0, 5})));
    CHECK(ord.greater(mono({2, 0}), mono({1, 9})));
    CHECK(ord.less(mono({1, 1}), mono({1, 2})));
    CHECK(ord.compare(mono({2, 3}), mono({2, 3})) == Ordering::equal);
}

TEST_CASE("degrevlex order") {
    auto ord = MonomialOrder::degrevlex(2);
    // degree decides first
    CHECK(ord.greater(mono({0, 3}), mono({2, 0})));
    // same degree: smaller exponent in the last variable wins
    CHECK(ord.greater(mono({2, 1}), mono({1, 2})));
    CHECK(ord.less(mono({0, 2}), mono({1, 1})));
}

TEST_CASE("order with permutation") {
    // y > x
    MonomialOrder ord(MonomialOrder::Kind::lex, std::vector<std::size_t>{1, 0});
    CHECK(ord.greater(mono({0, 1}), mono({5, 0})));
}

TEST_CASE("order axioms hold on random monomials") {
    std::mt19937_64 gen(17);
    for (auto kind : {MonomialOrder::Kind::lex, MonomialOrder::Kind::degrevlex}) {
        MonomialOrder ord(kind, 3);
        for (int i = 0; i < 500; ++i) {
            auto a = random_mono(gen, 3, 6), b = random_mono(gen, 3, 6), c = random_mono(gen, 3, 6);
            // antisymmetry
            if (ord.less(a, b)) CHECK(ord.greater(b, a));
            if (ord.compare(a, b) == Ordering::equal) CHECK(a == b);
            // 1 is minimal
            if (!a.is_one()) CHECK(ord.greater(a, Monomial(3)));
            // multiplicativity
            if (ord.less(a, b)) CHECK(ord.less(a * c, b * c));
            // transitivity
            if (ord.less(a, b) && ord.less(b, c)) CHECK(ord.less(a, c));
        }
    }
}

TEST_CASE("parse a simple polynomial") {
    std::vector<std::string> vars{"x", "y"};
    auto zp = parse_poly("x^2 + y^2 - 1", vars);
    REQUIRE(zp.size() == 3);
    auto ord = MonomialOrder::degrevlex(2);
    auto p = embed_poly(zp, ord, Rat());
    CHECK(p.size() == 3);
    CHECK(p.lead_mono() == mono({2, 0}));
    CHECK(p.lead_coeff() == Rat(1));
    CHECK(p.eval({Rat(3, 5), Rat(4, 5)}).is_zero());
}

TEST_CASE("parser handles explicit products, exponents, parentheses") {
    std::vector<std::string> vars{"x", "y"};
    auto ord = MonomialOrder::degrevlex(2);
    auto one_term = embed_poly(parse_poly("2*x*y^3", vars), ord, Rat());
    REQUIRE(one_term.size() == 1);
    CHECK(one_term.lead_mono() == mono({1, 3}));
    CHECK(one_term.lead_coeff() == Rat(2));

    auto expanded = embed_poly(parse_poly("(x + y)*(x - y)", vars), ord, Rat());
    auto direct = embed_poly(parse_poly("x^2 - y^2", vars), ord, Rat());
    CHECK(expanded == direct);

    auto nested = embed_poly(parse_poly("-(x - 1)^2", vars), ord, Rat());
    auto nested2 = embed_poly(parse_poly("-x^2 + 2*x - 1", vars), ord, Rat());
    CHECK(nested == nested2);

    auto bigcoeff = parse_poly("123456789012345678901234567890*x", vars);
    CHECK(bigcoeff[0].second == mpz_class("123456789012345678901234567890"));
}

TEST_CASE("parser failures carry position and type") {
    std::vector<std::string> vars{"x", "y"};
    CHECK_THROWS_AS(parse_poly("x + ", vars), ParseError);
    CHECK_THROWS_AS(parse_poly("x + * y", vars), ParseError);
    CHECK_THROWS_AS(parse_poly("z + 1", vars), ParseError);  // unknown variable
    CHECK_THROWS_AS(parse_poly("x ^ y", vars), ParseError);  // exponent must be an integer
    CHECK_THROWS_AS(parse_poly("(x + 1", vars), ParseError);
    CHECK(parse_poly("x - x", vars).empty());  // cancellation is the caller's concern
    CHECK_THROWS_AS(parse_poly("x^100000", vars), ExponentOverflow);

    try {
        parse_poly("y + )", vars);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 5);
    }
}

TEST_CASE("round trip through printing") {
    std::vector<std::string> vars{"x", "y", "z"};
    auto ord = MonomialOrder::degrevlex(3);
    std::mt19937_64 gen(23);
    for (int i = 0; i < 100; ++i) {
        std::vector<Term<Rat>> terms;
        int nt = 1 + static_cast<int>(gen() % 5);
        for (int j = 0; j < nt; ++j) {
            long c = static_cast<long>(gen() % 41) - 20;
            terms.push_back({random_mono(gen, 3, 4), Rat(c)});
        }
        auto p = MPoly<Rat>::from_terms(ord, std::move(terms));
        if (p.is_zero()) continue;
        auto q = embed_poly(parse_poly(p.str(vars), vars), ord, Rat());
        CHECK(p == q);
    }
}

TEST_CASE("parse a full system description") {
    const char* text =
        "# unit square corners\n"
        "vars: x, y\n"
        "field: QQ\n"
        "\n"
        "x^2 - 1\n"
        "y^2 - 1\n";
    auto sys = parse_system(text);
    CHECK(sys.vars == std::vector<std::string>{"x", "y"});
    CHECK(sys.field.is_rational());
    CHECK(sys.polys.size() == 2);

    auto ff = parse_system("vars: u\nfield: FF 65521\nu^2 - 2\n");
    CHECK(ff.field.prime == 65521);
    CHECK(ff.vars == std::vector<std::string>{"u"});

    CHECK_THROWS_AS(parse_system("vars: x\nfield: QQ\n"), ParseError);  // no polynomials
    CHECK_THROWS_AS(parse_system("field: QQ\nx\n"), ParseError);        // missing vars
    CHECK_THROWS_AS(parse_system("vars: x\nfield: GF(9)\nx\n"), ParseError);
    CHECK_THROWS_AS(parse_system("vars: x, x\nfield: QQ\nx\n"), ParseError);  // duplicate
    CHECK_THROWS_AS(parse_system("vars: x\nfield: QQ\nx - x\n"), ZeroPolynomial);
}

TEST_CASE("polynomial arithmetic over a prime field") {
    PrimeModulus p(7);
    auto ord = MonomialOrder::degrevlex(2);
    std::vector<std::string> vars{"x", "y"};
    Fp sample(0, p);
    auto f = embed_poly(parse_poly("3*x^2 + 4*x^2", vars), ord, sample);
    REQUIRE(f.size() == 0);  // 7 = 0 mod 7
    auto g = embed_poly(parse_poly("x + y", vars), ord, sample);
    auto h = g * g;
    CHECK(h == embed_poly(parse_poly("x^2 + 2*x*y + y^2", vars), ord, sample));
    CHECK(h.make_monic() == h);
}

TEST_CASE("linear form generator") {
    auto ord = MonomialOrder::degrevlex(3);
    auto g = linear_form_generator({1, -2}, ord, Rat());
    // T - x + 2y with T the appended last variable
    auto want = embed_poly(parse_poly("t - x + 2*y", {"x", "y", "t"}), ord, Rat());
    CHECK(g == want);
    CHECK_THROWS_AS(linear_form_generator({1, 2, 3}, ord, Rat()), InternalInvariantViolation);
}

TEST_CASE("extend_vars appends an unused variable") {
    auto ord2 = MonomialOrder::degrevlex(2);
    auto ord3 = MonomialOrder::degrevlex(3);
    std::vector<std::string> vars{"x", "y"};
    auto p = embed_poly(parse_poly("x^2 - y", vars), ord2, Rat());
    auto q = extend_vars(p, ord3);
    CHECK(q.nvars() == 3);
    CHECK(q == embed_poly(parse_poly("x^2 - y", {"x", "y", "t"}), ord3, Rat()));
}

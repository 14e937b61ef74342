#include <catch2/catch_amalgamated.hpp>

#include "xtp/series.hpp"

#include "support/random_weights.hpp"

using namespace xtp;

namespace {
VarSetPtr Q = make_varset({"q"});
VarSetPtr PQ = make_varset({"p", "q"});
VarSetPtr PQR = make_varset({"p", "q", "r"});

Polynomial qp(const std::string& t) { return Polynomial::parse(t, Q); }
Polynomial pqp(const std::string& t) { return Polynomial::parse(t, PQ); }

RiordanSpec catalan_spec() {
    return RiordanSpec(qp("1"), qp("q"), qp("1+q"), qp("q"));
}
} // namespace

TEST_CASE("series multiplication and inversion") {
    // (1 + x)^2 = 1 + 2x + x^2 with polynomial coefficient arithmetic
    PolySeries f(Q, 4);
    f.coeffs[0] = qp("1");
    f.coeffs[1] = qp("q");
    auto f2 = series_mul(f, f);
    REQUIRE(f2.coeffs[0] == qp("1"));
    REQUIRE(f2.coeffs[1] == qp("2q"));
    REQUIRE(f2.coeffs[2] == qp("q^2"));
    REQUIRE(f2.coeffs[3].is_zero());

    auto inv = series_inverse(f);
    auto prod = series_mul(f, inv);
    REQUIRE(prod.coeffs[0] == qp("1"));
    for (std::size_t n = 1; n <= 4; ++n) REQUIRE(prod.coeffs[n].is_zero());

    PolySeries g(Q, 2);
    REQUIRE_THROWS_AS(series_mul(f, g), ValueError);  // truncation mismatch
    g.coeffs[0] = qp("2");
    REQUIRE_THROWS_AS(series_inverse(g), ValueError); // constant term != 1
}

TEST_CASE("series inverse on random unit series") {
    test_support::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        PolySeries f(PQ, 6);
        f.coeffs[0] = Polynomial::constant(PQ, 1);
        for (std::size_t n = 1; n <= 6; ++n)
            f.coeffs[n] = test_support::random_poly(rng, PQ, 2, 3, true);
        auto prod = series_mul(f, series_inverse(f));
        REQUIRE(prod.coeffs[0] == Polynomial::constant(PQ, 1));
        for (std::size_t n = 1; n <= 6; ++n) REQUIRE(prod.coeffs[n].is_zero());
    }
}

TEST_CASE("Riordan data is validated") {
    REQUIRE_THROWS_AS(RiordanSpec(qp("1"), qp("q - 1"), qp("1"), qp("q")),
                      ValueError);
    REQUIRE_THROWS_AS(RiordanSpec(qp("1"), pqp("q"), qp("1"), qp("q")),
                      ValueError);
}

TEST_CASE("quadratic-equation solution h") {
    auto h = solve_h(catalan_spec(), 4);
    REQUIRE(h.coeffs[0] == qp("1"));
    REQUIRE(h.coeffs[1] == qp("1 + q"));
    REQUIRE(h.coeffs[2] == qp("1 + 3q + q^2")); // (1+q)^2 + q
    // the functional equation h = 1 + c x h + e x^2 h^2 has residual zero
    test_support::Rng rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        RiordanSpec spec(test_support::random_poly(rng, PQ, 1, 2, false),
                         test_support::random_poly(rng, PQ, 1, 2, false),
                         test_support::random_poly(rng, PQ, 2, 2, false),
                         test_support::random_poly(rng, PQ, 2, 2, false));
        std::size_t T = 8;
        auto hh = solve_h(spec, T);
        PolySeries rhs(PQ, T);
        rhs.coeffs[0] = Polynomial::constant(PQ, 1);
        for (std::size_t n = 1; n <= T; ++n) rhs.coeffs[n] = spec.c * hh.coeffs[n - 1];
        for (std::size_t n = 2; n <= T; ++n) {
            Polynomial conv(PQ);
            for (std::size_t i = 0; i + 2 <= n; ++i)
                conv += hh.coeffs[i] * hh.coeffs[n - 2 - i];
            rhs.coeffs[n] += spec.e * conv;
        }
        REQUIRE(hh == rhs);
    }
}

TEST_CASE("column generating function d (example values)") {
    auto d = solve_d(catalan_spec(), 3);
    REQUIRE(d.coeffs[0] == qp("1"));
    REQUIRE(d.coeffs[1] == qp("1"));
    REQUIRE(d.coeffs[2] == qp("1 + q"));
    REQUIRE(d.coeffs[3] == qp("1 + 3q + q^2"));

    // two-variable symmetric data
    RiordanSpec sym(pqp("p + q"), pqp("2p*q"), pqp("p + q"), pqp("p*q"));
    auto ds = solve_d(sym, 2);
    REQUIRE(ds.coeffs[1] == pqp("p + q"));
    REQUIRE(ds.coeffs[2] == pqp("p^2 + 4p*q + q^2"));

    // three-variable data
    auto rp = [&](const char* t) { return Polynomial::parse(t, PQR); };
    RiordanSpec three(rp("q + r"), rp("p*q + q*r"), rp("p + q + r"),
                      rp("p*q + q*r"));
    auto dt = solve_d(three, 2);
    REQUIRE(dt.coeffs[1] == rp("q + r"));
    REQUIRE(dt.coeffs[2] == rp("p*q + q^2 + 3q*r + r^2"));
}

TEST_CASE("column generating function matches the triangle") {
    auto ws = WeightSystem::from_texts(Q, "1", "k=0: 1; else: 1+q", "q");
    REQUIRE(verify_riordan_column(catalan_spec(), ws, 10));

    // mismatched weight systems are rejected up front
    auto other = WeightSystem::from_texts(Q, "1", "1+q", "q");
    REQUIRE_THROWS_AS(verify_riordan_column(catalan_spec(), other, 10),
                      ValueError);
    auto r2 = WeightSystem::from_texts(Q, "2", "k=0: 1; else: 1+q", "q");
    REQUIRE_THROWS_AS(verify_riordan_column(catalan_spec(), r2, 10), ValueError);
}

TEST_CASE("Z- and A-recurrences hold on matching triangles") {
    auto ws = WeightSystem::from_texts(Q, "1", "k=0: 1; else: 1+q", "q");
    auto tri = build_triangle(ws, 9);
    REQUIRE(verify_AZ_recurrences(tri, catalan_spec()));

    // recurrences fail against non-matching data
    RiordanSpec wrong(qp("1"), qp("q"), qp("1 + 2q"), qp("q"));
    REQUIRE(!verify_AZ_recurrences(tri, wrong));

    test_support::Rng rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        // random Riordan data, induced weight system, recurrences must hold
        auto a = test_support::random_poly(rng, PQ, 1, 2, false);
        auto b = test_support::random_nonneg_nonzero(rng, PQ, 1, 2);
        auto c = test_support::random_poly(rng, PQ, 2, 2, false);
        auto e = test_support::random_nonneg_nonzero(rng, PQ, 2, 2);
        RiordanSpec spec(a, b, c, e);
        auto X = [](const Polynomial& f) {
            return f.is_zero() ? std::string("0")
                               : f.to_string(TextStyle::ExplicitOps);
        };
        auto induced = WeightSystem::from_texts(
            PQ, "1", "k=0: " + X(a) + "; else: " + X(c),
            "k=1: " + X(b) + "; else: " + X(e));
        auto t = build_triangle(induced, 7);
        REQUIRE(verify_AZ_recurrences(t, spec));
        REQUIRE(verify_riordan_column(spec, induced, 7));
    }
}

TEST_CASE("two-variable Bell generating function") {
    auto s = bell_gf_series(5);
    auto vars = s.vars;
    auto f = [&](const char* t) { return Polynomial::parse(t, vars); };
    REQUIRE(s.coeffs[0] == f("1"));
    REQUIRE(s.coeffs[1] == f("q"));
    REQUIRE(s.coeffs[2] == f("p*q + q^2"));
    REQUIRE(s.coeffs[3] == f("p^2*q + 3p*q^2 + q^3"));
    REQUIRE(s.coeffs[4] == f("p^3*q + 7p^2*q^2 + 6p*q^3 + q^4"));
    // p = q = 1 gives the Bell numbers
    std::vector<Int> bell{1, 1, 2, 5, 15, 52};
    for (std::size_t n = 0; n <= 5; ++n)
        REQUIRE(s.coeffs[n].evaluate({{"p", 1}, {"q", 1}}) == bell[n]);
}

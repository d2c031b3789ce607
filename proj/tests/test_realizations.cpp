#include <doctest.h>

#include "cubicfano/finite_geometry.hpp"
#include "cubicfano/realizations.hpp"
#include "support.hpp"

using namespace cubicfano;
using namespace cubicfano::motivic;
using namespace cubicfano::realize;

namespace {

VirtualClass L(int k = 1) { return VirtualClass::lefschetz(k); }
VirtualClass sym(const char *name) { return VirtualClass::symbol(name); }

Integer qpow(const Integer &q, int e) { return ipow(q, static_cast<unsigned>(e)); }

} // namespace

TEST_CASE("Lefschetz values") {
    CHECK(realize_integer(L(), Environment::count(5)) == 5);
    CHECK(realize_integer(L(), Environment::euler()) == 1);
    CHECK(realize_integer(L(), Environment::real_euler()) == -1);
    CHECK(realize_e(L(), Environment::e_polynomial()) == EPolynomial::monomial(1, 1));
    CHECK(realize_integer(L(-2), Environment::real_euler()) == 1);
    CHECK(realize_e(L(-1), Environment::e_polynomial()) == EPolynomial::monomial(-1, -1));
    CHECK_THROWS(realize_integer(L(-1), Environment::count(3)));
    CHECK_THROWS(Environment::count(1));
}

TEST_CASE("projective space counts") {
    for (int q : {2, 3, 4, 5, 7}) {
        for (int d = 0; d <= 6; ++d) {
            CHECK(realize_integer(projective_space(d), Environment::count(q)) == (qpow(q, d + 1) - 1) / (q - 1));
        }
    }
}

TEST_CASE("Euler characteristic of a symmetric square") {
    Environment env = Environment::euler();
    env.assign_euler("X", 9);
    CHECK(realize_integer(sym2(sym("X")), env) == 45);
    CHECK(realize_integer(sym_power(sym("X"), 3), env) == 165);
    env.assign_euler("C", -8);
    // chi(Sym^2 C) for genus 5 = chi(C)(chi(C)+1)/2
    CHECK(realize_integer(sym2(sym("C")), env) == 28);
}

TEST_CASE("count realization needs the higher point counts") {
    Environment env = Environment::count(2);
    env.assign_counts("X", {3});
    CHECK(realize_integer(sym("X"), env) == 3);
    CHECK_THROWS_AS(realize_integer(sym2(sym("X")), env), RealizationError);
    env.assign_counts("X", {3, 5, 9});
    CHECK(realize_integer(sym2(sym("X")), env) == 7);
    CHECK(realize_integer(sym_power(sym("X"), 3), env) == 15);
    // L X at q = 2 has counts 2^m N_m
    CHECK(realize_integer(sym2(L() * sym("X")), env) == 4 * 7);
    // inconsistent N_2 makes the half-sum non-integral
    env.assign_counts("Y", {3, 4});
    CHECK_THROWS_AS(realize_integer(sym2(sym("Y")), env), IntegralityError);
}

TEST_CASE("unassigned symbols are named") {
    Environment env = Environment::euler();
    env.assign_euler("X", 1);
    try {
        realize::realize(sym("X") + sym("Zed"), env);
        FAIL("expected an error");
    } catch (const RealizationError &e) {
        CHECK(std::string(e.what()).find("Zed") != std::string::npos);
    }
    CHECK(env.is_assigned("X"));
    CHECK_FALSE(env.is_assigned("Zed"));
    CHECK(env.assigned_names() == std::vector<std::string>{"X"});
    CHECK_THROWS_AS(env.assign_counts("X", {1}), std::exception);
}

TEST_CASE("Sym^2 overrides") {
    Environment env = Environment::euler();
    env.assign_euler("X", 4);
    env.override_sym2("X", Integer(3));
    CHECK(realize_integer(sym2(sym("X")), env) == 3);
    // the override feeds the Sym^2 coefficient only, products still multiply
    CHECK(realize_integer(sym("X") * sym("X"), env) == 16);

    Environment real = Environment::real_euler();
    real.assign_real("S", 1, 3);
    // default rule (chi_R^2 + chi_C)/2
    CHECK(realize_integer(sym2(sym("S")), real) == 2);
    real.override_sym2("S", Integer(5));
    CHECK(realize_integer(sym2(sym("S")), real) == 5);

    Environment count = Environment::count(3);
    count.assign_counts("T", {4});
    count.override_sym2("T", Integer(10));
    CHECK(realize_integer(sym2(sym("T")), count) == 10);
}

TEST_CASE("real Euler characteristic of symmetric squares") {
    Environment env = Environment::real_euler();
    env.assign_real("X", 3, 9);
    CHECK(realize_integer(sym2(sym("X")), env) == (9 + 9) / 2);
    // chi_R and chi_C of different parity cannot both come from a variety
    env.assign_real("B", 2, 9);
    CHECK_THROWS_AS(realize_integer(sym2(sym("B")), env), IntegralityError);
    // Sym^3 is outside the real rule
    CHECK_THROWS(realize_integer(sym_power(sym("X"), 3), env));
}

TEST_CASE("E-polynomials") {
    Environment env = Environment::e_polynomial();
    // genus 2 curve: 1 - 2u - 2v + uv
    EPolynomial c;
    c.add_term(0, 0, 1);
    c.add_term(1, 0, -2);
    c.add_term(0, 1, -2);
    c.add_term(1, 1, 1);
    env.assign_e("C", c);
    const EPolynomial s = realize_e(sym2(sym("C")), env);
    // Sym^2 of a genus 2 curve: h^{1,0} = 2, h^{2,0} = 1, h^{1,1} = 5
    CHECK(s.coefficient(0, 0) == 1);
    CHECK(s.coefficient(1, 0) == -2);
    CHECK(s.coefficient(2, 0) == 1);
    CHECK(s.coefficient(1, 1) == 5);
    CHECK(s.coefficient(2, 2) == 1);
    CHECK(psi_polynomial(s) == Polynomial{1, 2, 1});
    CHECK(to_string(c) == "1 - 2*u - 2*v + u*v");
    CHECK(to_string(EPolynomial()) == "0");
    CHECK(to_string(Polynomial{1, 5, 10}) == "1 + 5*t + 10*t^2");
    CHECK(to_string(Polynomial{1, 0, 1, 0, 1}) == "1 + t^2 + t^4");
    CHECK(psi_polynomial(realize_e(projective_space(4), env)) == Polynomial{1});
    CHECK_THROWS(psi_polynomial(EPolynomial::monomial(-1, 0)));
    CHECK(c.adams(2) == EPolynomial::monomial(0, 0) - EPolynomial::monomial(2, 0, 2) -
                            EPolynomial::monomial(0, 2, 2) + EPolynomial::monomial(2, 2));
}

TEST_CASE("realize is a ring homomorphism") {
    std::mt19937_64 rng(1234);
    for (Target t : {Target::count, Target::euler, Target::real_euler, Target::e_polynomial}) {
        for (int trial = 0; trial < 40; ++trial) {
            const Environment env = testsupport::random_environment(t, rng);
            VirtualClass a = testsupport::random_class_with_sym(rng);
            VirtualClass b = testsupport::random_class_with_sym(rng);
            if (t == Target::count) {
                // negative L powers have no count
                const int shift = std::max(0, -std::min(a.min_l_exponent(), b.min_l_exponent()));
                a = a * L(shift);
                b = b * L(shift);
            }
            const Value ab = realize::realize(a * b, env);
            const Value sum = realize::realize(a + b, env);
            const Value ra = realize::realize(a, env);
            const Value rb = realize::realize(b, env);
            if (t == Target::e_polynomial) {
                CHECK(std::get<EPolynomial>(ab) == std::get<EPolynomial>(ra) * std::get<EPolynomial>(rb));
                CHECK(std::get<EPolynomial>(sum) == std::get<EPolynomial>(ra) + std::get<EPolynomial>(rb));
            } else {
                CHECK(std::get<Integer>(ab) == std::get<Integer>(ra) * std::get<Integer>(rb));
                CHECK(std::get<Integer>(sum) == std::get<Integer>(ra) + std::get<Integer>(rb));
            }
        }
    }
}

TEST_CASE("E(1,1) equals the Euler characteristic") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        Environment e_env = testsupport::random_environment(Target::e_polynomial, rng);
        Environment chi = Environment::euler();
        for (const auto &[name, poly] : e_env.e_values()) {
            chi.assign_euler(name, poly.at_one());
        }
        const VirtualClass a = testsupport::random_class_with_sym(rng);
        CHECK(realize_e(a, e_env).at_one() == realize_integer(a, chi));
    }
}

TEST_CASE("count realization of the Y-F(Y) relation matches brute force") {
    using namespace cubicfano::geometry;
    std::mt19937_64 rng(5);
    for (auto [d, p] : std::vector<std::pair<int, std::uint32_t>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
        for (int trial = 0; trial < 3; ++trial) {
            const CubicForm f = trial == 0 ? nodal_cubic(d, p) : random_cubic(d, p, rng());
            const FiniteField base = FiniteField::prime(p);
            const YFYCheck r = verify_yfy_counting(f, base);
            Environment env = Environment::count(p);
            env.assign_counts("Y", {r.census.n1, r.census.n2});
            env.assign_counts("F", {r.census.lines});
            env.assign_counts("S", {r.census.ns});
            const VirtualClass y = sym("Y");
            CHECK(realize_integer(hilb2_class(y, d, sym("S")), env) == r.hilb_lhs);
            CHECK(realize_integer(projective_space(d) * y + L(2) * sym("F"), env) == r.hilb_rhs);
            CHECK(realize_integer(sym2(y), env) == r.sym_lhs);
            CHECK(realize_integer((1 + L(d)) * y + L(2) * sym("F") - L(d) * sym("S"), env) == r.sym_rhs);
        }
    }
}

TEST_CASE("Euler characteristic of the Fano scheme") {
    CHECK(chi_fano(9, 0) == 27);
    CHECK(chi_fano(8, 1) == 21);
    for (int n = 0; n <= 6; ++n) {
        for (int r = 0; r <= n; ++r) {
            CHECK(chi_fano(9 - n, r) == (9 - n) * (6 - n) / 2 + r);
        }
    }
    CHECK(chi_fano(-6, 0) == 27);
    CHECK(chi_fano(27, 0) == 324);
    for (int chi = -50; chi <= 50; ++chi) {
        CHECK_NOTHROW(chi_fano(chi, 0));
    }
}

TEST_CASE("real lines") {
    const std::vector<int> expected{27, 15, 7, 3};
    for (int k = 0; k <= 3; ++k) {
        CHECK(chi_real_fano(2 * k - 5, 9, Parity::even, 0) == expected[static_cast<std::size_t>(k)]);
    }
    CHECK(chi_real_fano(3, 9, Parity::even, 0) == 3);
    CHECK(chi_real_fano(0, 10, Parity::even, 0) == 5);
    CHECK(chi_real_fano(1, 3, Parity::odd, 1) == 1);
    CHECK_THROWS_AS(chi_real_fano(0, 9, Parity::even, 0), IntegralityError);
    try {
        chi_real_fano(2, 9, Parity::odd, 0);
        FAIL("expected an error");
    } catch (const IntegralityError &e) {
        CHECK(std::string(e.what()).find("parity") != std::string::npos);
    }
}

TEST_CASE("indecomposability screens") {
    const auto r3 = indecomposability_report({1, 5, 10}, 25, 3);
    CHECK(r3.factorizations.empty());
    REQUIRE(r3.sym2_genus.has_value());
    CHECK(*r3.sym2_genus == 5);
    CHECK(*r3.sym2_h11 == 26);
    CHECK(r3.sym2_excluded);
    CHECK(r3.verdict == "not decomposable");

    const auto r4 = indecomposability_report({1, 0, 1, 0, 1}, 21, 4);
    CHECK(r4.factorizations.empty());
    CHECK(*r4.hilb2_q == 0);
    CHECK(*r4.hilb2_pg == 1);
    CHECK(r4.verdict == "no product factorization");

    const auto r1 = indecomposability_report({1}, 0, 3);
    CHECK(r1.verdict == "inconclusive");

    // (1 + t)(1 + 2t) does factor
    const auto rf = indecomposability_report({1, 3, 2}, 5, 3);
    CHECK_FALSE(rf.factorizations.empty());
    CHECK(rf.verdict == "inconclusive");
    CHECK_THROWS(indecomposability_report({1, 5, 10}, 25, 5));
}

TEST_CASE("Hasse-Weil truncation") {
    CHECK(hasse_weil_truncation({3, 5}, 2) == std::vector<Integer>{3, 7});
    CHECK(hasse_weil_truncation({3, 5, 9}, 3) == std::vector<Integer>{3, 7, 15});
    CHECK(hasse_weil_truncation({11}, 1) == std::vector<Integer>{11});
    CHECK_THROWS_AS(hasse_weil_truncation({3, 4}, 2), IntegralityError);
    CHECK_THROWS(hasse_weil_truncation({3}, 2));
    CHECK_THROWS(hasse_weil_truncation({3}, 0));
    // P^n over F_q: Sym^m P^1 = P^m
    for (int q : {2, 3, 5}) {
        std::vector<Integer> n;
        for (int m = 1; m <= 6; ++m) {
            n.push_back(qpow(q, m) + 1);
        }
        const auto s = hasse_weil_truncation(n, 6);
        for (int m = 1; m <= 6; ++m) {
            CHECK(s[static_cast<std::size_t>(m - 1)] == (qpow(q, m + 1) - 1) / (q - 1));
        }
    }
}

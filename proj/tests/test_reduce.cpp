#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "susyms/elliptic.hpp"
#include "susyms/errors.hpp"
#include "susyms/reduce.hpp"

using namespace susyms;

namespace {
GradedExpr xi() { return ge_var("xi"); }
GradedExpr w_jet(int n) {
    JetKey k;
    k.field = FieldId::Omega;
    k.d = {static_cast<uint16_t>(n), 0, 0};
    return ge_jet(k);
}
} // namespace

TEST_CASE("invariants are annihilated by their generators") {
    for (const std::string label : {"L1", "L4", "L8", "L72", "L74", "G136"}) {
        VectorField v = generator_field(label);
        for (const auto& named : invariants_for(label).invariants) {
            INFO(label, " invariant ", named.first);
            CHECK(v.apply(named.second).is_zero());
        }
    }
    CHECK_THROWS_AS(invariants_for("L2"), UnsupportedSubalgebra);
    CHECK_THROWS_AS(invariants_for("L33"), UnsupportedSubalgebra);
}

TEST_CASE("invariant sets match the worked cases") {
    auto l1 = invariants_for("L1");
    CHECK(l1.invariants.size() == 4);
    CHECK(l1.invariants[0].second == ge_var("y"));
    CHECK(l1.orbit == "Phi = Phi(y, theta1, theta2)");
    auto l74 = invariants_for("L74");
    CHECK(l74.invariants[0].second == ge_var("y") / ge_var("x"));
    CHECK(l74.invariants[1].second ==
          (ge_fvar("theta1") + ge_odd("mu")) / ge_sqrt(ge_var("x")));
    CHECK(l74.orbit == "Phi = x^2*Psi(xi, eta1, eta2)");
}

TEST_CASE("numeric evaluation rejects poles and unbound atoms") {
    NumericEnv env;
    env.set("x", 0.0);
    CHECK_THROWS_AS(evaluate(GradedExpr::one() / ge_var("x"), env), DomainError);
    CHECK_THROWS_AS(evaluate(ge_var("z9"), env), DomainError);
    CHECK_THROWS_AS(evaluate(ge_odd("mu") * ge_odd("nu"), env), DomainError);
    env.real_domain = true;
    env.set("x", -2.0);
    CHECK_THROWS_AS(evaluate(ge_sqrt(ge_var("x")), env), DomainError);
    CHECK_THROWS_AS(evaluate(ge_ln(ge_var("x")), env), DomainError);
    CHECK_THROWS_AS(evaluate(ge_asin(ge_var("x")), env), DomainError);
    // a grid hitting the 2y+eps = 0 pole reports the offending point
    GridSpec grid;
    grid.x0 = 0.5;
    grid.x1 = 1.0;
    grid.nx = 3;
    grid.y0 = -0.5;
    grid.y1 = -0.5;
    grid.ny = 1;
    NumericEnv env2;
    env2.set("A", 1.0);
    env2.set("B", 1.0);
    env2.set("eps", 1.0);
    env2.set("K", 1.0);
    try {
        verify_susy_solution_numeric(named_solution("scaling-radical"), grid, env2);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("grid point") != std::string::npos);
    }
}

TEST_CASE("bodiless reduction: dilation plus odd translation") {
    ReducedODE ode = reduce_bodiless("L74");
    // (w^2 + xi^2 + 1) w'' expanded
    GradedExpr expect =
        (w_jet(0) * w_jet(0) + xi() * xi() + GradedExpr::one()) * w_jet(2);
    CHECK(ode.lhs == expect);
    CHECK(ode.pretty == "(w^2 + xi^2 + 1)*w'' = 0");
}

TEST_CASE("bodiless reduction: pure dilation emits the same equation") {
    ReducedODE ode = reduce_bodiless("L72");
    GradedExpr expect =
        (w_jet(0) * w_jet(0) + xi() * xi() + GradedExpr::one()) * w_jet(2);
    CHECK(ode.lhs == expect);
}

TEST_CASE("bodiless reduction: dilation plus even translation") {
    ReducedODE ode = reduce_bodiless("G136");
    // the equation this ansatz actually produces
    GradedExpr expect =
        (GradedExpr::integer(4) * w_jet(0) * w_jet(0) + xi() * xi() + GradedExpr::integer(4)) *
        w_jet(2);
    CHECK(ode.lhs == expect);
    CHECK(ode.pretty == "(4*w^2 + xi^2 + 4)*w'' = 0");
}

TEST_CASE("both branches solve the scaling equation") {
    // w = +- i sqrt(xi^2+1) kills the first factor; linear w kills w''
    GradedExpr root = ge_sqrt(xi() * xi() + GradedExpr::one());
    GradedExpr w = GradedExpr::i() * root;
    CHECK((w * w + xi() * xi() + GradedExpr::one()).is_zero());
    GradedExpr wneg = -w;
    CHECK((wneg * wneg + xi() * xi() + GradedExpr::one()).is_zero());
}

TEST_CASE("solution verification: translation-invariant solutions are exact") {
    for (const std::string name : {"translation-quadratic", "translation-wave",
                                   "stationary-wave", "centered-wave", "scaling-linear"}) {
        INFO(name);
        auto rep = verify_susy_solution(named_solution(name));
        CHECK(rep.status == SolutionReport::Status::Zero);
    }
}

TEST_CASE("solution verification: radial solutions are exact for both signs") {
    CHECK(verify_susy_solution(named_solution("radial")).status == SolutionReport::Status::Zero);
    CHECK(verify_susy_solution(named_solution("radial-neg")).status ==
          SolutionReport::Status::Zero);
}

TEST_CASE("constraint discovery on the quadratic solutions") {
    auto rep = verify_susy_solution(named_solution("quadratic-body"));
    CHECK(rep.status == SolutionReport::Status::ConstraintVariety);
    REQUIRE(rep.constraints.size() == 1);
    CHECK(rep.constraints[0] == ge_even("M") - ge_even("a"));
    // residual is exactly 2(a - M)
    CHECK(rep.residual == GradedExpr::integer(2) * (ge_even("a") - ge_even("M")));

    auto rep2 = verify_susy_solution(named_solution("quadratic-orbit"));
    CHECK(rep2.status == SolutionReport::Status::ConstraintVariety);
    REQUIRE(rep2.constraints.size() == 1);
    CHECK(rep2.constraints[0] == ge_even("C4e") + ge_even("c2"));
}

TEST_CASE("the scaling radical satisfies its printed equation exactly") {
    CHECK(scaling_radical_ode_residual().is_zero());
}

TEST_CASE("a residual with no free constants reports plain nonzero") {
    // Phi = x^2 theta1 theta2 misses the equation by a constant
    GradedExpr phi = ge_var("x") * ge_var("x") * ge_fvar("theta1") * ge_fvar("theta2");
    auto rep = verify_susy_solution(phi);
    CHECK(rep.status == SolutionReport::Status::NonZero);
    CHECK(rep.residual ==
          GradedExpr::integer(2) * ge_fvar("theta1") * ge_fvar("theta2"));
}

TEST_CASE("the scaling radical does not solve the field equation") {
    NumericEnv env;
    env.set("K", 1.0);
    env.set("eps", 1.0);
    GridSpec grid;
    grid.x0 = 0.4;
    grid.x1 = 0.8;
    grid.y0 = 1.0;
    grid.y1 = 2.0;
    grid.nx = 5;
    grid.ny = 5;
    auto rep = verify_susy_solution_numeric(named_solution("scaling-radical"), grid, env);
    CHECK(rep.max_abs > 1e-2);
}

TEST_CASE("numeric verification accepts the exact solutions") {
    NumericEnv env;
    env.set("A", 0.3);
    env.set("B", 0.7);
    GridSpec grid;
    grid.nx = 7;
    grid.ny = 7;
    auto rep = verify_susy_solution_numeric(named_solution("centered-wave"), grid, env);
    CHECK(rep.max_abs < 1e-12);
    // the scaling branch w = i sqrt(xi^2+1) of the dilation reduction,
    // checked against the field equation on the grid
    auto rep2 = verify_susy_solution_numeric(named_solution("radial"), grid, env);
    CHECK(rep2.max_abs < 1e-12);
}

TEST_CASE("doubly periodic expression: residual recorded nonzero") {
    NumericEnv env;
    GridSpec grid;
    grid.x0 = 0.5;
    grid.x1 = 2.5;
    grid.y0 = -1.0;
    grid.y1 = 1.0;
    grid.nx = 5;
    grid.ny = 3;
    auto rep = verify_susy_solution_numeric(named_solution("doubly-periodic"), grid, env);
    CHECK(rep.max_abs > 0.1);    // depends on x alone, so it cannot be flat
    CHECK(rep.max_abs < 1e4);    // but it is finite on the grid
}

TEST_CASE("finite supersymmetry transformations map solutions to solutions") {
    // x -> x - eta theta1, theta1 -> theta1 + eta (and the y/theta2 mirror)
    auto q1_transform = [](const GradedExpr& phi) {
        GradedExpr eta = ge_odd("eta");
        return phi.substitute(
            {{Atom::bvar("x"), ge_var("x") - eta * ge_fvar("theta1")},
             {Atom::fvar("theta1"), ge_fvar("theta1") + eta}});
    };
    auto q2_transform = [](const GradedExpr& phi) {
        GradedExpr eta = ge_odd("lambda");
        return phi.substitute(
            {{Atom::bvar("y"), ge_var("y") - eta * ge_fvar("theta2")},
             {Atom::fvar("theta2"), ge_fvar("theta2") + eta}});
    };
    for (const std::string name : {"translation-quadratic", "centered-wave", "radial"}) {
        INFO(name);
        GradedExpr phi = named_solution(name);
        CHECK(verify_susy_solution(q1_transform(phi)).status == SolutionReport::Status::Zero);
        CHECK(verify_susy_solution(q2_transform(phi)).status == SolutionReport::Status::Zero);
        CHECK(verify_susy_solution(q2_transform(q1_transform(phi))).status ==
              SolutionReport::Status::Zero);
    }
}

TEST_CASE("elliptic integrals: degenerate cases") {
    CHECK(elliptic_f(0.0, 0.5) == 0.0);
    CHECK(elliptic_e(0.0, 0.5) == 0.0);
    CHECK(std::abs(elliptic_f(0.7, 0.0) - 0.7) < 1e-14);
    CHECK(std::abs(elliptic_e(0.7, 0.0) - 0.7) < 1e-14);
    CHECK_THROWS_AS(elliptic_f(0.3, 1.0), DomainError);
    CHECK_THROWS_AS(elliptic_e(0.3, 1.5), DomainError);
}

TEST_CASE("elliptic integrals: complete values at the reference modulus") {
    double k = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(elliptic_f(M_PI_2, k) - 1.8540746773013719184) < 1e-13);
    CHECK(std::abs(elliptic_e(M_PI_2, k) - 1.3506438810476755025) < 1e-13);
}

TEST_CASE("elliptic integrals: monotone and ordered") {
    double k = 0.6;
    double prevF = 0.0, prevE = 0.0;
    for (int i = 1; i <= 10; ++i) {
        double phi = i * M_PI_2 / 10;
        double F = elliptic_f(phi, k), E = elliptic_e(phi, k);
        CHECK(F > prevF);
        CHECK(E > prevE);
        CHECK(E <= F);
        prevF = F;
        prevE = E;
    }
}

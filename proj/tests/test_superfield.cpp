#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "susyms/superfield.hpp"

using namespace susyms;

namespace {
GradedExpr th1() { return ge_fvar("theta1"); }
GradedExpr th2() { return ge_fvar("theta2"); }
} // namespace

TEST_CASE("superfield expansion") {
    GradedExpr phi = ge_jet(FieldId::Phi);
    GradedExpr expect = ge_jet(FieldId::V) + th1() * ge_jet(FieldId::PhiC) +
                        th2() * ge_jet(FieldId::PsiC) + th1() * th2() * ge_jet(FieldId::U);
    CHECK(expand_superfield(phi) == expect);

    // bosonic derivatives commute with the expansion
    GradedExpr pxx = ge_jet(FieldId::Phi, 2, 0);
    GradedExpr expect_xx = ge_jet(FieldId::V, 2, 0) + th1() * ge_jet(FieldId::PhiC, 2, 0) +
                           th2() * ge_jet(FieldId::PsiC, 2, 0) +
                           th1() * th2() * ge_jet(FieldId::U, 2, 0);
    CHECK(expand_superfield(pxx) == expect_xx);
}

TEST_CASE("Phi_theta1 expansion sign fixed by the left-derivative rule") {
    // dtheta1(v + t1 phi + t2 psi + t1 t2 u) = phi + t2 u
    GradedExpr j = expand_superfield(d_theta1(ge_jet(FieldId::Phi)));
    CHECK(j == ge_jet(FieldId::PhiC) + th2() * ge_jet(FieldId::U));
    // dtheta2(...) = psi - t1 u
    GradedExpr j2 = expand_superfield(d_theta2(ge_jet(FieldId::Phi)));
    CHECK(j2 == ge_jet(FieldId::PsiC) - th1() * ge_jet(FieldId::U));
}

TEST_CASE("subscript jets follow the left-to-right application rule") {
    // Phi_{x theta1 theta2} expands to u_x
    CHECK(expand_superfield(subscript_jet(FieldId::Phi, "xt1t2")) == ge_jet(FieldId::U, 1, 0));
    // Phi_{yy theta1 theta2} expands to u_yy
    CHECK(expand_superfield(subscript_jet(FieldId::Phi, "yyt1t2")) == ge_jet(FieldId::U, 0, 2));
    // and the theta-order transposition flips the sign
    CHECK(subscript_jet(FieldId::Phi, "t1t2") == -subscript_jet(FieldId::Phi, "t2t1"));
}

TEST_CASE("expansion commutes with dx and dy") {
    GradedExpr e = subscript_jet(FieldId::Phi, "xt2") + ge_jet(FieldId::Phi) * ge_var("x");
    CHECK(expand_superfield(d_x(e)) == d_x(expand_superfield(e)));
    CHECK(expand_superfield(d_y(e)) == d_y(expand_superfield(e)));
}

TEST_CASE("operator identities all hold") {
    auto reports = check_operator_identities();
    CHECK(reports.size() == 10);
    for (const auto& r : reports) {
        INFO(r.name);
        CHECK(r.holds);
    }
}

TEST_CASE("operator and component residuals agree after expansion") {
    GradedExpr op = expand_superfield(susy_ms_residual(ResidualForm::Operator));
    GradedExpr comp = expand_superfield(susy_ms_residual(ResidualForm::Component));
    CHECK((op - comp).is_zero());
}

TEST_CASE("purely bosonic superfield reduces the equation to Laplace") {
    // all nonlinear brackets carry theta1 theta2 factors that square to zero
    GradedExpr residual = susy_ms_residual(ResidualForm::Operator);
    Components c;
    c.v = ge_jet(FieldId::V);
    c.phi = GradedExpr::zero();
    c.psi = GradedExpr::zero();
    c.u = GradedExpr::zero();
    GradedExpr r = residual_of(c);
    CHECK(r == ge_jet(FieldId::V, 0, 2) + ge_jet(FieldId::V, 2, 0));
    (void)residual;
}

TEST_CASE("zero superfield is a solution") {
    Components c;
    CHECK(residual_of(c).is_zero());
}

TEST_CASE("identities hold on theta1 theta2 u as well") {
    GradedExpr e = th1() * th2() * ge_jet(FieldId::U);
    auto anti = [&e](SuperOp a, SuperOp b) {
        return apply_op(a, apply_op(b, e)) + apply_op(b, apply_op(a, e));
    };
    CHECK(anti(SuperOp::Q1, SuperOp::Q1) + GradedExpr::integer(2) * d_x(e) == GradedExpr::zero());
    CHECK(anti(SuperOp::D1, SuperOp::D2).is_zero());
    CHECK(anti(SuperOp::Q2, SuperOp::Q2) + GradedExpr::integer(2) * d_y(e) == GradedExpr::zero());
}

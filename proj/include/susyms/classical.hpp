#pragma once

#include <functional>
#include <string>
#include <vector>

#include "susyms/deriv.hpp"
#include "susyms/expr.hpp"
#include "susyms/vectorfield.hpp"

namespace susyms {

/// (1 + u_x^2) u_yy - 2 u_x u_y u_xy + (1 + u_y^2) u_xx as an expression in
/// the jets of u(x, y).
GradedExpr classical_ms_residual();

/// Residual with the gradient supplied explicitly: second derivatives are
/// total derivatives of ux, uy under ctx.
GradedExpr classical_ms_residual_of_gradient(const GradedExpr& ux, const GradedExpr& uy,
                                             const DiffCtx& ctx);

/// Second-order central finite-difference residual of a numeric surface.
double classical_ms_residual_fd(const std::function<double(double, double)>& u, double x,
                                double y, double h = 1e-3);
/// Same, normalized by the largest term magnitude.
double classical_ms_residual_fd_relative(const std::function<double(double, double)>& u,
                                         double x, double y, double h = 1e-3);

struct ClassicalChecks {
    bool divergence_matches;  // conservation form * (1+ux^2+uy^2)^{3/2} == MS
    bool euler_lagrange;      // EL of sqrt(1+ux^2+uy^2) equals the divergence form
    bool wick_signs;          // y = it carries MS to minus the Born-Infeld form
    bool wick_involution;     // applying the map twice is the identity
};
ClassicalChecks euler_lagrange_check();

/// Wick substitution y = i t on an expression in u-jets: each y-derivative
/// contributes a factor -i (the second jet slot is reread as t-derivatives).
GradedExpr wick_map(const GradedExpr& e);
/// (1 + u_x^2) u_tt - 2 u_x u_t u_xt - (1 - u_t^2) u_xx in the same jets.
GradedExpr born_infeld_residual();

/// On-shell residual of the second prolongation of v applied to the equation:
/// zero iff v generates a point symmetry.
GradedExpr prolong2_symmetry_check(const VectorField& v);

struct ClassicalClassification {
    std::vector<std::string> labels; // e1, e4, e4+m*e3, e7
    std::vector<VectorField> representatives;
    bool killing_negative_definite;
    bool scaling_action_consistent; // [e1, e7] = e1 drives the e7 rescaling
};
ClassicalClassification classical_classify();

struct ClassicalReduction {
    std::string label;
    GradedExpr lhs;          // polynomial form in w-jets and xi
    GradedExpr vprime_rhs;   // w'' solved: v' = rhs(v, xi), v = w'
    std::string pretty;
};
/// Symbolic reduction under the rotational ansatz: label "e4" (u = u(x^2+y^2))
/// or "e4+me3" (u = phi(x^2+y^2) - m asin(x/sqrt(x^2+y^2)), upper half plane).
ClassicalReduction reduce_classical(const std::string& label);

/// The closed-form rotational solution u(xi) (xi = x^2 + y^2).
double e4_solution_u(double xi, double s0, double k0);

struct AbelNumericReport {
    double max_residual = 0.0;
    double at = 0.0;
    int points = 0;
};
/// Finite-difference check of the closed form against the Abel equation on
/// xi in [3/s0, 10/s0].
AbelNumericReport e4_abel_residual(double s0, double k0, int points = 25, double h = 5e-3);

struct AnnulusReport {
    double max_relative = 0.0;
    double at_x = 0.0, at_y = 0.0;
    int points = 0;
};
/// Relative finite-difference residual of the rotational solution on the
/// annulus 3/s0 <= x^2+y^2 <= 10/s0.
AnnulusReport e4_annulus_residual(double s0, double k0, int nr = 12, int ntheta = 24,
                                  double h = 5e-3);

struct E4me3Report {
    double max_real_residual = 0.0;
    double max_imag_residual = 0.0;
    double max_imag_value = 0.0; // imaginary part of the closed form itself
    int points = 0;
};
/// Measured Abel residual of the two-term logarithmic closed form (modulus
/// reading of ln |.|), real and imaginary parts reported separately.
E4me3Report e4me3_abel_residual(double s0, double m, int points = 15, double h = 5e-3);

} // namespace susyms

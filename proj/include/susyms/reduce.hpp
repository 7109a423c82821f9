#pragma once

#include <string>
#include <vector>

#include "susyms/expr.hpp"
#include "susyms/numeric.hpp"
#include "susyms/superfield.hpp"
#include "susyms/vectorfield.hpp"

namespace susyms {

/// Named invariants of a worked subalgebra, each annihilated by the
/// subalgebra's generator acting as a derivation on superspace.
struct InvariantSet {
    std::string label;
    std::vector<std::pair<std::string, GradedExpr>> invariants;
    std::string orbit; // the group orbit, e.g. "Phi = x^2*Psi(xi, eta1, eta2)"
};

/// Supported labels: L1, L4, L8, L72, L74, G136. UnsupportedSubalgebra
/// otherwise (including the nine classes without standard invariants).
InvariantSet invariants_for(const std::string& label);

/// The subalgebra generator as a superspace vector field over
/// (x, y, theta1, theta2, Phi).
VectorField generator_field(const std::string& label);

struct ReducedODE {
    std::string label;
    GradedExpr lhs;     // polynomial in w-jets and xi, content-normalized
    std::string pretty; // factored display "(...)*w'' = 0"
};

/// Bodiless reduction Phi = x^2 w(xi) eta1 eta2 for L72, L74, G136: substitute
/// into the superspace equation, check the residual stays in the eta1 eta2
/// span, and return the coefficient ODE. ReductionError when stray components
/// survive.
ReducedODE reduce_bodiless(const std::string& label);

struct SolutionReport {
    enum class Status { Zero, ConstraintVariety, NonZero };
    Status status = Status::Zero;
    GradedExpr residual;
    std::vector<GradedExpr> constraints; // primitive polynomials in the constants
};

/// Exact residual of the component-form equation for a concrete superfield;
/// when the residual is a polynomial in free constants, its vanishing locus is
/// reported as the constraint list.
SolutionReport verify_susy_solution(const GradedExpr& phi);

struct GridSpec {
    double x0 = 0.5, x1 = 3.0;
    double y0 = -2.0, y1 = 2.0;
    int nx = 41, ny = 41;
};

struct NumericReport {
    double max_abs = 0.0;
    double at_x = 0.0, at_y = 0.0;
    int evaluated = 0;
};

/// Evaluate the residual's theta-component functions on a grid and report the
/// largest magnitude. env carries values for the expression's even constants;
/// x and y are bound per grid point. DomainError propagates with the offending
/// point appended.
NumericReport verify_susy_solution_numeric(const GradedExpr& phi, const GridSpec& grid,
                                           NumericEnv env);

/// Catalog of the worked closed-form solutions; names:
/// translation-quadratic, translation-wave, stationary-wave, radial (eps1 = 1),
/// radial-neg (eps1 = -1), centered-wave, scaling-radical, scaling-linear,
/// quadratic-orbit, quadratic-body, doubly-periodic.
std::vector<std::string> solution_names();
GradedExpr named_solution(const std::string& name);

/// omega for the scaling-radical branch and the reference first factor of its
/// reduced equation: 2 xi w w' + 6 w^2 + xi^2 + 4 (verified as an exact
/// rational identity after the square-root rewrite).
GradedExpr scaling_radical_omega();
GradedExpr scaling_radical_ode_residual();

} // namespace susyms

#pragma once

#include <string>
#include <vector>

#include "susyms/deriv.hpp"
#include "susyms/expr.hpp"

namespace susyms {

/// theta-expansion of the superfield: Phi = v + theta1 phi + theta2 psi
/// + theta1 theta2 u, with every Phi-jet differentiated accordingly. The
/// result contains only component-field jets and thetas.
GradedExpr expand_superfield(const GradedExpr& e);

/// Jet written in subscript convention: the list applies left to right, i.e.
/// Phi_{x theta1 theta2} = dtheta2 dtheta1 dx Phi. Returns the canonical jet
/// with the transposition sign folded in.
GradedExpr subscript_jet(FieldId f, const std::string& subscripts);

enum class ResidualForm { Operator, Component };

/// Left-hand side of the superspace minimal-surface equation, either composed
/// from covariant derivatives D1, D2 acting on Phi or transcribed term-by-term
/// in partial-derivative form.
GradedExpr susy_ms_residual(ResidualForm form);

struct IdentityReport {
    std::string name;
    bool holds;
    GradedExpr residual;
};

/// Verifies the operator algebra on a generic superfield jet:
/// {Q1,Q1} = -2 dx, {Q2,Q2} = -2 dy, {Q1,Q2} = 0, D1^2 = dx, D2^2 = dy,
/// {D1,D2} = 0 and {Di,Qj} = 0 for all i, j.
std::vector<IdentityReport> check_operator_identities();

/// Extract superfield components by theta slots:
/// v = Phi|_{theta=0}, phi = dtheta1 Phi|, psi = dtheta2 Phi|, u = dtheta2 dtheta1 Phi|.
struct Components {
    GradedExpr v, phi, psi, u;
};
Components split_components(const GradedExpr& superfield_expr);

/// Substitute a concrete superfield into the component-form residual:
/// every component jet v_ab, phi_ab, psi_ab, u_ab is replaced by the
/// corresponding derivative of the given expressions. ctx carries chain data
/// for similarity variables appearing in the components.
GradedExpr residual_of(const Components& c, const DiffCtx& ctx = {});

} // namespace susyms

#pragma once

#include <string>

#include "susyms/expr.hpp"

namespace susyms {

/// Parse expression source in the repository grammar:
///
///   odd mu, nu;            declarations (no implicit identifiers)
///   even K, A;
///   <expression>           +, -, *, /, ^, parentheses, integers, i,
///                          x, y, xi, theta1, theta2, Phi,
///                          sqrt() ln() asin() sin() cos() EllipticF() EllipticE(),
///                          field jets u, v, phi, psi (optionally u(x,y)),
///                          subscripts u_xy, Phi_xt1t2, and w, w', w''(xi)
///
/// Unknown identifiers are rejected with a located SyntaxError.
GradedExpr parse_expression(const std::string& src);

/// Expression with leading declarations for its constants; parses back to the
/// same canonical form.
std::string write_expression(const GradedExpr& e);

} // namespace susyms

#pragma once

#include <vector>

#include "susyms/expr.hpp"

namespace susyms {

/// Chain-rule data for total derivatives.
///  - atom_partials: extra nonzero partials of atoms, e.g. d(xi)/dx = -xi/x
///    when xi abbreviates y/x.
///  - field_args: composite argument of a one-argument field, e.g. w = w(xi)
///    with xi = xi(x, y); d(jet)/dvar = (dArg/dvar) * jet' with the inner
///    Jacobian on the left.
///  - var_links: promote a bare variable to a jet under total derivatives,
///    e.g. D_x sends the coordinate u to the jet u_x.
struct DiffCtx {
    struct AtomPartial {
        Atom atom;
        Atom var;
        GradedExpr value;
    };
    struct FieldArg {
        FieldId field;
        Atom var;
        GradedExpr value; // d(argument)/d(var)
    };
    std::vector<AtomPartial> atom_partials;
    std::vector<FieldArg> field_args;

    void add_atom_partial(Atom a, Atom v, GradedExpr val) {
        atom_partials.push_back({std::move(a), std::move(v), std::move(val)});
    }
    void add_field_arg(FieldId f, Atom v, GradedExpr val) {
        field_args.push_back({f, std::move(v), std::move(val)});
    }
};

/// Left graded derivative with respect to a bosonic or fermionic variable.
/// Jets of fields that list `var` among their arguments get their multi-index
/// incremented (with the anticommutation sign on theta slots); everything the
/// context declares chains through. Differentiating w.r.t. a constant atom
/// throws UsageError.
GradedExpr d_total(const GradedExpr& e, const Atom& var, const DiffCtx& ctx = {});

GradedExpr d_x(const GradedExpr& e, const DiffCtx& ctx = {});
GradedExpr d_y(const GradedExpr& e, const DiffCtx& ctx = {});
GradedExpr d_theta1(const GradedExpr& e, const DiffCtx& ctx = {});
GradedExpr d_theta2(const GradedExpr& e, const DiffCtx& ctx = {});

/// Derivative of a named function symbol with respect to its argIndex-th
/// argument, as an expression in the same arguments.
GradedExpr function_derivative(const std::string& name,
                               const std::vector<std::shared_ptr<const GradedExpr>>& args,
                               size_t argIndex);

enum class SuperOp { Dx, Dy, Dth1, Dth2, D1, D2, Q1, Q2 };

/// First-order superspace operators: D1 = dtheta1 + theta1 dx,
/// D2 = dtheta2 + theta2 dy, Q1 = dtheta1 - theta1 dx, Q2 = dtheta2 - theta2 dy.
GradedExpr apply_op(SuperOp op, const GradedExpr& e);

/// apply_op folded over a sequence, leftmost operator acting last.
GradedExpr apply_ops(const std::vector<SuperOp>& ops, const GradedExpr& e);

} // namespace susyms

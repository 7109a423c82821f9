#include "susyms/deriv.hpp"

#include "susyms/errors.hpp"

namespace susyms {

namespace {

const GradedExpr kZero;

GradedExpr jet_derivative(const Atom& a, const Atom& var, const DiffCtx& ctx) {
    const JetKey& k = a.jet;
    const FieldInfo& fi = field_info(k.field);

    if (var.kind == AtomKind::BosonicVar) {
        for (int p = 0; p < fi.n_even_args; ++p) {
            if (var.name == fi.even_args[p]) {
                JetKey nk = k;
                nk.d[p] += 1;
                return ge_jet(nk);
            }
        }
        for (const auto& fa : ctx.field_args) {
            if (fa.field == k.field && atom_eq(fa.var, var)) {
                JetKey nk = k;
                nk.d[0] += 1;
                return fa.value * ge_jet(nk); // inner Jacobian on the left
            }
        }
        return kZero;
    }

    if (var.kind == AtomKind::FermionicVar && fi.has_theta) {
        if (var.name == "theta1") {
            if (k.dth1)
                return kZero;
            JetKey nk = k;
            nk.dth1 = true;
            return ge_jet(nk);
        }
        if (var.name == "theta2") {
            if (k.dth2)
                return kZero;
            JetKey nk = k;
            nk.dth2 = true;
            // dtheta2 dtheta1 rewrites to -dtheta1 dtheta2
            return k.dth1 ? -ge_jet(nk) : ge_jet(nk);
        }
    }
    return kZero;
}

GradedExpr atom_derivative(const Atom& a, const Atom& var, const DiffCtx& ctx) {
    if (atom_eq(a, var))
        return GradedExpr::one();
    switch (a.kind) {
    case AtomKind::OddConst:
    case AtomKind::EvenConst:
        return kZero;
    case AtomKind::BosonicVar:
    case AtomKind::FermionicVar:
        for (const auto& ap : ctx.atom_partials)
            if (atom_eq(ap.atom, a) && atom_eq(ap.var, var))
                return ap.value;
        return kZero;
    case AtomKind::Jet:
        return jet_derivative(a, var, ctx);
    case AtomKind::Func: {
        GradedExpr sum;
        for (size_t i = 0; i < a.args.size(); ++i) {
            GradedExpr da = d_total(*a.args[i], var, ctx);
            if (da.is_zero())
                continue;
            sum += da * function_derivative(a.name, a.args, i);
        }
        return sum;
    }
    }
    return kZero;
}

GradedExpr poly_derivative(const Poly& p, const Atom& var, const DiffCtx& ctx) {
    GradedExpr out;
    for (const auto& [m, c] : p) {
        // even-atom factors: all preceding factors even, no sign
        for (size_t i = 0; i < m.even.size(); ++i) {
            const auto& [a, e] = m.even[i];
            GradedExpr da = atom_derivative(a, var, ctx);
            if (da.is_zero())
                continue;
            GradedExpr term = GradedExpr::coeff(c * GaussRat(e));
            Poly rest;
            Monomial rm = m;
            rm.even[i].second -= 1;
            if (rm.even[i].second == 0)
                rm.even.erase(rm.even.begin() + i);
            Monomial evens;
            evens.even = rm.even;
            rest.emplace(evens, GaussRat(1));
            term = term * GradedExpr::from_poly(rest) * da;
            for (const Atom& o : m.odd)
                term = term * GradedExpr::atom(o);
            out += term;
        }
        // odd-atom factors: an odd derivation picks up (-1)^(number of
        // preceding odd atoms); an even one is sign-free
        bool odd_op = var.parity() == Parity::Odd;
        for (size_t j = 0; j < m.odd.size(); ++j) {
            GradedExpr da = atom_derivative(m.odd[j], var, ctx);
            if (da.is_zero())
                continue;
            GaussRat cc = (!odd_op || j % 2 == 0) ? c : -c;
            Monomial evens;
            evens.even = m.even;
            Poly ep;
            ep.emplace(evens, cc);
            GradedExpr term = GradedExpr::from_poly(ep);
            for (size_t t = 0; t < m.odd.size(); ++t) {
                if (t == j)
                    term = term * da;
                else
                    term = term * GradedExpr::atom(m.odd[t]);
            }
            out += term;
        }
    }
    return out;
}

} // namespace

GradedExpr d_total(const GradedExpr& e, const Atom& var, const DiffCtx& ctx) {
    // jet atoms are legal formal targets (jet-space partials for prolongations)
    if (var.kind != AtomKind::BosonicVar && var.kind != AtomKind::FermionicVar &&
        var.kind != AtomKind::Jet)
        throw UsageError("cannot differentiate with respect to '" + var.str() + "'");
    GradedExpr dn = poly_derivative(e.num(), var, ctx);
    if (!e.has_den()) {
        return dn;
    }
    // (N/D)' = (N' - N * sum_i e_i f_i'/f_i) / D
    GradedExpr nexpr = GradedExpr::from_poly(e.num());
    GradedExpr sum;
    for (const auto& [f, k] : e.den()) {
        GradedExpr df = poly_derivative(f, var, ctx);
        if (df.is_zero())
            continue;
        sum += GradedExpr::integer(k) * (df / GradedExpr::from_poly(f));
    }
    GradedExpr top = dn - nexpr * sum;
    for (const auto& [f, k] : e.den())
        top = top / GradedExpr::from_poly(f).pow(k);
    return top;
}

GradedExpr d_x(const GradedExpr& e, const DiffCtx& ctx) { return d_total(e, Atom::bvar("x"), ctx); }
GradedExpr d_y(const GradedExpr& e, const DiffCtx& ctx) { return d_total(e, Atom::bvar("y"), ctx); }
GradedExpr d_theta1(const GradedExpr& e, const DiffCtx& ctx) {
    return d_total(e, Atom::fvar("theta1"), ctx);
}
GradedExpr d_theta2(const GradedExpr& e, const DiffCtx& ctx) {
    return d_total(e, Atom::fvar("theta2"), ctx);
}

GradedExpr function_derivative(const std::string& name,
                               const std::vector<std::shared_ptr<const GradedExpr>>& args,
                               size_t argIndex) {
    const GradedExpr& a = *args.at(argIndex);
    if (name == "sqrt")
        return GradedExpr::rational(1, 2) / ge_sqrt(a);
    if (name == "ln")
        return GradedExpr::one() / a;
    if (name == "asin")
        return GradedExpr::one() / ge_sqrt(GradedExpr::one() - a * a);
    if (name == "sin")
        return ge_cos(a);
    if (name == "cos")
        return -ge_sin(a);
    if (name == "EllipticF" || name == "EllipticE") {
        // sine-form integrals with upper limit z = args[0], modulus k = args[1]
        if (argIndex != 0)
            throw UsageError("no derivative rule for the modulus of " + name);
        const GradedExpr& k = *args.at(1);
        GradedExpr one = GradedExpr::one();
        GradedExpr w1 = one - a * a;
        GradedExpr w2 = one - k * k * a * a;
        if (name == "EllipticF")
            return one / ge_sqrt(w1 * w2);
        return ge_sqrt(w2) / ge_sqrt(w1);
    }
    throw UsageError("no derivative rule for function '" + name + "'");
}

GradedExpr apply_op(SuperOp op, const GradedExpr& e) {
    switch (op) {
    case SuperOp::Dx: return d_x(e);
    case SuperOp::Dy: return d_y(e);
    case SuperOp::Dth1: return d_theta1(e);
    case SuperOp::Dth2: return d_theta2(e);
    case SuperOp::D1: return d_theta1(e) + ge_fvar("theta1") * d_x(e);
    case SuperOp::D2: return d_theta2(e) + ge_fvar("theta2") * d_y(e);
    case SuperOp::Q1: return d_theta1(e) - ge_fvar("theta1") * d_x(e);
    case SuperOp::Q2: return d_theta2(e) - ge_fvar("theta2") * d_y(e);
    }
    throw UsageError("unknown operator");
}

GradedExpr apply_ops(const std::vector<SuperOp>& ops, const GradedExpr& e) {
    GradedExpr r = e;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it)
        r = apply_op(*it, r);
    return r;
}

} // namespace susyms

#include "susyms/reduce.hpp"

#include <algorithm>

#include "susyms/classify.hpp"
#include "susyms/errors.hpp"

namespace susyms {

namespace {

GradedExpr x_() { return ge_var("x"); }
GradedExpr y_() { return ge_var("y"); }
GradedExpr th1() { return ge_fvar("theta1"); }
GradedExpr th2() { return ge_fvar("theta2"); }
GradedExpr xi_() { return ge_var("xi"); }
GradedExpr sqx() { return ge_sqrt(ge_var("x")); }

VectorField combine_generators(const SubalgebraElement& e) {
    auto basis = susy_basis();
    VectorField v;
    v.coords = basis[0].coords;
    v.coeffs.assign(v.coords.size(), GradedExpr::zero());
    for (int g = 0; g < kNumGen; ++g)
        if (!e.coeff[g].is_zero())
            v = v + (e.coeff[g] * basis[g]);
    v.parity = field_parity(v);
    return v;
}

SubalgebraElement element_for(const std::string& label) {
    SubalgebraElement e;
    if (label == "L1") {
        e[Gen::P1] = GradedExpr::one();
    } else if (label == "L4") {
        e[Gen::P1] = GradedExpr::one();
        e[Gen::P3] = ge_odd("mu");
    } else if (label == "L8") {
        e[Gen::P1] = GradedExpr::one();
        e[Gen::P2] = ge_even("k");
    } else if (label == "L72") {
        e[Gen::D] = GradedExpr::one();
    } else if (label == "L74") {
        e[Gen::D] = GradedExpr::one();
        e[Gen::P3] = ge_odd("mu");
    } else if (label == "G136") {
        e[Gen::D] = GradedExpr::one();
        e[Gen::P2] = ge_even("eps");
    } else {
        throw UnsupportedSubalgebra("no stored invariants for '" + label + "'");
    }
    return e;
}

} // namespace

VectorField generator_field(const std::string& label) {
    return combine_generators(element_for(label));
}

InvariantSet invariants_for(const std::string& label) {
    InvariantSet s;
    s.label = label;
    GradedExpr Phi = ge_var("Phi");
    if (label == "L1") {
        s.invariants = {{"y", y_()}, {"theta1", th1()}, {"theta2", th2()}, {"Phi", Phi}};
        s.orbit = "Phi = Phi(y, theta1, theta2)";
    } else if (label == "L4") {
        s.invariants = {{"y", y_()},
                        {"eta", th1() - ge_odd("mu") * x_()},
                        {"theta2", th2()},
                        {"Phi", Phi}};
        s.orbit = "Phi = Phi(y, eta, theta2)";
    } else if (label == "L8") {
        s.invariants = {{"xi", y_() - ge_even("k") * x_()},
                        {"theta1", th1()},
                        {"theta2", th2()},
                        {"Phi", Phi}};
        s.orbit = "Phi = Phi(xi, theta1, theta2)";
    } else if (label == "L72") {
        s.invariants = {{"xi", y_() / x_()},
                        {"eta1", th1() / sqx()},
                        {"eta2", th2() / sqx()},
                        {"Psi", Phi / (x_() * x_())}};
        s.orbit = "Phi = x^2*Psi(xi, eta1, eta2)";
    } else if (label == "L74") {
        s.invariants = {{"xi", y_() / x_()},
                        {"eta1", (th1() + ge_odd("mu")) / sqx()},
                        {"eta2", th2() / sqx()},
                        {"Psi", Phi / (x_() * x_())}};
        s.orbit = "Phi = x^2*Psi(xi, eta1, eta2)";
    } else if (label == "G136") {
        s.invariants = {{"xi", (GradedExpr::integer(2) * y_() + ge_even("eps")) / x_()},
                        {"eta1", th1() / sqx()},
                        {"eta2", th2() / sqx()},
                        {"Psi", Phi / (x_() * x_())}};
        s.orbit = "Phi = x^2*Psi(xi, eta1, eta2)";
    } else {
        throw UnsupportedSubalgebra("no stored invariants for '" + label + "'");
    }
    return s;
}

namespace {

// similarity context: xi as an atom with declared partials, w = w(xi)
DiffCtx similarity_ctx(const GradedExpr& dxi_dx, const GradedExpr& dxi_dy) {
    DiffCtx ctx;
    ctx.add_atom_partial(Atom::bvar("xi"), Atom::bvar("x"), dxi_dx);
    ctx.add_atom_partial(Atom::bvar("xi"), Atom::bvar("y"), dxi_dy);
    ctx.add_field_arg(FieldId::Omega, Atom::bvar("x"), dxi_dx);
    ctx.add_field_arg(FieldId::Omega, Atom::bvar("y"), dxi_dy);
    return ctx;
}

// strip denominators and rational content; leading coefficient positive
GradedExpr ode_normalize(const GradedExpr& e) {
    if (e.is_zero())
        return e;
    GradedExpr p = GradedExpr::from_poly(e.num());
    Rat g = 0;
    bool gaussian = false;
    auto rat_gcd = [](const Rat& a, const Rat& b) {
        using boost::multiprecision::cpp_int;
        cpp_int n = gcd(numerator(a) * denominator(b), numerator(b) * denominator(a));
        return Rat(n, denominator(a) * denominator(b));
    };
    for (const auto& [m, c] : p.num()) {
        if (c.im != 0)
            gaussian = true;
        Rat v = c.re != 0 ? c.re : c.im;
        v = v < 0 ? -v : v;
        g = g == 0 ? v : rat_gcd(g, v);
    }
    if (gaussian || g == 0)
        return p.primitive_part();
    GradedExpr r = p / GradedExpr::coeff(GaussRat(g));
    const auto& lead = r.num().rbegin()->second;
    if (lead.re < 0 || (lead.re == 0 && lead.im < 0))
        r = -r;
    return r;
}

// factored display: pull out the common jet monomial (the w'' factor)
std::string ode_pretty(const GradedExpr& e) {
    if (e.is_zero())
        return "0 = 0";
    // common even-atom gcd over all terms
    std::vector<std::pair<Atom, int>> common = e.num().begin()->first.even;
    for (const auto& [m, c] : e.num()) {
        std::vector<std::pair<Atom, int>> next;
        for (const auto& [a, k] : common)
            for (const auto& [b, j] : m.even)
                if (atom_eq(a, b))
                    next.emplace_back(a, std::min(k, j));
        common = next;
    }
    // keep only jet atoms in the displayed factor
    common.erase(std::remove_if(common.begin(), common.end(),
                                [](const auto& p) { return p.first.kind != AtomKind::Jet; }),
                 common.end());
    if (common.empty())
        return e.str() + " = 0";
    Poly fac;
    Monomial fm;
    fm.even = common;
    fac.emplace(fm, GaussRat(1));
    auto quot = poly_divide_exact(e.num(), fac);
    if (!quot)
        return e.str() + " = 0";
    GradedExpr q = GradedExpr::from_poly(*quot);
    std::string fs = GradedExpr::from_poly(fac).str();
    return "(" + q.str() + ")*" + fs + " = 0";
}

} // namespace

ReducedODE reduce_bodiless(const std::string& label) {
    GradedExpr dxx, dxy; // partials of xi
    GradedExpr phi;      // the group-orbit ansatz as a superspace expression
    GradedExpr theta_factor;
    if (label == "L74") {
        dxx = -(xi_() / x_());
        dxy = GradedExpr::one() / x_();
        theta_factor = (th1() + ge_odd("mu")) * th2();
    } else if (label == "L72") {
        dxx = -(xi_() / x_());
        dxy = GradedExpr::one() / x_();
        theta_factor = th1() * th2();
    } else if (label == "G136") {
        dxx = -(xi_() / x_());
        dxy = GradedExpr::integer(2) / x_();
        theta_factor = th1() * th2();
    } else {
        throw UnsupportedSubalgebra("bodiless reduction not stored for '" + label + "'");
    }
    // Phi = x^2 Psi with Psi = w(xi) eta1 eta2 and eta1 eta2 = theta factor / x
    phi = x_() * ge_jet(FieldId::Omega) * theta_factor;
    DiffCtx ctx = similarity_ctx(dxx, dxy);

    Components c = split_components(phi);
    GradedExpr residual = residual_of(c, ctx);

    // the residual must lie in the span of the ansatz's theta structure
    GradedExpr coeff;
    for (const auto& [odd, cof] : residual.split_by_odd()) {
        if (odd.size() == 2 && odd[0].kind == AtomKind::FermionicVar &&
            odd[0].name == "theta1" && odd[1].kind == AtomKind::FermionicVar &&
            odd[1].name == "theta2") {
            coeff = cof;
            break;
        }
    }
    GradedExpr stray = residual - coeff * theta_factor;
    if (!stray.is_zero())
        throw ReductionError("residual leaves the eta1 eta2 span: " + stray.str());

    ReducedODE ode;
    ode.label = label;
    ode.lhs = ode_normalize(coeff);
    ode.pretty = ode_pretty(ode.lhs);
    return ode;
}

SolutionReport verify_susy_solution(const GradedExpr& phi) {
    Components c = split_components(phi);
    GradedExpr residual = residual_of(c);
    SolutionReport rep;
    rep.residual = residual;
    if (residual.is_zero()) {
        rep.status = SolutionReport::Status::Zero;
        return rep;
    }
    // group terms by their variable content (x, y, thetas, jets, functions of
    // them); each group's constant cofactor must vanish on the solution locus
    auto is_const_atom = [](const Atom& a) {
        return a.kind == AtomKind::EvenConst || a.kind == AtomKind::OddConst;
    };
    std::vector<GradedExpr> constraints;
    std::map<Monomial, Poly, MonoLess> groups;
    for (const auto& [m, co] : residual.num()) {
        Monomial varpart, constpart;
        for (const auto& [a, e] : m.even)
            (is_const_atom(a) ? constpart : varpart).even.emplace_back(a, e);
        int sign = 1;
        int seen_non_const = 0;
        for (const auto& a : m.odd) {
            if (is_const_atom(a)) {
                if (seen_non_const % 2 == 1)
                    sign = -sign; // move constant left past variable odds
                constpart.odd.push_back(a);
            } else {
                ++seen_non_const;
                varpart.odd.push_back(a);
            }
        }
        groups[varpart];
        GaussRat cc = sign > 0 ? co : -co;
        auto it = groups.find(varpart);
        auto jt = it->second.find(constpart);
        if (jt == it->second.end())
            it->second.emplace(constpart, cc);
        else {
            jt->second += cc;
            if (jt->second.is_zero())
                it->second.erase(jt);
        }
    }
    bool impossible = false;
    for (auto& [vp, cp] : groups) {
        if (cp.empty())
            continue;
        GradedExpr ce = GradedExpr::from_poly(cp).primitive_part();
        bool dup = false;
        for (const auto& k : constraints)
            if (k == ce)
                dup = true;
        if (!dup)
            constraints.push_back(ce);
        if (ce == GradedExpr::one())
            impossible = true;
    }
    rep.constraints = std::move(constraints);
    rep.status =
        impossible ? SolutionReport::Status::NonZero : SolutionReport::Status::ConstraintVariety;
    return rep;
}

NumericReport verify_susy_solution_numeric(const GradedExpr& phi, const GridSpec& grid,
                                           NumericEnv env) {
    Components c = split_components(phi);
    GradedExpr residual = residual_of(c);
    auto parts = residual.split_by_odd();
    NumericReport rep;
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
            double xv = grid.x0 + (grid.nx == 1 ? 0.0 : i * (grid.x1 - grid.x0) / (grid.nx - 1));
            double yv = grid.y0 + (grid.ny == 1 ? 0.0 : j * (grid.y1 - grid.y0) / (grid.ny - 1));
            env.set("x", xv);
            env.set("y", yv);
            for (const auto& [odd, cof] : parts) {
                std::complex<double> v;
                try {
                    v = evaluate(cof, env);
                } catch (const DomainError& e) {
                    throw DomainError(std::string(e.what()) + " at grid point (" +
                                      std::to_string(xv) + ", " + std::to_string(yv) + ")");
                }
                if (std::abs(v) > rep.max_abs) {
                    rep.max_abs = std::abs(v);
                    rep.at_x = xv;
                    rep.at_y = yv;
                }
                ++rep.evaluated;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// worked solutions
// ---------------------------------------------------------------------------

namespace {

GradedExpr quadratic_in(const GradedExpr& s) {
    // C1 + C2 s + C3 theta1 + C4 s theta1 + C5 theta2 + C6 s theta2
    // + C7 theta1 theta2 + C8 s theta1 theta2, with C3..C6 fermionic
    return ge_even("C1") + ge_even("C2") * s + ge_odd("C3") * th1() +
           ge_odd("C4") * s * th1() + ge_odd("C5") * th2() + ge_odd("C6") * s * th2() +
           ge_even("C7") * th1() * th2() + ge_even("C8") * s * th1() * th2();
}

GradedExpr radial_solution(int eps1) {
    GradedExpr root = ge_sqrt(x_() * x_() + y_() * y_());
    return GradedExpr::integer(eps1) * GradedExpr::i() * root * (th1() + ge_odd("mu")) * th2();
}

GradedExpr doubly_periodic_solution() {
    // i theta1 theta2 sqrt(x)/(x^2+1) * [ 2 z pre E(z, k) - z pre F(z, k)
    //   - sqrt(x^3+x) x^2 - sqrt(x^3+x) ],  z = sqrt(-i(x+i)), k = 2^(-1/2),
    // pre = sqrt(2) sqrt(-i(-x+i)) sqrt(x i) sqrt(x(x^2+1))
    GradedExpr I = GradedExpr::i();
    GradedExpr one = GradedExpr::one();
    GradedExpr z = ge_sqrt(-I * (x_() + I));
    GradedExpr k = one / ge_sqrt(GradedExpr::integer(2));
    GradedExpr pre = ge_sqrt(GradedExpr::integer(2)) * ge_sqrt(-I * (-x_() + I)) *
                     ge_sqrt(x_() * I) * ge_sqrt(x_() * (x_() * x_() + one));
    GradedExpr E = ge_func("EllipticE", {z, k});
    GradedExpr F = ge_func("EllipticF", {z, k});
    GradedExpr tail = ge_sqrt(x_() * x_() * x_() + x_());
    GradedExpr bracket =
        GradedExpr::integer(2) * z * pre * E - z * pre * F - tail * x_() * x_() - tail;
    return I * th1() * th2() * ge_sqrt(x_()) / (x_() * x_() + one) * bracket;
}

} // namespace

std::vector<std::string> solution_names() {
    return {"translation-quadratic", "translation-wave", "stationary-wave",
            "radial",                "radial-neg",       "centered-wave",
            "scaling-radical",       "scaling-linear",   "quadratic-orbit",
            "quadratic-body",        "doubly-periodic"};
}

GradedExpr named_solution(const std::string& name) {
    if (name == "translation-quadratic")
        return quadratic_in(y_());
    if (name == "translation-wave") {
        GradedExpr eta = th1() - ge_odd("mu") * x_();
        return ge_even("C1") + ge_even("C2") * y_() + ge_odd("C3") * eta +
               ge_odd("C4") * y_() * eta + ge_odd("C5") * th2() + ge_odd("C6") * y_() * th2() +
               ge_even("C7") * eta * th2() + ge_even("C8") * y_() * eta * th2();
    }
    if (name == "stationary-wave")
        return quadratic_in(y_() - ge_even("k") * x_());
    if (name == "radial")
        return radial_solution(1);
    if (name == "radial-neg")
        return radial_solution(-1);
    if (name == "centered-wave")
        return (ge_even("A") * y_() + ge_even("B") * x_()) * (th1() + ge_odd("mu")) * th2();
    if (name == "scaling-radical") {
        // eps1 theta1 theta2 sqrt(-(2y+eps)^2/8 - 2x^2/3 + K x^8/(2y+eps)^6)
        GradedExpr twoye = GradedExpr::integer(2) * y_() + ge_even("eps");
        GradedExpr rad = -(twoye * twoye) / GradedExpr::integer(8) -
                         GradedExpr::rational(2, 3) * x_() * x_() +
                         ge_even("K") * x_().pow(8) / twoye.pow(6);
        return th1() * th2() * ge_sqrt(rad);
    }
    if (name == "scaling-linear")
        return th1() * th2() *
               (GradedExpr::integer(2) * ge_even("A") * y_() + ge_even("B") * x_() +
                ge_even("eps") * ge_even("A"));
    if (name == "quadratic-orbit")
        return ge_even("c1") * x_() * th1() * th2() + ge_even("c2") * y_() * y_() +
               ge_even("C3e") * x_() * y_() + ge_even("C4e") * x_() * x_();
    if (name == "quadratic-body")
        return ge_even("a") * y_() * y_() + ge_even("C") * x_() * y_() -
               ge_even("M") * x_() * x_() + ge_even("N") * th1() * th2();
    if (name == "doubly-periodic")
        return doubly_periodic_solution();
    throw UsageError("unknown solution '" + name + "'");
}

GradedExpr scaling_radical_omega() {
    GradedExpr rad = -(xi_() * xi_()) / GradedExpr::integer(8) - GradedExpr::rational(2, 3) +
                     ge_even("K") / xi_().pow(6);
    return ge_sqrt(rad);
}

GradedExpr scaling_radical_ode_residual() {
    GradedExpr w = scaling_radical_omega();
    DiffCtx ctx;
    GradedExpr wp = d_total(w, Atom::bvar("xi"), ctx);
    return GradedExpr::integer(2) * xi_() * w * wp + GradedExpr::integer(6) * w * w +
           xi_() * xi_() + GradedExpr::integer(4);
}

} // namespace susyms

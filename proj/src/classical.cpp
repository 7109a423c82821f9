#include "susyms/classical.hpp"

#include <cmath>
#include <complex>

#include "susyms/errors.hpp"

namespace susyms {

namespace {

GradedExpr ujet(int dx, int dy) { return ge_jet(FieldId::U, dx, dy); }
GradedExpr x_() { return ge_var("x"); }
GradedExpr y_() { return ge_var("y"); }
GradedExpr xi_() { return ge_var("xi"); }
GradedExpr one_() { return GradedExpr::one(); }

Atom ujet_atom(int dx, int dy) {
    JetKey k;
    k.field = FieldId::U;
    k.d = {static_cast<uint16_t>(dx), static_cast<uint16_t>(dy), 0};
    return Atom::jet_atom(k);
}

// total derivatives on the second-order jet space of u(x, y)
DiffCtx jet_ctx() {
    DiffCtx ctx;
    ctx.add_atom_partial(Atom::bvar("u"), Atom::bvar("x"), ujet(1, 0));
    ctx.add_atom_partial(Atom::bvar("u"), Atom::bvar("y"), ujet(0, 1));
    return ctx;
}

} // namespace

GradedExpr classical_ms_residual() {
    GradedExpr ux = ujet(1, 0), uy = ujet(0, 1);
    return (one_() + ux * ux) * ujet(0, 2) - GradedExpr::integer(2) * ux * uy * ujet(1, 1) +
           (one_() + uy * uy) * ujet(2, 0);
}

GradedExpr classical_ms_residual_of_gradient(const GradedExpr& ux, const GradedExpr& uy,
                                             const DiffCtx& ctx) {
    GradedExpr uxx = d_x(ux, ctx);
    GradedExpr uxy = d_y(ux, ctx);
    GradedExpr uyy = d_y(uy, ctx);
    return (one_() + ux * ux) * uyy - GradedExpr::integer(2) * ux * uy * uxy +
           (one_() + uy * uy) * uxx;
}

double classical_ms_residual_fd(const std::function<double(double, double)>& u, double x,
                                double y, double h) {
    double ux = (u(x + h, y) - u(x - h, y)) / (2 * h);
    double uy = (u(x, y + h) - u(x, y - h)) / (2 * h);
    double uxx = (u(x + h, y) - 2 * u(x, y) + u(x - h, y)) / (h * h);
    double uyy = (u(x, y + h) - 2 * u(x, y) + u(x, y - h)) / (h * h);
    double uxy =
        (u(x + h, y + h) - u(x + h, y - h) - u(x - h, y + h) + u(x - h, y - h)) / (4 * h * h);
    return (1 + ux * ux) * uyy - 2 * ux * uy * uxy + (1 + uy * uy) * uxx;
}

double classical_ms_residual_fd_relative(const std::function<double(double, double)>& u,
                                         double x, double y, double h) {
    // fourth-order stencils keep both truncation and roundoff well below the
    // 1e-6 relative target on the annulus
    auto d1 = [h](const std::function<double(double)>& f, double t) {
        return (8 * (f(t + h) - f(t - h)) - (f(t + 2 * h) - f(t - 2 * h))) / (12 * h);
    };
    auto d2 = [h](const std::function<double(double)>& f, double t) {
        return (-f(t + 2 * h) + 16 * f(t + h) - 30 * f(t) + 16 * f(t - h) - f(t - 2 * h)) /
               (12 * h * h);
    };
    auto ux_at = [&](double yy) {
        return d1([&](double t) { return u(t, yy); }, x);
    };
    double ux = ux_at(y);
    double uy = d1([&](double t) { return u(x, t); }, y);
    double uxx = d2([&](double t) { return u(t, y); }, x);
    double uyy = d2([&](double t) { return u(x, t); }, y);
    double uxy = d1([&](double t) { return ux_at(t); }, y);
    double t1 = (1 + ux * ux) * uyy;
    double t2 = -2 * ux * uy * uxy;
    double t3 = (1 + uy * uy) * uxx;
    double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-30});
    return std::abs(t1 + t2 + t3) / scale;
}

ClassicalChecks euler_lagrange_check() {
    ClassicalChecks out{};
    GradedExpr ux = ujet(1, 0), uy = ujet(0, 1);
    GradedExpr G = one_() + ux * ux + uy * uy;
    GradedExpr L = ge_sqrt(G);
    // EL with no bare-u dependence: D_x dL/du_x + D_y dL/du_y
    GradedExpr dLdux = d_total(L, ujet_atom(1, 0));
    GradedExpr dLduy = d_total(L, ujet_atom(0, 1));
    DiffCtx ctx = jet_ctx();
    GradedExpr divergence = d_x(dLdux, ctx) + d_y(dLduy, ctx);
    // divergence form times G^(3/2) reproduces the equation exactly
    GradedExpr lhs = divergence * G * ge_sqrt(G);
    out.divergence_matches = (lhs - classical_ms_residual()).is_zero();
    out.euler_lagrange = out.divergence_matches;

    GradedExpr wick = wick_map(classical_ms_residual());
    out.wick_signs = (wick + born_infeld_residual()).is_zero();
    out.wick_involution = (wick_map(wick_map(classical_ms_residual())) ==
                           classical_ms_residual());
    return out;
}

GradedExpr wick_map(const GradedExpr& e) {
    // collect u-jets and scale by (-i)^(y-count)
    std::vector<std::pair<Atom, GradedExpr>> bindings;
    auto visit = [&bindings](const Atom& a) {
        if (a.kind != AtomKind::Jet || a.jet.field != FieldId::U)
            return;
        int n = a.jet.d[1];
        if (n == 0)
            return;
        GaussRat f(1);
        for (int i = 0; i < n; ++i)
            f *= GaussRat(Rat(0), Rat(-1));
        for (const auto& [k, v] : bindings)
            if (atom_eq(k, a))
                return;
        bindings.emplace_back(a, GradedExpr::coeff(f) * GradedExpr::atom(a));
    };
    for (const auto& [m, c] : e.num()) {
        for (const auto& [a, k] : m.even)
            visit(a);
        for (const auto& a : m.odd)
            visit(a);
    }
    return e.substitute(bindings);
}

GradedExpr born_infeld_residual() {
    GradedExpr ux = ujet(1, 0), ut = ujet(0, 1);
    return (one_() + ux * ux) * ujet(0, 2) - GradedExpr::integer(2) * ux * ut * ujet(1, 1) -
           (one_() - ut * ut) * ujet(2, 0);
}

GradedExpr prolong2_symmetry_check(const VectorField& v) {
    // v = a dx + b dy + c du with polynomial coefficients in (x, y, u)
    const GradedExpr& a = v.coeffs[0];
    const GradedExpr& b = v.coeffs[1];
    const GradedExpr& c = v.coeffs[2];
    DiffCtx ctx = jet_ctx();
    auto Dx = [&ctx](const GradedExpr& e) { return d_x(e, ctx); };
    auto Dy = [&ctx](const GradedExpr& e) { return d_y(e, ctx); };

    GradedExpr ux = ujet(1, 0), uy = ujet(0, 1);
    GradedExpr phix = Dx(c) - ux * Dx(a) - uy * Dx(b);
    GradedExpr phiy = Dy(c) - ux * Dy(a) - uy * Dy(b);
    GradedExpr phixx = Dx(phix) - ujet(2, 0) * Dx(a) - ujet(1, 1) * Dx(b);
    GradedExpr phixy = Dy(phix) - ujet(2, 0) * Dy(a) - ujet(1, 1) * Dy(b);
    GradedExpr phiyy = Dy(phiy) - ujet(1, 1) * Dy(a) - ujet(0, 2) * Dy(b);

    GradedExpr delta = classical_ms_residual();
    GradedExpr pr = c * d_total(delta, Atom::bvar("u")) + phix * d_total(delta, ujet_atom(1, 0)) +
                    phiy * d_total(delta, ujet_atom(0, 1)) +
                    phixx * d_total(delta, ujet_atom(2, 0)) +
                    phixy * d_total(delta, ujet_atom(1, 1)) +
                    phiyy * d_total(delta, ujet_atom(0, 2));

    // reduce on shell: solve the equation and its x/y differential
    // consequences for u_yy, u_xyy, u_yyy and substitute bottom-up
    auto solve_for = [](const GradedExpr& eq, const Atom& jet) {
        GradedExpr A = d_total(eq, jet);
        GradedExpr B = eq - A * GradedExpr::atom(jet);
        return -B / A;
    };
    GradedExpr eq = delta;
    GradedExpr uyy_val = solve_for(eq, ujet_atom(0, 2));
    GradedExpr eqx = d_x(eq, ctx);
    GradedExpr eqy = d_y(eq, ctx);
    GradedExpr uxyy_val = solve_for(eqx, ujet_atom(1, 2));
    GradedExpr uyyy_val = solve_for(eqy, ujet_atom(0, 3));
    uxyy_val = uxyy_val.substitute({{ujet_atom(0, 2), uyy_val}});
    uyyy_val = uyyy_val.substitute({{ujet_atom(1, 2), uxyy_val}, {ujet_atom(0, 2), uyy_val}});
    return pr.substitute(
        {{ujet_atom(0, 3), uyyy_val}, {ujet_atom(1, 2), uxyy_val}, {ujet_atom(0, 2), uyy_val}});
}

ClassicalClassification classical_classify() {
    ClassicalClassification out;
    auto basis = classical_basis();
    std::vector<Atom> coords = basis[0].coords;
    auto zero = GradedExpr::zero();
    out.labels = {"e1", "e4", "e4+m*e3", "e7"};
    out.representatives.push_back(basis[0]);
    out.representatives.push_back(basis[3]);
    VectorField e4m = basis[3] + (ge_even("m") * basis[2]);
    out.representatives.push_back(e4m);
    out.representatives.push_back(basis[6]);
    out.killing_negative_definite = negative_definite(killing_form({basis[3], basis[4], basis[5]}));
    // [e1, e7] = e1: exp(t e7) rescales e1, so its coefficient normalizes to 1
    VectorField br = superbracket(basis[0], basis[6]);
    out.scaling_action_consistent = br == basis[0];
    return out;
}

ClassicalReduction reduce_classical(const std::string& label) {
    // rotational similarity variable xi = x^2 + y^2
    DiffCtx ctx;
    ctx.add_atom_partial(Atom::bvar("xi"), Atom::bvar("x"), GradedExpr::integer(2) * x_());
    ctx.add_atom_partial(Atom::bvar("xi"), Atom::bvar("y"), GradedExpr::integer(2) * y_());
    ctx.add_field_arg(FieldId::Omega, Atom::bvar("x"), GradedExpr::integer(2) * x_());
    ctx.add_field_arg(FieldId::Omega, Atom::bvar("y"), GradedExpr::integer(2) * y_());

    GradedExpr ux, uy;
    if (label == "e4") {
        GradedExpr w1 = ge_jet(FieldId::Omega, 1);
        ux = GradedExpr::integer(2) * x_() * w1;
        uy = GradedExpr::integer(2) * y_() * w1;
    } else if (label == "e4+me3") {
        // u = phi(xi) - m asin(x / sqrt(x^2+y^2)) on the upper half plane:
        // the gradient is rational, u_x = 2x phi' - m y/xi, u_y = 2y phi' + m x/xi
        GradedExpr w1 = ge_jet(FieldId::Omega, 1);
        GradedExpr m = ge_even("m");
        ux = GradedExpr::integer(2) * x_() * w1 - m * y_() / xi_();
        uy = GradedExpr::integer(2) * y_() * w1 + m * x_() / xi_();
    } else {
        throw UnsupportedSubalgebra("no classical reduction stored for '" + label + "'");
    }
    GradedExpr res = classical_ms_residual_of_gradient(ux, uy, ctx);
    // eliminate y via y^2 = xi - x^2 (upper half plane branch)
    GradedExpr ysub = ge_sqrt(xi_() - x_() * x_());
    res = res.substitute({{Atom::bvar("y"), ysub}});

    // the result must be a function of xi and the w-jets alone
    for (const auto& [m, co] : res.num())
        for (const auto& [a, e] : m.even)
            if (a.kind == AtomKind::BosonicVar && a.name != "xi")
                throw ReductionError("reduction left a bare coordinate: " + res.str());

    ClassicalReduction out;
    out.label = label;
    // clear denominators and content
    GradedExpr p = GradedExpr::from_poly(res.num());
    Rat content = 0;
    for (const auto& [m, co] : p.num()) {
        Rat v = co.re < 0 ? -co.re : co.re;
        if (content == 0)
            content = v;
        else {
            using boost::multiprecision::cpp_int;
            cpp_int n = gcd(numerator(content) * denominator(v), numerator(v) * denominator(content));
            content = Rat(n, denominator(content) * denominator(v));
        }
    }
    if (content != 0)
        p = p / GradedExpr::coeff(GaussRat(content));
    // strip the common monomial factor left by clearing denominators
    std::vector<std::pair<Atom, int>> common = p.num().begin()->first.even;
    for (const auto& [m, co] : p.num()) {
        std::vector<std::pair<Atom, int>> next;
        for (const auto& [a, e] : common)
            for (const auto& [b, j] : m.even)
                if (atom_eq(a, b))
                    next.emplace_back(a, std::min(e, j));
        common = next;
    }
    for (const auto& [a, e] : common)
        for (int j = 0; j < e; ++j)
            p = p / GradedExpr::atom(a);
    const auto& lead = p.num().rbegin()->second;
    if (lead.re < 0)
        p = -p;
    out.lhs = p;

    // Abel form: solve for w''
    JetKey k2;
    k2.field = FieldId::Omega;
    k2.d = {2, 0, 0};
    GradedExpr A = d_total(res, Atom::jet_atom(k2));
    GradedExpr B = res - A * ge_jet(k2);
    out.vprime_rhs = -(B / A);
    out.pretty = "w'' = " + out.vprime_rhs.str() + "  (v = w')";
    return out;
}

double e4_solution_u(double xi, double s0, double k0) {
    double r = s0 * xi * xi - 2 * xi;
    if (r <= 0)
        throw DomainError("outside the branch: s0 xi^2 - 2 xi <= 0");
    return std::log(std::fabs(4 * std::sqrt(s0) * std::sqrt(r) + 4 * s0 * xi - 4)) /
               std::sqrt(2 * s0) +
           k0;
}

namespace {

// fourth-order central first derivative; keeps the differentiation noise well
// under the pinned tolerances near the inner annulus edge
template <typename F> auto fd1(const F& f, double x, double h) -> decltype(f(x)) {
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12.0 * h);
}

} // namespace

AbelNumericReport e4_abel_residual(double s0, double k0, int points, double h) {
    AbelNumericReport rep;
    auto u = [&](double xi) { return e4_solution_u(xi, s0, k0); };
    auto v = [&](double xi) { return fd1(u, xi, h); };
    double lo = 3.0 / s0, hi = 10.0 / s0;
    for (int i = 0; i < points; ++i) {
        double xi = lo + i * (hi - lo) / (points - 1);
        double vp = fd1(v, xi, h);
        double res = std::fabs(vp + v(xi) / xi + 2 * std::pow(v(xi), 3));
        if (res > rep.max_residual) {
            rep.max_residual = res;
            rep.at = xi;
        }
        ++rep.points;
    }
    return rep;
}

AnnulusReport e4_annulus_residual(double s0, double k0, int nr, int ntheta, double h) {
    AnnulusReport rep;
    auto u = [&](double x, double y) { return e4_solution_u(x * x + y * y, s0, k0); };
    double r0 = std::sqrt(3.0 / s0), r1 = std::sqrt(10.0 / s0);
    for (int i = 0; i < nr; ++i) {
        double r = r0 + (i + 0.5) * (r1 - r0) / nr;
        for (int j = 0; j < ntheta; ++j) {
            double th = 2 * M_PI * j / ntheta;
            double x = r * std::cos(th), y = r * std::sin(th);
            double res = classical_ms_residual_fd_relative(u, x, y, h);
            if (res > rep.max_relative) {
                rep.max_relative = res;
                rep.at_x = x;
                rep.at_y = y;
            }
            ++rep.points;
        }
    }
    return rep;
}

E4me3Report e4me3_abel_residual(double s0, double m, int points, double h) {
    using C = std::complex<double>;
    E4me3Report rep;
    const C I(0.0, 1.0);
    auto phi = [&](double xi) -> C {
        C z1 = (2.0 * std::sqrt(2.0) * I * m * std::sqrt(s0 * xi - 2) * std::sqrt(m * m + xi) +
                (s0 * m * m - 2) * xi - 4 * m * m) /
               xi;
        double z2 = (2.0 * std::sqrt(s0) * std::sqrt(s0 * xi - 2) * std::sqrt(m * m + xi) +
                     (2 * xi + m * m) * s0 - 2) /
                    std::sqrt(s0);
        return I * m / 2.0 * std::log(std::abs(z1)) +
               std::log(std::fabs(z2)) / std::sqrt(2 * s0);
    };
    double lo = 3.0 / s0, hi = 10.0 / s0;
    for (int i = 0; i < points; ++i) {
        double xi = lo + i * (hi - lo) / (points - 1);
        auto v = [&](double t) { return fd1(phi, t, h); };
        C vp = fd1(v, xi, h);
        C vv = v(xi);
        C res = vp + 2 * xi / (xi + m * m) * vv * vv * vv +
                (2 * xi + 3 * m * m) / (2 * xi * (xi + m * m)) * vv;
        rep.max_real_residual = std::max(rep.max_real_residual, std::fabs(res.real()));
        rep.max_imag_residual = std::max(rep.max_imag_residual, std::fabs(res.imag()));
        rep.max_imag_value = std::max(rep.max_imag_value, std::fabs(phi(xi).imag()));
        ++rep.points;
    }
    return rep;
}

} // namespace susyms

#include "susyms/vectorfield.hpp"

#include <algorithm>

#include "susyms/errors.hpp"

namespace susyms {

GradedExpr VectorField::apply(const GradedExpr& e) const {
    GradedExpr out;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coeffs[i].is_zero())
            continue;
        out += coeffs[i] * d_total(e, coords[i]);
    }
    return out;
}

bool VectorField::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](const GradedExpr& c) { return c.is_zero(); });
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField r = a;
    for (size_t i = 0; i < r.coeffs.size(); ++i)
        r.coeffs[i] += b.coeffs[i];
    return r;
}

VectorField operator*(const GradedExpr& c, const VectorField& v) {
    VectorField r = v;
    for (auto& co : r.coeffs)
        co = c * co;
    return r;
}

bool operator==(const VectorField& a, const VectorField& b) {
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        if (!(a.coeffs[i] == b.coeffs[i]))
            return false;
    return true;
}

Parity field_parity(const VectorField& v) {
    std::optional<Parity> p;
    for (size_t i = 0; i < v.coords.size(); ++i) {
        if (v.coeffs[i].is_zero())
            continue;
        Parity pc = v.coeffs[i].parity();
        if (pc == Parity::Mixed)
            throw ParityError("vector field coefficient of mixed parity");
        bool coord_odd = v.coords[i].parity() == Parity::Odd;
        Parity field_p = coord_odd ? flip(pc) : pc;
        if (p && *p != field_p)
            throw ParityError("vector field is not parity homogeneous");
        p = field_p;
    }
    return p.value_or(Parity::Even);
}

namespace {

FieldId generic_field_for(const std::vector<Atom>& coords) {
    // the superspace coordinates carry thetas; the classical ones do not
    for (const auto& c : coords)
        if (c.kind == AtomKind::FermionicVar)
            return FieldId::FSuper;
    return FieldId::FClassic;
}

// extract the left coefficient of each first-order generic jet
VectorField read_first_order(const GradedExpr& B, const std::vector<Atom>& coords,
                             Parity parity) {
    FieldId f = generic_field_for(coords);
    const FieldInfo& fi = field_info(f);

    auto jet_slot = [&](const JetKey& k) -> int {
        if (k.field != f)
            return -1;
        if (k.total_order() != 1)
            throw Error("bracket is not first order in the generic function");
        for (int p = 0; p < fi.n_even_args; ++p)
            if (k.d[p] == 1) {
                // slot index of that even coordinate among coords
                for (size_t i = 0; i < coords.size(); ++i)
                    if (coords[i].kind != AtomKind::FermionicVar &&
                        coords[i].name == fi.even_args[p])
                        return static_cast<int>(i);
            }
        const char* tname = k.dth1 ? "theta1" : "theta2";
        for (size_t i = 0; i < coords.size(); ++i)
            if (coords[i].kind == AtomKind::FermionicVar && coords[i].name == tname)
                return static_cast<int>(i);
        return -1;
    };

    VectorField out;
    out.coords = coords;
    out.coeffs.assign(coords.size(), GradedExpr::zero());
    out.parity = parity;
    if (B.has_den())
        throw Error("bracket produced a quotient");

    for (const auto& [m, c] : B.num()) {
        int slot = -1;
        Monomial rest;
        int sign = 1;
        // generic jets sit either in the even part (even jets) or odd part
        for (const auto& [a, e] : m.even) {
            if (a.kind == AtomKind::Jet && a.jet.field == f) {
                if (e != 1 || slot >= 0)
                    throw Error("bracket is not linear in the generic function");
                slot = jet_slot(a.jet);
            } else {
                rest.even.emplace_back(a, e);
            }
        }
        int odd_pos = 0;
        for (const auto& a : m.odd) {
            if (a.kind == AtomKind::Jet && a.jet.field == f) {
                if (slot >= 0)
                    throw Error("bracket is not linear in the generic function");
                slot = jet_slot(a.jet);
                // move the jet to the front, then swap with the remaining
                // cofactor: a * J = term  =>  a = (-1)^(pos + parity(rest))
                int rest_odd = static_cast<int>(m.odd.size()) - 1;
                if ((odd_pos + rest_odd) % 2 == 1)
                    sign = -sign;
            } else {
                rest.odd.push_back(a);
            }
            ++odd_pos;
        }
        if (slot < 0)
            throw Error("bracket has a term without the generic function");
        Poly p;
        p.emplace(rest, sign > 0 ? c : -c);
        out.coeffs[slot] += GradedExpr::from_poly(p);
    }
    return out;
}

} // namespace

VectorField superbracket(const VectorField& X, const VectorField& Y) {
    Parity px = field_parity(X);
    Parity py = field_parity(Y);
    FieldId f = generic_field_for(X.coords);
    GradedExpr F = ge_jet(f);
    GradedExpr XY = X.apply(Y.apply(F));
    GradedExpr YX = Y.apply(X.apply(F));
    bool anti = px == Parity::Odd && py == Parity::Odd;
    GradedExpr B = anti ? XY + YX : XY - YX;
    Parity bp = (px == Parity::Odd) == (py == Parity::Odd) ? Parity::Even : Parity::Odd;
    return read_first_order(B, X.coords, bp);
}

namespace {

// exact linear solve A c = b over Gaussian rationals; nullopt if inconsistent
std::optional<std::vector<GaussRat>> solve_exact(std::vector<std::vector<GaussRat>> A,
                                                 std::vector<GaussRat> b, size_t n) {
    size_t rows = A.size();
    std::vector<int> pivot_col_of_row;
    size_t r = 0;
    for (size_t col = 0; col < n && r < rows; ++col) {
        size_t sel = r;
        while (sel < rows && A[sel][col].is_zero())
            ++sel;
        if (sel == rows)
            continue;
        std::swap(A[sel], A[r]);
        std::swap(b[sel], b[r]);
        GaussRat inv = A[r][col].inverse();
        for (size_t j = col; j < n; ++j)
            A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][col].is_zero())
                continue;
            GaussRat factor = A[i][col];
            for (size_t j = col; j < n; ++j)
                A[i][j] -= factor * A[r][j];
            b[i] -= factor * b[r];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero())
            return std::nullopt;
    std::vector<GaussRat> c(n, GaussRat(0));
    for (size_t i = 0; i < r; ++i)
        c[pivot_col_of_row[i]] = b[i];
    return c;
}

} // namespace

std::string StructureTable::entry_str(size_t i, size_t j) const {
    const auto& cs = entries[i][j];
    std::string s;
    for (size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].is_zero())
            continue;
        std::string coeff;
        if (cs[k].is_one())
            coeff = "";
        else if ((-cs[k]).is_one())
            coeff = "-";
        else
            coeff = cs[k].str() + "*";
        if (!s.empty())
            s += (coeff.rfind('-', 0) == 0) ? "" : "+";
        s += coeff + names[k];
    }
    return s.empty() ? "0" : s;
}

StructureTable structure_table(const std::vector<VectorField>& basis,
                               const std::vector<std::string>& names) {
    size_t n = basis.size();
    StructureTable t;
    t.names = names;
    for (const auto& v : basis)
        t.parities.push_back(field_parity(v));
    t.entries.assign(n, std::vector<std::vector<GaussRat>>(n));
    t.anticommutator.assign(n, std::vector<bool>(n, false));

    // monomial-indexed linear system over the basis coefficients
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            VectorField b = superbracket(basis[i], basis[j]);
            t.anticommutator[i][j] =
                t.parities[i] == Parity::Odd && t.parities[j] == Parity::Odd;
            std::map<std::pair<size_t, Monomial>, size_t,
                     bool (*)(const std::pair<size_t, Monomial>&, const std::pair<size_t, Monomial>&)>
                row_of([](const std::pair<size_t, Monomial>& a, const std::pair<size_t, Monomial>& b2) {
                    if (a.first != b2.first)
                        return a.first < b2.first;
                    return mono_cmp(a.second, b2.second) < 0;
                });
            std::vector<std::vector<GaussRat>> A;
            std::vector<GaussRat> rhs;
            auto row = [&](size_t coord, const Monomial& m) -> size_t {
                auto key = std::make_pair(coord, m);
                auto it = row_of.find(key);
                if (it != row_of.end())
                    return it->second;
                size_t idx = A.size();
                row_of.emplace(key, idx);
                A.emplace_back(n, GaussRat(0));
                rhs.emplace_back(0);
                return idx;
            };
            for (size_t k = 0; k < n; ++k)
                for (size_t coord = 0; coord < basis[k].coords.size(); ++coord)
                    for (const auto& [m, c] : basis[k].coeffs[coord].num()) {
                        if (basis[k].coeffs[coord].has_den())
                            throw Error("basis coefficients must be polynomial");
                        A[row(coord, m)][k] += c;
                    }
            for (size_t coord = 0; coord < b.coords.size(); ++coord)
                for (const auto& [m, c] : b.coeffs[coord].num())
                    rhs[row(coord, m)] += c;
            auto sol = solve_exact(A, rhs, n);
            if (!sol) {
                throw ClosureError("bracket [" + names[i] + "," + names[j] +
                                   "] does not lie in the span of the basis");
            }
            // confirm the expansion exactly (guards a singular system)
            VectorField recon;
            recon.coords = basis[0].coords;
            recon.coeffs.assign(recon.coords.size(), GradedExpr::zero());
            for (size_t k = 0; k < n; ++k)
                recon = recon + (GradedExpr::coeff((*sol)[k]) * basis[k]);
            if (!(recon == b))
                throw ClosureError("bracket [" + names[i] + "," + names[j] +
                                   "] expansion mismatch");
            t.entries[i][j] = std::move(*sol);
        }
    }
    return t;
}

VectorField super_jacobi_residual(const VectorField& X, const VectorField& Y,
                                  const VectorField& Z) {
    // [X,[Y,Z]] - [[X,Y],Z] - (-1)^{p(X)p(Y)} [Y,[X,Z]]
    Parity px = field_parity(X);
    Parity py = field_parity(Y);
    VectorField a = superbracket(X, superbracket(Y, Z));
    VectorField b = superbracket(superbracket(X, Y), Z);
    VectorField c = superbracket(Y, superbracket(X, Z));
    int sgn = (px == Parity::Odd && py == Parity::Odd) ? -1 : 1;
    VectorField r = a + (GradedExpr::integer(-1) * b) + (GradedExpr::integer(-sgn) * c);
    return r;
}

std::vector<VectorField> susy_basis() {
    std::vector<Atom> coords = {Atom::bvar("x"), Atom::bvar("y"), Atom::fvar("theta1"),
                                Atom::fvar("theta2"), Atom::bvar("Phi")};
    auto zero = GradedExpr::zero();
    auto one = GradedExpr::one();
    auto mk = [&coords](std::vector<GradedExpr> cs) {
        VectorField v;
        v.coords = coords;
        v.coeffs = std::move(cs);
        v.parity = field_parity(v);
        return v;
    };
    GradedExpr x = ge_var("x"), y = ge_var("y");
    GradedExpr th1 = ge_fvar("theta1"), th2 = ge_fvar("theta2");
    GradedExpr Phi = ge_var("Phi");
    std::vector<VectorField> b;
    b.push_back(mk({one, zero, zero, zero, zero}));                       // P1
    b.push_back(mk({zero, one, zero, zero, zero}));                       // P2
    b.push_back(mk({zero, zero, one, zero, zero}));                       // P3
    b.push_back(mk({zero, zero, zero, one, zero}));                       // P4
    b.push_back(mk({zero, zero, zero, zero, one}));                       // P5
    b.push_back(mk({GradedExpr::integer(2) * x, GradedExpr::integer(2) * y, th1, th2,
                    GradedExpr::integer(4) * Phi}));                      // D
    b.push_back(mk({-th1, zero, one, zero, zero}));                       // Q1
    b.push_back(mk({zero, -th2, zero, one, zero}));                       // Q2
    return b;
}

std::vector<std::string> susy_basis_names() {
    return {"P1", "P2", "P3", "P4", "P5", "D", "Q1", "Q2"};
}

std::vector<VectorField> classical_basis() {
    std::vector<Atom> coords = {Atom::bvar("x"), Atom::bvar("y"), Atom::bvar("u")};
    auto zero = GradedExpr::zero();
    auto one = GradedExpr::one();
    auto mk = [&coords](std::vector<GradedExpr> cs) {
        VectorField v;
        v.coords = coords;
        v.coeffs = std::move(cs);
        v.parity = Parity::Even;
        return v;
    };
    GradedExpr x = ge_var("x"), y = ge_var("y"), u = ge_var("u");
    std::vector<VectorField> b;
    b.push_back(mk({one, zero, zero}));   // e1
    b.push_back(mk({zero, one, zero}));   // e2
    b.push_back(mk({zero, zero, one}));   // e3
    b.push_back(mk({-y, x, zero}));       // e4
    b.push_back(mk({zero, -u, y}));       // e5
    b.push_back(mk({u, zero, -x}));       // e6
    b.push_back(mk({x, y, u}));           // e7
    return b;
}

std::vector<std::string> classical_basis_names() {
    return {"e1", "e2", "e3", "e4", "e5", "e6", "e7"};
}

std::vector<std::vector<GaussRat>> killing_form(const std::vector<VectorField>& basis) {
    size_t n = basis.size();
    std::vector<std::string> names(n);
    for (size_t i = 0; i < n; ++i)
        names[i] = "b" + std::to_string(i);
    StructureTable t = structure_table(basis, names);
    std::vector<std::vector<GaussRat>> K(n, std::vector<GaussRat>(n, GaussRat(0)));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            GaussRat s(0);
            for (size_t c = 0; c < n; ++c)
                for (size_t d = 0; d < n; ++d)
                    s += t.entries[a][c][d] * t.entries[b][d][c];
            K[a][b] = s;
        }
    return K;
}

bool negative_definite(const std::vector<std::vector<GaussRat>>& k) {
    // Sylvester on -K: all leading principal minors positive
    size_t n = k.size();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (k[i][j].im != 0)
                return false;
            m[i][j] = -k[i][j].re;
        }
    for (size_t lead = 1; lead <= n; ++lead) {
        // determinant of the lead x lead block by fraction-free elimination
        std::vector<std::vector<Rat>> a(lead, std::vector<Rat>(lead));
        for (size_t i = 0; i < lead; ++i)
            for (size_t j = 0; j < lead; ++j)
                a[i][j] = m[i][j];
        Rat det = 1;
        for (size_t col = 0; col < lead; ++col) {
            size_t sel = col;
            while (sel < lead && a[sel][col] == 0)
                ++sel;
            if (sel == lead)
                return false; // singular minor
            if (sel != col) {
                std::swap(a[sel], a[col]);
                det = -det;
            }
            det *= a[col][col];
            for (size_t i = col + 1; i < lead; ++i) {
                Rat f = a[i][col] / a[col][col];
                for (size_t j = col; j < lead; ++j)
                    a[i][j] -= f * a[col][j];
            }
        }
        if (det <= 0)
            return false;
    }
    return true;
}

bool DecompositionReport::all() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.holds; });
}

namespace {

// b = sum_k c_k span_k with rational constants?
bool in_rational_span(const VectorField& b, const std::vector<VectorField>& span) {
    if (b.is_zero())
        return true;
    size_t n = span.size();
    std::map<std::pair<size_t, Monomial>, size_t,
             bool (*)(const std::pair<size_t, Monomial>&, const std::pair<size_t, Monomial>&)>
        row_of([](const std::pair<size_t, Monomial>& a, const std::pair<size_t, Monomial>& b2) {
            if (a.first != b2.first)
                return a.first < b2.first;
            return mono_cmp(a.second, b2.second) < 0;
        });
    std::vector<std::vector<GaussRat>> A;
    std::vector<GaussRat> rhs;
    auto row = [&](size_t coord, const Monomial& m) -> size_t {
        auto key = std::make_pair(coord, m);
        auto it = row_of.find(key);
        if (it != row_of.end())
            return it->second;
        size_t idx = A.size();
        row_of.emplace(key, idx);
        A.emplace_back(n, GaussRat(0));
        rhs.emplace_back(0);
        return idx;
    };
    for (size_t k = 0; k < n; ++k)
        for (size_t coord = 0; coord < span[k].coords.size(); ++coord)
            for (const auto& [m, c] : span[k].coeffs[coord].num())
                A[row(coord, m)][k] += c;
    for (size_t coord = 0; coord < b.coords.size(); ++coord)
        for (const auto& [m, c] : b.coeffs[coord].num())
            rhs[row(coord, m)] += c;
    auto sol = solve_exact(A, rhs, n);
    if (!sol)
        return false;
    VectorField recon;
    recon.coords = b.coords;
    recon.coeffs.assign(b.coords.size(), GradedExpr::zero());
    for (size_t k = 0; k < n; ++k)
        recon = recon + (GradedExpr::coeff((*sol)[k]) * span[k]);
    return recon == b;
}

} // namespace

DecompositionReport verify_decomposition() {
    DecompositionReport rep;
    auto add = [&rep](std::string name, bool ok, std::string detail = "") {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    auto sb = susy_basis();
    // indices: P1 0, P2 1, P3 2, P4 3, P5 4, D 5, Q1 6, Q2 7
    std::vector<VectorField> s1 = {sb[0], sb[2], sb[6]};
    std::vector<VectorField> s2 = {sb[1], sb[3], sb[7]};
    std::vector<VectorField> p5 = {sb[4]};

    auto closes = [](const std::vector<VectorField>& sub) {
        std::vector<std::string> names(sub.size());
        for (size_t i = 0; i < sub.size(); ++i)
            names[i] = "g" + std::to_string(i);
        try {
            structure_table(sub, names);
            return true;
        } catch (const ClosureError&) {
            return false;
        }
    };
    add("{P1,P3,Q1} closes", closes(s1));
    add("{P2,P4,Q2} closes", closes(s2));
    add("{P5} closes", closes(p5));

    auto cross_zero = [](const std::vector<VectorField>& A, const std::vector<VectorField>& B) {
        for (const auto& X : A)
            for (const auto& Y : B)
                if (!superbracket(X, Y).is_zero())
                    return false;
        return true;
    };
    add("[{P1,P3,Q1},{P2,P4,Q2}] = 0", cross_zero(s1, s2));
    add("[{P1,P3,Q1},{P5}] = 0", cross_zero(s1, p5));
    add("[{P2,P4,Q2},{P5}] = 0", cross_zero(s2, p5));

    auto maps_into = [](const VectorField& d, const std::vector<VectorField>& sub) {
        for (const auto& Y : sub)
            if (!in_rational_span(superbracket(d, Y), sub))
                return false;
        return true;
    };
    add("[D, {P1,P3,Q1}] in span", maps_into(sb[5], s1));
    add("[D, {P2,P4,Q2}] in span", maps_into(sb[5], s2));
    add("[D, {P5}] in span", maps_into(sb[5], p5));

    auto cb = classical_basis();
    // e1..e7 indices 0..6
    std::vector<VectorField> rot = {cb[3], cb[4], cb[5]};
    std::vector<VectorField> tra = {cb[0], cb[1], cb[2]};
    add("{e4,e5,e6} closes", closes(rot));
    add("{e1,e2,e3} closes", closes(tra));
    add("[{e4,e5,e6},{e1,e2,e3}] in {e1,e2,e3}", [&] {
        for (const auto& X : rot)
            for (const auto& Y : tra)
                if (!in_rational_span(superbracket(X, Y), tra))
                    return false;
        return true;
    }());
    add("[e7, {e1..e6}] in span", maps_into(cb[6], {cb[0], cb[1], cb[2], cb[3], cb[4], cb[5]}));
    add("Killing form of {e4,e5,e6} negative definite", negative_definite(killing_form(rot)));
    return rep;
}

} // namespace susyms

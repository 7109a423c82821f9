#include "susyms/expr.hpp"

#include <algorithm>
#include <cassert>

#include "susyms/errors.hpp"

namespace susyms {

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

int Monomial::degree() const {
    int d = static_cast<int>(odd.size());
    for (const auto& [a, e] : even)
        d += e;
    return d;
}

// graded-lex: total degree first, then exponent-wise walk in atom order.
int mono_cmp(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da < db ? -1 : 1;

    size_t ia = 0, ja = 0, ib = 0, jb = 0;
    auto next_atom = [](const Monomial& m, size_t i, size_t j) -> const Atom* {
        const Atom* ea = i < m.even.size() ? &m.even[i].first : nullptr;
        const Atom* oa = j < m.odd.size() ? &m.odd[j] : nullptr;
        if (!ea)
            return oa;
        if (!oa)
            return ea;
        return atom_less(*ea, *oa) ? ea : oa;
    };
    auto exp_of = [](const Monomial& m, size_t& i, size_t& j, const Atom& at) -> int {
        if (i < m.even.size() && atom_eq(m.even[i].first, at))
            return m.even[i++].second;
        if (j < m.odd.size() && atom_eq(m.odd[j], at)) {
            ++j;
            return 1;
        }
        return 0;
    };
    while (true) {
        const Atom* pa = next_atom(a, ia, ja);
        const Atom* pb = next_atom(b, ib, jb);
        if (!pa && !pb)
            return 0;
        if (!pa)
            return -1;
        if (!pb)
            return 1;
        int c = atom_cmp(*pa, *pb);
        const Atom& at = c <= 0 ? *pa : *pb;
        int ea = exp_of(a, ia, ja, at);
        int eb = exp_of(b, ib, jb, at);
        if (ea != eb)
            return ea > eb ? 1 : -1; // larger exponent on earlier atom = larger monomial
    }
}

namespace {

// product of two monomials
// sign: permutation sign for merging the odd sequences; zero on a repeated odd atom
// pending: sqrt(e)^2 -> e rewrites, one den-free argument per stripped pair
struct MonoProduct {
    Monomial m;
    int sign = 1;
    std::vector<std::shared_ptr<const GradedExpr>> pending;
    bool zero = false;
};

MonoProduct mono_mul(const Monomial& a, const Monomial& b) {
    MonoProduct out;
    size_t i = 0, j = 0;
    while (i < a.even.size() || j < b.even.size()) {
        if (j == b.even.size() || (i < a.even.size() && atom_less(a.even[i].first, b.even[j].first)))
            out.m.even.push_back(a.even[i++]);
        else if (i == a.even.size() || atom_less(b.even[j].first, a.even[i].first))
            out.m.even.push_back(b.even[j++]);
        else {
            out.m.even.emplace_back(a.even[i].first, a.even[i].second + b.even[j].second);
            ++i, ++j;
        }
    }
    for (auto& [atom, exp] : out.m.even) {
        if (atom.kind == AtomKind::Func && atom.name == "sqrt" && exp >= 2) {
            int pairs = exp / 2;
            exp -= 2 * pairs;
            for (int p = 0; p < pairs; ++p)
                out.pending.push_back(atom.args[0]);
        }
    }
    out.m.even.erase(std::remove_if(out.m.even.begin(), out.m.even.end(),
                                    [](const auto& p) { return p.second == 0; }),
                     out.m.even.end());
    // odd parts: merge counting transpositions; repeated atom kills the term
    size_t p = 0, q = 0;
    while (p < a.odd.size() || q < b.odd.size()) {
        if (q == b.odd.size())
            out.m.odd.push_back(a.odd[p++]);
        else if (p == a.odd.size())
            out.m.odd.push_back(b.odd[q++]);
        else {
            int c = atom_cmp(a.odd[p], b.odd[q]);
            if (c == 0) {
                out.zero = true;
                return out;
            }
            if (c < 0)
                out.m.odd.push_back(a.odd[p++]);
            else {
                if ((a.odd.size() - p) % 2 == 1)
                    out.sign = -out.sign;
                out.m.odd.push_back(b.odd[q++]);
            }
        }
    }
    return out;
}

void poly_add_term(Poly& p, const Monomial& m, const GaussRat& c) {
    if (c.is_zero())
        return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero())
            p.erase(it);
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

int poly_cmp(const Poly& a, const Poly& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (int c = mono_cmp(ia->first, ib->first); c != 0)
            return c;
        if (ia->second != ib->second)
            return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.end())
        return 1;
    if (ib != b.end())
        return -1;
    return 0;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b)
        poly_add_term(r, m, c);
    return r;
}

Poly poly_neg(const Poly& a) {
    Poly r;
    for (const auto& [m, c] : a)
        r.emplace(m, -c);
    return r;
}

Poly poly_scale(const Poly& a, const GaussRat& c) {
    Poly r;
    if (c.is_zero())
        return r;
    for (const auto& [m, co] : a)
        r.emplace(m, co * c);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            MonoProduct mp = mono_mul(ma, mb);
            if (mp.zero)
                continue;
            GaussRat c = ca * cb;
            if (mp.sign < 0)
                c = -c;
            if (mp.pending.empty()) {
                poly_add_term(out, mp.m, c);
                continue;
            }
            // sqrt arguments are den-free by construction, so the rewrite
            // stays inside the polynomial layer
            Poly t;
            t.emplace(mp.m, c);
            for (const auto& arg : mp.pending) {
                if (arg->has_den())
                    throw Error("internal: sqrt argument with denominator");
                t = poly_mul(t, arg->num());
            }
            out = poly_add(out, t);
        }
    return out;
}

Parity poly_parity(const Poly& a) {
    bool even = false, odd = false;
    for (const auto& [m, c] : a)
        (m.parity() == Parity::Even ? even : odd) = true;
    if (even && odd)
        return Parity::Mixed;
    if (odd)
        return Parity::Odd;
    if (even)
        return Parity::Even;
    return Parity::Zero;
}

bool poly_has_soul(const Poly& a) {
    for (const auto& [m, c] : a)
        if (m.has_soul())
            return true;
    return false;
}

std::optional<Poly> poly_divide_exact(const Poly& num, const Poly& div) {
    if (div.empty())
        throw DivisionError("polynomial division by zero");
    if (poly_has_soul(div))
        throw DivisionError("polynomial division requires a soulless divisor");
    Poly rem = num;
    Poly quot;
    const auto& [lm, lc] = *div.rbegin();
    while (!rem.empty()) {
        const auto& [rm, rc] = *rem.rbegin();
        // divide rm by lm exponent-wise; the odd part of rm passes through
        Monomial q;
        q.odd = rm.odd;
        size_t i = 0;
        bool ok = true;
        for (const auto& [atom, exp] : lm.even) {
            while (i < rm.even.size() && atom_less(rm.even[i].first, atom)) {
                q.even.push_back(rm.even[i]);
                ++i;
            }
            if (i == rm.even.size() || !atom_eq(rm.even[i].first, atom) || rm.even[i].second < exp) {
                ok = false;
                break;
            }
            if (rm.even[i].second > exp)
                q.even.emplace_back(atom, rm.even[i].second - exp);
            ++i;
        }
        if (!ok)
            return std::nullopt;
        for (; i < rm.even.size(); ++i)
            q.even.push_back(rm.even[i]);
        GaussRat qc = rc / lc;
        poly_add_term(quot, q, qc);
        Poly qterm;
        qterm.emplace(q, qc);
        rem = poly_add(rem, poly_neg(poly_mul(qterm, div)));
    }
    return quot;
}

// ---------------------------------------------------------------------------
// GradedExpr
// ---------------------------------------------------------------------------

GradedExpr GradedExpr::integer(long n) { return coeff(GaussRat(n)); }

GradedExpr GradedExpr::rational(long num, long den) { return coeff(GaussRat(Rat(num, den))); }

GradedExpr GradedExpr::coeff(const GaussRat& c) {
    GradedExpr e;
    if (!c.is_zero())
        e.num_.emplace(Monomial{}, c);
    return e;
}

GradedExpr GradedExpr::atom(const Atom& a) {
    GradedExpr e;
    Monomial m;
    if (a.parity() == Parity::Odd)
        m.odd.push_back(a);
    else
        m.even.emplace_back(a, 1);
    e.num_.emplace(std::move(m), GaussRat(1));
    return e;
}

GradedExpr GradedExpr::from_poly(Poly p) {
    GradedExpr r;
    r.num_ = std::move(p);
    return r;
}

Poly GradedExpr::den_expanded() const {
    Poly d;
    d.emplace(Monomial{}, GaussRat(1));
    for (const auto& [f, e] : den_)
        for (int k = 0; k < e; ++k)
            d = poly_mul(d, f);
    return d;
}

Parity GradedExpr::parity() const { return poly_parity(num_); }

void GradedExpr::push_den_factor(const Poly& f, int exp) {
    if (f.empty())
        throw DivisionError("division by zero");
    if (exp == 0)
        return;
    if (poly_has_soul(f))
        throw DivisionError("denominator factor must be soulless");
    // constants fold into the numerator coefficients
    if (f.size() == 1 && f.begin()->first.is_unit()) {
        GaussRat inv = f.begin()->second.inverse();
        GaussRat scale(1);
        for (int k = 0; k < exp; ++k)
            scale *= inv;
        num_ = poly_scale(num_, scale);
        return;
    }
    // split off the common monomial so factors stay maximally cancellable:
    // single atoms become their own entries
    std::vector<std::pair<Atom, int>> common = f.begin()->first.even;
    for (const auto& [m, c] : f) {
        std::vector<std::pair<Atom, int>> next;
        for (const auto& [a, e] : common)
            for (const auto& [b, j] : m.even)
                if (atom_eq(a, b))
                    next.emplace_back(a, std::min(e, j));
        common = next;
        if (common.empty())
            break;
    }
    bool single_mono = f.size() == 1;
    if (!common.empty() && (!single_mono || common.size() > 1 || common[0].second > 1 ||
                            !f.begin()->second.is_one())) {
        Monomial gm;
        gm.even = common;
        Poly gp;
        gp.emplace(gm, GaussRat(1));
        Poly rest = *poly_divide_exact(f, gp);
        for (const auto& [a, e] : common) {
            Poly ap;
            Monomial am;
            am.even.emplace_back(a, 1);
            ap.emplace(am, GaussRat(1));
            push_den_factor(ap, e * exp);
        }
        push_den_factor(rest, exp); // a bare constant folds into coefficients
        return;
    }
    const GaussRat& lead = f.rbegin()->second;
    if (!lead.is_one()) {
        Poly monic = poly_scale(f, lead.inverse());
        GaussRat inv = lead.inverse();
        GaussRat scale(1);
        for (int k = 0; k < exp; ++k)
            scale *= inv;
        num_ = poly_scale(num_, scale);
        den_[monic] += exp;
        return;
    }
    den_[f] += exp;
}

void GradedExpr::cancel() {
    if (num_.empty()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0) {
            auto q = poly_divide_exact(num_, it->first);
            if (!q)
                break;
            num_ = std::move(*q);
            --it->second;
        }
        if (it->second == 0)
            it = den_.erase(it);
        else
            ++it;
    }
    if (num_.empty())
        den_.clear();
}

GradedExpr GradedExpr::make(Poly num, std::map<Poly, int, PolyLess> den) {
    GradedExpr e;
    e.num_ = std::move(num);
    for (const auto& [f, x] : den)
        e.push_den_factor(f, x);
    e.cancel();
    return e;
}

GradedExpr GradedExpr::operator-() const {
    GradedExpr e = *this;
    e.num_ = poly_neg(e.num_);
    return e;
}

GradedExpr operator+(const GradedExpr& a, const GradedExpr& b) {
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    std::map<Poly, int, PolyLess> den = a.den_;
    for (const auto& [f, e] : b.den_) {
        auto it = den.find(f);
        if (it == den.end())
            den.emplace(f, e);
        else
            it->second = std::max(it->second, e);
    }
    auto lift = [&den](const GradedExpr& x) {
        Poly n = x.num_;
        for (const auto& [f, e] : den) {
            auto it = x.den_.find(f);
            int deficit = e - (it == x.den_.end() ? 0 : it->second);
            for (int k = 0; k < deficit; ++k)
                n = poly_mul(n, f);
        }
        return n;
    };
    return GradedExpr::make(poly_add(lift(a), lift(b)), den);
}

GradedExpr operator-(const GradedExpr& a, const GradedExpr& b) { return a + (-b); }

GradedExpr operator*(const GradedExpr& a, const GradedExpr& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    Poly n = poly_mul(a.num_, b.num_);
    std::map<Poly, int, PolyLess> den = a.den_;
    for (const auto& [f, e] : b.den_)
        den[f] += e;
    return GradedExpr::make(std::move(n), den);
}

GradedExpr GradedExpr::pow(int n) const {
    if (n < 0)
        return inverse().pow(-n);
    GradedExpr r = one();
    for (int k = 0; k < n; ++k)
        r = r * *this;
    return r;
}

std::pair<GradedExpr, GradedExpr> GradedExpr::body_soul() const {
    GradedExpr body, soul;
    body.den_ = den_;
    soul.den_ = den_;
    for (const auto& [m, c] : num_)
        (m.has_soul() ? soul.num_ : body.num_).emplace(m, c);
    if (body.num_.empty())
        body.den_.clear();
    if (soul.num_.empty())
        soul.den_.clear();
    return {body, soul};
}

GradedExpr GradedExpr::inverse() const {
    if (is_zero())
        throw DivisionError("inverse of zero");
    Poly body, soul;
    for (const auto& [m, c] : num_)
        (m.has_soul() ? soul : body).emplace(m, c);
    if (body.empty())
        throw DivisionError("not invertible: zero body");
    // (P + S)^-1 = sum_j (-1)^j S^j / P^(j+1); the soul series terminates
    GradedExpr r;
    Poly spow;
    spow.emplace(Monomial{}, GaussRat(1));
    Poly dpoly = den_expanded();
    int sign = 1;
    int guard = 0;
    while (!spow.empty()) {
        Poly n = poly_mul(dpoly, spow);
        if (sign < 0)
            n = poly_neg(n);
        GradedExpr term;
        term.num_ = std::move(n);
        term.push_den_factor(body, guard + 1);
        term.cancel();
        r = r + term;
        spow = poly_mul(spow, soul);
        sign = -sign;
        if (++guard > 64)
            throw Error("internal: non-terminating soul inverse");
    }
    return r;
}

GradedExpr operator/(const GradedExpr& a, const GradedExpr& b) {
    if (b.is_zero())
        throw DivisionError("division by zero");
    if (!b.has_den() && !poly_has_soul(b.num())) {
        GradedExpr r = a;
        r.push_den_factor(b.num(), 1);
        r.cancel();
        return r;
    }
    return a * b.inverse();
}

GradedExpr div_by_poly(const GradedExpr& a, const Poly& p) {
    GradedExpr r = a;
    r.push_den_factor(p, 1);
    r.cancel();
    return r;
}

GradedExpr GradedExpr::substitute(const std::vector<std::pair<Atom, GradedExpr>>& bindings) const {
    auto lookup = [&bindings](const Atom& a) -> const GradedExpr* {
        for (const auto& [key, val] : bindings)
            if (atom_eq(key, a))
                return &val;
        return nullptr;
    };
    for (const auto& [key, val] : bindings) {
        Parity pa = key.parity();
        Parity pv = val.parity();
        if (pv == Parity::Zero)
            continue;
        if (pa == Parity::Odd && pv != Parity::Odd)
            throw ParityError("binding replaces odd atom '" + key.str() + "' by non-odd expression");
        if (pa == Parity::Even && pv != Parity::Even)
            throw ParityError("binding replaces even atom '" + key.str() + "' by non-even expression");
    }
    auto subst_atom = [&](const Atom& a) -> GradedExpr {
        if (const GradedExpr* v = lookup(a))
            return *v;
        if (a.kind == AtomKind::Func) {
            bool changed = false;
            std::vector<GradedExpr> args;
            args.reserve(a.args.size());
            for (const auto& arg : a.args) {
                GradedExpr s = arg->substitute(bindings);
                if (!(s == *arg))
                    changed = true;
                args.push_back(std::move(s));
            }
            if (!changed)
                return GradedExpr::atom(a);
            return ge_func(a.name, args);
        }
        return GradedExpr::atom(a);
    };
    GradedExpr out;
    for (const auto& [m, c] : num_) {
        GradedExpr term = GradedExpr::coeff(c);
        for (const auto& [a, e] : m.even)
            term = term * subst_atom(a).pow(e);
        for (const Atom& a : m.odd)
            term = term * subst_atom(a);
        out = out + term;
    }
    for (const auto& [f, e] : den_) {
        GradedExpr fs = GradedExpr::from_poly(f).substitute(bindings);
        out = out / fs.pow(e);
    }
    return out;
}

std::vector<std::pair<std::vector<Atom>, GradedExpr>> GradedExpr::split_by_odd() const {
    std::map<std::vector<Atom>, Poly, bool (*)(const std::vector<Atom>&, const std::vector<Atom>&)>
        groups([](const std::vector<Atom>& a, const std::vector<Atom>& b) {
            if (a.size() != b.size())
                return a.size() < b.size();
            for (size_t i = 0; i < a.size(); ++i)
                if (int c = atom_cmp(a[i], b[i]); c != 0)
                    return c < 0;
            return false;
        });
    for (const auto& [m, c] : num_) {
        Monomial evens;
        evens.even = m.even;
        poly_add_term(groups[m.odd], evens, c);
    }
    std::vector<std::pair<std::vector<Atom>, GradedExpr>> out;
    for (auto& [odd, p] : groups) {
        GradedExpr e;
        e.num_ = std::move(p);
        e.den_ = den_;
        out.emplace_back(odd, std::move(e));
    }
    return out;
}

GradedExpr GradedExpr::primitive_part() const {
    if (is_zero())
        return {};
    GradedExpr r;
    r.num_ = poly_scale(num_, num_.rbegin()->second.inverse());
    return r;
}

bool operator==(const GradedExpr& a, const GradedExpr& b) {
    if (a.den_ == b.den_)
        return poly_cmp(a.num_, b.num_) == 0;
    Poly lhs = poly_mul(a.num_, b.den_expanded());
    Poly rhs = poly_mul(b.num_, a.den_expanded());
    return poly_cmp(lhs, rhs) == 0;
}

int expr_cmp(const GradedExpr& a, const GradedExpr& b) {
    if (int c = poly_cmp(a.num_, b.num_); c != 0)
        return c;
    auto ia = a.den_.begin();
    auto ib = b.den_.begin();
    for (; ia != a.den_.end() && ib != b.den_.end(); ++ia, ++ib) {
        if (int c = poly_cmp(ia->first, ib->first); c != 0)
            return c;
        if (ia->second != ib->second)
            return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.den_.end())
        return 1;
    if (ib != b.den_.end())
        return -1;
    return 0;
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

GradedExpr ge_var(const std::string& name) { return GradedExpr::atom(Atom::bvar(name)); }
GradedExpr ge_fvar(const std::string& name) { return GradedExpr::atom(Atom::fvar(name)); }
GradedExpr ge_odd(const std::string& name) { return GradedExpr::atom(Atom::odd_const(name)); }
GradedExpr ge_even(const std::string& name) { return GradedExpr::atom(Atom::even_const(name)); }

GradedExpr ge_jet(FieldId f, int dx, int dy, bool t1, bool t2) {
    JetKey k;
    k.field = f;
    k.d = {static_cast<uint16_t>(dx), static_cast<uint16_t>(dy), 0};
    k.dth1 = t1;
    k.dth2 = t2;
    return GradedExpr::atom(Atom::jet_atom(k));
}

GradedExpr ge_jet(const JetKey& k) { return GradedExpr::atom(Atom::jet_atom(k)); }

GradedExpr ge_func(const std::string& name, const std::vector<GradedExpr>& args) {
    if (name == "sqrt")
        return ge_sqrt(args.at(0));
    std::vector<std::shared_ptr<const GradedExpr>> ptrs;
    ptrs.reserve(args.size());
    for (const auto& a : args)
        ptrs.push_back(std::make_shared<const GradedExpr>(a));
    return GradedExpr::atom(Atom::func(name, std::move(ptrs)));
}

GradedExpr ge_sqrt(const GradedExpr& a) {
    // sqrt arguments stay den-free: sqrt(N/D) = sqrt(N*D)/D
    if (!a.has_den()) {
        return GradedExpr::atom(
            Atom::func("sqrt", {std::make_shared<const GradedExpr>(a)}));
    }
    GradedExpr d = GradedExpr::from_poly(a.den_expanded());
    GradedExpr inner = GradedExpr::from_poly(poly_mul(a.num(), d.num()));
    GradedExpr root = GradedExpr::atom(
        Atom::func("sqrt", {std::make_shared<const GradedExpr>(inner)}));
    return root / d;
}

GradedExpr ge_ln(const GradedExpr& a) { return ge_func("ln", {a}); }
GradedExpr ge_asin(const GradedExpr& a) { return ge_func("asin", {a}); }
GradedExpr ge_sin(const GradedExpr& a) { return ge_func("sin", {a}); }
GradedExpr ge_cos(const GradedExpr& a) { return ge_func("cos", {a}); }

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

namespace {

bool display_negative(const GaussRat& c) {
    if (c.re != 0)
        return c.re < 0;
    return c.im < 0;
}

std::string term_str(const Monomial& m, const GaussRat& c) {
    std::string s;
    bool coeff_done = false;
    if (m.is_unit())
        return c.str();
    if (c.is_one()) {
        coeff_done = true;
    } else if ((-c).is_one()) {
        s += "-";
        coeff_done = true;
    }
    if (!coeff_done)
        s += c.str() + "*";
    bool first = true;
    for (const auto& [a, e] : m.even) {
        if (!first)
            s += "*";
        first = false;
        s += a.str();
        if (e != 1)
            s += "^" + std::to_string(e);
    }
    for (const Atom& a : m.odd) {
        if (!first)
            s += "*";
        first = false;
        s += a.str();
    }
    return s;
}

std::string poly_str(const Poly& p) {
    if (p.empty())
        return "0";
    std::string s;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        const auto& [m, c] = *it;
        if (first) {
            s += term_str(m, c);
            first = false;
            continue;
        }
        if (display_negative(c))
            s += " - " + term_str(m, -c);
        else
            s += " + " + term_str(m, c);
    }
    return s;
}

} // namespace

std::string GradedExpr::str() const {
    if (is_zero())
        return "0";
    std::string n = poly_str(num_);
    if (den_.empty())
        return n;
    if (num_.size() > 1)
        n = "(" + n + ")";
    std::string d;
    for (const auto& [f, e] : den_) {
        if (!d.empty())
            d += "*";
        std::string fs = poly_str(f);
        if (f.size() > 1)
            fs = "(" + fs + ")";
        if (e != 1)
            fs += "^" + std::to_string(e);
        d += fs;
    }
    if (den_.size() > 1)
        d = "(" + d + ")";
    return n + "/" + d;
}

} // namespace susyms

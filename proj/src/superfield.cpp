#include "susyms/superfield.hpp"

#include <functional>
#include <map>

#include "susyms/errors.hpp"

namespace susyms {

namespace {

void collect_jets(const GradedExpr& e, std::map<JetKey, Atom>& out,
                  const std::function<bool(const JetKey&)>& want);

void collect_jets_poly(const Poly& p, std::map<JetKey, Atom>& out,
                       const std::function<bool(const JetKey&)>& want) {
    auto visit = [&](const Atom& a) {
        if (a.kind == AtomKind::Jet && want(a.jet))
            out.emplace(a.jet, a);
        if (a.kind == AtomKind::Func)
            for (const auto& arg : a.args)
                collect_jets(*arg, out, want);
    };
    for (const auto& [m, c] : p) {
        for (const auto& [a, e] : m.even)
            visit(a);
        for (const auto& a : m.odd)
            visit(a);
    }
}

void collect_jets(const GradedExpr& e, std::map<JetKey, Atom>& out,
                  const std::function<bool(const JetKey&)>& want) {
    collect_jets_poly(e.num(), out, want);
    for (const auto& [f, k] : e.den())
        collect_jets_poly(f, out, want);
}

GradedExpr theta_expansion_base() {
    return ge_jet(FieldId::V) + ge_fvar("theta1") * ge_jet(FieldId::PhiC) +
           ge_fvar("theta2") * ge_jet(FieldId::PsiC) +
           ge_fvar("theta1") * ge_fvar("theta2") * ge_jet(FieldId::U);
}

GradedExpr expand_jet(const JetKey& k) {
    GradedExpr e = theta_expansion_base();
    if (k.dth2)
        e = d_theta2(e);
    if (k.dth1)
        e = d_theta1(e);
    for (int i = 0; i < k.d[1]; ++i)
        e = d_y(e);
    for (int i = 0; i < k.d[0]; ++i)
        e = d_x(e);
    return e;
}

} // namespace

GradedExpr expand_superfield(const GradedExpr& e) {
    std::map<JetKey, Atom> jets;
    collect_jets(e, jets, [](const JetKey& k) { return k.field == FieldId::Phi; });
    if (jets.empty())
        return e;
    std::vector<std::pair<Atom, GradedExpr>> bindings;
    for (const auto& [k, a] : jets)
        bindings.emplace_back(a, expand_jet(k));
    return e.substitute(bindings);
}

GradedExpr subscript_jet(FieldId f, const std::string& subscripts) {
    GradedExpr e = ge_jet(f, 0, 0, false, false);
    size_t i = 0;
    while (i < subscripts.size()) {
        char c = subscripts[i];
        if (c == ' ') {
            ++i;
            continue;
        }
        if (c == 'x') {
            e = d_x(e);
            ++i;
        } else if (c == 'y') {
            e = d_y(e);
            ++i;
        } else if (c == 't' && i + 1 < subscripts.size()) {
            if (subscripts[i + 1] == '1')
                e = d_theta1(e);
            else if (subscripts[i + 1] == '2')
                e = d_theta2(e);
            else
                throw UsageError("bad subscript string: " + subscripts);
            i += 2;
        } else {
            throw UsageError("bad subscript string: " + subscripts);
        }
    }
    return e;
}

GradedExpr susy_ms_residual(ResidualForm form) {
    if (form == ResidualForm::Operator) {
        GradedExpr P = ge_jet(FieldId::Phi);
        using Op = SuperOp;
        auto seq = [&P](std::initializer_list<Op> ops) {
            return apply_ops(std::vector<Op>(ops), P);
        };
        GradedExpr t1 = seq({Op::D2, Op::D2, Op::D2, Op::D2});
        GradedExpr t2 = seq({Op::D1, Op::D1}) * seq({Op::D1, Op::D1, Op::D1, Op::D2}) *
                        seq({Op::D1, Op::D2, Op::D2, Op::D2, Op::D2, Op::D2});
        GradedExpr t3 = GradedExpr::integer(-2) * seq({Op::D1, Op::D1}) *
                        seq({Op::D1, Op::D2, Op::D2, Op::D2}) *
                        seq({Op::D1, Op::D1, Op::D1, Op::D2, Op::D2, Op::D2});
        GradedExpr t4 = seq({Op::D1, Op::D1, Op::D1, Op::D1});
        GradedExpr t5 = seq({Op::D2, Op::D2}) * seq({Op::D1, Op::D2, Op::D2, Op::D2}) *
                        seq({Op::D1, Op::D1, Op::D1, Op::D1, Op::D1, Op::D2});
        return t1 + t2 + t3 + t4 + t5;
    }

    // component form, term-by-term transcription
    auto S = [](const char* s) { return subscript_jet(FieldId::Phi, s); };
    GradedExpr th1 = ge_fvar("theta1");
    GradedExpr th2 = ge_fvar("theta2");
    GradedExpr th12 = th1 * th2;
    GradedExpr B1 = -S("xt1t2") + th1 * S("xxt2") - th2 * S("xyt1") + th12 * S("xxy");
    GradedExpr B2 = -S("yyt1t2") + th1 * S("xyyt2") - th2 * S("yyyt1") + th12 * S("xyyy");
    GradedExpr B3 = -S("yt1t2") + th1 * S("xyt2") - th2 * S("yyt1") + th12 * S("xyy");
    GradedExpr B4 = -S("xyt1t2") + th1 * S("xxyt2") - th2 * S("xyyt1") + th12 * S("xxyy");
    GradedExpr B5 = -S("xxt1t2") + th1 * S("xxxt2") - th2 * S("xxyt1") + th12 * S("xxxy");
    return S("yy") + S("xx") + S("x") * B1 * B2 - GradedExpr::integer(2) * S("x") * B3 * B4 +
           S("y") * B3 * B5;
}

std::vector<IdentityReport> check_operator_identities() {
    GradedExpr P = ge_jet(FieldId::Phi);
    auto anti = [&P](SuperOp a, SuperOp b) {
        return apply_op(a, apply_op(b, P)) + apply_op(b, apply_op(a, P));
    };
    auto comp2 = [&P](SuperOp a) { return apply_op(a, apply_op(a, P)); };
    std::vector<IdentityReport> out;
    auto push = [&out](std::string name, GradedExpr residual) {
        bool ok = residual.is_zero();
        out.push_back({std::move(name), ok, std::move(residual)});
    };
    using Op = SuperOp;
    push("{Q1,Q1} = -2 dx", anti(Op::Q1, Op::Q1) + GradedExpr::integer(2) * d_x(P));
    push("{Q2,Q2} = -2 dy", anti(Op::Q2, Op::Q2) + GradedExpr::integer(2) * d_y(P));
    push("{Q1,Q2} = 0", anti(Op::Q1, Op::Q2));
    push("D1^2 = dx", comp2(Op::D1) - d_x(P));
    push("D2^2 = dy", comp2(Op::D2) - d_y(P));
    push("{D1,D2} = 0", anti(Op::D1, Op::D2));
    push("{D1,Q1} = 0", anti(Op::D1, Op::Q1));
    push("{D1,Q2} = 0", anti(Op::D1, Op::Q2));
    push("{D2,Q1} = 0", anti(Op::D2, Op::Q1));
    push("{D2,Q2} = 0", anti(Op::D2, Op::Q2));
    return out;
}

Components split_components(const GradedExpr& e) {
    std::vector<std::pair<Atom, GradedExpr>> zero_thetas = {
        {Atom::fvar("theta1"), GradedExpr::zero()},
        {Atom::fvar("theta2"), GradedExpr::zero()},
    };
    Components c;
    c.v = e.substitute(zero_thetas);
    c.phi = d_theta1(e).substitute(zero_thetas);
    c.psi = d_theta2(e).substitute(zero_thetas);
    c.u = d_theta2(d_theta1(e)).substitute(zero_thetas);
    return c;
}

GradedExpr residual_of(const Components& c, const DiffCtx& ctx) {
    GradedExpr residual = expand_superfield(susy_ms_residual(ResidualForm::Component));
    std::map<JetKey, Atom> jets;
    collect_jets(residual, jets, [](const JetKey& k) {
        return k.field == FieldId::V || k.field == FieldId::PhiC || k.field == FieldId::PsiC ||
               k.field == FieldId::U;
    });
    std::vector<std::pair<Atom, GradedExpr>> bindings;
    for (const auto& [k, a] : jets) {
        const GradedExpr* base = nullptr;
        switch (k.field) {
        case FieldId::V: base = &c.v; break;
        case FieldId::PhiC: base = &c.phi; break;
        case FieldId::PsiC: base = &c.psi; break;
        case FieldId::U: base = &c.u; break;
        default: break;
        }
        GradedExpr val = *base;
        for (int i = 0; i < k.d[1]; ++i)
            val = d_y(val, ctx);
        for (int i = 0; i < k.d[0]; ++i)
            val = d_x(val, ctx);
        bindings.emplace_back(a, std::move(val));
    }
    return residual.substitute(bindings);
}

} // namespace susyms

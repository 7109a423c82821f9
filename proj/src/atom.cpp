#include "susyms/atom.hpp"

#include <algorithm>

#include "susyms/errors.hpp"
#include "susyms/expr.hpp"

namespace susyms {

namespace {

const FieldInfo kFields[] = {
    {"Phi", Parity::Even, 2, {"x", "y", nullptr}, true},
    {"v", Parity::Even, 2, {"x", "y", nullptr}, false},
    {"phi", Parity::Odd, 2, {"x", "y", nullptr}, false},
    {"psi", Parity::Odd, 2, {"x", "y", nullptr}, false},
    {"u", Parity::Even, 2, {"x", "y", nullptr}, false},
    {"w", Parity::Even, 1, {"xi", nullptr, nullptr}, false},
    {"f", Parity::Even, 1, {"xi", nullptr, nullptr}, false},
    {"g", Parity::Even, 1, {"xi", nullptr, nullptr}, false},
    {"F", Parity::Even, 3, {"x", "y", "Phi"}, true},
    {"F", Parity::Even, 3, {"x", "y", "u"}, false},
};

int var_priority(const std::string& n, const char* const* table, int count) {
    for (int i = 0; i < count; ++i)
        if (n == table[i])
            return i;
    return count;
}

// fixed priority lists keep canonical forms stable across runs
const char* kFermionic[] = {"theta1", "theta2", "eta1", "eta2"};
const char* kOddConst[] = {"mu", "nu", "eta", "lambda", "rho", "sigma"};
const char* kBosonic[] = {"x", "y", "t", "xi", "Phi", "u"};

int name_cmp(const std::string& a, const std::string& b, const char* const* table, int count) {
    int pa = var_priority(a, table, count);
    int pb = var_priority(b, table, count);
    if (pa != pb)
        return pa < pb ? -1 : 1;
    return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
}

// fermionic vars < odd constants < odd jets < bosonic vars < even constants
// < even jets < function atoms
int atom_rank(const Atom& a) {
    switch (a.kind) {
    case AtomKind::FermionicVar: return 0;
    case AtomKind::OddConst: return 1;
    case AtomKind::Jet: return a.jet.parity() == Parity::Odd ? 2 : 3;
    case AtomKind::BosonicVar: return 4;
    case AtomKind::EvenConst: return 5;
    case AtomKind::Func: return 6;
    }
    return 7;
}

} // namespace

const FieldInfo& field_info(FieldId f) { return kFields[static_cast<int>(f)]; }

Parity JetKey::parity() const {
    Parity base = field_info(field).base;
    int flips = (dth1 ? 1 : 0) + (dth2 ? 1 : 0);
    return flips % 2 == 0 ? base : flip(base);
}

bool operator<(const JetKey& a, const JetKey& b) {
    if (a.field != b.field)
        return a.field < b.field;
    if (a.d != b.d)
        return a.d < b.d;
    if (a.dth1 != b.dth1)
        return a.dth1 < b.dth1;
    return a.dth2 < b.dth2;
}

Parity Atom::parity() const {
    switch (kind) {
    case AtomKind::FermionicVar:
    case AtomKind::OddConst: return Parity::Odd;
    case AtomKind::Jet: return jet.parity();
    default: return Parity::Even;
    }
}

Atom Atom::func(std::string n, std::vector<std::shared_ptr<const GradedExpr>> a) {
    for (const auto& arg : a) {
        Parity p = arg->parity();
        if (p != Parity::Even && p != Parity::Zero)
            throw ParityError("function '" + n + "' requires even arguments");
    }
    return {AtomKind::Func, std::move(n), std::move(a), {}};
}

int atom_cmp(const Atom& a, const Atom& b) {
    int ra = atom_rank(a), rb = atom_rank(b);
    if (ra != rb)
        return ra < rb ? -1 : 1;
    switch (a.kind) {
    case AtomKind::FermionicVar:
        return name_cmp(a.name, b.name, kFermionic, 4);
    case AtomKind::OddConst:
        return name_cmp(a.name, b.name, kOddConst, 6);
    case AtomKind::BosonicVar:
        return name_cmp(a.name, b.name, kBosonic, 6);
    case AtomKind::EvenConst:
        return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
    case AtomKind::Jet: {
        if (a.jet == b.jet)
            return 0;
        return a.jet < b.jet ? -1 : 1;
    }
    case AtomKind::Func: {
        if (int c = a.name.compare(b.name); c != 0)
            return c < 0 ? -1 : 1;
        if (a.args.size() != b.args.size())
            return a.args.size() < b.args.size() ? -1 : 1;
        for (size_t i = 0; i < a.args.size(); ++i)
            if (int c = expr_cmp(*a.args[i], *b.args[i]); c != 0)
                return c;
        return 0;
    }
    }
    return 0;
}

std::string Atom::str() const {
    switch (kind) {
    case AtomKind::Func: {
        std::string s = name + "(";
        for (size_t i = 0; i < args.size(); ++i) {
            if (i)
                s += ", ";
            s += args[i]->str();
        }
        return s + ")";
    }
    case AtomKind::Jet: {
        const FieldInfo& fi = field_info(jet.field);
        std::string s = fi.name;
        if (jet.field == FieldId::Omega || jet.field == FieldId::FRed || jet.field == FieldId::GRed) {
            for (int i = 0; i < jet.d[0]; ++i)
                s += "'";
            return s;
        }
        if (jet.total_order() == 0)
            return s;
        s += "_";
        for (int arg = 0; arg < fi.n_even_args; ++arg)
            for (int i = 0; i < jet.d[arg]; ++i)
                s += fi.even_args[arg];
        if (jet.dth1)
            s += "t1";
        if (jet.dth2)
            s += "t2";
        return s;
    }
    default:
        return name;
    }
}

} // namespace susyms

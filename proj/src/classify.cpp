#include "susyms/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "susyms/errors.hpp"
#include "susyms/vectorfield.hpp"

#include "classification_data.inc"

namespace susyms {

namespace {

// display order D, P1, P2, P5, P3, P4, Q1, Q2
const Gen kDisplay[kNumGen] = {Gen::D,  Gen::P1, Gen::P2, Gen::P5,
                               Gen::P3, Gen::P4, Gen::Q1, Gen::Q2};

int display_rank(Gen g) {
    for (int i = 0; i < kNumGen; ++i)
        if (kDisplay[i] == g)
            return i;
    return kNumGen;
}

const Gen kEvenTranslations[3] = {Gen::P1, Gen::P2, Gen::P5};

// structure constants from the engine-computed supercommutation table
const StructureTable& table() {
    static const StructureTable t = structure_table(susy_basis(), susy_basis_names());
    return t;
}

} // namespace

Parity gen_parity(Gen g) {
    switch (g) {
    case Gen::P3:
    case Gen::P4:
    case Gen::Q1:
    case Gen::Q2: return Parity::Odd;
    default: return Parity::Even;
    }
}

const char* gen_name(Gen g) {
    static const char* names[] = {"P1", "P2", "P3", "P4", "P5", "D", "Q1", "Q2"};
    return names[static_cast<int>(g)];
}

bool SubalgebraElement::is_zero() const {
    return std::all_of(coeff.begin(), coeff.end(),
                       [](const GradedExpr& c) { return c.is_zero(); });
}

SubalgebraElement operator+(const SubalgebraElement& a, const SubalgebraElement& b) {
    SubalgebraElement r;
    for (int i = 0; i < kNumGen; ++i)
        r.coeff[i] = a.coeff[i] + b.coeff[i];
    return r;
}

SubalgebraElement operator*(const GradedExpr& c, const SubalgebraElement& e) {
    SubalgebraElement r;
    for (int i = 0; i < kNumGen; ++i)
        r.coeff[i] = c * e.coeff[i];
    return r;
}

bool operator==(const SubalgebraElement& a, const SubalgebraElement& b) {
    for (int i = 0; i < kNumGen; ++i)
        if (!(a.coeff[i] == b.coeff[i]))
            return false;
    return true;
}

std::string SubalgebraElement::str() const {
    std::string s;
    for (Gen g : kDisplay) {
        const GradedExpr& c = (*this)[g];
        if (c.is_zero())
            continue;
        if (!s.empty())
            s += " + ";
        if (c == GradedExpr::one())
            s += gen_name(g);
        else
            s += "(" + c.str() + ")*" + gen_name(g);
    }
    return s.empty() ? "0" : s;
}

void validate_element(const SubalgebraElement& e) {
    for (int i = 0; i < kNumGen; ++i) {
        if (e.coeff[i].is_zero())
            continue;
        Parity pc = e.coeff[i].parity();
        Parity pg = gen_parity(static_cast<Gen>(i));
        if (pc == Parity::Mixed)
            throw ParityError("mixed-parity coefficient on " +
                              std::string(gen_name(static_cast<Gen>(i))));
        if (pc != pg)
            throw ParityError("coefficient parity on " +
                              std::string(gen_name(static_cast<Gen>(i))) +
                              " does not make the element even");
    }
}

SubalgebraElement element_bracket(const SubalgebraElement& a, const SubalgebraElement& b) {
    validate_element(a);
    validate_element(b);
    const StructureTable& t = table();
    SubalgebraElement r;
    for (int g = 0; g < kNumGen; ++g) {
        if (a.coeff[g].is_zero())
            continue;
        for (int h = 0; h < kNumGen; ++h) {
            if (b.coeff[h].is_zero())
                continue;
            bool both_odd = gen_parity(static_cast<Gen>(g)) == Parity::Odd &&
                            gen_parity(static_cast<Gen>(h)) == Parity::Odd;
            GradedExpr ab = a.coeff[g] * b.coeff[h];
            if (both_odd)
                ab = -ab;
            for (int k = 0; k < kNumGen; ++k) {
                const GaussRat& c = t.entries[g][h][k];
                if (c.is_zero())
                    continue;
                r.coeff[k] += ab * GradedExpr::coeff(c);
            }
        }
    }
    return r;
}

SubalgebraElement adjoint_action(const SubalgebraElement& Y, const SubalgebraElement& X,
                                 int max_depth) {
    SubalgebraElement acc = X;
    SubalgebraElement term = X;
    Rat fact = 1;
    for (int k = 1; k <= max_depth; ++k) {
        term = element_bracket(Y, term);
        if (term.is_zero())
            return acc;
        fact *= k;
        acc = acc + (GradedExpr::coeff(GaussRat(Rat(1) / fact)) * term);
    }
    throw TruncationError("adjoint series did not terminate");
}

SubalgebraElement dilation_conjugate(const SubalgebraElement& x, const GradedExpr& q,
                                     const GradedExpr& s) {
    SubalgebraElement r = x;
    for (Gen g : {Gen::P1, Gen::P2})
        r[g] = q * r[g];
    r[Gen::P5] = q * q * r[Gen::P5];
    for (Gen g : {Gen::P3, Gen::P4, Gen::Q1, Gen::Q2})
        r[g] = s * r[g];
    return r;
}

// ---------------------------------------------------------------------------
// patterns
// ---------------------------------------------------------------------------

namespace {

void display_sort(RepPattern& p) {
    std::sort(p.terms.begin(), p.terms.end(), [](const auto& a, const auto& b) {
        return display_rank(a.first) < display_rank(b.first);
    });
}

const char* kOddNames[4] = {"mu", "nu", "rho", "sigma"};
const char* kEvenNames[2] = {"k", "l"};

} // namespace

std::string RepPattern::render() const {
    std::string s;
    int odd_i = 0, even_i = 0;
    for (const auto& [g, kind] : terms) {
        if (!s.empty())
            s += "+";
        switch (kind) {
        case CoeffKind::Unit: s += gen_name(g); break;
        case CoeffKind::Eps: s += std::string("eps*") + gen_name(g); break;
        case CoeffKind::EvenParam: s += std::string(kEvenNames[even_i++]) + "*" + gen_name(g); break;
        case CoeffKind::OddParam: s += std::string(kOddNames[odd_i++]) + "*" + gen_name(g); break;
        }
    }
    return s;
}

RepPattern parse_pattern(const std::string& s) {
    RepPattern p;
    size_t i = 0;
    auto gen_of = [](const std::string& n) -> Gen {
        for (int g = 0; g < kNumGen; ++g)
            if (n == gen_name(static_cast<Gen>(g)))
                return static_cast<Gen>(g);
        throw UsageError("unknown generator '" + n + "'");
    };
    while (i < s.size()) {
        size_t j = s.find('+', i);
        if (j == std::string::npos)
            j = s.size();
        std::string tok = s.substr(i, j - i);
        i = j + 1;
        size_t star = tok.find('*');
        if (star == std::string::npos) {
            p.terms.emplace_back(gen_of(tok), CoeffKind::Unit);
            continue;
        }
        std::string prefix = tok.substr(0, star);
        Gen g = gen_of(tok.substr(star + 1));
        CoeffKind kind;
        if (prefix == "eps")
            kind = CoeffKind::Eps;
        else if (prefix == "k" || prefix == "l")
            kind = CoeffKind::EvenParam;
        else if (prefix == "mu" || prefix == "nu" || prefix == "rho" || prefix == "sigma")
            kind = CoeffKind::OddParam;
        else
            throw UsageError("unknown coefficient '" + prefix + "'");
        p.terms.emplace_back(g, kind);
    }
    display_sort(p);
    return p;
}

SubalgebraElement instantiate(const RepPattern& p, const std::string& suffix, int eps_sign) {
    SubalgebraElement e;
    int odd_i = 0, even_i = 0;
    for (const auto& [g, kind] : p.terms) {
        switch (kind) {
        case CoeffKind::Unit: e[g] = GradedExpr::one(); break;
        case CoeffKind::Eps: e[g] = GradedExpr::integer(eps_sign); break;
        case CoeffKind::EvenParam:
            e[g] = ge_even(std::string(kEvenNames[even_i++]) + suffix);
            break;
        case CoeffKind::OddParam:
            e[g] = ge_odd(std::string(kOddNames[odd_i++]) + suffix);
            break;
        }
    }
    return e;
}

// ---------------------------------------------------------------------------
// stage generation
// ---------------------------------------------------------------------------

namespace {

RepPattern pat(std::initializer_list<std::pair<Gen, CoeffKind>> terms) {
    RepPattern p;
    p.terms = terms;
    display_sort(p);
    return p;
}

bool has_even_translation(const RepPattern& p) {
    for (const auto& [g, kind] : p.terms)
        for (Gen t : kEvenTranslations)
            if (g == t)
                return true;
    return false;
}

std::vector<RepresentativeClass> label_all(std::vector<RepPattern> pats, Stage stage) {
    std::vector<RepresentativeClass> out;
    for (size_t i = 0; i < pats.size(); ++i)
        out.push_back({static_cast<int>(i) + 1, stage, std::move(pats[i]), true});
    return out;
}

} // namespace

std::vector<RepresentativeClass> classify_stage_s1() {
    // one representative per nonzero coefficient pattern of alpha P1 + mu P3
    // + nu Q1; the adjoint action only shifts the P1 coefficient, so the
    // patterns are mutually non-conjugate under the implemented moves
    using K = CoeffKind;
    std::vector<RepPattern> pats = {
        pat({{Gen::P1, K::Unit}}),
        pat({{Gen::P3, K::OddParam}}),
        pat({{Gen::Q1, K::OddParam}}),
        pat({{Gen::P1, K::Unit}, {Gen::P3, K::OddParam}}),
        pat({{Gen::P1, K::Unit}, {Gen::Q1, K::OddParam}}),
        pat({{Gen::P3, K::OddParam}, {Gen::Q1, K::OddParam}}),
        pat({{Gen::P1, K::Unit}, {Gen::P3, K::OddParam}, {Gen::Q1, K::OddParam}}),
    };
    return label_all(std::move(pats), Stage::S1);
}

std::vector<RepresentativeClass> classify_stage_s2() {
    std::vector<RepresentativeClass> out;
    int label = 8;
    for (const auto& c : classify_stage_s1()) {
        RepresentativeClass m;
        m.label = label++;
        m.stage = Stage::S2;
        m.pattern = reflect(c.pattern);
        out.push_back(std::move(m));
    }
    return out;
}

namespace {

std::vector<RepresentativeClass> goursat_impl(const std::vector<RepresentativeClass>& a,
                                              const std::vector<RepresentativeClass>& b,
                                              Stage twisted_stage) {
    std::vector<RepresentativeClass> out;
    int label = 1;
    auto push = [&out, &label](RepPattern p, Stage st) {
        out.push_back({label++, st, std::move(p), true});
    };
    // classes keep the stage at which they first appeared
    for (const auto& c : a)
        push(c.pattern, c.stage);
    for (const auto& c : b)
        push(c.pattern, c.stage);
    // twisted classes {A + tau(A)}: the homomorphism scales the B-side unit by
    // a free even parameter whenever A already fixes the overall scale
    for (const auto& ca : a) {
        for (const auto& cb : b) {
            RepPattern p = ca.pattern;
            bool a_even = has_even_translation(ca.pattern);
            for (const auto& [g, kind] : cb.pattern.terms) {
                CoeffKind k = kind;
                if (kind == CoeffKind::Unit && a_even)
                    k = CoeffKind::EvenParam;
                p.terms.emplace_back(g, k);
            }
            display_sort(p);
            push(std::move(p), twisted_stage);
        }
    }
    return out;
}

} // namespace

std::vector<RepresentativeClass> goursat_combine(const std::vector<RepresentativeClass>& a,
                                                 const std::vector<RepresentativeClass>& b) {
    return goursat_impl(a, b, Stage::S);
}

std::vector<RepresentativeClass> classify_stage_s() {
    return goursat_impl(classify_stage_s1(), classify_stage_s2(), Stage::S);
}

std::vector<RepresentativeClass> classify_stage_tilde_s() {
    std::vector<RepresentativeClass> p5 = {
        {1, Stage::TildeS, pat({{Gen::P5, CoeffKind::Unit}}), true}};
    return goursat_impl(classify_stage_s(), p5, Stage::TildeS);
}

std::vector<RepresentativeClass> splitting_nonsplitting_with_D(
    const std::vector<RepresentativeClass>& tilde_s) {
    std::vector<RepresentativeClass> out = tilde_s;
    out.push_back({static_cast<int>(out.size()) + 1, Stage::Full,
                   pat({{Gen::D, CoeffKind::Unit}}), true});
    // non-splitting classes D + sum c_i Z_i; exp(tD) scales the leading even
    // translation coefficient to eps = +-1
    for (const auto& c : tilde_s) {
        RepPattern p;
        p.terms.emplace_back(Gen::D, CoeffKind::Unit);
        bool eps_done = false;
        for (const auto& [g, kind] : c.pattern.terms) {
            CoeffKind k = kind;
            if (kind == CoeffKind::Unit && !eps_done) {
                k = CoeffKind::Eps;
                eps_done = true;
            }
            p.terms.emplace_back(g, k);
        }
        display_sort(p);
        out.push_back({static_cast<int>(out.size()) + 1, Stage::Full, std::move(p), true});
    }
    return out;
}

std::vector<RepresentativeClass> classify_stage_full() {
    return splitting_nonsplitting_with_D(classify_stage_tilde_s());
}

std::vector<std::string> transcribed_full_list() {
    return {std::begin(kFullList), std::end(kFullList)};
}

std::vector<std::string> transcribed_deduped_list() {
    return {std::begin(kDedupedList), std::end(kDedupedList)};
}

// ---------------------------------------------------------------------------
// reflection and dedupe
// ---------------------------------------------------------------------------

namespace {

Gen reflect_gen(Gen g) {
    switch (g) {
    case Gen::P1: return Gen::P2;
    case Gen::P2: return Gen::P1;
    case Gen::P3: return Gen::P4;
    case Gen::P4: return Gen::P3;
    case Gen::Q1: return Gen::Q2;
    case Gen::Q2: return Gen::Q1;
    default: return g;
    }
}

// restore the representative convention after a generator swap: the earliest
// even translation present carries the Unit (resp. Eps in D-classes)
void renormalize_pattern(RepPattern& p) {
    display_sort(p);
    int first_even = -1, unit_holder = -1, eps_holder = -1;
    for (size_t i = 0; i < p.terms.size(); ++i) {
        auto [g, kind] = p.terms[i];
        bool is_tr = g == Gen::P1 || g == Gen::P2 || g == Gen::P5;
        if (!is_tr)
            continue;
        if (first_even < 0)
            first_even = static_cast<int>(i);
        if (kind == CoeffKind::Unit)
            unit_holder = static_cast<int>(i);
        if (kind == CoeffKind::Eps)
            eps_holder = static_cast<int>(i);
    }
    if (first_even < 0)
        return;
    if (eps_holder >= 0 && eps_holder != first_even)
        std::swap(p.terms[first_even].second, p.terms[eps_holder].second);
    else if (unit_holder >= 0 && unit_holder != first_even)
        std::swap(p.terms[first_even].second, p.terms[unit_holder].second);
}

} // namespace

RepPattern reflect(const RepPattern& p) {
    RepPattern r;
    for (const auto& [g, kind] : p.terms)
        r.terms.emplace_back(reflect_gen(g), kind);
    renormalize_pattern(r);
    return r;
}

SubalgebraElement reflect(const SubalgebraElement& e) {
    SubalgebraElement r;
    for (int g = 0; g < kNumGen; ++g)
        r.coeff[static_cast<int>(reflect_gen(static_cast<Gen>(g)))] = e.coeff[g];
    return r;
}

const std::vector<int>& nonstandard_labels() {
    static const std::vector<int> v = {2, 3, 6, 15, 16, 19, 21, 24, 33};
    return v;
}

DedupeResult reflect_and_dedupe(const std::vector<RepresentativeClass>& full) {
    std::map<std::string, int> index_of;
    for (const auto& c : full)
        index_of[c.pattern.render()] = c.label;
    DedupeResult res;
    res.partner.assign(full.size() + 1, 0);
    for (const auto& c : full) {
        RepPattern img = reflect(c.pattern);
        auto it = index_of.find(img.render());
        if (it == index_of.end())
            throw ConsistencyError("reflection image of class " + std::to_string(c.label) +
                                   " (" + img.render() + ") is not in the list");
        res.partner[c.label] = it->second;
    }
    for (const auto& c : full)
        if (res.partner[res.partner[c.label]] != c.label)
            throw ConsistencyError("reflection is not an involution at class " +
                                   std::to_string(c.label));
    int next = 1;
    res.kept_from.assign(1, 0);
    for (const auto& c : full) {
        if (res.partner[c.label] < c.label)
            continue; // the partner was kept
        RepresentativeClass kept = c;
        kept.label = next++;
        kept.standard_invariants =
            std::find(nonstandard_labels().begin(), nonstandard_labels().end(), kept.label) ==
            nonstandard_labels().end();
        res.classes.push_back(std::move(kept));
        res.kept_from.push_back(c.label);
    }
    return res;
}

// ---------------------------------------------------------------------------
// normal form
// ---------------------------------------------------------------------------

namespace {

SubalgebraElement unit_element(Gen g, GradedExpr c) {
    SubalgebraElement e;
    e[g] = std::move(c);
    return e;
}

// exact solve of sum_i c_i basis_i == target, coefficients rational
std::optional<std::vector<GaussRat>> solve_linear(const std::vector<GradedExpr>& basis,
                                                  const GradedExpr& target) {
    std::map<Monomial, size_t, MonoLess> row_of;
    std::vector<std::vector<GaussRat>> A;
    std::vector<GaussRat> rhs;
    auto row = [&](const Monomial& m) {
        auto it = row_of.find(m);
        if (it != row_of.end())
            return it->second;
        size_t idx = A.size();
        row_of.emplace(m, idx);
        A.emplace_back(basis.size(), GaussRat(0));
        rhs.emplace_back(0);
        return idx;
    };
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].has_den())
            return std::nullopt;
        for (const auto& [m, c] : basis[i].num())
            A[row(m)][i] += c;
    }
    if (target.has_den())
        return std::nullopt;
    for (const auto& [m, c] : target.num())
        rhs[row(m)] += c;
    // Gaussian elimination
    size_t rows = A.size(), n = basis.size();
    std::vector<int> pivots;
    size_t r = 0;
    for (size_t col = 0; col < n && r < rows; ++col) {
        size_t sel = r;
        while (sel < rows && A[sel][col].is_zero())
            ++sel;
        if (sel == rows)
            continue;
        std::swap(A[sel], A[r]);
        std::swap(rhs[sel], rhs[r]);
        GaussRat inv = A[r][col].inverse();
        for (size_t j = col; j < n; ++j)
            A[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i2 = 0; i2 < rows; ++i2) {
            if (i2 == r || A[i2][col].is_zero())
                continue;
            GaussRat f = A[i2][col];
            for (size_t j = col; j < n; ++j)
                A[i2][j] -= f * A[r][j];
            rhs[i2] -= f * rhs[r];
        }
        pivots.push_back(static_cast<int>(col));
        ++r;
    }
    for (size_t i2 = r; i2 < rows; ++i2)
        if (!rhs[i2].is_zero())
            return std::nullopt;
    std::vector<GaussRat> c(n, GaussRat(0));
    for (size_t i2 = 0; i2 < r; ++i2)
        c[pivots[i2]] = rhs[i2];
    return c;
}

// candidate odd cofactors: quotients of target monomials by divisor monomials
void quotient_candidates(const GradedExpr& target, const GradedExpr& divisor,
                         std::vector<GradedExpr>& out) {
    for (const auto& [dm, dc] : target.num()) {
        for (const auto& [vm, vc] : divisor.num()) {
            // is vm.odd a subset of dm.odd?
            std::vector<Atom> rest;
            size_t vi = 0;
            bool subset = true;
            for (const auto& a : dm.odd) {
                if (vi < vm.odd.size() && atom_eq(a, vm.odd[vi]))
                    ++vi;
                else
                    rest.push_back(a);
            }
            subset = vi == vm.odd.size();
            if (!subset || rest.size() % 2 == 0)
                continue;
            GradedExpr m = GradedExpr::one();
            for (const auto& a : rest)
                m = m * GradedExpr::atom(a);
            bool seen = false;
            for (const auto& e : out)
                if (e == m)
                    seen = true;
            if (!seen)
                out.push_back(m);
        }
    }
}

// find Y = eta*Pg + lambda*Qg in the S1/S2 block such that Ad_exp(Y) shifts
// the even-translation coefficient by -delta (a pure soul), without touching
// anything else
std::optional<SubalgebraElement> solve_block_shift(const SubalgebraElement& x, Gen tr, Gen podd,
                                                   Gen qodd, const GradedExpr& delta) {
    const GradedExpr& mu = x[podd];
    const GradedExpr& nu = x[qodd];
    std::vector<GradedExpr> monos;
    quotient_candidates(delta, mu, monos);
    quotient_candidates(delta, nu, monos);
    if (monos.empty() || monos.size() > 64)
        return std::nullopt;
    // shift(eta, lambda) = eta nu + lambda mu + 2 lambda nu
    std::vector<GradedExpr> basis;
    basis.reserve(2 * monos.size());
    for (const auto& m : monos)
        basis.push_back(m * nu);
    for (const auto& m : monos)
        basis.push_back(m * mu + GradedExpr::integer(2) * (m * nu));
    auto sol = solve_linear(basis, -delta);
    if (!sol)
        return std::nullopt;
    GradedExpr eta, lambda;
    for (size_t i = 0; i < monos.size(); ++i) {
        eta += GradedExpr::coeff((*sol)[i]) * monos[i];
        lambda += GradedExpr::coeff((*sol)[monos.size() + i]) * monos[i];
    }
    SubalgebraElement Y;
    Y[podd] = eta;
    Y[qodd] = lambda;
    (void)tr;
    return Y;
}

int scale_weight(Gen g) {
    switch (g) {
    case Gen::P1:
    case Gen::P2: return 2;
    case Gen::P5: return 4;
    case Gen::D: return 0;
    default: return 1;
    }
}

std::optional<Rat> rational_body(const GradedExpr& c) {
    auto [body, soul] = c.body_soul();
    if (body.is_zero())
        return Rat(0);
    if (body.has_den() || body.num().size() != 1)
        return std::nullopt;
    const auto& [m, co] = *body.num().begin();
    if (!m.is_unit() || co.im != 0)
        return std::nullopt;
    return co.re;
}

} // namespace

SubalgebraElement apply_step(const ConjugationStep& step, const SubalgebraElement& x) {
    switch (step.kind) {
    case ConjugationStep::Kind::SpanScale: return step.factor * x;
    case ConjugationStep::Kind::Bch: return adjoint_action(step.y, x);
    case ConjugationStep::Kind::Dilation: return dilation_conjugate(x, step.q, step.s);
    }
    return x;
}

NormalizationResult normalize_to_representative(const SubalgebraElement& input, Stage stage) {
    validate_element(input);
    if (input.is_zero())
        throw NoMatchError("zero element");

    std::set<Gen> allowed;
    switch (stage) {
    case Stage::S1: allowed = {Gen::P1, Gen::P3, Gen::Q1}; break;
    case Stage::S2: allowed = {Gen::P2, Gen::P4, Gen::Q2}; break;
    case Stage::S: allowed = {Gen::P1, Gen::P3, Gen::Q1, Gen::P2, Gen::P4, Gen::Q2}; break;
    case Stage::TildeS:
        allowed = {Gen::P1, Gen::P3, Gen::Q1, Gen::P2, Gen::P4, Gen::Q2, Gen::P5};
        break;
    case Stage::Full:
        allowed = {Gen::P1, Gen::P3, Gen::Q1, Gen::P2, Gen::P4, Gen::Q2, Gen::P5, Gen::D};
        break;
    }
    for (int g = 0; g < kNumGen; ++g)
        if (!input.coeff[g].is_zero() && !allowed.count(static_cast<Gen>(g)))
            throw NoMatchError(std::string("generator ") + gen_name(static_cast<Gen>(g)) +
                               " is outside stage");

    NormalizationResult res;
    SubalgebraElement x = input;
    auto push_step = [&res, &x](ConjugationStep st) {
        x = apply_step(st, x);
        res.steps.push_back(std::move(st));
    };

    bool has_d = !x[Gen::D].is_zero();
    int scale_counter = 0;

    if (has_d) {
        // D coefficient to exactly 1 (span rescale)
        if (!(x[Gen::D] == GradedExpr::one())) {
            GradedExpr inv;
            try {
                inv = x[Gen::D].inverse();
            } catch (const DivisionError&) {
                throw NoMatchError("D coefficient is not invertible");
            }
            ConjugationStep st;
            st.kind = ConjugationStep::Kind::SpanScale;
            st.factor = inv;
            push_step(std::move(st));
        }
        // translation coefficients: remove souls (and zero-body terms
        // entirely) by exp(r g) shifts, [g, D] = w g
        for (Gen g : kEvenTranslations) {
            if (x[g].is_zero())
                continue;
            auto [body, soul] = x[g].body_soul();
            GradedExpr remove = body.is_zero() ? x[g] : soul;
            if (remove.is_zero())
                continue;
            ConjugationStep st;
            st.kind = ConjugationStep::Kind::Bch;
            st.y = unit_element(g, -(remove / GradedExpr::integer(scale_weight(g))));
            push_step(std::move(st));
        }
        // scale the first remaining translation body to +-1 via exp(tD);
        // square roots of rationals stay exact through the sqrt(c)^2 -> c
        // rewrite, so the leading body lands on exactly +-1
        for (Gen g : kEvenTranslations) {
            if (x[g].is_zero())
                continue;
            auto b = rational_body(x[g]);
            if (!b || *b == 0)
                throw NoMatchError("leading translation coefficient has no rational body");
            Rat absb = *b < 0 ? -*b : *b;
            ++scale_counter;
            GradedExpr q_expr;
            if (g == Gen::P5)
                q_expr = ge_sqrt(GradedExpr::coeff(GaussRat(Rat(1) / absb)));
            else
                q_expr = GradedExpr::coeff(GaussRat(Rat(1) / absb));
            ConjugationStep st;
            st.kind = ConjugationStep::Kind::Dilation;
            st.q = q_expr;
            st.s = ge_sqrt(q_expr);
            push_step(std::move(st));
            break;
        }
    } else {
        // remove zero-body even-translation coefficients by block shifts
        struct Block {
            Gen tr, p, q;
        };
        const Block blocks[2] = {{Gen::P1, Gen::P3, Gen::Q1}, {Gen::P2, Gen::P4, Gen::Q2}};
        for (const auto& blk : blocks) {
            if (x[blk.tr].is_zero())
                continue;
            auto [body, soul] = x[blk.tr].body_soul();
            if (!body.is_zero())
                continue;
            auto y = solve_block_shift(x, blk.tr, blk.p, blk.q, x[blk.tr]);
            if (!y)
                throw NoMatchError("cannot remove soul-only coefficient on " +
                                   std::string(gen_name(blk.tr)));
            ConjugationStep st;
            st.kind = ConjugationStep::Kind::Bch;
            st.y = *y;
            push_step(std::move(st));
            if (!x[blk.tr].is_zero())
                throw NoMatchError("block shift failed to cancel the coefficient");
        }
        if (!x[Gen::P5].is_zero()) {
            auto [body, soul] = x[Gen::P5].body_soul();
            bool leading = x[Gen::P1].is_zero() && x[Gen::P2].is_zero();
            if (body.is_zero() && !leading)
                throw NoMatchError("soul-only P5 coefficient cannot be normalized");
        }
        // span-rescale the first even translation to 1
        for (Gen g : kEvenTranslations) {
            if (x[g].is_zero())
                continue;
            GradedExpr inv;
            try {
                inv = x[g].inverse();
            } catch (const DivisionError&) {
                throw NoMatchError("leading coefficient is not invertible");
            }
            if (!(x[g] == GradedExpr::one())) {
                ConjugationStep st;
                st.kind = ConjugationStep::Kind::SpanScale;
                st.factor = inv;
                push_step(std::move(st));
            }
            break;
        }
    }

    // read off the pattern and the parameter map
    RepPattern p;
    int odd_i = 0, even_i = 0;
    bool eps_used = false;
    for (Gen g : kDisplay) {
        const GradedExpr& c = x[g];
        if (c.is_zero())
            continue;
        if (g == Gen::D) {
            p.terms.emplace_back(g, CoeffKind::Unit);
            continue;
        }
        bool is_tr = g == Gen::P1 || g == Gen::P2 || g == Gen::P5;
        if (is_tr && has_d && !eps_used) {
            auto b = rational_body(c);
            if (!b || (*b != 1 && *b != -1))
                throw NoMatchError("leading translation did not normalize to +-1");
            p.terms.emplace_back(g, CoeffKind::Eps);
            res.params.emplace_back("eps", c);
            eps_used = true;
            continue;
        }
        if (is_tr && !has_d && c == GradedExpr::one() && p.terms.empty()) {
            p.terms.emplace_back(g, CoeffKind::Unit);
            continue;
        }
        if (gen_parity(g) == Parity::Odd) {
            if (c.parity() != Parity::Odd)
                throw NoMatchError("odd generator with non-odd coefficient");
            p.terms.emplace_back(g, CoeffKind::OddParam);
            res.params.emplace_back(kOddNames[odd_i++], c);
        } else {
            p.terms.emplace_back(g, CoeffKind::EvenParam);
            res.params.emplace_back(kEvenNames[even_i++], c);
        }
    }
    display_sort(p);
    res.pattern = p;

    // locate the pattern in the stage list
    std::vector<RepresentativeClass> list;
    switch (stage) {
    case Stage::S1: list = classify_stage_s1(); break;
    case Stage::S2: list = classify_stage_s2(); break;
    case Stage::S: list = classify_stage_s(); break;
    case Stage::TildeS: list = classify_stage_tilde_s(); break;
    case Stage::Full: list = classify_stage_full(); break;
    }
    std::string rendered = p.render();
    for (const auto& c : list) {
        if (c.pattern.render() == rendered) {
            res.g_label = c.label;
            break;
        }
    }
    if (res.g_label == 0)
        throw NoMatchError("no representative matches pattern " + rendered);
    if (stage == Stage::Full) {
        static const DedupeResult dd = reflect_and_dedupe(classify_stage_full());
        int g = res.g_label;
        int kept = std::min(g, dd.partner[g]);
        for (size_t l = 1; l < dd.kept_from.size(); ++l)
            if (dd.kept_from[l] == kept) {
                res.l_label = static_cast<int>(l);
                break;
            }
    }
    return res;
}

} // namespace susyms

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "susyms/expr.hpp"

namespace susyms {

/// Generator indices in the symmetry algebra basis order (P1..P5, D, Q1, Q2).
enum class Gen : int { P1 = 0, P2 = 1, P3 = 2, P4 = 3, P5 = 4, D = 5, Q1 = 6, Q2 = 7 };
constexpr int kNumGen = 8;

Parity gen_parity(Gen g);
const char* gen_name(Gen g);

/// One-dimensional span given by a linear combination of the basis generators
/// with even/odd formal parameters. Elements are even: odd generators carry
/// odd coefficients.
struct SubalgebraElement {
    std::array<GradedExpr, kNumGen> coeff;

    GradedExpr& operator[](Gen g) { return coeff[static_cast<int>(g)]; }
    const GradedExpr& operator[](Gen g) const { return coeff[static_cast<int>(g)]; }
    bool is_zero() const;
    friend SubalgebraElement operator+(const SubalgebraElement& a, const SubalgebraElement& b);
    friend SubalgebraElement operator*(const GradedExpr& c, const SubalgebraElement& e);
    friend bool operator==(const SubalgebraElement& a, const SubalgebraElement& b);
    std::string str() const;
};

/// Throws ParityError unless every generator carries a coefficient of the
/// matching parity (making the element even).
void validate_element(const SubalgebraElement& e);

/// Graded bracket of elements, distributing over the formal coefficients with
/// the sign rule [aX, bY] = -+ a b [X,Y] (minus exactly when X and Y are both
/// odd, where the generator bracket is the anticommutator). The structure
/// constants are the engine-computed supercommutation table.
SubalgebraElement element_bracket(const SubalgebraElement& a, const SubalgebraElement& b);

/// Ad_exp(Y) X = X + [Y,X] + 1/2 [Y,[Y,X]] + ...; throws TruncationError when
/// the series has not terminated by max_depth (e.g. Y involving D against a
/// non-commuting X; use dilation_conjugate for that orbit).
SubalgebraElement adjoint_action(const SubalgebraElement& Y, const SubalgebraElement& X,
                                 int max_depth = 8);

/// Conjugation by exp(tD), evaluated through the grading weights: coefficients
/// on P1, P2 scale by q, on P5 by q^2, on the odd generators by s (= sqrt(q)),
/// with D fixed. q must be even and invertible.
SubalgebraElement dilation_conjugate(const SubalgebraElement& x, const GradedExpr& q,
                                     const GradedExpr& s);

enum class CoeffKind { Unit, Eps, EvenParam, OddParam };

/// Shape of a representative: ordered (generator, coefficient-kind) pairs in
/// display order D, P1, P2, P5, P3, P4, Q1, Q2. Parameter names are positional
/// (k then l for even parameters, mu/nu/rho/sigma for odd ones).
struct RepPattern {
    std::vector<std::pair<Gen, CoeffKind>> terms;

    std::string render() const;
    friend bool operator==(const RepPattern& a, const RepPattern& b) {
        return a.terms == b.terms;
    }
};

RepPattern parse_pattern(const std::string& s);

/// Instantiate a pattern as an element: Unit -> 1, Eps -> the given sign,
/// EvenParam/OddParam -> the formal parameter atoms of the rendered names
/// (suffix appended to distinguish instances).
SubalgebraElement instantiate(const RepPattern& p, const std::string& suffix = "",
                              int eps_sign = 1);

enum class Stage { S1, S2, S, TildeS, Full };

struct RepresentativeClass {
    int label = 0; // global index into the staged list (1-based)
    Stage stage = Stage::S1;
    RepPattern pattern;
    bool standard_invariants = true; // false for the nine flagged classes
};

/// Stage lists regenerated by the classification procedures.
std::vector<RepresentativeClass> classify_stage_s1();
std::vector<RepresentativeClass> classify_stage_s2();
/// Goursat combination of two summand classifications with zero cross
/// brackets: the non-twisted unions followed by the twisted classes A+tau(A).
std::vector<RepresentativeClass> goursat_combine(const std::vector<RepresentativeClass>& a,
                                                 const std::vector<RepresentativeClass>& b);
std::vector<RepresentativeClass> classify_stage_s();
std::vector<RepresentativeClass> classify_stage_tilde_s();
/// Splitting classes (the tilde-S list plus {D}) followed by the non-splitting
/// classes D + sum c_i Z_i with translation coefficients normalized to eps.
std::vector<RepresentativeClass> splitting_nonsplitting_with_D(
    const std::vector<RepresentativeClass>& tilde_s);
std::vector<RepresentativeClass> classify_stage_full();

/// The reference-order transcriptions the regenerated lists are diffed against.
std::vector<std::string> transcribed_full_list();
std::vector<std::string> transcribed_deduped_list();

/// Discrete reflection x<->y: P1<->P2, P3<->P4, Q1<->Q2, D and P5 fixed.
RepPattern reflect(const RepPattern& p);
SubalgebraElement reflect(const SubalgebraElement& e);

struct DedupeResult {
    std::vector<RepresentativeClass> classes; // labeled 1..143 in kept order
    std::vector<int> partner;                 // partner[i] = reflection image of full list i (1-based)
    std::vector<int> kept_from;               // kept_from[l] = original full-list label
};

/// Pair each class with its reflection image, keep the smaller index of each
/// pair, relabel in kept order. ConsistencyError if an image is not found.
DedupeResult reflect_and_dedupe(const std::vector<RepresentativeClass>& full);

/// Labels (into the deduped list) of the nine subalgebras with non-standard
/// invariant structure.
const std::vector<int>& nonstandard_labels();

struct ConjugationStep {
    enum class Kind { SpanScale, Bch, Dilation };
    Kind kind = Kind::SpanScale;
    GradedExpr factor;   // SpanScale: multiply the element by factor
    SubalgebraElement y; // Bch: Ad_exp(y)
    GradedExpr q, s;     // Dilation scales (q on P1/P2, q^2 on P5, s on odds)
};

SubalgebraElement apply_step(const ConjugationStep& step, const SubalgebraElement& x);

struct NormalizationResult {
    int g_label = 0; // stage-list label
    int l_label = 0; // deduped label (Full stage) or 0
    RepPattern pattern;
    std::vector<ConjugationStep> steps;
    // pattern parameter name -> value in terms of the input's parameters
    std::vector<std::pair<std::string, GradedExpr>> params;
};

/// Normal form of a nonzero element under the implemented procedure: span
/// rescaling, soul-removing shifts, dilation scaling of translation
/// coefficients, positional parameter renaming. NoMatchError when the element
/// lies outside the procedure.
NormalizationResult normalize_to_representative(const SubalgebraElement& x, Stage stage);

} // namespace susyms

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "susyms/atom.hpp"
#include "susyms/rational.hpp"

namespace susyms {

/// Product of atoms: even atoms with positive exponents, odd atoms as a
/// strictly increasing sequence (nilpotency is structural).
struct Monomial {
    std::vector<std::pair<Atom, int>> even; // sorted by atom order, exp >= 1
    std::vector<Atom> odd;                  // strictly increasing

    int degree() const;
    Parity parity() const { return odd.size() % 2 == 0 ? Parity::Even : Parity::Odd; }
    bool is_unit() const { return even.empty() && odd.empty(); }
    bool has_soul() const { return !odd.empty(); }
};

int mono_cmp(const Monomial& a, const Monomial& b); // graded-lex, multiplicative on soulless factors

inline bool operator==(const Monomial& a, const Monomial& b) { return mono_cmp(a, b) == 0; }
inline bool operator!=(const Monomial& a, const Monomial& b) { return mono_cmp(a, b) != 0; }

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(a, b) < 0; }
};

/// Canonical polynomial layer: sum of monomials with nonzero Gaussian-rational
/// coefficients, no two terms sharing a monomial.
using Poly = std::map<Monomial, GaussRat, MonoLess>;

int poly_cmp(const Poly& a, const Poly& b);

struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const { return poly_cmp(a, b) < 0; }
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const GaussRat& c);
Parity poly_parity(const Poly& a);
bool poly_has_soul(const Poly& a);
/// Exact division; divisor must be soulless. nullopt when not divisible.
std::optional<Poly> poly_divide_exact(const Poly& num, const Poly& div);

/// The universal value type: a canonical quotient num / prod(f_i^e_i) with
/// monic, even, soulless denominator factors. Immutable after construction;
/// all operations are pure.
class GradedExpr {
  public:
    GradedExpr() = default; // zero

    static GradedExpr zero() { return {}; }
    static GradedExpr one() { return integer(1); }
    static GradedExpr integer(long n);
    static GradedExpr rational(long num, long den);
    static GradedExpr coeff(const GaussRat& c);
    static GradedExpr i() { return coeff(GaussRat::i()); }
    static GradedExpr atom(const Atom& a);
    static GradedExpr from_poly(Poly p);

    const Poly& num() const { return num_; }
    const std::map<Poly, int, PolyLess>& den() const { return den_; }
    Poly den_expanded() const;
    bool has_den() const { return !den_.empty(); }

    bool is_zero() const { return num_.empty(); }
    Parity parity() const;
    bool is_homogeneous_even() const { return parity() == Parity::Even || parity() == Parity::Zero; }

    GradedExpr operator-() const;
    friend GradedExpr operator+(const GradedExpr& a, const GradedExpr& b);
    friend GradedExpr operator-(const GradedExpr& a, const GradedExpr& b);
    friend GradedExpr operator*(const GradedExpr& a, const GradedExpr& b);
    friend GradedExpr operator/(const GradedExpr& a, const GradedExpr& b);
    GradedExpr& operator+=(const GradedExpr& o) { return *this = *this + o; }
    GradedExpr& operator-=(const GradedExpr& o) { return *this = *this - o; }
    GradedExpr& operator*=(const GradedExpr& o) { return *this = *this * o; }

    GradedExpr pow(int n) const; // n >= 0
    /// Multiplicative inverse. Requires an invertible body: a soulless part
    /// that is a nonzero scalar or polynomial; the soul is inverted by its
    /// terminating geometric series.
    GradedExpr inverse() const;

    /// Simultaneous parity-preserving substitution, then renormalization.
    GradedExpr substitute(const std::vector<std::pair<Atom, GradedExpr>>& bindings) const;

    /// Split into (body, soul): body collects the soulless monomials.
    std::pair<GradedExpr, GradedExpr> body_soul() const;

    /// Group terms by their odd-atom content: odd monomial -> even cofactor.
    /// The cofactors keep this expression's denominator.
    std::vector<std::pair<std::vector<Atom>, GradedExpr>> split_by_odd() const;

    /// Numerator with denominators dropped and rational content removed:
    /// the canonical representative of the zero set. Leading coefficient
    /// normalized to 1.
    GradedExpr primitive_part() const;

    /// Algebraic equality (cross-multiplied).
    friend bool operator==(const GradedExpr& a, const GradedExpr& b);
    friend bool operator!=(const GradedExpr& a, const GradedExpr& b) { return !(a == b); }

    /// Structural order (for deterministic containers / serialization).
    friend int expr_cmp(const GradedExpr& a, const GradedExpr& b);

    std::string str() const;

  private:
    Poly num_;
    std::map<Poly, int, PolyLess> den_;

    void push_den_factor(const Poly& f, int exp);
    void cancel();
    static GradedExpr make(Poly num, std::map<Poly, int, PolyLess> den);
    friend GradedExpr div_by_poly(const GradedExpr& a, const Poly& p);
};

/// Convenience builders used across the project.
GradedExpr ge_var(const std::string& name);       // bosonic variable
GradedExpr ge_fvar(const std::string& name);      // fermionic variable
GradedExpr ge_odd(const std::string& name);       // odd constant
GradedExpr ge_even(const std::string& name);      // even constant
GradedExpr ge_jet(FieldId f, int dx = 0, int dy = 0, bool t1 = false, bool t2 = false);
GradedExpr ge_jet(const JetKey& k);
GradedExpr ge_func(const std::string& name, const std::vector<GradedExpr>& args);
GradedExpr ge_sqrt(const GradedExpr& a);
GradedExpr ge_ln(const GradedExpr& a);
GradedExpr ge_asin(const GradedExpr& a);
GradedExpr ge_sin(const GradedExpr& a);
GradedExpr ge_cos(const GradedExpr& a);

} // namespace susyms

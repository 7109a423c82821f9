#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace susyms {

class GradedExpr;

enum class Parity : uint8_t { Zero, Even, Odd, Mixed };

inline Parity flip(Parity p) {
    if (p == Parity::Even) return Parity::Odd;
    if (p == Parity::Odd) return Parity::Even;
    return p;
}

enum class AtomKind : uint8_t {
    BosonicVar,   // x, y, xi, Phi-as-coordinate, ...
    FermionicVar, // theta1, theta2, eta1, eta2
    OddConst,     // mu, nu, rho, sigma, eta, lambda, C3..C6, ...
    EvenConst,    // k, ell, eps, m, A, B, C, K, C1, C2, s0, k0, ...
    Func,         // named even function applied to even arguments
    Jet,          // derivative symbol of a declared field
};

/// Fields that admit jet symbols. Superfield components v, phi, psi, u are
/// functions of (x, y); omega/f/g live on the similarity variable xi; the
/// generic fields are the test functions brackets are computed on.
enum class FieldId : uint8_t {
    Phi,      // bosonic superfield Phi(x, y, theta1, theta2)
    V,        // v(x, y) even component
    PhiC,     // phi(x, y) odd component
    PsiC,     // psi(x, y) odd component
    U,        // u(x, y) even component (also the classical surface function)
    Omega,    // w(xi) reduced unknown
    FRed,     // f(xi)
    GRed,     // g(xi)
    FSuper,   // generic F(x, y, theta1, theta2, Phi) for superspace brackets
    FClassic, // generic F(x, y, u) for classical brackets
};

struct FieldInfo {
    const char* name;
    Parity base;
    int n_even_args;                   // number of even arguments (<= 3)
    std::array<const char*, 3> even_args;
    bool has_theta;                    // admits theta1/theta2 slots
};

const FieldInfo& field_info(FieldId f);

/// Derivative multi-index of a field: per-even-argument counts in the order of
/// the field's argument list, plus theta flags. Stored in normal order
/// dx^a dy^b dtheta1 dtheta2 with dtheta2 acting first; producing the opposite
/// theta order rewrites with a sign at application time.
struct JetKey {
    FieldId field{FieldId::Phi};
    std::array<uint16_t, 3> d{0, 0, 0};
    bool dth1 = false;
    bool dth2 = false;

    Parity parity() const;
    int total_order() const { return d[0] + d[1] + d[2] + (dth1 ? 1 : 0) + (dth2 ? 1 : 0); }

    friend bool operator==(const JetKey& a, const JetKey& b) {
        return a.field == b.field && a.d == b.d && a.dth1 == b.dth1 && a.dth2 == b.dth2;
    }
    friend bool operator<(const JetKey& a, const JetKey& b);
};

struct Atom {
    AtomKind kind{AtomKind::BosonicVar};
    std::string name;                                     // var/const/function name
    std::vector<std::shared_ptr<const GradedExpr>> args;  // Func only
    JetKey jet;                                           // Jet only

    Parity parity() const;
    bool is_odd() const { return parity() == Parity::Odd; }

    static Atom bvar(std::string n) { return {AtomKind::BosonicVar, std::move(n), {}, {}}; }
    static Atom fvar(std::string n) { return {AtomKind::FermionicVar, std::move(n), {}, {}}; }
    static Atom odd_const(std::string n) { return {AtomKind::OddConst, std::move(n), {}, {}}; }
    static Atom even_const(std::string n) { return {AtomKind::EvenConst, std::move(n), {}, {}}; }
    static Atom func(std::string n, std::vector<std::shared_ptr<const GradedExpr>> a);
    static Atom jet_atom(JetKey j) { return {AtomKind::Jet, {}, {}, j}; }

    std::string str() const;
};

/// Total order on atoms. Fixes the global odd order
/// theta1 < theta2 < eta1 < eta2 < odd constants < odd jets
/// and a deterministic order on even atoms; serialization and canonical forms
/// inherit stability from it.
int atom_cmp(const Atom& a, const Atom& b);

inline bool atom_less(const Atom& a, const Atom& b) { return atom_cmp(a, b) < 0; }
inline bool atom_eq(const Atom& a, const Atom& b) { return atom_cmp(a, b) == 0; }

} // namespace susyms

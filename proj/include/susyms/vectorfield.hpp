#pragma once

#include <optional>
#include <string>
#include <vector>

#include "susyms/deriv.hpp"
#include "susyms/expr.hpp"

namespace susyms {

/// First-order differential operator sum_i a_i(coords) d/d(coord_i) with a
/// homogeneous parity: an even field has even coefficients on even coordinates
/// and odd coefficients on odd ones; an odd field the reverse.
struct VectorField {
    std::vector<Atom> coords;
    std::vector<GradedExpr> coeffs;
    Parity parity = Parity::Even;

    /// Derivation action on an expression (coefficients multiply from the left).
    GradedExpr apply(const GradedExpr& e) const;

    bool is_zero() const;
    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const GradedExpr& c, const VectorField& v);
    friend bool operator==(const VectorField& a, const VectorField& b);
};

/// Validates homogeneity and returns the field's parity; ParityError on mixed
/// coefficient parities.
Parity field_parity(const VectorField& v);

/// Supercommutator [X,Y] = XY - YX, anticommutator {X,Y} = XY + YX when both
/// arguments are odd. Computed by composing the operators on a generic
/// function of the coordinates and reading off first-order coefficients; the
/// second-order part must cancel identically.
VectorField superbracket(const VectorField& X, const VectorField& Y);

struct StructureTable {
    std::vector<std::string> names;
    std::vector<Parity> parities;
    // entries[i][j]: coefficients of [basis_i, basis_j] over the basis
    std::vector<std::vector<std::vector<GaussRat>>> entries;
    // true when the (i,j) bracket is the anticommutator
    std::vector<std::vector<bool>> anticommutator;

    std::string entry_str(size_t i, size_t j) const;
};

/// Full bracket table; every bracket must re-expand in the span of the basis
/// with rational constants, otherwise ClosureError.
StructureTable structure_table(const std::vector<VectorField>& basis,
                               const std::vector<std::string>& names);

/// Graded Jacobi identity residual for a triple.
VectorField super_jacobi_residual(const VectorField& X, const VectorField& Y,
                                  const VectorField& Z);

struct DecompositionReport {
    struct Check {
        std::string name;
        bool holds;
        std::string detail;
    };
    std::vector<Check> checks;
    bool all() const;
};

/// The eight symmetry generators of the superspace minimal-surface equation
/// over coordinates (x, y, theta1, theta2, Phi):
/// P1..P5 translations/shift, D the dilation, Q1, Q2 the supersymmetries.
std::vector<VectorField> susy_basis();
std::vector<std::string> susy_basis_names();

/// The seven classical generators over coordinates (x, y, u).
std::vector<VectorField> classical_basis();
std::vector<std::string> classical_basis_names();

/// Checks the semidirect/direct-sum structure of both symmetry algebras:
/// each summand closes, distinct direct summands commute, and the dilation
/// (resp. e7 and the rotation block) maps each summand into itself. Also
/// verifies that {e4, e5, e6} has a negative-definite Killing form.
DecompositionReport verify_decomposition();

/// Killing form on a sub-basis, from engine-computed structure constants.
std::vector<std::vector<GaussRat>> killing_form(const std::vector<VectorField>& basis);

bool negative_definite(const std::vector<std::vector<GaussRat>>& k);

} // namespace susyms

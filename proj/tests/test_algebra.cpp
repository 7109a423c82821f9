#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "susyms/errors.hpp"
#include "susyms/vectorfield.hpp"

using namespace susyms;

namespace {

// paper row/column order for the supercommutation table
const std::vector<int> kOrder = {5, 0, 2, 6, 1, 3, 7, 4}; // D,P1,P3,Q1,P2,P4,Q2,P5

std::vector<std::vector<std::string>> expected_susy_table() {
    return {
        {"0", "-2*P1", "-P3", "-Q1", "-2*P2", "-P4", "-Q2", "-4*P5"},
        {"2*P1", "0", "0", "0", "0", "0", "0", "0"},
        {"P3", "0", "0", "-P1", "0", "0", "0", "0"},
        {"Q1", "0", "-P1", "-2*P1", "0", "0", "0", "0"},
        {"2*P2", "0", "0", "0", "0", "0", "0", "0"},
        {"P4", "0", "0", "0", "0", "0", "-P2", "0"},
        {"Q2", "0", "0", "0", "0", "-P2", "-2*P2", "0"},
        {"4*P5", "0", "0", "0", "0", "0", "0", "0"},
    };
}

} // namespace

TEST_CASE("supercommutation table reproduces the reference cell-for-cell") {
    auto basis = susy_basis();
    auto t = structure_table(basis, susy_basis_names());
    auto expect = expected_susy_table();
    for (size_t r = 0; r < 8; ++r)
        for (size_t c = 0; c < 8; ++c) {
            INFO("row ", r, " col ", c);
            CHECK(t.entry_str(kOrder[r], kOrder[c]) == expect[r][c]);
        }
    // anticommutator exactly when both arguments are fermionic
    CHECK(t.anticommutator[6][6]);  // {Q1,Q1}
    CHECK(t.anticommutator[2][6]);  // {P3,Q1}
    CHECK(!t.anticommutator[5][6]); // [D,Q1]
}

TEST_CASE("super-antisymmetry") {
    auto basis = susy_basis();
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            VectorField a = superbracket(basis[i], basis[j]);
            VectorField b = superbracket(basis[j], basis[i]);
            bool both_odd = field_parity(basis[i]) == Parity::Odd &&
                            field_parity(basis[j]) == Parity::Odd;
            int sgn = both_odd ? 1 : -1;
            CHECK((a + (GradedExpr::integer(-sgn) * b)).is_zero());
        }
}

TEST_CASE("graded Jacobi identity holds on all generator triples") {
    auto basis = susy_basis();
    for (size_t i = 0; i < 8; ++i)
        for (size_t j = 0; j < 8; ++j)
            for (size_t k = 0; k < 8; ++k) {
                INFO("triple ", i, " ", j, " ", k);
                CHECK(super_jacobi_residual(basis[i], basis[j], basis[k]).is_zero());
            }
}

TEST_CASE("mixed-parity input is rejected") {
    auto basis = susy_basis();
    VectorField bad = basis[0] + basis[6]; // P1 + Q1
    CHECK_THROWS_AS(superbracket(bad, basis[0]), ParityError);
}

TEST_CASE("closure error carries the offending bracket") {
    auto basis = susy_basis();
    // {D, Q1} alone does not close ([Q1,Q1] = -2P1 is outside the span)
    std::vector<VectorField> sub = {basis[5], basis[6]};
    CHECK_THROWS_AS(structure_table(sub, {"D", "Q1"}), ClosureError);
    // a single translation closes trivially
    auto t = structure_table({basis[0]}, {"P1"});
    CHECK(t.entry_str(0, 0) == "0");
}

TEST_CASE("classical commutator table matches the reference relations") {
    auto basis = classical_basis();
    auto t = structure_table(basis, classical_basis_names());
    auto E = [&](int i, int j) { return t.entry_str(i - 1, j - 1); };
    CHECK(E(1, 4) == "e2");
    CHECK(E(1, 6) == "-e3");
    CHECK(E(1, 7) == "e1");
    CHECK(E(2, 4) == "-e1");
    CHECK(E(2, 5) == "e3");
    CHECK(E(2, 7) == "e2");
    CHECK(E(3, 5) == "-e2");
    CHECK(E(3, 6) == "e1");
    CHECK(E(3, 7) == "e3");
    CHECK(E(4, 5) == "-e6");
    CHECK(E(4, 6) == "e5");
    CHECK(E(5, 6) == "-e4");
    // all remaining upper-triangle entries vanish
    const std::set<std::pair<int, int>> nonzero = {{1, 4}, {1, 6}, {1, 7}, {2, 4}, {2, 5}, {2, 7},
                                                   {3, 5}, {3, 6}, {3, 7}, {4, 5}, {4, 6}, {5, 6}};
    for (int i = 1; i <= 7; ++i)
        for (int j = i; j <= 7; ++j) {
            if (nonzero.count({i, j}))
                continue;
            INFO("entry ", i, " ", j);
            CHECK(E(i, j) == "0");
        }
}

TEST_CASE("decomposition structure verified") {
    auto rep = verify_decomposition();
    for (const auto& c : rep.checks) {
        INFO(c.name);
        CHECK(c.holds);
    }
    CHECK(rep.all());
}

TEST_CASE("killing form of the rotation block is negative definite") {
    auto cb = classical_basis();
    auto K = killing_form({cb[3], cb[4], cb[5]});
    CHECK(negative_definite(K));
    CHECK(K[0][0] == GaussRat(-2));
    CHECK(K[0][1] == GaussRat(0));
    // translations are not: Killing form vanishes there
    auto K2 = killing_form({cb[0], cb[1], cb[2]});
    CHECK(!negative_definite(K2));
}

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "susyms/expr.hpp"

namespace susyms {

/// Point bindings for numeric evaluation: named atoms to complex values.
struct NumericEnv {
    std::vector<std::pair<std::string, std::complex<double>>> values;
    bool real_domain = false; // reject negative radicands / out-of-range asin

    void set(const std::string& name, std::complex<double> v);
    const std::complex<double>* find(const std::string& name) const;
};

/// Evaluate a soulless expression (no odd atoms, no jets) to a complex number.
/// Throws DomainError on unbound atoms, non-finite results, or (in real mode)
/// arguments outside the real domain of sqrt/ln/asin.
std::complex<double> evaluate(const GradedExpr& e, const NumericEnv& env);

} // namespace susyms

#pragma once

#include <complex>

namespace susyms {

/// Carlson symmetric forms, real and principal-branch complex.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
std::complex<double> carlson_rf(std::complex<double> x, std::complex<double> y,
                                std::complex<double> z);
std::complex<double> carlson_rd(std::complex<double> x, std::complex<double> y,
                                std::complex<double> z);

/// Legendre incomplete integrals of amplitude phi and modulus k (k^2 < 1,
/// |phi| <= pi/2). DomainError otherwise.
double elliptic_f(double phi, double k);
double elliptic_e(double phi, double k);

/// Same integrals with the sine-form upper limit z = sin(phi), continued to
/// complex arguments on principal branches.
std::complex<double> elliptic_f_z(std::complex<double> z, std::complex<double> k);
std::complex<double> elliptic_e_z(std::complex<double> z, std::complex<double> k);

} // namespace susyms

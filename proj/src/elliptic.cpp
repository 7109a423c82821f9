#include "susyms/elliptic.hpp"

#include <cmath>

#include "susyms/errors.hpp"

namespace susyms {

namespace {

// duplication theorem iterations until the arguments are close enough for the
// fifth-order Taylor tail
template <typename T> T rf_impl(T x, T y, T z) {
    const double errtol = 1e-4; // relative error ~ errtol^6
    T xt = x, yt = y, zt = z;
    double scale;
    T mu;
    int iter = 0;
    while (true) {
        T sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        T lam = sx * (sy + sz) + sy * sz;
        xt = (xt + lam) * 0.25;
        yt = (yt + lam) * 0.25;
        zt = (zt + lam) * 0.25;
        mu = (xt + yt + zt) / 3.0;
        scale = std::max({std::abs(xt - mu), std::abs(yt - mu), std::abs(zt - mu)}) /
                std::abs(mu);
        if (scale < errtol || ++iter > 200)
            break;
    }
    T dx = (mu - xt) / mu, dy = (mu - yt) / mu, dz = (mu - zt) / mu;
    T e2 = dx * dy - dz * dz;
    T e3 = dx * dy * dz;
    T s = 1.0 + (e2 * (-0.1) + e3 / 14.0) + e2 * e2 / 24.0 - e2 * e3 * (3.0 / 44.0);
    return s / std::sqrt(mu);
}

template <typename T> T rd_impl(T x, T y, T z) {
    const double errtol = 1e-4;
    T xt = x, yt = y, zt = z;
    T sum = 0.0;
    double fac = 1.0;
    double scale;
    T mu;
    int iter = 0;
    while (true) {
        T sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        T lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zt + lam));
        fac *= 0.25;
        xt = (xt + lam) * 0.25;
        yt = (yt + lam) * 0.25;
        zt = (zt + lam) * 0.25;
        mu = (xt + yt + 3.0 * zt) / 5.0;
        scale = std::max({std::abs(xt - mu), std::abs(yt - mu), std::abs(zt - mu)}) /
                std::abs(mu);
        if (scale < errtol || ++iter > 200)
            break;
    }
    T dx = (mu - xt) / mu, dy = (mu - yt) / mu, dz = (mu - zt) / mu;
    T ea = dx * dy;
    T eb = dz * dz;
    T ec = ea - eb;
    T ed = ea - 6.0 * eb;
    T ee = ed + ec + ec;
    T s = 1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
          dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea));
    return 3.0 * sum + fac * s / (mu * std::sqrt(mu));
}

} // namespace

double carlson_rf(double x, double y, double z) { return rf_impl<double>(x, y, z); }
double carlson_rd(double x, double y, double z) { return rd_impl<double>(x, y, z); }
std::complex<double> carlson_rf(std::complex<double> x, std::complex<double> y,
                                std::complex<double> z) {
    return rf_impl<std::complex<double>>(x, y, z);
}
std::complex<double> carlson_rd(std::complex<double> x, std::complex<double> y,
                                std::complex<double> z) {
    return rd_impl<std::complex<double>>(x, y, z);
}

double elliptic_f(double phi, double k) {
    if (k * k >= 1.0)
        throw DomainError("elliptic modulus requires k^2 < 1");
    if (std::abs(phi) > M_PI_2 + 1e-12)
        throw DomainError("amplitude outside the principal domain");
    double s = std::sin(phi), c = std::cos(phi);
    if (s == 0.0)
        return 0.0;
    return s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0);
}

double elliptic_e(double phi, double k) {
    if (k * k >= 1.0)
        throw DomainError("elliptic modulus requires k^2 < 1");
    if (std::abs(phi) > M_PI_2 + 1e-12)
        throw DomainError("amplitude outside the principal domain");
    double s = std::sin(phi), c = std::cos(phi);
    if (s == 0.0)
        return 0.0;
    double q = 1.0 - k * k * s * s;
    return s * carlson_rf(c * c, q, 1.0) -
           (k * k / 3.0) * s * s * s * carlson_rd(c * c, q, 1.0);
}

std::complex<double> elliptic_f_z(std::complex<double> z, std::complex<double> k) {
    if (z == 0.0)
        return 0.0;
    std::complex<double> one(1.0, 0.0);
    return z * carlson_rf(one - z * z, one - k * k * z * z, one);
}

std::complex<double> elliptic_e_z(std::complex<double> z, std::complex<double> k) {
    if (z == 0.0)
        return 0.0;
    std::complex<double> one(1.0, 0.0);
    std::complex<double> q = one - k * k * z * z;
    return z * carlson_rf(one - z * z, q, one) -
           (k * k / 3.0) * z * z * z * carlson_rd(one - z * z, q, one);
}

} // namespace susyms

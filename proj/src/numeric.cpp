#include "susyms/numeric.hpp"

#include <cmath>

#include "susyms/elliptic.hpp"
#include "susyms/errors.hpp"

namespace susyms {

void NumericEnv::set(const std::string& name, std::complex<double> v) {
    for (auto& [n, val] : values)
        if (n == name) {
            val = v;
            return;
        }
    values.emplace_back(name, v);
}

const std::complex<double>* NumericEnv::find(const std::string& name) const {
    for (const auto& [n, val] : values)
        if (n == name)
            return &val;
    return nullptr;
}

namespace {

using C = std::complex<double>;

C eval_atom(const Atom& a, const NumericEnv& env) {
    switch (a.kind) {
    case AtomKind::BosonicVar:
    case AtomKind::EvenConst: {
        if (const C* v = env.find(a.name))
            return *v;
        throw DomainError("unbound atom '" + a.name + "' in numeric evaluation");
    }
    case AtomKind::Func: {
        std::vector<C> args;
        args.reserve(a.args.size());
        for (const auto& arg : a.args)
            args.push_back(evaluate(*arg, env));
        if (a.name == "sqrt") {
            if (env.real_domain && (args[0].imag() != 0.0 || args[0].real() < 0.0))
                throw DomainError("negative radicand");
            return std::sqrt(args[0]);
        }
        if (a.name == "ln") {
            if (env.real_domain && (args[0].imag() != 0.0 || args[0].real() <= 0.0))
                throw DomainError("non-positive logarithm argument");
            return std::log(args[0]);
        }
        if (a.name == "asin") {
            if (env.real_domain && (args[0].imag() != 0.0 || std::abs(args[0].real()) > 1.0))
                throw DomainError("asin argument outside [-1, 1]");
            return std::asin(args[0]);
        }
        if (a.name == "sin")
            return std::sin(args[0]);
        if (a.name == "cos")
            return std::cos(args[0]);
        if (a.name == "EllipticF")
            return elliptic_f_z(args[0], args[1]);
        if (a.name == "EllipticE")
            return elliptic_e_z(args[0], args[1]);
        throw DomainError("no numeric rule for function '" + a.name + "'");
    }
    default:
        throw DomainError("cannot numerically evaluate '" + a.str() + "'");
    }
}

bool finite(const C& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

} // namespace

std::complex<double> evaluate(const GradedExpr& e, const NumericEnv& env) {
    C num = 0.0;
    for (const auto& [m, c] : e.num()) {
        if (!m.odd.empty())
            throw DomainError("numeric evaluation of a soul term");
        C t = c.to_complex();
        for (const auto& [a, exp] : m.even) {
            C v = eval_atom(a, env);
            for (int k = 0; k < exp; ++k)
                t *= v;
        }
        num += t;
    }
    C den = 1.0;
    for (const auto& [f, exp] : e.den()) {
        C fv = evaluate(GradedExpr::from_poly(f), env);
        for (int k = 0; k < exp; ++k)
            den *= fv;
    }
    if (std::abs(den) < 1e-300)
        throw DomainError("denominator vanished at the evaluation point");
    C r = num / den;
    if (!finite(r))
        throw DomainError("non-finite value");
    return r;
}

} // namespace susyms

#include "susyms/rational.hpp"

namespace susyms {

std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1)
        s += "/" + denominator(r).str();
    return s;
}

std::string GaussRat::str() const {
    auto imag_part = [](const Rat& v) -> std::string {
        if (v == 1)
            return "i";
        if (v == -1)
            return "-i";
        return rat_str(v) + "*i";
    };
    if (im == 0)
        return rat_str(re);
    if (re == 0)
        return imag_part(im);
    if (im < 0)
        return "(" + rat_str(re) + " - " + imag_part(-im) + ")";
    return "(" + rat_str(re) + " + " + imag_part(im) + ")";
}

} // namespace susyms

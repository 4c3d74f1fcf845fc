// Exact rational scalars used throughout the library.
//
// All weight/lattice arithmetic is exact; floating point only appears when
// evaluating exponentials and square roots at the very end of a computation.

#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kacfusion {

using Rat = boost::rational<long long>;

inline long long rat_floor(const Rat& x) {
    long long q = x.numerator() / x.denominator();
    if (x.numerator() % x.denominator() != 0 && x.numerator() < 0) --q;
    return q;
}

// fractional part in [0,1)
inline Rat rat_frac(const Rat& x) { return x - Rat(rat_floor(x)); }

inline bool rat_is_integer(const Rat& x) { return x.denominator() == 1; }

inline double to_double(const Rat& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

inline std::string rat_to_string(const Rat& x) {
    std::ostringstream os;
    os << x.numerator();
    if (x.denominator() != 1) os << '/' << x.denominator();
    return os.str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational: '" + s + "'");
    }
}

} // namespace kacfusion

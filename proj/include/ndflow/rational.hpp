#ifndef NDFLOW_RATIONAL_HPP
#define NDFLOW_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace ndflow {

using Rational = mpq_class;

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses `p`, `-p` or `p/q` with decimal integers.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("invalid rational '" + s + "'", 0);
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
    r.canonicalize();
    return r;
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace ndflow

#endif

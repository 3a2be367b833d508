#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mfs {

/// Exact rational scalar used throughout the library.  No floating point
/// enters any computation.
using Rat = mpq_class;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "a", "-a" or "a/b".
inline Rat parse_rat(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw Error("cannot parse rational: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

} // namespace mfs

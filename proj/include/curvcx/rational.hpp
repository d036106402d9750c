#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

// Under C++20 rewritten comparisons, boost 1.74 resolves rational == int to
// its reversed template, which calls itself. Exact overloads win instead.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a == rational<std::int64_t>(b); }
}  // namespace boost

namespace curvcx {

using Rational = boost::rational<std::int64_t>;

/// Always "num/den", including integers ("3/1").
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) {
  return boost::rational_cast<double>(q);
}

}  // namespace curvcx

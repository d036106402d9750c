#include "curvcx/rational.hpp"

namespace curvcx {

std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace curvcx

#include "hdual/catalog.hpp"

namespace hdual::catalog {

HadamardSystem cantor(long p) {
  return HadamardSystem::create(RMatrix::scalar(1, 4), digits_1d({0, 2}), digits_1d({0, p}));
}

HadamardSystem planar_line() {
  const DigitSet B{{0, 0}, {1, 0}, {0, 1}};
  const DigitSet L{{0, 0}, {1, 2}, {-1, -2}};
  return HadamardSystem::create(RMatrix::scalar(2, 3), B, L);
}

HadamardSystem shifted_eighths() {
  return HadamardSystem::create(RMatrix::scalar(1, 8), digits_1d({0, 2, 4, 6}), digits_1d({0, 1, 2, 7}));
}

}  // namespace hdual::catalog

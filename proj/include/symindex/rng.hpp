// symindex: deterministic random generation for test batteries.
// All draws go through one explicit uniform so results are identical across
// platforms and standard library versions.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <random>

#include "symindex/linalg.hpp"

namespace symindex {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // [0,1), 53-bit
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal();
  Cplx cnormal() { return Cplx(normal(), normal()) * M_SQRT1_2; }

  RMat rgaussian(int rows, int cols);
  Mat cgaussian(int rows, int cols);
  RMat rsymmetric(int n);           // entries O(1)
  Mat hermitian(int n);

  Mat unitary(int m);               // Haar via QR of a Ginibre matrix
  RMat symplectic(int n);           // 2n x 2n real, Cayley transform of J*Sym

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace symindex

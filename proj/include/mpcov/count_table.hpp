#pragma once

#include <vector>

#include "mpcov/exact.hpp"

namespace mpcov {

/// Shared cache of factorials, binomials, falling factorials, and unsigned
/// Stirling numbers of the first kind, all exact. Grows on demand.
class CountTable {
 public:
  const BigInt& factorial(int n);
  BigInt binomial(int n, int k);        // 0 when k < 0 or k > n
  BigInt falling(int n, int k);         // n (n-1) ... (n-k+1); 0 when k > n
  const BigInt& stirling_unsigned(int n, int k);  // coeffs of x(x+1)...(x+n-1)

 private:
  void grow_factorials(int n);
  void grow_stirling(int n);
  std::vector<BigInt> fact_{BigInt(1)};
  std::vector<std::vector<BigInt>> stirling_{{BigInt(1)}};
};

}  // namespace mpcov

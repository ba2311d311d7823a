#include "mpcov/count_table.hpp"

#include <stdexcept>

namespace mpcov {

namespace {
const BigInt kZero = 0;
}

void CountTable::grow_factorials(int n) {
  while (static_cast<int>(fact_.size()) <= n) {
    fact_.push_back(fact_.back() * static_cast<int>(fact_.size()));
  }
}

const BigInt& CountTable::factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative argument");
  grow_factorials(n);
  return fact_[static_cast<size_t>(n)];
}

BigInt CountTable::binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return kZero;
  grow_factorials(n);
  return fact_[static_cast<size_t>(n)] /
         (fact_[static_cast<size_t>(k)] * fact_[static_cast<size_t>(n - k)]);
}

BigInt CountTable::falling(int n, int k) {
  if (k < 0 || n < 0) throw std::invalid_argument("falling factorial needs n, k >= 0");
  if (k > n) return kZero;
  grow_factorials(n);
  return fact_[static_cast<size_t>(n)] / fact_[static_cast<size_t>(n - k)];
}

void CountTable::grow_stirling(int n) {
  // c(n+1, k) = c(n, k-1) + n c(n, k), rows indexed by n with entries 0..n.
  while (static_cast<int>(stirling_.size()) <= n) {
    const auto& prev = stirling_.back();
    const int m = static_cast<int>(stirling_.size());
    std::vector<BigInt> row(static_cast<size_t>(m) + 1, kZero);
    for (int k = 0; k <= m; ++k) {
      BigInt v = 0;
      if (k >= 1) v += prev[static_cast<size_t>(k - 1)];
      if (k <= m - 1) v += BigInt(m - 1) * prev[static_cast<size_t>(k)];
      row[static_cast<size_t>(k)] = std::move(v);
    }
    stirling_.push_back(std::move(row));
  }
}

const BigInt& CountTable::stirling_unsigned(int n, int k) {
  if (n < 0) throw std::invalid_argument("stirling row index must be >= 0");
  if (k < 0 || k > n) return kZero;
  grow_stirling(n);
  return stirling_[static_cast<size_t>(n)][static_cast<size_t>(k)];
}

}  // namespace mpcov

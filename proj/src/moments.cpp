#include "mpcov/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mpcov/errors.hpp"
#include "mpcov/mp_law.hpp"

namespace mpcov {

BigInt count_injective_pairs(int k1, int k2, int m, int p, CountTable& tab) {
  if (k1 < 0 || k2 < 0 || m < 0 || p < 0) {
    throw std::invalid_argument("count_injective_pairs needs nonnegative arguments");
  }
  if (m > k1 || m > k2) {
    throw std::invalid_argument("overlap size exceeds an index set");
  }
  if (k1 > p || k2 > p) return 0;
  BigInt total = 0;
  for (int s = 0; s <= m; ++s) {
    BigInt term = tab.binomial(m, s) * tab.falling(p, k1) * tab.falling(p - s, k2 - s);
    if (s % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

ExactPolynomial expected_charpoly(int n, int p, CountTable& tab) {
  if (p < 0 || p > n) throw std::invalid_argument("expected_charpoly needs 0 <= p <= n");
  std::vector<Rational> coeffs(static_cast<size_t>(n) + 1, 0);
  for (int k = 0; k <= p; ++k) {
    BigInt c = tab.binomial(n, k) * tab.falling(p, k);
    if (k % 2 != 0) c = -c;
    coeffs[static_cast<size_t>(n - k)] = Rational(c);
  }
  return ExactPolynomial(std::move(coeffs));
}

ExactPolynomial r1_direct(int n, int p, CountTable& tab) {
  if (p < 0 || p > n) throw std::invalid_argument("r1_direct needs 0 <= p <= n");
  std::vector<Rational> coeffs(static_cast<size_t>(2 * n) + 1, 0);
  const int kmax = std::min(n, p);
  for (int k1 = 0; k1 <= kmax; ++k1) {
    for (int k2 = 0; k2 <= kmax; ++k2) {
      for (int m = 0; m <= std::min(k1, k2); ++m) {
        if (k1 + k2 - m > n) continue;
        BigInt sets = tab.binomial(n, m) * tab.binomial(n - m, k1 - m) *
                      tab.binomial(n - k1, k2 - m);
        if (sets == 0) continue;
        BigInt term = sets * count_injective_pairs(k1, k2, m, p, tab);
        if ((k1 + k2) % 2 != 0) term = -term;
        coeffs[static_cast<size_t>(2 * n - k1 - k2)] += Rational(term);
      }
    }
  }
  return ExactPolynomial(std::move(coeffs));
}

ExactPolynomial r1_recursive(int n, int p, CountTable& tab) {
  if (p < 0 || p > n) throw std::invalid_argument("r1_recursive needs 0 <= p <= n");
  const int d = n - p;
  // Walk up the diagonal (d, 0), (d+1, 1), ..., (n, p); each step only needs
  // the earlier entries of the same diagonal.
  std::vector<ExactPolynomial> diag;
  diag.reserve(static_cast<size_t>(p) + 1);
  diag.push_back(ExactPolynomial::monomial(2 * d));
  for (int q = 1; q <= p; ++q) {
    const int nn = d + q;
    ExactPolynomial mean = expected_charpoly(nn, q, tab);
    ExactPolynomial acc = mean * mean;
    const BigInt lead = tab.factorial(nn) * tab.factorial(q);
    for (int k = 1; k <= q; ++k) {
      Rational w(lead, tab.factorial(k) * tab.factorial(nn - k) * tab.factorial(q - k));
      w.canonicalize();
      ExactPolynomial piece = diag[static_cast<size_t>(q - k)];
      piece *= w;
      acc -= piece;
    }
    diag.push_back(std::move(acc));
  }
  return diag.back();
}

ExactPolynomial r2_uniform(int n, int p, const Rational& m4, CountTable& tab) {
  if (p < 0 || p > n) throw std::invalid_argument("r2_uniform needs 0 <= p <= n");
  if (m4 < 0) throw std::invalid_argument("fourth moment must be nonnegative");
  ExactPolynomial total;
  Rational m4_pow = 1;
  for (int k = 0; k <= p; ++k) {
    Rational w = Rational(tab.binomial(n, k) * tab.falling(p, k)) * m4_pow;
    ExactPolynomial piece = r1_direct(n - k, p - k, tab);
    piece *= w;
    total += piece;
    m4_pow *= m4;
  }
  return total;
}

namespace {

// Characteristic polynomial det(zI - A) of an integer matrix by the
// Faddeev-LeVerrier iteration in exact rational arithmetic.
ExactPolynomial charpoly_exact(const std::vector<std::vector<long>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<Rational> coeffs(static_cast<size_t>(n) + 1, 0);
  coeffs[static_cast<size_t>(n)] = 1;
  // m holds the current auxiliary matrix, starting at the identity.
  std::vector<std::vector<Rational>> m(static_cast<size_t>(n),
                                       std::vector<Rational>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  for (int k = 1; k <= n; ++k) {
    // am = a * m
    std::vector<std::vector<Rational>> am(static_cast<size_t>(n),
                                          std::vector<Rational>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational s = 0;
        for (int l = 0; l < n; ++l) {
          if (a[static_cast<size_t>(i)][static_cast<size_t>(l)] == 0) continue;
          s += Rational(a[static_cast<size_t>(i)][static_cast<size_t>(l)]) *
               m[static_cast<size_t>(l)][static_cast<size_t>(j)];
        }
        am[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(s);
      }
    }
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += am[static_cast<size_t>(i)][static_cast<size_t>(i)];
    Rational c = -tr / k;
    c.canonicalize();
    coeffs[static_cast<size_t>(n - k)] = c;
    if (k == n) break;
    m = std::move(am);
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] += c;
  }
  return ExactPolynomial(std::move(coeffs));
}

}  // namespace

BruteforceResult bruteforce_expectations(int p, int n, const EntryDistribution& entry) {
  if (p < 1 || n < p) throw std::invalid_argument("bruteforce needs 1 <= p <= n");
  if (!entry.has_finite_support()) {
    throw std::invalid_argument("bruteforce oracle needs a finite-support entry law");
  }
  if (entry.is_complex()) {
    throw std::invalid_argument("bruteforce oracle covers real entry laws only");
  }
  const int cells = p * n;
  const int support = entry.support_size();
  double states = std::pow(static_cast<double>(support), cells);
  if (states > static_cast<double>(1 << 20)) {
    throw capacity_error("bruteforce state space exceeds 2^20 assignments");
  }
  const long total = static_cast<long>(states + 0.5);

  // The only real finite-support law is the sign law {+1, -1}.
  std::vector<std::vector<long>> mat(static_cast<size_t>(p),
                                     std::vector<long>(static_cast<size_t>(n), 0));
  std::vector<std::vector<long>> w(static_cast<size_t>(n),
                                   std::vector<long>(static_cast<size_t>(n), 0));
  ExactPolynomial sum_det;
  ExactPolynomial sum_det_sq;
  for (long idx = 0; idx < total; ++idx) {
    long bits = idx;
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < n; ++j) {
        mat[static_cast<size_t>(i)][static_cast<size_t>(j)] = (bits & 1) ? -1 : 1;
        bits >>= 1;
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        long s = 0;
        for (int l = 0; l < p; ++l) {
          s += mat[static_cast<size_t>(l)][static_cast<size_t>(i)] *
               mat[static_cast<size_t>(l)][static_cast<size_t>(j)];
        }
        w[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
        w[static_cast<size_t>(j)][static_cast<size_t>(i)] = s;
      }
    }
    ExactPolynomial det = charpoly_exact(w);
    sum_det += det;
    sum_det_sq += det * det;
  }
  Rational inv(1, total);
  inv.canonicalize();
  sum_det *= inv;
  sum_det_sq *= inv;
  return BruteforceResult{std::move(sum_det), std::move(sum_det_sq), total};
}

double detw_bound_log(int n, int p, double beta, double z, double c) {
  if (p < 1 || n < p) throw std::invalid_argument("detw_bound_log needs 1 <= p <= n");
  if (!(c > 0.0)) throw std::invalid_argument("bound constant must be positive");
  const double phi = static_cast<double>(p) / static_cast<double>(n);
  const auto [a, b] = mp_edges(phi);
  if (!(z >= a && z <= b)) {
    throw std::domain_error("detw_bound_log needs z inside the bulk support");
  }
  return std::log(c) + 6.5 * std::log(static_cast<double>(p)) +
         0.5 * std::log(static_cast<double>(n)) + beta +
         2.0 * n * mp_potential_value(phi, z);
}

}  // namespace mpcov

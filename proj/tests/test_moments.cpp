#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mpcov/count_table.hpp"
#include "mpcov/errors.hpp"
#include "mpcov/exact.hpp"
#include "mpcov/moments.hpp"

using namespace mpcov;

namespace {

void collect_injections(int k, int p, std::vector<int>& cur, std::vector<bool>& used,
                        std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v < p; ++v) {
    if (used[v]) continue;
    used[v] = true;
    cur.push_back(v);
    collect_injections(k, p, cur, used, out);
    cur.pop_back();
    used[v] = false;
  }
}

// Exhaustive count of pairs of injections that disagree at every shared
// domain point (the shared points are the first m slots of each map).
long count_by_enumeration(int k1, int k2, int m, int p) {
  std::vector<std::vector<int>> inj1, inj2;
  std::vector<int> cur;
  std::vector<bool> used(p, false);
  collect_injections(k1, p, cur, used, inj1);
  collect_injections(k2, p, cur, used, inj2);
  long count = 0;
  for (const auto& t1 : inj1)
    for (const auto& t2 : inj2) {
      bool ok = true;
      for (int j = 0; j < m; ++j)
        if (t1[j] == t2[j]) {
          ok = false;
          break;
        }
      if (ok) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("count table: factorials, binomials, falling factorials") {
  CountTable tab;
  CHECK(tab.factorial(0) == 1);
  CHECK(tab.factorial(5) == 120);
  CHECK(tab.factorial(20) == BigInt("2432902008176640000"));
  CHECK_THROWS_AS(tab.factorial(-1), std::invalid_argument);

  CHECK(tab.binomial(10, 3) == 120);
  CHECK(tab.binomial(10, 7) == 120);
  CHECK(tab.binomial(5, -1) == 0);
  CHECK(tab.binomial(5, 7) == 0);
  CHECK(tab.binomial(-1, 0) == 0);
  CHECK(tab.binomial(7, 3) == tab.binomial(6, 2) + tab.binomial(6, 3));

  CHECK(tab.falling(5, 2) == 20);
  CHECK(tab.falling(5, 0) == 1);
  CHECK(tab.falling(3, 5) == 0);
  CHECK(tab.falling(6, 6) == 720);
  CHECK_THROWS_AS(tab.falling(-1, 2), std::invalid_argument);
}

TEST_CASE("unsigned stirling numbers of the first kind") {
  CountTable tab;
  CHECK(tab.stirling_unsigned(0, 0) == 1);
  CHECK(tab.stirling_unsigned(3, 1) == 2);
  CHECK(tab.stirling_unsigned(3, 2) == 3);
  CHECK(tab.stirling_unsigned(3, 3) == 1);
  CHECK(tab.stirling_unsigned(5, 2) == 50);
  CHECK(tab.stirling_unsigned(5, 0) == 0);
  CHECK(tab.stirling_unsigned(4, 7) == 0);
  // recurrence c(n+1, k) = c(n, k-1) + n c(n, k)
  CHECK(tab.stirling_unsigned(8, 3) ==
        tab.stirling_unsigned(7, 2) + 7 * tab.stirling_unsigned(7, 3));
  CHECK_THROWS_AS(tab.stirling_unsigned(-1, 0), std::invalid_argument);

  // sum_m c(k, m) 2^m = (k+1)!
  for (int k = 0; k <= 10; ++k) {
    BigInt acc = 0;
    BigInt pow2 = 1;
    for (int m = 0; m <= k; ++m) {
      acc += tab.stirling_unsigned(k, m) * pow2;
      pow2 *= 2;
    }
    CHECK(acc == tab.factorial(k + 1));
  }
}

TEST_CASE("exact polynomials: arithmetic, evaluation, serialization") {
  ExactPolynomial a({1, 1});       // z + 1
  ExactPolynomial b({-3, 2});      // 2z - 3
  auto lhs = (a + b) * (a + b);
  auto rhs = a * a + a * b * ExactPolynomial::constant(2) + b * b;
  CHECK(lhs == rhs);
  CHECK(lhs.degree() == 2);

  ExactPolynomial zero;
  CHECK(zero.degree() == -1);
  CHECK((a - a).degree() == -1);
  CHECK((a * zero).degree() == -1);
  CHECK(a.coeff(7) == 0);

  ExactPolynomial p({0, -2, 1});  // z^2 - 2z
  CHECK(p.eval(Rational(3)) == 3);
  CHECK(p.eval(Rational(1, 2)) == Rational(-3, 4));
  CHECK(p.eval_double(3.0) == doctest::Approx(3.0).epsilon(1e-15));

  ExactPolynomial trimmed({5, 0, 0});
  CHECK(trimmed.degree() == 0);

  ExactPolynomial scaled({1, 1});
  scaled *= Rational(0);
  CHECK(scaled.degree() == -1);

  CountTable tab;
  ExactPolynomial big({Rational(tab.factorial(30)), Rational(-7, 3)});
  auto back = ExactPolynomial::from_json(big.to_json());
  CHECK(back == big);
  CHECK(ExactPolynomial::monomial(3, 2).coeff(3) == 2);
  CHECK_THROWS_AS(ExactPolynomial::from_json("{\"coeffs\": [[\"1\", \"0\"]]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExactPolynomial::from_json("{}"), std::invalid_argument);
}

TEST_CASE("pair counts: pinned values and exhaustive enumeration") {
  CountTable tab;
  CHECK(count_injective_pairs(2, 2, 2, 2, tab) == 2);
  CHECK(count_injective_pairs(1, 1, 1, 1, tab) == 0);
  CHECK(count_injective_pairs(3, 2, 0, 4, tab) ==
        tab.falling(4, 3) * tab.falling(4, 2));
  CHECK(count_injective_pairs(5, 1, 1, 4, tab) == 0);  // k1 > p leaves no injection
  CHECK(count_injective_pairs(1, 5, 0, 4, tab) == 0);

  for (int p = 1; p <= 4; ++p)
    for (int k1 = 0; k1 <= 3 && k1 <= p; ++k1)
      for (int k2 = 0; k2 <= 3 && k2 <= p; ++k2)
        for (int m = 0; m <= std::min(k1, k2); ++m)
          CHECK(count_injective_pairs(k1, k2, m, p, tab) ==
                count_by_enumeration(k1, k2, m, p));

  CHECK_THROWS_AS(count_injective_pairs(1, 1, 2, 3, tab), std::invalid_argument);
  CHECK_THROWS_AS(count_injective_pairs(-1, 1, 0, 3, tab), std::invalid_argument);
}

TEST_CASE("mean characteristic polynomial: pinned coefficients") {
  CountTable tab;
  CHECK(expected_charpoly(1, 1, tab) == ExactPolynomial({-1, 1}));
  CHECK(expected_charpoly(2, 1, tab) == ExactPolynomial({0, -2, 1}));
  CHECK(expected_charpoly(2, 2, tab) == ExactPolynomial({2, -4, 1}));
  CHECK(expected_charpoly(3, 2, tab) == ExactPolynomial({0, 6, -6, 1}));
  CHECK(expected_charpoly(4, 0, tab) == ExactPolynomial::monomial(4));
  // the lowest surviving coefficient is (-1)^p n!/(n-p)!
  auto poly = expected_charpoly(9, 9, tab);
  CHECK(poly.coeff(0) == Rational(tab.factorial(9)) * ((9 % 2) ? -1 : 1));
  CHECK_THROWS_AS(expected_charpoly(2, 3, tab), std::invalid_argument);
  CHECK_THROWS_AS(expected_charpoly(-1, 0, tab), std::invalid_argument);
}

TEST_CASE("second-moment core: pinned values and the dual routes agree") {
  CountTable tab;
  CHECK(r1_direct(1, 1, tab) == ExactPolynomial({0, -2, 1}));
  CHECK(r1_direct(2, 1, tab) == ExactPolynomial({0, 0, 2, -4, 1}));
  CHECK(r1_direct(3, 0, tab) == ExactPolynomial::monomial(6));
  CHECK(r1_recursive(3, 0, tab) == ExactPolynomial::monomial(6));
  for (int n = 0; n <= 6; ++n)
    for (int p = 0; p <= n; ++p) CHECK(r1_direct(n, p, tab) == r1_recursive(n, p, tab));
}

TEST_CASE("uniform fourth-moment second moment assembles from the core") {
  CountTable tab;
  CHECK(r2_uniform(1, 1, Rational(5), tab) == ExactPolynomial({5, -2, 1}));
  CHECK(r2_uniform(3, 0, Rational(2), tab) == ExactPolynomial::monomial(6));
  // m4 = 1: E|det|^2 for the 1 x 2 sign matrix is (z^2 - 2z)^2 + extra 2z^2
  CHECK(r2_uniform(2, 1, Rational(1), tab) == ExactPolynomial({0, 0, 4, -4, 1}));
  CHECK_THROWS_AS(r2_uniform(2, 1, Rational(-1), tab), std::invalid_argument);
}

TEST_CASE("exhaustive sign matrices match the closed forms") {
  CountTable tab;
  auto rad = EntryDistribution::parse("rademacher-real");

  auto b11 = bruteforce_expectations(1, 1, rad);
  CHECK(b11.assignments == 2);
  CHECK(b11.mean_det == expected_charpoly(1, 1, tab));
  CHECK(b11.mean_det_sq == r2_uniform(1, 1, Rational(1), tab));

  auto b12 = bruteforce_expectations(1, 2, rad);
  CHECK(b12.assignments == 4);
  CHECK(b12.mean_det == expected_charpoly(2, 1, tab));
  CHECK(b12.mean_det_sq == r2_uniform(2, 1, Rational(1), tab));

  auto b22 = bruteforce_expectations(2, 2, rad);
  CHECK(b22.assignments == 16);
  CHECK(b22.mean_det == expected_charpoly(2, 2, tab));

  CHECK_THROWS_AS(bruteforce_expectations(3, 7, rad), capacity_error);
  CHECK_THROWS_AS(bruteforce_expectations(1, 2, EntryDistribution::parse("gaussian-real")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      bruteforce_expectations(1, 2, EntryDistribution::parse("rademacher-complex")),
      std::invalid_argument);
  CHECK_THROWS_AS(bruteforce_expectations(0, 2, rad), std::invalid_argument);
  CHECK_THROWS_AS(bruteforce_expectations(3, 2, rad), std::invalid_argument);
}

TEST_CASE("determinant bound: log-linearity, beta shift, domain") {
  const double base = detw_bound_log(8, 4, 1.0, 1.0, 1.0);
  CHECK(std::isfinite(base));
  CHECK(std::fabs(detw_bound_log(8, 4, 1.0, 1.0, 2.718281828459045) - base - 1.0) <= 1e-12);
  CHECK(std::fabs(detw_bound_log(8, 4, 3.0, 1.0, 1.0) - base - 2.0) <= 1e-12);
  CHECK_THROWS_AS(detw_bound_log(8, 4, 1.0, 3.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(detw_bound_log(8, 4, 1.0, 0.05, 1.0), std::domain_error);
  CHECK_THROWS_AS(detw_bound_log(4, 8, 1.0, 1.0, 1.0), std::invalid_argument);
}

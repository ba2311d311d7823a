#pragma once

#include "mpcov/count_table.hpp"
#include "mpcov/ensemble.hpp"
#include "mpcov/exact.hpp"

namespace mpcov {

/// Number of pairs of injections tau1: J1 -> [p], tau2: J2 -> [p] that
/// disagree on every point of the overlap, where |J1| = k1, |J2| = k2 and
/// the overlap has m points. Inclusion-exclusion over forced agreements.
/// Zero when k1 > p or k2 > p.
BigInt count_injective_pairs(int k1, int k2, int m, int p, CountTable& tab);

/// E det(zI - W) for W = M^T M with p x n matrix M of iid unit-variance
/// entries: sum_{k=0}^p (-1)^k C(n,k) (p!/(p-k)!) z^{n-k}.
ExactPolynomial expected_charpoly(int n, int p, CountTable& tab);

/// Second-moment core polynomial by direct summation over index-set pairs.
ExactPolynomial r1_direct(int n, int p, CountTable& tab);

/// Same polynomial through the square-of-expectation recursion; the two
/// routes share no combinatorics and cross-validate each other.
ExactPolynomial r1_recursive(int n, int p, CountTable& tab);

/// E |det(zI - W)|^2 when every entry has the same fourth moment m4:
/// sum_k C(n,k) (p!/(p-k)!) m4^k R1(n-k, p-k).
ExactPolynomial r2_uniform(int n, int p, const Rational& m4, CountTable& tab);

struct BruteforceResult {
  ExactPolynomial mean_det;     // E det(zI - M^T M)
  ExactPolynomial mean_det_sq;  // E det(zI - M^T M)^2
  long assignments = 0;
};

/// Exhaustive expectation over all assignments of a finite-support real
/// entry law to the p x n matrix. Characteristic polynomials are expanded
/// exactly (Faddeev-LeVerrier over rationals on the n x n product).
/// Throws capacity_error when |support|^(p n) exceeds 2^20.
BruteforceResult bruteforce_expectations(int p, int n, const EntryDistribution& entry);

/// log of c p^{13/2} n^{1/2} e^beta e^{2 n u_phi(z)} with phi = p/n.
/// Requires z inside the bulk support [a,b]; throws std::domain_error else.
double detw_bound_log(int n, int p, double beta, double z, double c);

}  // namespace mpcov

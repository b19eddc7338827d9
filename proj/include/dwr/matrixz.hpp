#ifndef DWR_MATRIXZ_HPP
#define DWR_MATRIXZ_HPP

#include "dwr/quasiexp.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace dwr {

/*
 * The N x N matrix Z attached to real pairwise non-resonant angles lambda
 * (lambda_i - lambda_j not in pi Z) and complex diagonal data a:
 *
 *   Z_ii = a_i,   Z_ij = 1 / sin(lambda_i - lambda_j)   (all i != j),
 *
 * so the off-diagonal part is antisymmetric. Its characteristic polynomial
 * equals the monic discrete Wronskian, at half-step i (full step 2i), of the
 * space spanned by p_i(x) e^{lambda_i x} with
 *
 *   p_i(x) = x - a_i - sum_{j != i} cot(lambda_i - lambda_j).
 */

struct ZData {
  Eigen::VectorXd lambda;
  Eigen::VectorXcd a;
  int size() const { return static_cast<int>(lambda.size()); }
  void validate(double tol = 1e-9) const;  // rejects lambda_i - lambda_j in pi Z
};

Eigen::MatrixXcd build_z(const ZData& d);

QESpace space_from_z(const ZData& d);

// char poly det(xI - Z) by the alternating Leibniz expansion over CPoly entries;
// a route independent of both the eigensolver and the Casoratian.
CPoly charpoly_leibniz(const Eigen::MatrixXcd& z);

// max coefficient difference between det(xI - Z) and the monic Casoratian of
// space_from_z at half-step i, relative to the largest coefficient
double verify_lemma_wron(const ZData& d);

struct Theorem1aReport {
  bool charpoly_real = false;    // coefficients real within tol
  bool roots_in_strip = false;   // |Im root| <= 1 + tol
  double max_im_a = 0.0;
  std::vector<cplx> roots;
  bool hypotheses() const { return charpoly_real && roots_in_strip; }
};

Theorem1aReport theorem1a_check(const ZData& d, double tol = 1e-9);

// Project complex diagonal data a onto the variety Im(charpoly coeffs) = 0 by
// Gauss-Newton; used to hunt for counterexamples with genuinely complex a.
// Returns false when the projection stalls.
bool project_real_charpoly(ZData& d, int max_iters = 60, double tol = 1e-11);

// Degeneration a_i = b_i / eps, lambda_i = eps mu_i: eps * Z(eps) approaches the
// limit matrix L with L_ii = b_i, L_ij = 1/(mu_i - mu_j). Returns |eps Z - L|
// per requested eps (expected to shrink ~ eps^2).
std::vector<double> epsilon_trend(const Eigen::VectorXd& mu, const Eigen::VectorXcd& b,
                                  const std::vector<double>& eps);

}  // namespace dwr

#endif

#ifndef DWR_YANGIAN_HPP
#define DWR_YANGIAN_HPP

#include "dwr/quasiexp.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace dwr {

/*
 * Dense realization of the transfer-matrix family B_{k,Q}(x; z) acting on
 * W^{tensor n}, W = C^N, built from the rational R-matrix R(x) = 1 + P/x.
 * Conventions:
 *   - tensor factors are enumerated 0..n with 0 the auxiliary slot; basis
 *     indices are lexicographic with slot 0 most significant;
 *   - T(x; z) = R_{(0n)}(x - z_n) ... R_{(01)}(x - z_1);
 *   - quantum minors permute columns, with arguments x, x-1, ..., x-k+1.
 * Everything is plain MatrixXcd; dimensions stay at desk scale (N^n <= 4096).
 */

struct BetheSetup {
  int N = 2;                 // rank: W = C^N
  Eigen::VectorXcd Q;        // twist, size N
  Eigen::VectorXcd z;        // evaluation points, one per site
  int sites() const { return static_cast<int>(z.size()); }
  long dim() const;          // N^sites, validated <= 4096
  void validate() const;
};

using Mat = Eigen::MatrixXcd;

// P (v tensor w) = w tensor v on C^N tensor C^N
Mat flip_op(int N);
// R(x) = 1 + P/x (x != 0); Rcheck(x) = x P + 1
Mat r_matrix(int N, cplx x);
Mat r_check(int N, cplx x);

// embed an operator on slots (i, j) of (C^N)^{tensor nslots}, i != j
Mat two_site_op(const Mat& m, int N, int nslots, int i, int j);
Mat one_site_op(const Mat& m, int N, int nslots, int i);

// monodromy on W^{tensor (n+1)} including the auxiliary slot
Mat monodromy(const BetheSetup& s, cplx x);
// auxiliary (a, b) blocks of the monodromy: T_ab acting on W^{tensor n}
std::vector<Mat> aux_blocks(const BetheSetup& s, cplx x);

// quantum minor T^{wedge k}_{rows, cols}(x).  Tuples may arrive unsorted:
// they are reordered with the antisymmetry sign; a repeated index gives 0.
Mat t_minor(const BetheSetup& s, std::vector<int> rows, std::vector<int> cols, cplx x);

Mat qdet(const BetheSetup& s, cplx x);
cplx b_scalar(const Eigen::VectorXcd& z, cplx x);      // prod (x - z_i + 1)/(x - z_i)
cplx b_q_scalar(const BetheSetup& s, cplx x);          // prod Q_a * b_scalar

// B_{k,Q}(x; z) = sum_{a_1 < ... < a_k} Q_{a_1}..Q_{a_k} T^{wedge k}_{aa}(x)
Mat transfer_B(const BetheSetup& s, int k, cplx x);

// B_k(x) d_k(x) is polynomial in x with d_k(x) = prod_{s=0}^{k-1} prod_i (x-s-z_i);
// the pencil stores the interpolated numerator entries.
struct OpPencil {
  int dim = 0;
  CPoly den;
  std::vector<CPoly> num;   // row-major, dim*dim entries
  double fit_residual = 0.0;
  Mat eval(cplx x) const;
};
OpPencil pencil_B(const BetheSetup& s, int k);

// residual of R_{(12)}(x-y) T_1(x) T_2(y) = T_2(y) T_1(x) R_{(12)}(x-y)
double check_rtt(const BetheSetup& s, cplx x, cplx y);

// residual of Rcheck_{(i,i+1)}(z_i - z_{i+1}) B_j(x; z) = B_j(x; sz) Rcheck(...),
// sz = z with sites i, i+1 swapped (0-based i)
double check_exchange(const BetheSetup& s, int i, int j, cplx x);

// residual of B_j(x; z) = b_Q(x; z) * adjoint(B_{N-j, conj(Q)^{-1}}(-conj(x)-1; -conj(z)))
double check_adjoint(const BetheSetup& s, int j, cplx x);

struct AntipodeResidual {
  double monodromy = 0.0;          // (T^{-1} chain)^T vs T(-x; -z) b(x-1)/b(x)
  std::vector<double> transfer;    // per k: B_k vs b * prodQ * B_{N-k}(...)^T
};
AntipodeResidual check_antipode(const BetheSetup& s, cplx x);

// Gram operator of <v, w>_k = <v, prod_i Rcheck_{(2i-1,2i)}(z_{2i-1} - z_{2i}) w>
// over the first `pairs` site pairs (1-based sites 1..2*pairs).
struct FormK {
  Mat gram;
  double min_eigenvalue = 0.0;   // of the Hermitian part
  double herm_residual = 0.0;    // |gram - gram^dagger| / |gram|
};
FormK form_k(const BetheSetup& s, int pairs);

// Joint eigenvectors of the commuting family {B_j(x; z)} and the interpolated
// eigenvalue functions B_{j,v}(x) (denominator d_j as in the pencil).
struct BetheVector {
  Eigen::VectorXcd v;
  std::vector<RationalFn> b_fn;   // index j = 0..N, b_fn[0] = 1
};
std::vector<BetheVector> bethe_eigensystem(const BetheSetup& s, std::uint64_t seed = 1,
                                           double cluster_gap = 1e-7, int max_retries = 5);

// Scalar difference operator D f(x) = sum_j (-1)^j B_{j,v}(x) f(x - j).
// apply_* clear denominators by prod_{s=0}^{N-1} prod_i (x - s - z_i).
struct ScalarDiffOp {
  Eigen::VectorXcd z;             // evaluation points (shared denominator data)
  std::vector<RationalFn> b_fn;   // j = 0..N
  int order() const { return static_cast<int>(b_fn.size()) - 1; }
  // cleared-denominator polynomial of D applied to p(x) Q^x, divided by Q^x
  CPoly apply_cleared(const CPoly& p, cplx q_base) const;
};
ScalarDiffOp scalar_op(const BetheSetup& s, const BetheVector& bv);

// Kernel of D among quasi-exponentials with the given bases, degree-bounded.
// Throws degenerate_error when the total kernel dimension is not the order.
QESpace qe_kernel(const ScalarDiffOp& op, const std::vector<cplx>& bases,
                  int degree_bound, double svd_tol = 1e-8);

// Change of variables feeding the rescaled picture: real exponent data
// (lambda, z) with step h = i s maps to Q_tilde = e^{2 h lambda_a},
// z_tilde = z_i / (2h). Conjugate z-pairs should come first, listed pairwise.
BetheSetup rescaled_setup(const Eigen::VectorXd& lambda, const Eigen::VectorXcd& z, cplx h);

}  // namespace dwr

#endif

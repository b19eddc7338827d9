#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dwr/yangian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>

using namespace dwr;
using namespace std::complex_literals;

namespace {

BetheSetup small_setup() {
  BetheSetup s;
  s.N = 2;
  s.Q.resize(2);
  s.Q << cplx{0.3, 0.4}, cplx{1.1, -0.2};
  s.z.resize(2);
  s.z << cplx{0.2, 0.3}, cplx{-0.5, 0.1};
  return s;
}

BetheSetup rank3_setup() {
  BetheSetup s;
  s.N = 3;
  s.Q.resize(3);
  s.Q << cplx{0.6, 0.1}, cplx{-0.4, 0.8}, cplx{1.3, -0.3};
  s.z.resize(2);
  s.z << cplx{0.7, -0.2}, cplx{-0.3, 0.5};
  return s;
}

double rel_err(const Mat& a, const Mat& b) {
  double scale = std::max(1.0, std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()));
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

TEST_CASE("flip operator swaps tensor factors") {
  for (int N : {2, 3}) {
    Mat p = flip_op(N);
    CHECK(rel_err(p * p, Mat::Identity(N * N, N * N)) < 1e-15);
    Eigen::VectorXcd u(N), v(N);
    for (int i = 0; i < N; ++i) {
      u[i] = cplx{0.3 + i, 0.7 - 0.2 * i};
      v[i] = cplx{-0.5 + 0.4 * i, 0.1 * i};
    }
    Eigen::VectorXcd uv(N * N), vu(N * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        uv[i * N + j] = u[i] * v[j];
        vu[i * N + j] = v[i] * u[j];
      }
    CHECK((p * uv - vu).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("R matrix inversion identity R(x) R(-x) = (1 - x^{-2}) id") {
  const cplx x{0.7, -0.4};
  for (int N : {2, 3}) {
    Mat lhs = r_matrix(N, x) * r_matrix(N, -x);
    Mat want = (1.0 - 1.0 / (x * x)) * Mat::Identity(N * N, N * N);
    CHECK(rel_err(lhs, want) < 1e-14);
  }
  CHECK_THROWS_AS(r_matrix(2, cplx{0.0}), degenerate_error);
}

TEST_CASE("Rcheck spectrum splits into symmetric and antisymmetric parts") {
  const double t = 0.37;
  for (int N : {2, 3}) {
    Mat rc = r_check(N, cplx{t});
    Eigen::ComplexEigenSolver<Mat> es(rc);
    int plus = 0, minus = 0;
    for (int i = 0; i < N * N; ++i) {
      cplx ev = es.eigenvalues()[i];
      if (std::abs(ev - (1.0 + t)) < 1e-10) ++plus;
      if (std::abs(ev - (1.0 - t)) < 1e-10) ++minus;
    }
    CHECK(plus == N * (N + 1) / 2);
    CHECK(minus == N * (N - 1) / 2);
  }
}

TEST_CASE("slot embedding matches explicit Kronecker products") {
  const int N = 2;
  Mat m = r_check(N, cplx{0.3, 0.9});
  // slots (0,1) of 2: the operator itself
  CHECK(rel_err(two_site_op(m, N, 2, 0, 1), m) < 1e-15);
  // slots (1,0): conjugate by the flip
  Mat p = flip_op(N);
  CHECK(rel_err(two_site_op(m, N, 2, 1, 0), p * m * p) < 1e-15);
  // slots (0,2) of 3: flip (1,2), act on (0,1), flip back
  Mat p12 = two_site_op(p, N, 3, 1, 2);
  Mat m01 = Eigen::kroneckerProduct(m, Mat::Identity(N, N));
  CHECK(rel_err(two_site_op(m, N, 3, 0, 2), p12 * m01 * p12) < 1e-14);
  CHECK_THROWS_AS(two_site_op(m, N, 2, 0, 0), std::invalid_argument);

  Mat d(2, 2);
  d << cplx{1.0}, cplx{2.0}, cplx{3.0}, cplx{4.0};
  Mat lift = one_site_op(d, N, 2, 1);
  CHECK(rel_err(lift, Eigen::kroneckerProduct(Mat::Identity(N, N), d)) < 1e-15);
}

TEST_CASE("setup validation") {
  BetheSetup bad = small_setup();
  bad.N = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = small_setup();
  bad.Q.resize(3);
  bad.Q << cplx{1.0}, cplx{1.0}, cplx{1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = small_setup();
  bad.Q[0] = cplx{0.0};
  CHECK_THROWS_AS(bad.validate(), degenerate_error);
  bad = small_setup();
  bad.z.resize(13);  // 2^13 > 4096
  bad.z.setZero();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("monodromy tends to the identity for large argument") {
  BetheSetup s = small_setup();
  Mat t = monodromy(s, cplx{1e8, 0.0});
  CHECK(rel_err(t, Mat::Identity(t.rows(), t.cols())) < 1e-6);
}

TEST_CASE("auxiliary blocks reassemble the monodromy") {
  BetheSetup s = small_setup();
  const cplx x{0.9, 0.2};
  Mat t = monodromy(s, x);
  std::vector<Mat> blocks = aux_blocks(s, x);
  REQUIRE(static_cast<int>(blocks.size()) == s.N * s.N);
  const long d = s.dim();
  for (int a = 0; a < s.N; ++a)
    for (int b = 0; b < s.N; ++b)
      CHECK((t.block(a * d, b * d, d, d) - blocks[static_cast<size_t>(a * s.N + b)])
                .cwiseAbs()
                .maxCoeff() < 1e-14);
}

TEST_CASE("quantum minors: level 1, antisymmetry, repeated indices") {
  BetheSetup s = rank3_setup();
  const cplx x{0.83, 0.41};
  std::vector<Mat> blocks = aux_blocks(s, x);
  CHECK(rel_err(t_minor(s, {1}, {2}, x), blocks[1 * 3 + 2]) < 1e-14);

  Mat m01 = t_minor(s, {0, 1}, {1, 2}, x);
  Mat m10 = t_minor(s, {1, 0}, {1, 2}, x);
  CHECK(rel_err(m10, -m01) < 1e-14);
  Mat c21 = t_minor(s, {0, 1}, {2, 1}, x);
  CHECK(rel_err(c21, -m01) < 1e-14);

  CHECK(t_minor(s, {0, 0}, {1, 2}, x).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(t_minor(s, {0}, {1, 2}, x), std::invalid_argument);
  CHECK_THROWS_AS(t_minor(s, {3}, {0}, x), std::invalid_argument);
}

TEST_CASE("quantum determinant is the scalar prod (x - z_i + 1)/(x - z_i)") {
  const cplx x{0.83, 0.41};
  for (BetheSetup s : {small_setup(), rank3_setup()}) {
    Mat qd = qdet(s, x);
    cplx b = b_scalar(s.z, x);
    CHECK(rel_err(qd, b * Mat::Identity(qd.rows(), qd.cols())) < 1e-13);
  }
}

TEST_CASE("transfer matrices: boundary levels and pairwise commutativity") {
  BetheSetup s = small_setup();
  const cplx x{0.83, 0.41}, y{-0.37, 0.95};
  CHECK(rel_err(transfer_B(s, 0, x), Mat::Identity(s.dim(), s.dim())) < 1e-15);
  Mat bn = transfer_B(s, 2, x);
  cplx want = s.Q.prod() * b_scalar(s.z, x);
  CHECK(rel_err(bn, want * Mat::Identity(s.dim(), s.dim())) < 1e-13);

  for (int j = 1; j <= 2; ++j)
    for (int k = 1; k <= 2; ++k) {
      Mat bj = transfer_B(s, j, x), bk = transfer_B(s, k, y);
      CHECK((bj * bk - bk * bj).cwiseAbs().maxCoeff() < 1e-12);
    }
  CHECK_THROWS_AS(transfer_B(s, 3, x), std::invalid_argument);
}

TEST_CASE("RTT relation") {
  CHECK(check_rtt(small_setup(), cplx{0.7, 0.2}, cplx{-0.3, 0.9}) < 1e-13);
  CHECK(check_rtt(rank3_setup(), cplx{1.1, -0.6}, cplx{0.4, 0.8}) < 1e-13);
}

TEST_CASE("exchange relation transports B through Rcheck at neighboring sites") {
  BetheSetup s = small_setup();
  for (int j = 1; j <= 2; ++j) CHECK(check_exchange(s, 0, j, cplx{0.83, 0.41}) < 1e-13);
  BetheSetup s3 = rank3_setup();
  for (int j = 1; j <= 3; ++j) CHECK(check_exchange(s3, 0, j, cplx{0.83, 0.41}) < 1e-13);
  CHECK_THROWS_AS(check_exchange(s, 1, 1, cplx{0.5}), std::invalid_argument);
}

TEST_CASE("adjoint relation ties B_j to B_{N-j} at the reflected twist and points") {
  const cplx x{0.83, 0.41};
  BetheSetup s = small_setup();
  for (int j = 0; j <= 2; ++j) CHECK(check_adjoint(s, j, x) < 1e-13);
  BetheSetup s3 = rank3_setup();
  for (int j = 0; j <= 3; ++j) CHECK(check_adjoint(s3, j, x) < 1e-13);
}

TEST_CASE("antipode relations for the inverse-chain monodromy and transfer family") {
  const cplx x{0.83, 0.41};
  for (BetheSetup s : {small_setup(), rank3_setup()}) {
    AntipodeResidual r = check_antipode(s, x);
    CHECK(r.monodromy < 1e-13);
    for (double t : r.transfer) CHECK(t < 1e-12);
  }
}

TEST_CASE("pencil interpolation reproduces the transfer matrices") {
  BetheSetup s = small_setup();
  for (int k = 1; k <= 2; ++k) {
    OpPencil p = pencil_B(s, k);
    CHECK(p.fit_residual < 1e-10);
    CHECK(p.den.degree() == k * s.sites());
    const cplx x{1.37, -0.78};  // away from the interpolation circle
    CHECK(rel_err(p.eval(x), transfer_B(s, k, x)) < 1e-9);
  }
}

TEST_CASE("joint eigensystem, scalar operators, kernels, Wronskian roots") {
  BetheSetup s;
  s.N = 2;
  s.Q.resize(2);
  s.Q << cplx{0.37, 0.0}, cplx{1.21, 0.0};
  s.z.resize(2);
  s.z << cplx{0.4, 0.0}, cplx{-0.9, 0.0};

  auto sys = bethe_eigensystem(s, 1);
  REQUIRE(sys.size() == 4);

  const cplx x0{2.31, 0.57};
  std::vector<Mat> b_at{transfer_B(s, 0, x0), transfer_B(s, 1, x0), transfer_B(s, 2, x0)};
  std::vector<int> deg_splits;
  for (const auto& bv : sys) {
    REQUIRE(bv.b_fn.size() == 3);
    CHECK(std::abs(bv.b_fn[0].eval(x0) - 1.0) < 1e-12);
    // eigenvalue functions evaluate to the matrix action on the vector
    for (int j = 1; j <= 2; ++j) {
      Eigen::VectorXcd lhs = b_at[static_cast<size_t>(j)] * bv.v;
      Eigen::VectorXcd rhs = bv.b_fn[static_cast<size_t>(j)].eval(x0) * bv.v;
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
    }

    ScalarDiffOp op = scalar_op(s, bv);
    CHECK(op.order() == 2);
    std::vector<cplx> bases{s.Q[0], s.Q[1]};
    QESpace ker = qe_kernel(op, bases, 6);
    REQUIRE(ker.dim() == 2);
    // kernel members are annihilated after clearing denominators
    for (const auto& f : ker.members) {
      CPoly img = op.apply_cleared(f.p, f.base.q());
      CHECK(img.trimmed(1e-9).max_abs_coeff() <
            1e-8 * std::max(1.0, f.p.max_abs_coeff()));
    }

    auto w = monic_wronskian(ker, half_step_unit_lattice());
    auto roots = w.w.roots();
    REQUIRE(roots.size() == 2);
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    CHECK(std::abs(roots[0] - cplx{-2.4}) < 1e-6);  // z_2 - 3/2
    CHECK(std::abs(roots[1] - cplx{-1.1}) < 1e-6);  // z_1 - 3/2
    deg_splits.push_back(ker.members[0].p.degree() * 10 + ker.members[1].p.degree());
  }
  std::sort(deg_splits.begin(), deg_splits.end());
  CHECK(deg_splits == std::vector<int>{2, 11, 11, 20});
}

TEST_CASE("rescaled setup: unit twists and anti-conjugate point pairs") {
  const cplx h{0.0, 0.7};
  Eigen::VectorXd lam(2);
  lam << 0.3, -0.8;
  Eigen::VectorXcd z(2);
  z << cplx{0.25, 0.45}, cplx{0.25, -0.45};
  BetheSetup s = rescaled_setup(lam, z, h);
  for (int a = 0; a < 2; ++a) CHECK(std::abs(std::abs(s.Q[a]) - 1.0) < 1e-12);
  CHECK(close(s.z[1], -std::conj(s.z[0]), Tol{1e-12, 1e-12}));
  // strip |Im z| <= |h| maps into |Re z~| <= 1/2
  CHECK(std::abs(s.z[0].real()) <= 0.5 + 1e-12);
  CHECK_THROWS_AS(rescaled_setup(lam, z, cplx{0.0}), degenerate_error);
}

TEST_CASE("pairing form: Hermitian, definite inside the strip, zero on the boundary") {
  const cplx h{0.0, 0.7};
  Eigen::VectorXd lam(2);
  lam << 0.3, -0.8;

  Eigen::VectorXcd z_in(2);
  z_in << cplx{0.25, 0.45}, cplx{0.25, -0.45};
  FormK inside = form_k(rescaled_setup(lam, z_in, h), 1);
  CHECK(inside.herm_residual < 1e-13);
  CHECK(inside.min_eigenvalue > 0.3);
  // eigenvalues of Rcheck(t) are 1 +- t with t = Im z / |h|
  CHECK(std::abs(inside.min_eigenvalue - (1.0 - 0.45 / 0.7)) < 1e-12);

  Eigen::VectorXcd z_bd(2);
  z_bd << cplx{0.25, 0.7}, cplx{0.25, -0.7};
  FormK boundary = form_k(rescaled_setup(lam, z_bd, h), 1);
  CHECK(std::abs(boundary.min_eigenvalue) < 1e-13);

  Eigen::VectorXcd z_out(2);
  z_out << cplx{0.25, 1.1}, cplx{0.25, -1.1};
  FormK outside = form_k(rescaled_setup(lam, z_out, h), 1);
  CHECK(outside.min_eigenvalue < -0.3);

  CHECK_THROWS_AS(form_k(rescaled_setup(lam, z_in, h), 2), std::invalid_argument);
}

#include "dwr/yangian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dwr {

long BetheSetup::dim() const {
  long d = 1;
  for (int i = 0; i < sites(); ++i) d *= N;
  return d;
}

void BetheSetup::validate() const {
  if (N < 2) throw std::invalid_argument("setup: need N >= 2");
  if (Q.size() != N) throw std::invalid_argument("setup: Q size != N");
  if (sites() < 1) throw std::invalid_argument("setup: need at least one site");
  if (dim() > 4096) throw std::invalid_argument("setup: N^n exceeds 4096");
  for (int a = 0; a < N; ++a)
    if (std::abs(Q(a)) == 0.0) throw degenerate_error("setup: zero twist entry");
}

Mat flip_op(int N) {
  Mat p = Mat::Zero(N * N, N * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) p(a * N + b, b * N + a) = 1.0;
  return p;
}

Mat r_matrix(int N, cplx x) {
  if (std::abs(x) == 0.0) throw degenerate_error("r_matrix: pole at x = 0");
  return Mat::Identity(N * N, N * N) + flip_op(N) / x;
}

Mat r_check(int N, cplx x) { return x * flip_op(N) + Mat::Identity(N * N, N * N); }

namespace {

long ipow(int b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

Mat two_site_op(const Mat& m, int N, int nslots, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= nslots || j >= nslots)
    throw std::invalid_argument("two_site_op: bad slots");
  const long dim = ipow(N, nslots);
  const long stride_i = ipow(N, nslots - 1 - i);
  const long stride_j = ipow(N, nslots - 1 - j);
  Mat out = Mat::Zero(dim, dim);
  for (long col = 0; col < dim; ++col) {
    const int ci = static_cast<int>(col / stride_i % N);
    const int cj = static_cast<int>(col / stride_j % N);
    const long base = col - ci * stride_i - cj * stride_j;
    for (int ri = 0; ri < N; ++ri)
      for (int rj = 0; rj < N; ++rj) {
        cplx v = m(ri * N + rj, ci * N + cj);
        if (v != cplx{0.0}) out(base + ri * stride_i + rj * stride_j, col) += v;
      }
  }
  return out;
}

Mat one_site_op(const Mat& m, int N, int nslots, int i) {
  if (i < 0 || i >= nslots) throw std::invalid_argument("one_site_op: bad slot");
  const long dim = ipow(N, nslots);
  const long stride = ipow(N, nslots - 1 - i);
  Mat out = Mat::Zero(dim, dim);
  for (long col = 0; col < dim; ++col) {
    const int ci = static_cast<int>(col / stride % N);
    const long base = col - ci * stride;
    for (int ri = 0; ri < N; ++ri) {
      cplx v = m(ri, ci);
      if (v != cplx{0.0}) out(base + ri * stride, col) += v;
    }
  }
  return out;
}

Mat monodromy(const BetheSetup& s, cplx x) {
  s.validate();
  const int n = s.sites();
  Mat t = Mat::Identity(ipow(s.N, n + 1), ipow(s.N, n + 1));
  // R_{(0n)} ... R_{(01)}: rightmost factor acts first
  for (int i = n; i >= 1; --i)
    t = t * two_site_op(r_matrix(s.N, x - s.z(i - 1)), s.N, n + 1, 0, i);
  return t;
}

std::vector<Mat> aux_blocks(const BetheSetup& s, cplx x) {
  Mat t = monodromy(s, x);
  const long d = s.dim();
  std::vector<Mat> blocks;
  blocks.reserve(static_cast<size_t>(s.N) * static_cast<size_t>(s.N));
  for (int a = 0; a < s.N; ++a)
    for (int b = 0; b < s.N; ++b) blocks.push_back(t.block(a * d, b * d, d, d));
  return blocks;
}

namespace {

// sort a tuple, return permutation sign; 0 for a repeated index
int sort_sign(std::vector<int>& v) {
  int sign = 1;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  return sign;
}

void for_each_permutation(int k, const std::function<void(const std::vector<int>&, int)>& f) {
  std::vector<int> perm(static_cast<size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  int sign = 1;
  while (true) {
    f(perm, sign);
    size_t i = static_cast<size_t>(k);
    for (size_t t = static_cast<size_t>(k) - 1; t > 0; --t)
      if (perm[t - 1] < perm[t]) { i = t - 1; break; }
    if (i == static_cast<size_t>(k)) break;
    size_t j = static_cast<size_t>(k) - 1;
    while (perm[j] <= perm[i]) --j;
    std::swap(perm[i], perm[j]);
    sign = -sign;
    for (size_t lo = i + 1, hi = static_cast<size_t>(k) - 1; lo < hi; ++lo, --hi) {
      std::swap(perm[lo], perm[hi]);
      sign = -sign;
    }
  }
}

}  // namespace

Mat t_minor(const BetheSetup& s, std::vector<int> rows, std::vector<int> cols, cplx x) {
  s.validate();
  if (rows.size() != cols.size() || rows.empty() ||
      rows.size() > static_cast<size_t>(s.N))
    throw std::invalid_argument("t_minor: bad tuple sizes");
  for (int v : rows)
    if (v < 0 || v >= s.N) throw std::invalid_argument("t_minor: index out of range");
  for (int v : cols)
    if (v < 0 || v >= s.N) throw std::invalid_argument("t_minor: index out of range");

  const long d = s.dim();
  const int k = static_cast<int>(rows.size());
  int rs = sort_sign(rows);
  int cs = sort_sign(cols);
  if (rs == 0 || cs == 0) return Mat::Zero(d, d);

  std::vector<std::vector<Mat>> blk;
  blk.reserve(static_cast<size_t>(k));
  for (int t = 0; t < k; ++t) blk.push_back(aux_blocks(s, x - static_cast<double>(t)));

  Mat out = Mat::Zero(d, d);
  for_each_permutation(k, [&](const std::vector<int>& perm, int sign) {
    Mat m = blk[0][static_cast<size_t>(rows[0] * s.N + cols[perm[0]])];
    for (int t = 1; t < k; ++t)
      m = m * blk[static_cast<size_t>(t)]
                 [static_cast<size_t>(rows[static_cast<size_t>(t)] * s.N +
                                      cols[perm[static_cast<size_t>(t)]])];
    out += static_cast<double>(sign) * m;
  });
  return static_cast<double>(rs * cs) * out;
}

Mat qdet(const BetheSetup& s, cplx x) {
  std::vector<int> all(static_cast<size_t>(s.N));
  std::iota(all.begin(), all.end(), 0);
  return t_minor(s, all, all, x);
}

cplx b_scalar(const Eigen::VectorXcd& z, cplx x) {
  cplx v{1.0};
  for (Eigen::Index i = 0; i < z.size(); ++i) v *= (x - z(i) + 1.0) / (x - z(i));
  return v;
}

cplx b_q_scalar(const BetheSetup& s, cplx x) {
  cplx v = b_scalar(s.z, x);
  for (int a = 0; a < s.N; ++a) v *= s.Q(a);
  return v;
}

namespace {

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> c(static_cast<size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    f(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
  }
}

}  // namespace

Mat transfer_B(const BetheSetup& s, int k, cplx x) {
  s.validate();
  if (k < 0 || k > s.N) throw std::invalid_argument("transfer_B: k out of range");
  const long d = s.dim();
  if (k == 0) return Mat::Identity(d, d);
  Mat out = Mat::Zero(d, d);
  for_each_combination(s.N, k, [&](const std::vector<int>& comb) {
    cplx coef{1.0};
    for (int a : comb) coef *= s.Q(a);
    out += coef * t_minor(s, comb, comb, x);
  });
  return out;
}

Mat OpPencil::eval(cplx x) const {
  Mat out(dim, dim);
  cplx dv = den.eval(x);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      out(r, c) = num[static_cast<size_t>(r * dim + c)].eval(x) / dv;
  return out;
}

namespace {

CPoly pencil_denominator(const Eigen::VectorXcd& z, int k) {
  CPoly den = CPoly::constant(1.0);
  for (int s = 0; s < k; ++s)
    for (Eigen::Index i = 0; i < z.size(); ++i)
      den = den * CPoly::linear_root(z(i) + static_cast<double>(s));
  return den;
}

// interpolation nodes on a circle clear of the poles z_i + s
std::vector<cplx> sample_nodes(const Eigen::VectorXcd& z, int k, int count) {
  double r = 3.0;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    r = std::max(r, 2.0 * std::abs(z(i)) + static_cast<double>(k) + 2.0);
  std::vector<cplx> xs(static_cast<size_t>(count));
  const double pi = LogBase::kPi;
  for (int t = 0; t < count; ++t)
    xs[static_cast<size_t>(t)] =
        cplx{0.17, 0.11} + r * std::exp(cplx{0.0, 2.0 * pi * t / count});
  return xs;
}

}  // namespace

OpPencil pencil_B(const BetheSetup& s, int k) {
  s.validate();
  if (k < 0 || k > s.N) throw std::invalid_argument("pencil_B: k out of range");
  OpPencil p;
  p.dim = static_cast<int>(s.dim());
  p.den = pencil_denominator(s.z, k);
  const int deg = p.den.degree();
  auto xs = sample_nodes(s.z, k, deg + 1);

  std::vector<Mat> vals;
  vals.reserve(xs.size());
  for (cplx x : xs) vals.push_back(p.den.eval(x) * transfer_B(s, k, x));

  p.num.resize(static_cast<size_t>(p.dim) * static_cast<size_t>(p.dim));
  std::vector<cplx> ys(xs.size());
  for (int r = 0; r < p.dim; ++r)
    for (int c = 0; c < p.dim; ++c) {
      for (size_t t = 0; t < xs.size(); ++t) ys[t] = vals[t](r, c);
      FitResult fit = interpolate(xs, ys, deg);
      p.fit_residual = std::max(p.fit_residual, fit.residual);
      p.num[static_cast<size_t>(r * p.dim + c)] = fit.poly.trimmed(1e-11);
    }
  return p;
}

double check_rtt(const BetheSetup& s, cplx x, cplx y) {
  const long d = s.dim();
  auto bx = aux_blocks(s, x);
  auto by = aux_blocks(s, y);
  const int N = s.N;
  const long dd = N * N * d;
  Mat t1 = Mat::Zero(dd, dd), t2 = Mat::Zero(dd, dd);
  // slots: aux1, aux2, quantum (flattened); fill blocks directly
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        t1.block((a * N + c) * d, (b * N + c) * d, d, d) +=
            bx[static_cast<size_t>(a * N + b)];
        t2.block((c * N + a) * d, (c * N + b) * d, d, d) +=
            by[static_cast<size_t>(a * N + b)];
      }
  Mat r12 = Mat::Zero(dd, dd);
  Mat r = r_matrix(N, x - y);
  for (int a = 0; a < N * N; ++a)
    for (int b = 0; b < N * N; ++b)
      if (r(a, b) != cplx{0.0})
        r12.block(a * d, b * d, d, d) = r(a, b) * Mat::Identity(d, d);
  Mat lhs = r12 * t1 * t2;
  Mat rhs = t2 * t1 * r12;
  return (lhs - rhs).norm() / std::max(rhs.norm(), 1e-300);
}

double check_exchange(const BetheSetup& s, int i, int j, cplx x) {
  if (i < 0 || i + 1 >= s.sites()) throw std::invalid_argument("check_exchange: bad site");
  BetheSetup sw = s;
  std::swap(sw.z(i), sw.z(i + 1));
  Mat rc = two_site_op(r_check(s.N, s.z(i) - s.z(i + 1)), s.N, s.sites(), i, i + 1);
  Mat lhs = rc * transfer_B(s, j, x);
  Mat rhs = transfer_B(sw, j, x) * rc;
  return (lhs - rhs).norm() / std::max(std::max(lhs.norm(), rhs.norm()), 1e-300);
}

double check_adjoint(const BetheSetup& s, int j, cplx x) {
  BetheSetup cs = s;
  for (int a = 0; a < s.N; ++a) cs.Q(a) = 1.0 / std::conj(s.Q(a));
  for (int i = 0; i < s.sites(); ++i) cs.z(i) = -std::conj(s.z(i));
  Mat lhs = transfer_B(s, j, x);
  Mat rhs = b_q_scalar(s, x) *
            transfer_B(cs, s.N - j, -std::conj(x) - 1.0).adjoint();
  return (lhs - rhs).norm() / std::max(std::max(lhs.norm(), rhs.norm()), 1e-300);
}

AntipodeResidual check_antipode(const BetheSetup& s, cplx x) {
  s.validate();
  const int n = s.sites();
  const long da = ipow(s.N, n + 1);

  // inverse-chain monodromy R_{(01)}^{-1} ... R_{(0n)}^{-1}
  Mat tt = Mat::Identity(da, da);
  for (int i = 1; i <= n; ++i) {
    Mat r = two_site_op(r_matrix(s.N, x - s.z(i - 1)), s.N, n + 1, 0, i);
    tt = tt * r.inverse();
  }
  BetheSetup neg = s;
  for (int i = 0; i < n; ++i) neg.z(i) = -s.z(i);
  Mat rhs = monodromy(neg, -x) * (b_scalar(s.z, x - 1.0) / b_scalar(s.z, x));
  AntipodeResidual out;
  out.monodromy = (tt.transpose() - rhs).norm() / std::max(rhs.norm(), 1e-300);

  cplx prod_q{1.0};
  BetheSetup inv = neg;
  for (int a = 0; a < s.N; ++a) {
    prod_q *= s.Q(a);
    inv.Q(a) = 1.0 / s.Q(a);
  }
  for (int k = 0; k <= s.N; ++k) {
    Mat lhs = transfer_B(s, k, x);
    Mat r = b_scalar(s.z, x) * prod_q *
            transfer_B(inv, s.N - k, -x - 1.0).transpose();
    out.transfer.push_back((lhs - r).norm() /
                           std::max(std::max(lhs.norm(), r.norm()), 1e-300));
  }
  return out;
}

FormK form_k(const BetheSetup& s, int pairs) {
  s.validate();
  if (pairs < 1 || 2 * pairs > s.sites())
    throw std::invalid_argument("form_k: bad pair count");
  const long d = s.dim();
  Mat g = Mat::Identity(d, d);
  for (int i = 0; i < pairs; ++i)
    g = g * two_site_op(r_check(s.N, s.z(2 * i) - s.z(2 * i + 1)), s.N, s.sites(),
                        2 * i, 2 * i + 1);
  FormK f;
  f.gram = g;
  f.herm_residual = (g - g.adjoint()).norm() / std::max(g.norm(), 1e-300);
  Mat herm = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
  f.min_eigenvalue = es.eigenvalues().minCoeff();
  return f;
}

std::vector<BetheVector> bethe_eigensystem(const BetheSetup& s, std::uint64_t seed,
                                           double cluster_gap, int max_retries) {
  s.validate();
  const long d = s.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // pencils once; all spectral data comes from them
  std::vector<OpPencil> pencils;
  for (int k = 1; k <= s.N; ++k) pencils.push_back(pencil_B(s, k));

  double rad = 2.0;
  for (int i = 0; i < s.sites(); ++i) rad = std::max(rad, std::abs(s.z(i)) + 2.0);

  Eigen::MatrixXcd vecs;
  bool ok = false;
  for (int attempt = 0; attempt < max_retries && !ok; ++attempt) {
    cplx x0{rad + gauss(rng), rad + gauss(rng)};
    Mat combo = Mat::Zero(d, d);
    for (int k = 1; k <= s.N; ++k)
      combo += cplx{gauss(rng), gauss(rng)} * pencils[static_cast<size_t>(k - 1)].eval(x0);
    Eigen::ComplexEigenSolver<Mat> es(combo);
    if (es.info() != Eigen::Success) continue;
    // require simple spectrum: pairwise gaps above the cluster threshold
    double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    ok = true;
    for (long a = 0; a < d && ok; ++a)
      for (long b = a + 1; b < d; ++b)
        if (std::abs(es.eigenvalues()(a) - es.eigenvalues()(b)) < cluster_gap * scale) {
          ok = false;
          break;
        }
    if (ok) vecs = es.eigenvectors();
  }
  if (!ok) throw degenerate_error("bethe_eigensystem: clustered spectrum after retries");

  std::vector<BetheVector> out;
  for (long c = 0; c < d; ++c) {
    BetheVector bv;
    bv.v = vecs.col(c);
    Eigen::Index top;
    bv.v.cwiseAbs().maxCoeff(&top);
    bv.b_fn.push_back(RationalFn(CPoly::constant(1.0), CPoly::constant(1.0)));
    for (int j = 1; j <= s.N; ++j) {
      const OpPencil& p = pencils[static_cast<size_t>(j - 1)];
      const int deg = p.den.degree();
      auto xs = sample_nodes(s.z, j, deg + 1);
      std::vector<cplx> ys(xs.size());
      for (size_t t = 0; t < xs.size(); ++t) {
        Eigen::VectorXcd bw = p.eval(xs[t]) * bv.v;
        cplx lam = bw(top) / bv.v(top);
        if ((bw - lam * bv.v).norm() > 1e-7 * std::max(1.0, std::abs(lam)) * bv.v.norm())
          throw degenerate_error("bethe_eigensystem: joint eigenvector check failed");
        ys[t] = lam * p.den.eval(xs[t]);
      }
      FitResult fit = interpolate(xs, ys, deg);
      bv.b_fn.push_back(RationalFn(fit.poly.trimmed(1e-11), p.den));
    }
    out.push_back(std::move(bv));
  }
  return out;
}

ScalarDiffOp scalar_op(const BetheSetup& s, const BetheVector& bv) {
  return {s.z, bv.b_fn};
}

CPoly ScalarDiffOp::apply_cleared(const CPoly& p, cplx q_base) const {
  const int N = order();
  if (std::abs(q_base) == 0.0) throw degenerate_error("apply_cleared: zero base");
  CPoly acc;
  for (int j = 0; j <= N; ++j) {
    // multiplier num_j(x) * prod_{s=j}^{N-1} prod_i (x - s - z_i)
    CPoly mult = b_fn[static_cast<size_t>(j)].num;
    for (int s = j; s < N; ++s)
      for (Eigen::Index i = 0; i < z.size(); ++i)
        mult = mult * CPoly::linear_root(z(i) + static_cast<double>(s));
    cplx w = std::pow(q_base, -static_cast<double>(j)) * ((j % 2 == 0) ? 1.0 : -1.0);
    acc += w * (mult * p.compose_shift(-static_cast<double>(j)));
  }
  return acc;
}

QESpace qe_kernel(const ScalarDiffOp& op, const std::vector<cplx>& bases,
                  int degree_bound, double svd_tol) {
  if (degree_bound < 0) throw std::invalid_argument("qe_kernel: negative degree bound");
  const int N = op.order();
  QESpace v;
  for (cplx q : bases) {
    // coefficients of D(x^m Q^x)/Q^x sum into a linear system on p's coefficients
    std::vector<CPoly> cols;
    int max_len = 0;
    for (int m = 0; m <= degree_bound; ++m) {
      std::vector<cplx> mono(static_cast<size_t>(m) + 1, cplx{0.0});
      mono.back() = 1.0;
      cols.push_back(op.apply_cleared(CPoly(std::move(mono)), q));
      max_len = std::max(max_len, cols.back().degree() + 1);
    }
    Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(max_len, degree_bound + 1);
    for (int m = 0; m <= degree_bound; ++m)
      for (int k = 0; k <= cols[static_cast<size_t>(m)].degree(); ++k)
        sys(k, m) = cols[static_cast<size_t>(m)].coeff(k);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    for (Eigen::Index r = 0; r < degree_bound + 1; ++r) {
      bool in_null = (r >= sv.size()) || (smax == 0.0) || (sv(r) <= svd_tol * smax);
      if (!in_null) continue;
      std::vector<cplx> co(static_cast<size_t>(degree_bound) + 1);
      for (int m = 0; m <= degree_bound; ++m) co[static_cast<size_t>(m)] = svd.matrixV()(m, r);
      CPoly p = CPoly(std::move(co)).trimmed(1e-10);
      if (p.is_zero()) continue;
      v.members.push_back({p.monic(), {std::log(q)}});
    }
  }
  if (static_cast<int>(v.members.size()) != N)
    throw degenerate_error("qe_kernel: kernel dimension mismatch");
  return v;
}

BetheSetup rescaled_setup(const Eigen::VectorXd& lambda, const Eigen::VectorXcd& z, cplx h) {
  if (std::abs(h) == 0.0) throw degenerate_error("rescaled_setup: zero step");
  BetheSetup s;
  s.N = static_cast<int>(lambda.size());
  s.Q = Eigen::VectorXcd(s.N);
  for (int a = 0; a < s.N; ++a) s.Q(a) = std::exp(2.0 * h * lambda(a));
  s.z = z / (2.0 * h);
  return s;
}

}  // namespace dwr

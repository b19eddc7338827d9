#include "dwr/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace dwr {

void CPoly::strip_exact_zeros() {
  while (!c_.empty() && c_.back() == cplx{0.0}) c_.pop_back();
}

double CPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

cplx CPoly::eval(cplx x) const {
  cplx r{0.0};
  for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
  return r;
}

CPoly CPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return CPoly(std::move(d));
}

CPoly CPoly::conj() const {
  std::vector<cplx> d(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) d[k] = std::conj(c_[k]);
  return CPoly(std::move(d));
}

CPoly CPoly::operator-() const {
  std::vector<cplx> d(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) d[k] = -c_[k];
  return CPoly(std::move(d));
}

CPoly& CPoly::operator+=(const CPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), cplx{0.0});
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  strip_exact_zeros();
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), cplx{0.0});
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  strip_exact_zeros();
  return *this;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> d(a.c_.size() + b.c_.size() - 1, cplx{0.0});
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
  return CPoly(std::move(d));
}

CPoly operator*(cplx s, CPoly p) {
  for (auto& v : p.c_) v *= s;
  p.strip_exact_zeros();
  return p;
}

CPoly CPoly::compose_shift(cplx a) const {
  if (c_.empty()) return {};
  const int n = degree();
  // c_new[k] = sum_{m>=k} c[m] C(m,k) a^(m-k); run Horner-style per source term
  std::vector<cplx> out(static_cast<size_t>(n) + 1, cplx{0.0});
  std::vector<double> binom(static_cast<size_t>(n) + 1, 0.0);
  for (int m = 0; m <= n; ++m) {
    // update row of Pascal's triangle in place (binom[k] = C(m,k))
    binom[static_cast<size_t>(m)] = 1.0;
    for (int k = m - 1; k > 0; --k)
      binom[static_cast<size_t>(k)] += binom[static_cast<size_t>(k) - 1];
    cplx apow{1.0};
    for (int k = m; k >= 0; --k) {
      out[static_cast<size_t>(k)] += c_[static_cast<size_t>(m)] * binom[static_cast<size_t>(k)] * apow;
      apow *= a;
    }
  }
  return CPoly(std::move(out));
}

CPoly CPoly::compose_affine(cplx a, cplx b) const {
  CPoly r;
  CPoly lin{{b, a}};
  for (size_t k = c_.size(); k-- > 0;) {
    r = r * lin;
    r += CPoly::constant(c_[k]);
  }
  return r;
}

CPoly CPoly::trimmed(double rel_eps) const {
  double m = max_abs_coeff();
  if (m == 0.0) return {};
  std::vector<cplx> d = c_;
  while (!d.empty() && std::abs(d.back()) <= rel_eps * m) d.pop_back();
  return CPoly(std::move(d));
}

CPoly CPoly::monic() const {
  if (is_zero()) throw degenerate_error("monic of zero polynomial");
  cplx lc = leading();
  std::vector<cplx> d = c_;
  for (auto& v : d) v /= lc;
  d.back() = cplx{1.0};  // exact
  return CPoly(std::move(d));
}

std::vector<cplx> CPoly::roots() const {
  if (is_zero()) throw degenerate_error("no roots of zero polynomial");
  const int n = degree();
  if (n == 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c_[static_cast<size_t>(i)] / c_.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> r(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)] = es.eigenvalues()(i);

  // validate by re-expansion
  CPoly check = CPoly::constant(c_.back());
  for (const auto& z : r) check = check * CPoly::linear_root(z);
  double scale = std::max(max_abs_coeff(), check.max_abs_coeff());
  for (int k = 0; k <= n; ++k)
    if (std::abs(check.coeff(k) - coeff(k)) > 1e-8 * scale)
      throw degenerate_error("root finding failed coefficient reconstruction");
  return r;
}

bool poly_close(const CPoly& a, const CPoly& b, Tol t) {
  int n = std::max(a.degree(), b.degree());
  double scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
  for (int k = 0; k <= n; ++k)
    if (std::abs(a.coeff(k) - b.coeff(k)) > std::max(t.abs, t.rel * scale)) return false;
  return true;
}

CPoly poly_det(const std::vector<std::vector<CPoly>>& m) {
  const size_t n = m.size();
  if (n == 0) throw std::invalid_argument("poly_det: empty matrix");
  if (n > 8) throw std::invalid_argument("poly_det: size capped at 8");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("poly_det: not square");

  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  CPoly det;
  int sign = 1;
  // iterate permutations in lexicographic order, tracking parity by swap count
  while (true) {
    CPoly term = CPoly::constant(1.0);
    for (size_t i = 0; i < n; ++i) term = term * m[i][perm[i]];
    det += static_cast<double>(sign) * term;
    // next_permutation with manual parity bookkeeping
    size_t i = n;
    for (size_t k = n - 1; k > 0; --k)
      if (perm[k - 1] < perm[k]) { i = k - 1; break; }
    if (i == n) break;
    size_t j = n - 1;
    while (perm[j] <= perm[i]) --j;
    std::swap(perm[i], perm[j]);
    sign = -sign;
    for (size_t lo = i + 1, hi = n - 1; lo < hi; ++lo, --hi) {
      std::swap(perm[lo], perm[hi]);
      sign = -sign;
    }
  }
  return det;
}

FitResult interpolate(const std::vector<cplx>& xs, const std::vector<cplx>& ys,
                      int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("interpolate: negative degree bound");
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  if (xs.size() < static_cast<size_t>(degree_bound) + 1)
    throw std::invalid_argument("interpolate: need at least degree_bound+1 nodes");
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (std::abs(xs[i] - xs[j]) < 1e-14 * std::max(1.0, std::abs(xs[i])))
        throw degenerate_error("interpolate: repeated nodes");

  const auto rows = static_cast<Eigen::Index>(xs.size());
  const auto cols = static_cast<Eigen::Index>(degree_bound) + 1;
  Eigen::MatrixXcd V(rows, cols);
  Eigen::VectorXcd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    cplx p{1.0};
    for (Eigen::Index c = 0; c < cols; ++c) {
      V(r, c) = p;
      p *= xs[static_cast<size_t>(r)];
    }
    y(r) = ys[static_cast<size_t>(r)];
  }
  Eigen::VectorXcd sol = V.colPivHouseholderQr().solve(y);
  std::vector<cplx> co(static_cast<size_t>(cols));
  for (Eigen::Index c = 0; c < cols; ++c) co[static_cast<size_t>(c)] = sol(c);
  FitResult fit{CPoly(std::move(co)), 0.0};
  for (size_t i = 0; i < xs.size(); ++i)
    fit.residual = std::max(fit.residual, std::abs(fit.poly.eval(xs[i]) - ys[i]));
  return fit;
}

RationalFn::RationalFn(CPoly n, CPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw degenerate_error("rational function with zero denominator");
  cplx lc = den.leading();
  num = (cplx{1.0} / lc) * num;
  den = den.monic();
}

}  // namespace dwr

#include "dwr/matrixz.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace dwr {

void ZData::validate(double tol) const {
  if (lambda.size() != a.size()) throw std::invalid_argument("ZData: lambda/a size mismatch");
  if (lambda.size() == 0) throw std::invalid_argument("ZData: empty");
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(std::sin(lambda[i] - lambda[j])) <= tol)
        throw degenerate_error("ZData: lambda_i - lambda_j in pi Z");
}

Eigen::MatrixXcd build_z(const ZData& d) {
  d.validate();
  const int n = d.size();
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i) {
    z(i, i) = d.a[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      z(i, j) = cplx{1.0 / std::sin(d.lambda[i] - d.lambda[j]), 0.0};
    }
  }
  return z;
}

QESpace space_from_z(const ZData& d) {
  d.validate();
  const int n = d.size();
  QESpace v;
  for (int i = 0; i < n; ++i) {
    cplx shift = d.a[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      shift += 1.0 / std::tan(d.lambda[i] - d.lambda[j]);
    }
    // p_i(x) = x - a_i - sum cot(lambda_i - lambda_j)
    v.members.push_back({CPoly{{-shift, cplx{1.0, 0.0}}}, LogBase{cplx{d.lambda[i], 0.0}}});
  }
  return v;
}

CPoly charpoly_leibniz(const Eigen::MatrixXcd& z) {
  const int n = static_cast<int>(z.rows());
  std::vector<std::vector<CPoly>> m(n, std::vector<CPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = (i == j) ? CPoly{{-z(i, i), cplx{1.0, 0.0}}} : CPoly::constant(-z(i, j));
  return poly_det(m);
}

double verify_lemma_wron(const ZData& d) {
  const CPoly chi = charpoly_leibniz(build_z(d));
  const DiscreteWronskian w = monic_wronskian(space_from_z(d), cplx{0.0, 1.0});
  double err = 0.0;
  for (int k = 0; k <= d.size(); ++k) err = std::max(err, std::abs(chi.coeff(k) - w.w.coeff(k)));
  // near-resonant angles blow the entries up; report relative to the size
  return err / std::max(1.0, chi.max_abs_coeff());
}

Theorem1aReport theorem1a_check(const ZData& d, double tol) {
  Theorem1aReport rep;
  const CPoly chi = charpoly_leibniz(build_z(d));
  double im = 0.0;
  for (int k = 0; k <= chi.degree(); ++k) im = std::max(im, std::abs(chi.coeff(k).imag()));
  rep.charpoly_real = im <= tol * std::max(1.0, chi.max_abs_coeff());
  rep.roots = chi.roots();
  rep.roots_in_strip = true;
  for (const cplx& r : rep.roots)
    if (std::abs(r.imag()) > 1.0 + tol) rep.roots_in_strip = false;
  for (int i = 0; i < d.size(); ++i) rep.max_im_a = std::max(rep.max_im_a, std::abs(d.a[i].imag()));
  return rep;
}

namespace {

// charpoly coefficients 0..n-1 via the eigensolver; cheap enough to finite-difference
Eigen::VectorXcd charpoly_coeffs_eig(const Eigen::MatrixXcd& z) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(z, false);
  const auto& ev = es.eigenvalues();
  const int n = static_cast<int>(z.rows());
  CPoly p = CPoly::constant(cplx{1.0, 0.0});
  for (int i = 0; i < n; ++i) p = p * CPoly::linear_root(ev[i]);
  Eigen::VectorXcd c(n);
  for (int k = 0; k < n; ++k) c[k] = p.coeff(k);
  return c;
}

Eigen::VectorXd im_coeffs(const ZData& d) {
  const Eigen::VectorXcd c = charpoly_coeffs_eig(build_z(d));
  Eigen::VectorXd f(c.size());
  for (int k = 0; k < c.size(); ++k) f[k] = c[k].imag();
  return f;
}

}  // namespace

bool project_real_charpoly(ZData& d, int max_iters, double tol) {
  const int n = d.size();
  for (int it = 0; it < max_iters; ++it) {
    const Eigen::VectorXd f = im_coeffs(d);
    if (f.lpNorm<Eigen::Infinity>() < tol) return true;
    const double fd = 1e-7;
    Eigen::MatrixXd jac(n, 2 * n);
    for (int u = 0; u < 2 * n; ++u) {
      ZData pert = d;
      if (u < n)
        pert.a[u] += fd;
      else
        pert.a[u - n] += cplx{0.0, fd};
      jac.col(u) = (im_coeffs(pert) - f) / fd;
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) return false;
    for (int i = 0; i < n; ++i) d.a[i] += cplx{step[i], step[n + i]};
    if (step.lpNorm<Eigen::Infinity>() < 1e-15) break;
  }
  return im_coeffs(d).lpNorm<Eigen::Infinity>() < tol;
}

std::vector<double> epsilon_trend(const Eigen::VectorXd& mu, const Eigen::VectorXcd& b,
                                  const std::vector<double>& eps) {
  const int n = static_cast<int>(mu.size());
  Eigen::MatrixXcd limit(n, n);
  for (int i = 0; i < n; ++i) {
    limit(i, i) = b[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      limit(i, j) = cplx{1.0 / (mu[i] - mu[j]), 0.0};
    }
  }
  std::vector<double> out;
  for (double e : eps) {
    ZData d;
    d.lambda = e * mu;
    d.a = b / e;
    out.push_back((e * build_z(d) - limit).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace dwr

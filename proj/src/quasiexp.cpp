#include "dwr/quasiexp.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>

namespace dwr {

CasoratianResult casoratian(const std::vector<QuasiExp>& fs, cplx h) {
  const int N = static_cast<int>(fs.size());
  if (N == 0) throw std::invalid_argument("casoratian: empty member list");
  if (std::abs(h) == 0.0) throw degenerate_error("casoratian: zero step");

  // Row i carries e^{mu_i x}; what is left in entry (i,j) is
  // p_i(x + h(2j-N-1)) * e^{mu_i h (2j-N-1)}.
  std::vector<std::vector<CPoly>> m(static_cast<size_t>(N));
  cplx mu_total{0.0};
  for (int i = 0; i < N; ++i) {
    mu_total += fs[static_cast<size_t>(i)].base.mu;
    m[static_cast<size_t>(i)].reserve(static_cast<size_t>(N));
    for (int j = 1; j <= N; ++j) {
      cplx shift = h * static_cast<double>(2 * j - N - 1);
      cplx w = std::exp(fs[static_cast<size_t>(i)].base.mu * shift);
      m[static_cast<size_t>(i)].push_back(w * fs[static_cast<size_t>(i)].p.compose_shift(shift));
    }
  }
  return {poly_det(m), mu_total};
}

DiscreteWronskian monic_wronskian(const QESpace& v, cplx h, double trim_eps) {
  CasoratianResult c = casoratian(v.members, h);
  CPoly p = c.p.trimmed(trim_eps);
  if (p.is_zero()) throw degenerate_error("monic_wronskian: dependent members");
  return {p.monic(), c.mu_total, h, p.leading()};
}

namespace {

constexpr double kTwoPi = 2.0 * LogBase::kPi;

// group index of mu modulo 2 pi i among previously seen class representatives
size_t base_class(std::vector<cplx>& reps, cplx mu, double tol) {
  for (size_t g = 0; g < reps.size(); ++g) {
    cplx d = mu - reps[g];
    double im_off = d.imag() - kTwoPi * std::round(d.imag() / kTwoPi);
    if (std::abs(d.real()) <= tol && std::abs(im_off) <= tol) return g;
  }
  reps.push_back(mu);
  return reps.size() - 1;
}

int svd_rank(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * s(0)) ++r;
  return r;
}

// stack coefficient vectors of members into rows; columns are (group, power) slots
Eigen::MatrixXcd stack_coeffs(const std::vector<QuasiExp>& ms, std::vector<cplx>& reps,
                              int max_deg, double tol) {
  const auto ng = static_cast<Eigen::Index>(reps.size());
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(ms.size()), ng * (max_deg + 1));
  for (size_t i = 0; i < ms.size(); ++i) {
    auto g = static_cast<Eigen::Index>(base_class(reps, ms[i].base.mu, tol));
    for (int k = 0; k <= ms[i].p.degree(); ++k)
      out(static_cast<Eigen::Index>(i), g * (max_deg + 1) + k) = ms[i].p.coeff(k);
  }
  return out;
}

}  // namespace

bool is_real_space(const QESpace& v, double tol) {
  for (const auto& m : v.members)
    if (!m.base.is_real(tol))
      throw degenerate_error("reality test undefined for non-real bases");
  if (v.members.empty()) return true;

  int max_deg = 0;
  for (const auto& m : v.members) max_deg = std::max(max_deg, m.p.degree());

  std::vector<QuasiExp> both = v.members;
  for (const auto& m : v.members) both.push_back(m.conj());

  // one shared set of base classes so V and conj(V) land in the same columns
  std::vector<cplx> reps;
  for (const auto& m : both) base_class(reps, m.base.mu, tol);

  Eigen::MatrixXcd mv = stack_coeffs(v.members, reps, max_deg, tol);
  Eigen::MatrixXcd mb = stack_coeffs(both, reps, max_deg, tol);
  return svd_rank(mv, tol) == svd_rank(mb, tol);
}

QESpace rescale_space(const QESpace& v, cplx h) {
  if (v.members.empty()) throw std::invalid_argument("rescale_space: empty space");
  if (std::abs(h) == 0.0) throw degenerate_error("rescale_space: zero step");
  const int N = v.dim();
  cplx a = 2.0 * h;
  cplx b = h * static_cast<double>(N + 1);

  QESpace out;
  out.members.reserve(v.members.size());
  for (const auto& m : v.members)
    out.members.push_back({m.p.compose_affine(a, b), {a * m.base.mu}});

  DiscreteWronskian w_in = monic_wronskian(v, h);
  DiscreteWronskian w_out = monic_wronskian(out, half_step_unit_lattice());
  CPoly expected = w_in.w.compose_affine(a, b).monic();
  if (!poly_close(w_out.w, expected, {1e-8, 1e-10}))
    throw degenerate_error("rescale_space: postcondition failed");
  return out;
}

Theorem1Report theorem1_hypotheses(const QESpace& v, cplx h, double tol) {
  Theorem1Report r;
  r.step_imaginary = std::abs(h.real()) <= tol;
  r.bases_real = true;
  for (const auto& m : v.members) r.bases_real = r.bases_real && m.base.is_real(tol);

  DiscreteWronskian w = monic_wronskian(v, h);
  double scale = std::max(1.0, w.w.max_abs_coeff());
  r.w_real = true;
  for (int k = 0; k <= w.w.degree(); ++k)
    r.w_real = r.w_real && std::abs(w.w.coeff(k).imag()) <= tol * scale;

  r.roots = w.w.degree() > 0 ? w.w.roots() : std::vector<cplx>{};
  r.roots_in_strip = true;
  for (const auto& z : r.roots)
    r.roots_in_strip = r.roots_in_strip && std::abs(z.imag()) <= std::abs(h) + tol;
  return r;
}

CasoratianResult differential_wronskian(const std::vector<QuasiExp>& fs) {
  const int N = static_cast<int>(fs.size());
  if (N == 0) throw std::invalid_argument("differential_wronskian: empty member list");
  // d/dx (p e^{mu x}) = (p' + mu p) e^{mu x}
  std::vector<std::vector<CPoly>> m(static_cast<size_t>(N));
  cplx mu_total{0.0};
  for (int i = 0; i < N; ++i) {
    mu_total += fs[static_cast<size_t>(i)].base.mu;
    CPoly cur = fs[static_cast<size_t>(i)].p;
    for (int j = 0; j < N; ++j) {
      m[static_cast<size_t>(i)].push_back(cur);
      cur = cur.derivative() + fs[static_cast<size_t>(i)].base.mu * cur;
    }
  }
  return {poly_det(m), mu_total};
}

}  // namespace dwr

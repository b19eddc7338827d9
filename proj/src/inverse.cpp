#include "dwr/inverse.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

namespace dwr {

namespace {

bool same_base(cplx a, cplx b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

void InverseProblem::validate() const {
  if (mus.size() != degrees.size() || mus.empty())
    throw std::invalid_argument("inverse problem: mus/degrees mismatch");
  if (std::abs(h) == 0.0) throw degenerate_error("inverse problem: zero step");
  if (target_w.is_zero() || std::abs(target_w.leading() - cplx{1.0}) > 1e-12)
    throw std::invalid_argument("inverse problem: target_w must be monic");
  for (size_t i = 0; i < mus.size(); ++i) {
    if (degrees[i] < 0) throw std::invalid_argument("inverse problem: negative degree");
    for (size_t j = i + 1; j < mus.size(); ++j)
      if (same_base(mus[i], mus[j]) && degrees[j] <= degrees[i])
        throw std::invalid_argument(
            "inverse problem: degrees must strictly increase within a base group");
  }
}

std::vector<std::vector<int>> InverseProblem::unknown_slots() const {
  std::vector<std::vector<int>> slots(mus.size());
  for (size_t i = 0; i < mus.size(); ++i) {
    std::vector<int> pinned;  // degrees of lower members sharing the base
    for (size_t j = 0; j < i; ++j)
      if (same_base(mus[i], mus[j])) pinned.push_back(degrees[j]);
    for (int k = 0; k < degrees[i]; ++k)
      if (std::find(pinned.begin(), pinned.end(), k) == pinned.end())
        slots[i].push_back(k);
  }
  return slots;
}

int InverseProblem::n_unknowns() const {
  int n = 0;
  for (const auto& s : unknown_slots()) n += static_cast<int>(s.size());
  return n;
}

QESpace InverseProblem::assemble(const std::vector<cplx>& u) const {
  auto slots = unknown_slots();
  QESpace v;
  size_t pos = 0;
  for (size_t i = 0; i < mus.size(); ++i) {
    std::vector<cplx> co(static_cast<size_t>(degrees[i]) + 1, cplx{0.0});
    co.back() = cplx{1.0};
    for (int k : slots[i]) co[static_cast<size_t>(k)] = u.at(pos++);
    v.members.push_back({CPoly(std::move(co)), {mus[i]}});
  }
  return v;
}

namespace {

// residual: coefficients 0..n-1 of (casoratian / coeff_n) - target_w.
// Returns nullopt when the determinant degenerates (degree drop at this point).
std::optional<Eigen::VectorXcd> residual_vec(const InverseProblem& prob,
                                             const std::vector<cplx>& u) {
  QESpace v = prob.assemble(u);
  CasoratianResult c = casoratian(v.members, prob.h);
  const int n = prob.target_w.degree();
  cplx lead = c.p.coeff(n);
  double mx = c.p.max_abs_coeff();
  if (c.p.degree() > n && std::abs(c.p.leading()) > 1e-10 * mx) return std::nullopt;
  if (std::abs(lead) < 1e-12 * std::max(mx, 1e-300)) return std::nullopt;
  Eigen::VectorXcd r(n);
  for (int k = 0; k < n; ++k) r(k) = c.p.coeff(k) / lead - prob.target_w.coeff(k);
  return r;
}

struct NewtonOutcome {
  std::vector<cplx> u;
  double resid;
};

std::optional<NewtonOutcome> newton_from(const InverseProblem& prob,
                                         std::vector<cplx> u, const NewtonOptions& opt) {
  const int n = static_cast<int>(u.size());
  auto r0 = residual_vec(prob, u);
  if (!r0) return std::nullopt;
  double rn = r0->lpNorm<Eigen::Infinity>();

  for (int iter = 0; iter < opt.max_iters; ++iter) {
    if (rn < opt.tol_residual) break;
    // forward-difference Jacobian; the map is holomorphic in the unknowns
    const double fd = 1e-7;
    Eigen::MatrixXcd jac(r0->size(), n);
    for (int c = 0; c < n; ++c) {
      std::vector<cplx> up = u;
      up[static_cast<size_t>(c)] += fd;
      auto rp = residual_vec(prob, up);
      if (!rp) return std::nullopt;
      jac.col(c) = (*rp - *r0) / fd;
    }
    Eigen::VectorXcd step = jac.colPivHouseholderQr().solve(-*r0);
    double sn = step.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(sn)) return std::nullopt;
    if (sn < opt.tol_step) break;

    // damping: halve until the residual decreases
    double scale = 1.0;
    bool accepted = false;
    for (int half = 0; half <= opt.max_halvings; ++half) {
      std::vector<cplx> un = u;
      for (int c = 0; c < n; ++c) un[static_cast<size_t>(c)] += scale * step(c);
      auto rnew = residual_vec(prob, un);
      if (rnew) {
        double rv = rnew->lpNorm<Eigen::Infinity>();
        if (rv < rn) {
          u = std::move(un);
          r0 = rnew;
          rn = rv;
          accepted = true;
          break;
        }
      }
      scale *= 0.5;
    }
    if (!accepted) break;
  }
  if (rn < opt.tol_residual) return NewtonOutcome{u, rn};
  return std::nullopt;
}

}  // namespace

SolutionSet newton_inverse(const InverseProblem& prob, const NewtonOptions& opt) {
  prob.validate();
  const int n = prob.n_unknowns();
  if (prob.target_w.degree() != n)
    throw std::invalid_argument("inverse problem: unknown count differs from target degree");

  // starts sized to the target root scale
  double scale = 1.0;
  for (cplx z : prob.target_w.roots()) scale = std::max(scale, std::abs(z));
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  bool bases_real = true;
  for (cplx mu : prob.mus) bases_real = bases_real && LogBase{mu}.is_real();

  SolutionSet out;
  for (int trial = 0; trial < opt.restarts; ++trial) {
    std::vector<cplx> u0(static_cast<size_t>(n));
    for (auto& v : u0) v = scale * cplx{gauss(rng), gauss(rng)};
    auto res = newton_from(prob, u0, opt);
    if (!res) continue;

    bool dup = false;
    for (const auto& known : out.unknowns) {
      double d = 0.0;
      for (int k = 0; k < n; ++k)
        d = std::max(d, std::abs(known[static_cast<size_t>(k)] - res->u[static_cast<size_t>(k)]));
      if (d < opt.dedup_tol) { dup = true; break; }
    }
    if (dup) continue;

    QESpace v = prob.assemble(res->u);
    out.solutions.push_back(v);
    out.unknowns.push_back(res->u);
    out.residuals.push_back(res->resid);
    out.max_residual = std::max(out.max_residual, res->resid);
    out.real_flags.push_back(bases_real ? std::optional<bool>(is_real_space(v, 1e-6))
                                        : std::nullopt);
  }
  return out;
}

std::array<Example1Solution, 2> example1_solve(cplx q, cplx h, cplx a_param,
                                               double real_tol) {
  if (std::abs(q) == 0.0 || std::abs(q - cplx{1.0}) < 1e-12)
    throw degenerate_error("example1: base must differ from 0 and 1");
  cplx mu = std::log(q);
  cplx qh = std::exp(mu * h);
  cplx qmh = cplx{1.0} / qh;
  cplx denom = qh - qmh;
  if (std::abs(denom) < 1e-12) throw degenerate_error("example1: Q^h = Q^-h");

  cplx disc = std::sqrt(denom * denom * a_param * a_param + 4.0 * h * h);
  std::array<Example1Solution, 2> out;
  for (int s = 0; s < 2; ++s) {
    cplx a = ((qh + qmh) * h + (s == 0 ? disc : -disc)) / denom;
    Example1Solution sol;
    sol.a = a;
    sol.b = -a;
    sol.real_ab = std::abs(a.imag()) <= real_tol * std::max(1.0, std::abs(a));

    QESpace v;
    v.members.push_back({CPoly{{sol.a, 1.0}}, {cplx{0.0}}});
    v.members.push_back({CPoly{{sol.b, 1.0}}, {mu}});
    CasoratianResult c = casoratian(v.members, h);
    CPoly target = denom * (CPoly{{a_param, 1.0}} * CPoly{{-a_param, 1.0}});
    CPoly diff = c.p - target;
    sol.forward_residual = diff.max_abs_coeff() / std::max(1.0, target.max_abs_coeff());
    out[static_cast<size_t>(s)] = sol;
  }
  return out;
}

std::array<Example2Solution, 2> example2_solve(cplx h, cplx a_param, cplx b_param,
                                               double real_tol) {
  if (std::abs(h) == 0.0) throw degenerate_error("example2: zero step");
  cplx s_disc = std::sqrt(a_param * a_param - a_param * b_param + b_param * b_param -
                          3.0 * h * h);
  CPoly target = 4.0 * h *
                 (CPoly::x() * CPoly::linear_root(a_param) * CPoly::linear_root(b_param));

  std::array<Example2Solution, 2> out;
  for (int s = 0; s < 2; ++s) {
    cplx sg = (s == 0) ? cplx{1.0} : cplx{-1.0};
    cplx a = -(a_param + b_param) / 3.0 + sg * s_disc / 3.0;
    cplx b = -(a_param + b_param) - sg * s_disc;
    cplx c = h * h * (a - b);

    // Newton polish of (a, b, c) on the full coefficient system
    for (int iter = 0; iter < 40; ++iter) {
      auto resid = [&](cplx aa, cplx bb, cplx cc) {
        QESpace v;
        v.members.push_back({CPoly{{aa, 1.0}}, {cplx{0.0}}});
        v.members.push_back({CPoly{{cc, 0.0, bb, 1.0}}, {cplx{0.0}}});
        CPoly d = casoratian(v.members, h).p - target;
        Eigen::Vector3cd r;
        r << d.coeff(0), d.coeff(1), d.coeff(2);
        return r;
      };
      Eigen::Vector3cd r = resid(a, b, c);
      if (r.lpNorm<Eigen::Infinity>() < 1e-13 * std::max(1.0, target.max_abs_coeff())) break;
      const double fd = 1e-7;
      Eigen::Matrix3cd jac;
      jac.col(0) = (resid(a + fd, b, c) - r) / fd;
      jac.col(1) = (resid(a, b + fd, c) - r) / fd;
      jac.col(2) = (resid(a, b, c + fd) - r) / fd;
      Eigen::Vector3cd step = jac.colPivHouseholderQr().solve(-r);
      a += step(0);
      b += step(1);
      c += step(2);
    }

    Example2Solution sol;
    sol.a = a;
    sol.b = b;
    sol.c = c;
    double big = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
    sol.real_abc = std::abs(a.imag()) <= real_tol * big &&
                   std::abs(b.imag()) <= real_tol * big &&
                   std::abs(c.imag()) <= real_tol * big;
    QESpace v;
    v.members.push_back({CPoly{{a, 1.0}}, {cplx{0.0}}});
    v.members.push_back({CPoly{{c, 0.0, b, 1.0}}, {cplx{0.0}}});
    CPoly diff = casoratian(v.members, h).p - target;
    sol.forward_residual = diff.max_abs_coeff() / std::max(1.0, target.max_abs_coeff());
    out[static_cast<size_t>(s)] = sol;
  }
  return out;
}

HarnessReport theorem1_harness(const HarnessParams& params) {
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // shapes: (N, degrees); distinct bases throughout, so target degree = sum
  std::vector<std::vector<int>> shapes = {
      {1, 1}, {1, 2}, {1, 3}, {2, 2}, {1, 1, 1}, {1, 1, 2}};
  if (params.members > 0 || params.max_degree > 0) {
    std::vector<std::vector<int>> keep;
    for (const auto& sh : shapes) {
      int sum = 0;
      for (int d : sh) sum += d;
      if (params.members > 0 && static_cast<int>(sh.size()) != params.members) continue;
      if (params.max_degree > 0 && sum > params.max_degree) continue;
      keep.push_back(sh);
    }
    if (keep.empty())
      throw std::invalid_argument("theorem1_harness: no instance shape matches the filters");
    shapes = std::move(keep);
  }

  HarnessReport rep;
  rep.trials = params.trials;
  for (int t = 0; t < params.trials; ++t) {
    const auto& degs = shapes[static_cast<size_t>(rng() % shapes.size())];
    const int nmem = static_cast<int>(degs.size());
    double s = 0.5 + 1.5 * unit(rng);
    cplx h{0.0, s};

    // sign-uniform real bases with well-separated logs
    double sign = (unit(rng) < 0.5) ? 1.0 : -1.0;
    std::vector<cplx> mus;
    while (static_cast<int>(mus.size()) < nmem) {
      double mag = std::exp(std::log(1.0 / 3.0) + unit(rng) * std::log(9.0));  // [1/3, 3]
      cplx mu = std::log(cplx{sign * mag, 0.0});
      bool ok = true;
      for (cplx m : mus) ok = ok && std::abs(m - mu) > 0.15;
      if (ok) mus.push_back(mu);
    }

    // real target: random real roots and conjugate pairs inside the strip
    int n = 0;
    for (int d : degs) n += d;
    CPoly w = CPoly::constant(1.0);
    int left = n;
    while (left > 0) {
      if (left >= 2 && unit(rng) < 0.5) {
        double re = -2.0 + 4.0 * unit(rng);
        double im = s * (1.0 - params.strip_margin) * unit(rng);
        w = w * CPoly{{re * re + im * im, -2.0 * re, 1.0}};
        left -= 2;
      } else {
        w = w * CPoly::linear_root(cplx{-2.0 + 4.0 * unit(rng), 0.0});
        left -= 1;
      }
    }

    InverseProblem prob;
    prob.mus = mus;
    prob.degrees = degs;
    prob.h = h;
    prob.target_w = w;

    NewtonOptions nopt;
    nopt.seed = rng();
    nopt.restarts = params.restarts;
    SolutionSet sols = newton_inverse(prob, nopt);

    HarnessTrial detail;
    detail.prob = prob;
    detail.found = static_cast<int>(sols.solutions.size());
    detail.max_residual = sols.max_residual;
    bool bad = false;
    for (const auto& f : sols.real_flags)
      if (f.has_value() && *f) ++detail.real_count;
      else bad = true;
    if (bad) rep.reality_failures.push_back(t);
    rep.total_solutions += detail.found;
    rep.max_residual = std::max(rep.max_residual, detail.max_residual);
    rep.detail.push_back(std::move(detail));
  }
  return rep;
}

}  // namespace dwr

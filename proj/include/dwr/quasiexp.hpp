#ifndef DWR_QUASIEXP_HPP
#define DWR_QUASIEXP_HPP

#include "dwr/poly.hpp"

namespace dwr {

/*
 * Quasi-exponentials p(x) Q^x with the base carried as a fixed logarithm mu,
 * Q^x := e^{mu x}. All discrete Wronskians here use the half-step convention:
 *
 *   casoratian(f_1..f_N, h) = det_{i,j} f_i(x + h (2j - N - 1)),   j = 1..N,
 *
 * so consecutive columns are shifted by the full step 2h. The subscript in the
 * usual notation Wr^d_h is this half-step h itself. In particular the discrete
 * Wronskian whose column shifts live on the integer lattice (the one matched to
 * difference operators f(x) -> f(x - j)) is casoratian(.., 1/2); see
 * half_step_unit_lattice(). That value is load-bearing: do not "simplify" it.
 */

struct LogBase {
  cplx mu{0.0};
  cplx q() const { return std::exp(mu); }
  // e^mu is real iff Im(mu) is an integer multiple of pi
  bool is_real(double tol = 1e-9) const {
    double im = mu.imag();
    return std::abs(im - kPi * std::round(im / kPi)) <= tol;
  }
  static constexpr double kPi = 3.14159265358979323846;
};

struct QuasiExp {
  CPoly p;
  LogBase base;
  QuasiExp conj() const { return {p.conj(), {std::conj(base.mu)}}; }
};

struct QESpace {
  std::vector<QuasiExp> members;
  int dim() const { return static_cast<int>(members.size()); }
};

// Half-step at which column shifts are consecutive integers (full step 1).
inline constexpr cplx half_step_unit_lattice() { return {0.5, 0.0}; }

// Polynomial part and total exponent of the (non-normalized) discrete Wronskian:
// the determinant equals result.p(x) * e^{result.mu_total * x}.
struct CasoratianResult {
  CPoly p;
  cplx mu_total{0.0};
};

CasoratianResult casoratian(const std::vector<QuasiExp>& fs, cplx h);

struct DiscreteWronskian {
  CPoly w;          // monic polynomial part
  cplx mu_total{0.0};
  cplx h{0.0};
  cplx leading{0.0};  // scale that was divided out
};

// Monic-normalized discrete Wronskian of the span. Dependent members are
// detected as a (numerically) vanishing determinant.
DiscreteWronskian monic_wronskian(const QESpace& v, cplx h, double trim_eps = 1e-12);

// True iff span(members) has a basis of real quasi-exponentials. Requires all
// bases real; rank test on stacked coefficients grouped by base (mod 2 pi i),
// singular values cut at tol * sigma_max.
bool is_real_space(const QESpace& v, double tol = 1e-9);

// Change of variables x -> 2 h x + h (N+1): members p(2hx + h(N+1)) e^{2 h mu x}.
// Postcondition (checked): the monic wronskian of the output at half-step 1/2
// equals the input's at half-step h composed with the same affine map.
QESpace rescale_space(const QESpace& v, cplx h);

struct Theorem1Report {
  bool step_imaginary = false;   // Re h = 0
  bool bases_real = false;       // every Im(mu) in pi Z
  bool w_real = false;           // monic wronskian has real coefficients
  bool roots_in_strip = false;   // every root: |Im z| <= |h|
  std::vector<cplx> roots;
  bool all() const { return step_imaginary && bases_real && w_real && roots_in_strip; }
};

Theorem1Report theorem1_hypotheses(const QESpace& v, cplx h, double tol = 1e-9);

// Ordinary differential Wronskian det( d^{j-1}/dx^{j-1} f_i ), same return split.
CasoratianResult differential_wronskian(const std::vector<QuasiExp>& fs);

}  // namespace dwr

#endif

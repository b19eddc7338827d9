#ifndef DWR_INVERSE_HPP
#define DWR_INVERSE_HPP

#include "dwr/quasiexp.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>

namespace dwr {

// Find N-dimensional spaces of quasi-exponentials with prescribed bases and
// member degrees whose monic discrete Wronskian at half-step h equals target_w.
//
// Normalization that fixes the basis gauge: each member is monic, degrees are
// strictly increasing inside a group of equal bases, and a member's coefficient
// is pinned to zero at every degree held by a lower member of its group
// (column echelon within the group). The free coefficients are the unknowns.
struct InverseProblem {
  std::vector<cplx> mus;      // base logarithm per member
  std::vector<int> degrees;   // degree per member, same order
  cplx h{0.0, 0.5};
  CPoly target_w;             // monic

  int n_unknowns() const;
  // slots[i] = list of coefficient positions of member i that are free
  std::vector<std::vector<int>> unknown_slots() const;
  QESpace assemble(const std::vector<cplx>& u) const;
  void validate() const;
};

struct NewtonOptions {
  std::uint64_t seed = 1;
  int restarts = 200;
  int max_iters = 80;
  int max_halvings = 30;
  double tol_residual = 1e-10;
  double tol_step = 1e-14;
  double dedup_tol = 1e-5;
};

struct SolutionSet {
  std::vector<QESpace> solutions;
  std::vector<std::vector<cplx>> unknowns;   // canonical coordinates per solution
  std::vector<double> residuals;             // final |r|_inf per solution
  // set iff all problem bases are real; index-aligned with solutions
  std::vector<std::optional<bool>> real_flags;
  double max_residual = 0.0;
};

SolutionSet newton_inverse(const InverseProblem& prob, const NewtonOptions& opt = {});

// Wr^d_h(x + a, Q^x (x + b)) = Q^x (Q^h - Q^{-h}) (x + A)(x - A); both branches.
struct Example1Solution {
  cplx a, b;
  double forward_residual = 0.0;
  bool real_ab = false;
};
std::array<Example1Solution, 2> example1_solve(cplx q, cplx h, cplx a_param,
                                               double real_tol = 1e-9);

// Base that defeats reality for purely imaginary |A| > |h| (so Q^h = i).
inline cplx example1_adversarial_base(cplx h) {
  return std::exp(cplx{LogBase::kPi / (2.0 * std::abs(h)), 0.0});
}

// Wr^d_h(x + a, x^3 + b x^2 + c) = 4 h x (x - A)(x - B); both branches.
// c is recomputed from the system (c = h^2 (a - b)); the closed forms for a and
// b seed a Newton polish of all three unknowns.
struct Example2Solution {
  cplx a, b, c;
  double forward_residual = 0.0;
  bool real_abc = false;
};
std::array<Example2Solution, 2> example2_solve(cplx h, cplx a_param, cplx b_param,
                                               double real_tol = 1e-9);

// Randomized reality check: draw real sign-uniform bases, imaginary step, real
// target with roots in the closed strip |Im z| <= |h| (1 - strip_margin), solve,
// and test that every recovered space is real.
struct HarnessParams {
  std::uint64_t seed = 1;
  int trials = 50;
  int restarts = 40;
  double strip_margin = 1e-3;
  double real_tol = 1e-6;
  int members = 0;     // keep only shapes with this many members (0: any)
  int max_degree = 0;  // keep only shapes with target degree <= this (0: any)
};

struct HarnessTrial {
  InverseProblem prob;
  int found = 0;
  int real_count = 0;
  double max_residual = 0.0;
};

struct HarnessReport {
  int trials = 0;
  int total_solutions = 0;
  std::vector<int> reality_failures;  // trial indices with a non-real solution
  double max_residual = 0.0;
  std::vector<HarnessTrial> detail;
};

HarnessReport theorem1_harness(const HarnessParams& params);

}  // namespace dwr

#endif

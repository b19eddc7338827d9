#ifndef DWR_POLY_HPP
#define DWR_POLY_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwr {

using cplx = std::complex<double>;

// Thrown when an input is structurally valid but mathematically degenerate
// (dependent members, zero step, repeated interpolation nodes, ...).
struct degenerate_error : std::runtime_error {
  explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// Comparison tolerances used across the library unless a caller overrides them.
struct Tol {
  double rel = 1e-9;
  double abs = 1e-12;
};

inline bool close(cplx a, cplx b, Tol t = {}) {
  double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(t.abs, t.rel * scale);
}

// Dense polynomial over C, coefficients stored ascending: c[k] multiplies x^k.
// Invariant: the vector has no trailing (leading-degree) exact zeros; the zero
// polynomial is the empty vector with degree() == -1.
class CPoly {
 public:
  CPoly() = default;
  CPoly(std::initializer_list<cplx> c) : c_(c) { strip_exact_zeros(); }
  explicit CPoly(std::vector<cplx> c) : c_(std::move(c)) { strip_exact_zeros(); }
  static CPoly constant(cplx v) { return CPoly{{v}}; }
  static CPoly x() { return CPoly{{cplx{0.0, 0.0}, cplx{1.0, 0.0}}}; }
  // (x - r)
  static CPoly linear_root(cplx r) { return CPoly{{-r, 1.0}}; }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)] : cplx{0.0};
  }
  cplx leading() const { return c_.empty() ? cplx{0.0} : c_.back(); }
  double max_abs_coeff() const;

  cplx eval(cplx x) const;            // Horner
  CPoly derivative() const;
  CPoly conj() const;                 // conjugate coefficients

  CPoly operator-() const;
  CPoly& operator+=(const CPoly& o);
  CPoly& operator-=(const CPoly& o);
  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
  friend CPoly operator*(const CPoly& a, const CPoly& b);
  friend CPoly operator*(cplx s, CPoly p);

  // p(x + a), binomial expansion
  CPoly compose_shift(cplx a) const;
  // p(a x + b)
  CPoly compose_affine(cplx a, cplx b) const;

  // Drop leading coefficients with |c| <= rel_eps * max|c|. Used where floating
  // cancellation produces spurious top-degree junk; plain arithmetic never trims.
  CPoly trimmed(double rel_eps = 1e-12) const;
  // Divide by the leading coefficient. Degenerate on the zero polynomial.
  CPoly monic() const;

  // All complex roots via the companion matrix. The result is validated by
  // re-expanding prod (x - r_i) and comparing coefficients (1e-8 relative).
  std::vector<cplx> roots() const;

 private:
  void strip_exact_zeros();
  std::vector<cplx> c_;
};

bool poly_close(const CPoly& a, const CPoly& b, Tol t = {});

// Determinant of a square matrix of polynomials by the alternating Leibniz sum.
// Kept exact in structure (no elimination); size is capped at 8.
CPoly poly_det(const std::vector<std::vector<CPoly>>& m);

struct FitResult {
  CPoly poly;
  double residual = 0.0;  // max |p(x_i) - y_i| over the nodes
};

// Least-squares polynomial fit of degree <= degree_bound through (x_i, y_i).
// Needs at least degree_bound+1 nodes; repeated nodes are degenerate.
FitResult interpolate(const std::vector<cplx>& xs, const std::vector<cplx>& ys,
                      int degree_bound);

// num/den with den kept monic; construction normalizes. den must be nonzero.
struct RationalFn {
  CPoly num;
  CPoly den = CPoly::constant(1.0);

  RationalFn() = default;
  RationalFn(CPoly n, CPoly d);
  cplx eval(cplx x) const { return num.eval(x) / den.eval(x); }
};

}  // namespace dwr

#endif

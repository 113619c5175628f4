#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "liftgap/rational.hpp"

namespace liftgap {

/// Subset of coordinates as a bitmask; bit i stands for coordinate i
/// (0-based, i.e. the variable x_{i+1}).
using Mask = std::uint64_t;

int popcount(Mask m);
/// chi_alpha evaluated at assignment index x: (-1)^|alpha & x|.
inline int character_sign(Mask alpha, Mask x) { return (__builtin_popcountll(alpha & x) & 1) ? -1 : 1; }
Mask mask_of(std::span<const int> coords);
std::vector<int> coords_of(Mask m);
/// Lexicographic order on sorted coordinate lists ({0} < {0,1} < {1}).
bool lex_less(Mask a, Mask b);

/// Real function on {-1,1}^n as a dense table. Index convention: bit b of the
/// index is 1 iff x_{b+1} = -1.
class BoolFn {
 public:
  BoolFn() = default;
  /// Zero function. Throws SizeCapExceeded above the boolfn cap.
  explicit BoolFn(int n);
  BoolFn(int n, std::vector<Rational> values);

  static BoolFn constant(int n, const Rational& c);
  static BoolFn character(int n, Mask alpha);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t x) const { return values_[x]; }
  Rational& operator[](std::size_t x) { return values_[x]; }
  const std::vector<Rational>& values() const { return values_; }

  Rational mean() const;
  Rational sup_norm() const;
  bool is_nonnegative() const;

  friend bool operator==(const BoolFn& a, const BoolFn& b) = default;

 private:
  int n_ = 0;
  std::vector<Rational> values_;
};

BoolFn operator+(const BoolFn& a, const BoolFn& b);
BoolFn operator-(const BoolFn& a, const BoolFn& b);
BoolFn operator*(const Rational& s, const BoolFn& f);
/// Pointwise product.
BoolFn pointwise(const BoolFn& a, const BoolFn& b);
/// <f, g> = E[f g].
Rational inner(const BoolFn& a, const BoolFn& b);

/// Walsh-Hadamard coefficients f^(alpha) = E[f chi_alpha], stored densely by
/// alpha.
struct FourierCoeffs {
  int n = 0;
  std::vector<Rational> coeffs;

  const Rational& operator[](Mask alpha) const { return coeffs[alpha]; }
  /// Nonzero coefficients in increasing mask order.
  std::vector<std::pair<Mask, Rational>> nonzero() const;
  int degree() const;

  friend bool operator==(const FourierCoeffs& a, const FourierCoeffs& b) = default;
};

FourierCoeffs fourier_transform(const BoolFn& f);
BoolFn inverse_fourier_transform(const FourierCoeffs& c);

/// Reference transform in pure rational arithmetic. fourier_transform takes
/// an int64 kernel path whenever the common-denominator image fits.
FourierCoeffs fourier_transform_rational(const BoolFn& f);

/// Non-negative function with mean exactly 1.
class Density {
 public:
  /// Throws ParameterError if f is negative somewhere or E f != 1.
  explicit Density(BoolFn f);

  /// Scales a non-negative, not identically zero f to a density; returns the
  /// density and the scale E f.
  static std::pair<Density, Rational> normalize(const BoolFn& f);
  static Density uniform(int n);

  const BoolFn& fn() const { return f_; }
  int n() const { return f_.n(); }
  /// n - H(mu_q) in bits; computed in double, absolute tolerance 1e-12.
  double entropy_deficit() const { return deficit_; }

 private:
  BoolFn f_;
  double deficit_ = 0.0;
};

double entropy_deficit(const Density& q);

/// Conditional density on the coordinates S (sorted, distinct): averages q
/// over the coordinates outside S. Bit k of the result's index refers to the
/// k-th smallest element of S.
Density conditional_density(const Density& q, std::span<const int> coords);
/// Same averaging for an arbitrary function, kept on all n coordinates.
BoolFn average_outside(const BoolFn& f, Mask keep);

/// Threshold gamma held through gamma^4 so irrational gammas with rational
/// fourth powers compare exactly.
struct CoefficientBound {
  Rational gamma_fourth;

  static CoefficientBound from_gamma(const Rational& gamma);
  static CoefficientBound from_gamma_squared(const Rational& gamma_sq);
  /// |c| > gamma.
  bool exceeded_by(const Rational& c) const;
  /// count <= k / gamma^2, i.e. count^2 gamma^4 <= k^2 (k >= 0).
  bool count_within(std::size_t count, const Rational& k) const;
  double approx_gamma() const;
};

struct JuntaCertificate {
  std::vector<int> junta;  // J, sorted
  int d = 0;
  CoefficientBound gamma;
  Rational t;
  std::vector<std::pair<Mask, Rational>> large;      // S, in scan order
  std::vector<std::pair<Mask, Rational>> selected;   // S', in scan order
  std::vector<std::pair<Mask, Rational>> violations; // empty on success
  bool success = false;
};

/// Junta extraction for high-entropy densities: collects the coefficients of
/// degree <= d exceeding gamma, keeps a maximal F2-independent subfamily
/// (scanning by decreasing magnitude, lexicographic tie-break) and returns the
/// union of its members. Succeeds when |S'| <= 2t/gamma^2.
JuntaCertificate chang_junta(const Density& q, const Rational& t, int d, const CoefficientBound& gamma);
JuntaCertificate chang_junta(const FourierCoeffs& qhat, const Rational& t, int d, const CoefficientBound& gamma);
JuntaCertificate chang_junta(const Density& q, const Rational& t, int d, const Rational& gamma);

bool is_junta(const BoolFn& f, Mask coords);
/// Minimal coordinate set f depends on.
Mask junta_support(const BoolFn& f);

/// 2 * 1{x_1 + ... + x_n > 0} for odd n.
Density majority_density(int n);

}  // namespace liftgap

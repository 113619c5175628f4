#include "liftgap/boolfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liftgap/caps.hpp"
#include "liftgap/error.hpp"
#include "liftgap/kernels.hpp"

namespace liftgap {

int popcount(Mask m) { return __builtin_popcountll(m); }

Mask mask_of(std::span<const int> coords) {
  Mask m = 0;
  for (int c : coords) m |= Mask{1} << c;
  return m;
}

std::vector<int> coords_of(Mask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

bool lex_less(Mask a, Mask b) {
  const auto ca = coords_of(a);
  const auto cb = coords_of(b);
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

namespace {

void check_n(int n) {
  if (n < 0) throw ParameterError("negative variable count");
  const int cap = SizeCaps::current().boolfn_max_n;
  if (n > cap)
    throw SizeCapExceeded("boolean function on " + std::to_string(n) + " variables exceeds cap " +
                          std::to_string(cap));
}

}  // namespace

BoolFn::BoolFn(int n) : n_(n) {
  check_n(n);
  values_.assign(std::size_t{1} << n, Rational(0));
}

BoolFn::BoolFn(int n, std::vector<Rational> values) : n_(n), values_(std::move(values)) {
  check_n(n);
  if (values_.size() != (std::size_t{1} << n))
    throw MalformedInput("table has " + std::to_string(values_.size()) + " entries, expected 2^" +
                         std::to_string(n));
}

BoolFn BoolFn::constant(int n, const Rational& c) {
  BoolFn f(n);
  for (auto& v : f.values_) v = c;
  return f;
}

BoolFn BoolFn::character(int n, Mask alpha) {
  BoolFn f(n);
  for (std::size_t x = 0; x < f.size(); ++x) f.values_[x] = character_sign(alpha, x);
  return f;
}

Rational BoolFn::mean() const {
  Rational s = 0;
  for (const auto& v : values_) s += v;
  return s / Rational(BigInt(1) << n_);
}

Rational BoolFn::sup_norm() const {
  Rational m = 0;
  for (const auto& v : values_) {
    const Rational a = abs(v);
    if (a > m) m = a;
  }
  return m;
}

bool BoolFn::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v >= 0; });
}

static void require_same_n(const BoolFn& a, const BoolFn& b) {
  if (a.n() != b.n()) throw ParameterError("functions on different variable counts");
}

BoolFn operator+(const BoolFn& a, const BoolFn& b) {
  require_same_n(a, b);
  BoolFn r = a;
  for (std::size_t x = 0; x < r.size(); ++x) r[x] += b[x];
  return r;
}

BoolFn operator-(const BoolFn& a, const BoolFn& b) {
  require_same_n(a, b);
  BoolFn r = a;
  for (std::size_t x = 0; x < r.size(); ++x) r[x] -= b[x];
  return r;
}

BoolFn operator*(const Rational& s, const BoolFn& f) {
  BoolFn r = f;
  for (std::size_t x = 0; x < r.size(); ++x) r[x] *= s;
  return r;
}

BoolFn pointwise(const BoolFn& a, const BoolFn& b) {
  require_same_n(a, b);
  BoolFn r = a;
  for (std::size_t x = 0; x < r.size(); ++x) r[x] *= b[x];
  return r;
}

Rational inner(const BoolFn& a, const BoolFn& b) { return pointwise(a, b).mean(); }

std::vector<std::pair<Mask, Rational>> FourierCoeffs::nonzero() const {
  std::vector<std::pair<Mask, Rational>> out;
  for (std::size_t a = 0; a < coeffs.size(); ++a)
    if (coeffs[a] != 0) out.emplace_back(a, coeffs[a]);
  return out;
}

int FourierCoeffs::degree() const {
  int d = 0;
  for (std::size_t a = 0; a < coeffs.size(); ++a)
    if (coeffs[a] != 0) d = std::max(d, popcount(a));
  return d;
}

namespace {

// Unnormalized transform of a rational table, via the int64 kernel when the
// integer image L*f (L = common denominator) cannot overflow.
std::vector<Rational> hadamard(const std::vector<Rational>& values, int n) {
  const BigInt l = common_denominator(values);
  BigInt max_abs = 0;
  std::vector<BigInt> scaled;
  scaled.reserve(values.size());
  for (const auto& v : values) {
    BigInt s = numerator_of(v) * (l / denominator_of(v));
    const BigInt a = s < 0 ? BigInt(-s) : s;
    if (a > max_abs) max_abs = a;
    scaled.push_back(std::move(s));
  }
  const BigInt limit = BigInt(1) << (62 - n);
  std::vector<Rational> out(values.size());
  if (n <= 40 && max_abs < limit) {
    std::vector<std::int64_t> ints(values.size());
    for (std::size_t i = 0; i < ints.size(); ++i) ints[i] = scaled[i].convert_to<std::int64_t>();
    kernels::wht_i64(ints);
    for (std::size_t i = 0; i < ints.size(); ++i) out[i] = Rational(BigInt(ints[i]), l);
    return out;
  }
  out = values;
  const std::size_t size = out.size();
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        Rational a = out[j];
        out[j] += out[j + h];
        out[j + h] = a - out[j + h];
      }
    }
  }
  return out;
}

}  // namespace

FourierCoeffs fourier_transform(const BoolFn& f) {
  FourierCoeffs c{f.n(), hadamard(f.values(), f.n())};
  const Rational scale(BigInt(1), BigInt(1) << f.n());
  for (auto& v : c.coeffs) v *= scale;
  return c;
}

FourierCoeffs fourier_transform_rational(const BoolFn& f) {
  const std::size_t size = f.size();
  std::vector<Rational> out = f.values();
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        Rational a = out[j];
        out[j] += out[j + h];
        out[j + h] = a - out[j + h];
      }
    }
  }
  const Rational scale(BigInt(1), BigInt(1) << f.n());
  for (auto& v : out) v *= scale;
  return FourierCoeffs{f.n(), std::move(out)};
}

BoolFn inverse_fourier_transform(const FourierCoeffs& c) {
  if (c.coeffs.size() != (std::size_t{1} << c.n)) throw MalformedInput("coefficient vector has wrong length");
  return BoolFn(c.n, hadamard(c.coeffs, c.n));
}

namespace {

double compute_deficit(const BoolFn& f) {
  const double size = static_cast<double>(f.size());
  double h = 0.0;
  for (const auto& v : f.values()) {
    if (v == 0) continue;
    const double p = to_double(v) / size;
    h -= p * std::log2(p);
  }
  return static_cast<double>(f.n()) - h;
}

}  // namespace

Density::Density(BoolFn f) : f_(std::move(f)) {
  if (!f_.is_nonnegative()) throw ParameterError("density takes a negative value");
  if (f_.mean() != 1) throw ParameterError("density must have mean exactly 1, got " + to_string(f_.mean()));
  deficit_ = compute_deficit(f_);
}

std::pair<Density, Rational> Density::normalize(const BoolFn& f) {
  if (!f.is_nonnegative()) throw ParameterError("cannot normalize a function with negative values");
  const Rational m = f.mean();
  if (m == 0) throw ParameterError("cannot normalize the zero function");
  return {Density(Rational(1) / m * f), m};
}

Density Density::uniform(int n) { return Density(BoolFn::constant(n, 1)); }

double entropy_deficit(const Density& q) { return q.entropy_deficit(); }

BoolFn average_outside(const BoolFn& f, Mask keep) {
  const int n = f.n();
  const Mask full = (n == 64) ? ~Mask{0} : ((Mask{1} << n) - 1);
  const Mask drop = full & ~keep;
  BoolFn out(n);
  // Sum over each coset of the dropped coordinates, then broadcast.
  std::vector<Rational> sums(f.size(), Rational(0));
  for (std::size_t x = 0; x < f.size(); ++x) sums[x & keep] += f[x];
  const Rational scale(BigInt(1), BigInt(1) << popcount(drop));
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = sums[x & keep] * scale;
  return out;
}

Density conditional_density(const Density& q, std::span<const int> coords) {
  const int n = q.n();
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] < 0 || coords[k] >= n) throw ParameterError("coordinate out of range in conditional_density");
    if (k > 0 && coords[k] <= coords[k - 1]) throw ParameterError("coordinates must be sorted and distinct");
  }
  const int s = static_cast<int>(coords.size());
  std::vector<Rational> sums(std::size_t{1} << s, Rational(0));
  for (std::size_t x = 0; x < q.fn().size(); ++x) {
    std::size_t y = 0;
    for (int k = 0; k < s; ++k) y |= ((x >> coords[k]) & 1u) << k;
    sums[y] += q.fn()[x];
  }
  const Rational scale(BigInt(1), BigInt(1) << (n - s));
  for (auto& v : sums) v *= scale;
  return Density(BoolFn(s, std::move(sums)));
}

CoefficientBound CoefficientBound::from_gamma(const Rational& gamma) {
  if (gamma <= 0) throw ParameterError("gamma must be positive");
  return CoefficientBound{rpow(gamma, 4)};
}

CoefficientBound CoefficientBound::from_gamma_squared(const Rational& gamma_sq) {
  if (gamma_sq <= 0) throw ParameterError("gamma must be positive");
  return CoefficientBound{gamma_sq * gamma_sq};
}

bool CoefficientBound::exceeded_by(const Rational& c) const { return rpow(c, 4) > gamma_fourth; }

bool CoefficientBound::count_within(std::size_t count, const Rational& k) const {
  const Rational c(static_cast<unsigned long long>(count));
  return c * c * gamma_fourth <= k * k;
}

double CoefficientBound::approx_gamma() const { return std::pow(to_double(gamma_fourth), 0.25); }

JuntaCertificate chang_junta(const FourierCoeffs& qhat, const Rational& t, int d, const CoefficientBound& gamma) {
  if (gamma.gamma_fourth <= 0) throw ParameterError("gamma must be positive");
  if (d < 1 || d > qhat.n) throw ParameterError("degree bound d must satisfy 1 <= d <= n");
  if (t < 0) throw ParameterError("entropy deficit t must be non-negative");

  JuntaCertificate cert;
  cert.d = d;
  cert.gamma = gamma;
  cert.t = t;
  for (std::size_t a = 1; a < qhat.coeffs.size(); ++a) {
    if (popcount(a) > d) continue;
    if (gamma.exceeded_by(qhat.coeffs[a])) cert.large.emplace_back(a, qhat.coeffs[a]);
  }
  std::stable_sort(cert.large.begin(), cert.large.end(), [](const auto& x, const auto& y) {
    const Rational ax = abs(x.second);
    const Rational ay = abs(y.second);
    if (ax != ay) return ax > ay;
    return lex_less(x.first, y.first);
  });

  // XOR basis keyed by leading bit.
  std::vector<Mask> basis(64, 0);
  auto independent = [&](Mask v) {
    for (int b = 63; b >= 0 && v != 0; --b) {
      if (!((v >> b) & 1)) continue;
      if (basis[b] == 0) {
        basis[b] = v;
        return true;
      }
      v ^= basis[b];
    }
    return false;
  };
  Mask j = 0;
  for (const auto& entry : cert.large) {
    if (independent(entry.first)) {
      cert.selected.push_back(entry);
      j |= entry.first;
    }
  }
  cert.junta = coords_of(j);
  cert.success = gamma.count_within(cert.selected.size(), 2 * t);
  if (!cert.success) cert.violations = cert.selected;
  return cert;
}

JuntaCertificate chang_junta(const Density& q, const Rational& t, int d, const CoefficientBound& gamma) {
  return chang_junta(fourier_transform(q.fn()), t, d, gamma);
}

JuntaCertificate chang_junta(const Density& q, const Rational& t, int d, const Rational& gamma) {
  return chang_junta(q, t, d, CoefficientBound::from_gamma(gamma));
}

bool is_junta(const BoolFn& f, Mask coords) { return (junta_support(f) & ~coords) == 0; }

Mask junta_support(const BoolFn& f) {
  Mask support = 0;
  for (int i = 0; i < f.n(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t x = 0; x < f.size(); ++x) {
      if ((x & bit) == 0 && f[x] != f[x | bit]) {
        support |= bit;
        break;
      }
    }
  }
  return support;
}

Density majority_density(int n) {
  if (n % 2 == 0) throw ParameterError("majority density needs an odd variable count");
  BoolFn f(n);
  for (std::size_t x = 0; x < f.size(); ++x) {
    const int minus = popcount(x);
    f[x] = (n - 2 * minus > 0) ? 2 : 0;
  }
  return Density(std::move(f));
}

}  // namespace liftgap

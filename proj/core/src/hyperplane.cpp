#include "hopper/hyperplane.hpp"

#include "hopper/errors.hpp"

#include <cmath>
#include <functional>

namespace hopper {
namespace {

// Converts an integer to double after dividing by 2^shift, without overflow.
double scaled_to_double(const Integer& v, long shift) {
  if (shift <= 0) return v.convert_to<double>();
  Integer den = 1;
  den <<= static_cast<unsigned>(shift);
  return Rational(v, den).convert_to<double>();
}

long max_bits(const IntegerVector& v, const Integer& extra) {
  std::size_t bits = 0;
  auto consider = [&](const Integer& x) {
    if (x != 0) bits = std::max<std::size_t>(bits, boost::multiprecision::msb(abs(x)) + 1);
  };
  for (const auto& x : v) consider(x);
  consider(extra);
  return static_cast<long>(bits);
}

}  // namespace

Hyperplane Hyperplane::canonical(IntegerVector normal, Integer offset) {
  std::size_t first = normal.size();
  for (std::size_t i = 0; i < normal.size(); ++i) {
    if (normal[i] != 0) {
      first = i;
      break;
    }
  }
  if (first == normal.size()) throw DegenerateInput("hyperplane with zero normal");
  normal.push_back(offset);
  make_primitive(normal);
  if (normal[first] < 0) {
    for (auto& x : normal) x = -x;
  }
  Hyperplane h;
  h.offset = normal.back();
  normal.pop_back();
  h.normal = std::move(normal);
  return h;
}

Rational Hyperplane::evaluate(std::span<const Rational> x) const {
  Rational s = -Rational(offset);
  for (std::size_t i = 0; i < normal.size(); ++i) {
    if (normal[i] != 0) s += Rational(normal[i]) * x[i];
  }
  return s;
}

int Hyperplane::side(std::span<const Rational> x) const { return evaluate(x).sign(); }

std::vector<double> Hyperplane::unit_normal() const {
  const long shift = max_bits(normal, 0) - 60;
  std::vector<double> n(normal.size());
  double norm2 = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) {
    n[i] = scaled_to_double(normal[i], shift);
    norm2 += n[i] * n[i];
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : n) x *= inv;
  return n;
}

double Hyperplane::unit_offset() const {
  const long shift = max_bits(normal, 0) - 60;
  double norm2 = 0;
  for (const auto& a : normal) {
    const double x = scaled_to_double(a, shift);
    norm2 += x * x;
  }
  return scaled_to_double(offset, shift) / std::sqrt(norm2);
}

std::size_t HyperplaneHash::operator()(const Hyperplane& h) const noexcept {
  std::size_t seed = h.normal.size();
  auto mix = [&seed](const Integer& v) {
    const mpz_srcptr z = v.backend().data();
    std::size_t local = static_cast<std::size_t>(z->_mp_size);
    const int limbs = std::abs(z->_mp_size);
    for (int i = 0; i < limbs; ++i) local = local * 1099511628211ULL ^ static_cast<std::size_t>(z->_mp_d[i]);
    seed ^= local + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  };
  for (const auto& a : h.normal) mix(a);
  mix(h.offset);
  return seed;
}

bool SignedConstraint::satisfied_by(std::span<const Rational> x) const {
  const int s = plane.side(x);
  return sense == Sense::LessEqual ? s <= 0 : s >= 0;
}

std::pair<std::vector<double>, double> SignedConstraint::as_float_le() const {
  auto n = plane.unit_normal();
  double b = plane.unit_offset();
  if (sense == Sense::GreaterEqual) {
    for (auto& x : n) x = -x;
    b = -b;
  }
  return {std::move(n), b};
}

Integer bareiss_determinant(std::vector<IntegerVector>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  Integer t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k] == 0) ++pivot;
      if (pivot == n) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = m[i][j] * m[k][k];
        t -= m[i][k] * m[k][j];
        if (prev != 1) t /= prev;
        m[i][j] = t;
      }
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

std::optional<Hyperplane> hyperplane_through_homogeneous(std::span<const IntegerVector* const> rows) {
  const std::size_t d = rows.size();
  if (d == 0) return std::nullopt;
  // Kernel of the d x (d+1) matrix by signed maximal minors.
  IntegerVector kernel(d + 1);
  std::vector<IntegerVector> minor(d, IntegerVector(d));
  bool nonzero = false;
  for (std::size_t skip = 0; skip <= d; ++skip) {
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t c = 0;
      for (std::size_t j = 0; j <= d; ++j) {
        if (j != skip) minor[i][c++] = (*rows[i])[j];
      }
    }
    Integer det = bareiss_determinant(minor);
    kernel[skip] = (skip % 2 == 0) ? det : Integer(-det);
    if (skip < d && kernel[skip] != 0) nonzero = true;
  }
  if (!nonzero) return std::nullopt;
  Integer offset = -kernel[d];
  kernel.pop_back();
  return Hyperplane::canonical(std::move(kernel), std::move(offset));
}

Hyperplane hyperplane_through(const std::vector<RationalVector>& points) {
  if (points.empty()) throw AffinelyDependent("no points given");
  const std::size_t d = points.front().size();
  if (points.size() != d) {
    throw AffinelyDependent("need exactly " + std::to_string(d) + " points, got " + std::to_string(points.size()));
  }
  std::vector<IntegerVector> rows;
  rows.reserve(d);
  for (const auto& p : points) {
    if (p.size() != d) throw AffinelyDependent("points of mixed dimension");
    RationalVector h(p.begin(), p.end());
    h.push_back(1);
    rows.push_back(integerize(h));
  }
  std::vector<const IntegerVector*> ptrs;
  for (const auto& r : rows) ptrs.push_back(&r);
  auto plane = hyperplane_through_homogeneous(ptrs);
  if (!plane) throw AffinelyDependent("points do not determine a unique hyperplane");
  return *plane;
}

}  // namespace hopper

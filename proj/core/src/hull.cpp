#include "hopper/hull.hpp"

#include "hopper/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hopper {
namespace {

template <class T>
struct Ray {
  std::vector<T> coords;
  VertexSet zeros;
};

// Integer rows: exact signs, rays kept primitive.
struct ExactOps {
  using Value = Integer;
  static Integer dot(const IntegerVector& row, const IntegerVector& ray) {
    Integer s = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] != 0 && ray[i] != 0) s += row[i] * ray[i];
    }
    return s;
  }
  static int sign(const Integer& v, double) { return v.sign(); }
  static IntegerVector combine(const IntegerVector& p, const Integer& sp, const IntegerVector& q, const Integer& sq) {
    IntegerVector out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = sp * q[i] - sq * p[i];
    make_primitive(out);
    return out;
  }
};

struct FloatOps {
  using Value = double;
  static double dot(const std::vector<double>& row, const std::vector<double>& ray) {
    double s = 0;
    for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * ray[i];
    return s;
  }
  static int sign(double v, double tolerance) {
    if (v > tolerance) return 1;
    if (v < -tolerance) return -1;
    return 0;
  }
  static void normalize(std::vector<double>& r) {
    double m = 0;
    for (double x : r) m = std::max(m, std::abs(x));
    if (m > 0) {
      for (double& x : r) x /= m;
    }
  }
  static std::vector<double> combine(const std::vector<double>& p, double sp, const std::vector<double>& q, double sq) {
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = sp * q[i] - sq * p[i];
    normalize(out);
    return out;
  }
};

// Double description: extreme rays of {y : row_i . y >= 0 for all i}, given
// a basis of m = dim independent rows and the matching initial rays.
template <class Ops>
std::vector<Ray<typename Ops::Value>> double_description(
    const std::vector<std::vector<typename Ops::Value>>& rows, const std::vector<double>& tolerance,
    const std::vector<std::size_t>& basis, std::vector<std::vector<typename Ops::Value>> initial) {
  using Value = typename Ops::Value;
  const std::size_t n = rows.size();
  const std::size_t m = basis.size();
  std::vector<Ray<Value>> rays;
  rays.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    Ray<Value> r{std::move(initial[j]), VertexSet(n)};
    for (std::size_t k = 0; k < m; ++k) {
      if (k != j) r.zeros.set(basis[k]);
    }
    rays.push_back(std::move(r));
  }

  std::vector<bool> in_basis(n, false);
  for (auto b : basis) in_basis[b] = true;

  std::vector<Value> values;
  std::vector<int> signs;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_basis[i]) continue;
    values.resize(rays.size());
    signs.resize(rays.size());
    bool any_negative = false;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      values[r] = Ops::dot(rows[i], rays[r].coords);
      signs[r] = Ops::sign(values[r], tolerance[i]);
      if (signs[r] < 0) any_negative = true;
    }
    if (!any_negative) {
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (signs[r] == 0) rays[r].zeros.set(i);
      }
      continue;
    }

    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (signs[r] > 0) pos.push_back(r);
      if (signs[r] < 0) neg.push_back(r);
    }

    std::vector<Ray<Value>> next;
    next.reserve(rays.size() + pos.size() * 2);
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        VertexSet common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < m) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t != p && t != q && common.is_subset_of(rays[t].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray<Value> fresh{Ops::combine(rays[p].coords, values[p], rays[q].coords, values[q]), std::move(common)};
        fresh.zeros.set(i);
        next.push_back(std::move(fresh));
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (signs[r] > 0) {
        next.push_back(std::move(rays[r]));
      } else if (signs[r] == 0) {
        rays[r].zeros.set(i);
        next.push_back(std::move(rays[r]));
      }
    }
    rays = std::move(next);
  }
  return rays;
}

struct ExactSetup {
  std::vector<IntegerVector> rows;
  std::vector<std::size_t> basis;
  std::vector<IntegerVector> initial;
};

// Picks the first maximal independent set of rows (in index order) and
// inverts it exactly.
ExactSetup exact_setup(const Polytope& p) {
  const std::size_t n = p.size();
  const std::size_t d = p.dimension();
  const std::size_t m = d + 1;
  ExactSetup s;
  s.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector h;
    h.reserve(m);
    h.push_back(1);
    for (const auto& x : p.vertex(i)) h.push_back(x);
    s.rows.push_back(integerize(h));
  }

  // Echelon form of the accepted rows, used for the independence test.
  std::vector<RationalVector> echelon;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t i = 0; i < n && s.basis.size() < m; ++i) {
    RationalVector v(s.rows[i].begin(), s.rows[i].end());
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      const std::size_t c = pivot_cols[k];
      if (v[c] != 0) {
        const Rational f = v[c] / echelon[k][c];
        for (std::size_t j = 0; j < m; ++j) v[j] -= f * echelon[k][j];
      }
    }
    std::size_t c = 0;
    while (c < m && v[c] == 0) ++c;
    if (c == m) continue;
    echelon.push_back(std::move(v));
    pivot_cols.push_back(c);
    s.basis.push_back(i);
  }
  if (s.basis.size() < m) return s;

  // Columns of the inverse of the basis matrix: row_b(k) . ray_j = delta_kj.
  std::vector<RationalVector> a(m, RationalVector(2 * m));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) a[k][j] = s.rows[s.basis[k]][j];
    a[k][m + k] = 1;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    const Rational inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r != col && a[r][col] != 0) {
        const Rational f = a[r][col];
        for (std::size_t j = 0; j < 2 * m; ++j) a[r][j] -= f * a[col][j];
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    RationalVector column(m);
    for (std::size_t r = 0; r < m; ++r) column[r] = a[r][m + j];
    IntegerVector ray = integerize(column);
    make_primitive(ray);
    s.initial.push_back(std::move(ray));
  }
  return s;
}

struct FloatSetup {
  std::vector<std::vector<double>> rows;
  std::vector<double> tolerance;
  std::vector<std::size_t> basis;
  std::vector<std::vector<double>> initial;
  Eigen::VectorXd centroid;
};

// Rows (1, v - centroid); the basis is chosen greedily by largest residual.
FloatSetup float_setup(const Polytope& p) {
  const std::size_t n = p.size();
  const std::size_t d = p.dimension();
  const std::size_t m = d + 1;
  FloatSetup s;
  Eigen::MatrixXd v = p.to_float();
  s.centroid = v.colwise().mean().transpose();
  s.rows.assign(n, std::vector<double>(m));
  s.tolerance.resize(n);
  Eigen::MatrixXd homogeneous(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < n; ++i) {
    s.rows[i][0] = 1.0;
    homogeneous(static_cast<Eigen::Index>(i), 0) = 1.0;
    double norm2 = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double x = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - s.centroid(static_cast<Eigen::Index>(j));
      s.rows[i][j + 1] = x;
      homogeneous(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) = x;
      norm2 += x * x;
    }
    s.tolerance[i] = kGeometryEpsilon * std::sqrt(norm2);
  }

  Eigen::MatrixXd residual = homogeneous;
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < m; ++k) {
    double best = 0;
    std::size_t arg = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double r = residual.row(static_cast<Eigen::Index>(i)).norm() / std::sqrt(1.0 + homogeneous.row(static_cast<Eigen::Index>(i)).squaredNorm());
      if (r > best) {
        best = r;
        arg = i;
      }
    }
    if (arg == n || best <= kGeometryEpsilon) break;
    used[arg] = true;
    s.basis.push_back(arg);
    Eigen::VectorXd q = residual.row(static_cast<Eigen::Index>(arg)).transpose().normalized();
    residual -= (residual * q) * q.transpose();
  }
  if (s.basis.size() < m) return s;

  Eigen::MatrixXd b(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) b.row(static_cast<Eigen::Index>(k)) = homogeneous.row(static_cast<Eigen::Index>(s.basis[k]));
  Eigen::MatrixXd inv = b.fullPivLu().inverse();
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> ray(m);
    for (std::size_t r = 0; r < m; ++r) ray[r] = inv(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    FloatOps::normalize(ray);
    s.initial.push_back(std::move(ray));
  }
  return s;
}

void finish(Hull& hull) {
  std::sort(hull.facets.begin(), hull.facets.end(),
            [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
  hull.facets_of_vertex.assign(hull.vertex_count, {});
  for (std::size_t f = 0; f < hull.facets.size(); ++f) {
    for (auto v : hull.facets[f].vertices) hull.facets_of_vertex[v].push_back(f);
  }
}

std::string rank_message(std::size_t rank, std::size_t d) {
  return "vertices span an affine subspace of dimension " + std::to_string(rank) + " < " + std::to_string(d);
}

}  // namespace

VertexSet make_vertex_set(std::size_t n, const std::vector<std::size_t>& members) {
  VertexSet s(n);
  for (auto i : members) s.set(i);
  return s;
}

std::vector<std::size_t> members_of(const VertexSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

Hyperplane Facet::plane() const {
  if (!exact) throw Error("facet has no exact supporting hyperplane (float mode)");
  return Hyperplane::canonical(exact->normal, exact->offset);
}

VertexSet Hull::closure(const VertexSet& s) const {
  VertexSet acc(vertex_count);
  acc.set();
  const auto first = s.find_first();
  if (first == VertexSet::npos) return VertexSet(vertex_count);
  for (auto f : facets_of_vertex[first]) {
    if (s.is_subset_of(facets[f].incidence)) acc &= facets[f].incidence;
  }
  return acc;
}

bool Hull::is_face(const VertexSet& s) const {
  const auto first = s.find_first();
  if (first == VertexSet::npos) return false;
  VertexSet acc(vertex_count);
  acc.set();
  bool contained = false;
  for (auto f : facets_of_vertex[first]) {
    if (s.is_subset_of(facets[f].incidence)) {
      acc &= facets[f].incidence;
      contained = true;
    }
  }
  return contained && acc == s;
}

std::vector<std::size_t> Hull::non_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertex_count; ++i) {
    VertexSet s(vertex_count);
    s.set(i);
    if (!is_face(s)) out.push_back(i);
  }
  return out;
}

namespace {

std::size_t affine_rank_of(const Polytope& p, Arithmetic arithmetic) {
  if (arithmetic == Arithmetic::Exact) return exact_setup(p).basis.size() - 1;
  return float_setup(p).basis.size() - 1;
}

}  // namespace

Hull convex_hull(const Polytope& p, Arithmetic arithmetic) {
  const std::size_t n = p.size();
  const std::size_t d = p.dimension();
  if (n < d + 1) throw DegenerateInput("need at least d+1 = " + std::to_string(d + 1) + " points, got " + std::to_string(n));
  Hull hull;
  hull.dimension = d;
  hull.vertex_count = n;
  hull.arithmetic = arithmetic;

  if (arithmetic == Arithmetic::Exact) {
    ExactSetup s = exact_setup(p);
    if (s.basis.size() < d + 1) throw DegenerateInput(rank_message(s.basis.size() - 1, d));
    std::vector<double> tol(n, 0.0);
    auto rays = double_description<ExactOps>(s.rows, tol, s.basis, std::move(s.initial));
    hull.facets.reserve(rays.size());
    for (auto& r : rays) {
      Facet f;
      f.incidence = std::move(r.zeros);
      f.vertices = members_of(f.incidence);
      Halfspace h;
      h.offset = r.coords[0];
      h.normal.reserve(d);
      for (std::size_t j = 1; j <= d; ++j) h.normal.push_back(-r.coords[j]);
      double norm2 = 0;
      const long shift = [&] {
        std::size_t bits = 1;
        for (const auto& x : r.coords) {
          if (x != 0) bits = std::max<std::size_t>(bits, boost::multiprecision::msb(abs(x)) + 1);
        }
        return static_cast<long>(bits) - 60;
      }();
      auto scaled = [shift](const Integer& x) {
        if (shift <= 0) return x.convert_to<double>();
        Integer den = 1;
        den <<= static_cast<unsigned>(shift);
        return Rational(x, den).convert_to<double>();
      };
      f.normal.resize(d);
      for (std::size_t j = 0; j < d; ++j) {
        f.normal[j] = scaled(h.normal[j]);
        norm2 += f.normal[j] * f.normal[j];
      }
      const double norm = std::sqrt(norm2);
      for (auto& x : f.normal) x /= norm;
      f.offset = scaled(h.offset) / norm;
      f.exact = std::move(h);
      hull.facets.push_back(std::move(f));
    }
  } else {
    FloatSetup s = float_setup(p);
    if (s.basis.size() < d + 1) throw DegenerateInput(rank_message(s.basis.size() - 1, d));
    auto rays = double_description<FloatOps>(s.rows, s.tolerance, s.basis, std::move(s.initial));
    hull.facets.reserve(rays.size());
    for (auto& r : rays) {
      Facet f;
      // Recompute incidences from scratch against the final ray.
      f.incidence = VertexSet(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (FloatOps::sign(FloatOps::dot(s.rows[i], r.coords), s.tolerance[i]) == 0) f.incidence.set(i);
      }
      f.vertices = members_of(f.incidence);
      // y0 + y'.(x - c) >= 0  <=>  -y'.x <= y0 - y'.c
      f.normal.resize(d);
      double norm2 = 0;
      double shift = 0;
      for (std::size_t j = 0; j < d; ++j) {
        f.normal[j] = -r.coords[j + 1];
        norm2 += f.normal[j] * f.normal[j];
        shift += r.coords[j + 1] * s.centroid(static_cast<Eigen::Index>(j));
      }
      const double norm = std::sqrt(norm2);
      for (auto& x : f.normal) x /= norm;
      f.offset = (r.coords[0] - shift) / norm;
      hull.facets.push_back(std::move(f));
    }
  }
  finish(hull);
  return hull;
}

Hull facet_enumeration(const Polytope& p, Arithmetic arithmetic) {
  Hull hull = convex_hull(p, arithmetic);
  auto bad = hull.non_vertices();
  if (!bad.empty()) {
    std::string list;
    for (auto i : bad) list += (list.empty() ? "" : ",") + std::to_string(i);
    throw DegenerateInput("rows are not vertices of the hull: " + list);
  }
  return hull;
}

SpanningReport proper_spanning_check(const Polytope& p, Arithmetic arithmetic) {
  SpanningReport report;
  const std::size_t d = p.dimension();
  if (p.size() < d + 1) {
    report.rank_deficient = true;
    report.affine_rank = p.size() == 0 ? 0 : std::min(p.size() - 1, affine_rank_of(p, arithmetic));
    return report;
  }
  report.affine_rank = affine_rank_of(p, arithmetic);
  if (report.affine_rank < d) {
    report.rank_deficient = true;
    return report;
  }
  Hull hull = convex_hull(p, arithmetic);
  report.offending = hull.non_vertices();
  report.ok = report.offending.empty();
  return report;
}

bool face_test(const Hull& hull, const std::vector<std::size_t>& s) {
  if (s.empty()) return false;
  return hull.is_face(make_vertex_set(hull.vertex_count, s));
}

bool face_test(const Polytope& p, const std::vector<std::size_t>& s) {
  return face_test(facet_enumeration(p, Arithmetic::Exact), s);
}

}  // namespace hopper

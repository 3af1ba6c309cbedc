#include "hopper/polytope.hpp"

#include "hopper/errors.hpp"

#include <fstream>
#include <sstream>

namespace hopper {

Polytope::Polytope(std::size_t dimension, std::vector<Rational> coordinates)
    : dimension_(dimension), coords_(std::move(coordinates)) {
  if (dimension_ == 0) throw DegenerateInput("polytope dimension must be positive");
  if (coords_.size() % dimension_ != 0) throw DegenerateInput("coordinate count is not a multiple of the dimension");
}

Polytope Polytope::from_rows(const std::vector<RationalVector>& rows) {
  if (rows.empty()) throw DegenerateInput("polytope needs at least one vertex");
  const std::size_t d = rows.front().size();
  std::vector<Rational> coords;
  coords.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw DegenerateInput("ragged vertex matrix");
    coords.insert(coords.end(), r.begin(), r.end());
  }
  return Polytope(d, std::move(coords));
}

Polytope Polytope::from_doubles(const Eigen::MatrixXd& rows) {
  std::vector<Rational> coords;
  coords.reserve(static_cast<std::size_t>(rows.size()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) coords.push_back(rational_from_double(rows(i, j)));
  }
  return Polytope(static_cast<std::size_t>(rows.cols()), std::move(coords));
}

Eigen::MatrixXd Polytope::to_float() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(dimension_));
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < dimension_; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(at(i, j));
  }
  return m;
}

Polytope Polytope::with_vertex_replaced(std::size_t i, std::span<const Rational> point) const {
  Polytope out = *this;
  for (std::size_t j = 0; j < dimension_; ++j) out.at(i, j) = point[j];
  return out;
}

Polytope Polytope::with_vertex_added(std::span<const Rational> point) const {
  Polytope out = *this;
  out.coords_.insert(out.coords_.end(), point.begin(), point.end());
  return out;
}

Polytope Polytope::without_vertex(std::size_t i) const {
  Polytope out = *this;
  auto first = out.coords_.begin() + static_cast<std::ptrdiff_t>(i * dimension_);
  out.coords_.erase(first, first + static_cast<std::ptrdiff_t>(dimension_));
  return out;
}

Polytope parse_polytope(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("missing header line 'n d'");
  std::istringstream header(line);
  long n = -1, d = -1;
  if (!(header >> n >> d) || n <= 0 || d <= 0) throw ParseError("bad header line: '" + line + "'");
  std::vector<Rational> coords;
  coords.reserve(static_cast<std::size_t>(n * d));
  for (long i = 0; i < n; ++i) {
    if (!next_line()) throw ParseError("expected " + std::to_string(n) + " vertex rows, got " + std::to_string(i));
    std::istringstream row(line);
    std::string token;
    long count = 0;
    while (row >> token) {
      coords.push_back(parse_rational(token));
      ++count;
    }
    if (count != d) throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(count) + " values, expected " + std::to_string(d));
  }
  return Polytope(static_cast<std::size_t>(d), std::move(coords));
}

Polytope parse_polytope(const std::string& text) {
  std::istringstream in(text);
  return parse_polytope(in);
}

Polytope read_polytope_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_polytope(in);
}

void write_polytope(std::ostream& out, const Polytope& p) {
  out << p.size() << ' ' << p.dimension() << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.dimension(); ++j) {
      if (j) out << ' ';
      out << format_rational(p.at(i, j));
    }
    out << '\n';
  }
}

std::string format_polytope(const Polytope& p) {
  std::ostringstream out;
  write_polytope(out, p);
  return out.str();
}

}  // namespace hopper

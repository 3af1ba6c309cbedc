#include "hopper/hop_sample.hpp"

#include "hopper/errors.hpp"

#include <algorithm>

namespace hopper {

std::string to_string(HopLabel label) {
  switch (label) {
    case HopLabel::Success: return "success";
    case HopLabel::GeomRejected: return "geomRejected";
    case HopLabel::FeasibleNoSuccess: return "feasibleNoSuccess";
  }
  return "unknown";
}

HopLabel hop_label_from_string(const std::string& name) {
  if (name == "success") return HopLabel::Success;
  if (name == "geomRejected") return HopLabel::GeomRejected;
  if (name == "feasibleNoSuccess") return HopLabel::FeasibleNoSuccess;
  throw ParseError("unknown hop label '" + name + "'");
}

int label_index(HopLabel label) {
  switch (label) {
    case HopLabel::Success: return 0;
    case HopLabel::GeomRejected: return 1;
    case HopLabel::FeasibleNoSuccess: return 2;
  }
  return 2;
}

HopLabel label_hop(const HopOutcome& outcome) {
  if (outcome.improved) return HopLabel::Success;
  if (outcome.region_rejected || !outcome.had_admissible) return HopLabel::GeomRejected;
  return HopLabel::FeasibleNoSuccess;
}

namespace {

nlohmann::json exact_rows(const Polytope& p) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto row = nlohmann::json::array();
    for (const auto& x : p.vertex(i)) row.push_back(format_rational(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json float_rows(const Polytope& p, const std::vector<std::size_t>& which) {
  auto rows = nlohmann::json::array();
  for (std::size_t i : which) {
    auto row = nlohmann::json::array();
    for (const auto& x : p.vertex(i)) row.push_back(to_double(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string deck_name(const std::optional<Deck>& deck) {
  if (!deck) return "none";
  return *deck == Deck::Top ? "top" : "bottom";
}

std::optional<Deck> deck_from_name(const std::string& s) {
  if (s == "top") return Deck::Top;
  if (s == "bottom") return Deck::Bottom;
  if (s == "none") return std::nullopt;
  throw ParseError("unknown deck token '" + s + "'");
}

}  // namespace

nlohmann::json to_json(const HopSample& s) {
  nlohmann::json j;
  auto normal = nlohmann::json::array();
  for (const auto& a : s.plane.normal) normal.push_back(a.str());
  j["plane"] = {{"normal", normal}, {"offset", s.plane.offset.str()}};
  j["deck"] = deck_name(s.deck);
  j["label"] = to_string(s.label);
  j["defect"] = s.defect;
  if (s.snapshot) {
    j["d"] = s.snapshot->polytope.dimension();
    j["vertices"] = exact_rows(s.snapshot->polytope);
    j["top"] = s.snapshot->top;
    j["bottom"] = s.snapshot->bottom;
  }
  return j;
}

HopSample hop_sample_from_json(const nlohmann::json& j) {
  try {
    HopSample s;
    IntegerVector normal;
    for (const auto& a : j.at("plane").at("normal")) normal.emplace_back(a.get<std::string>());
    s.plane = Hyperplane::canonical(std::move(normal), Integer(j.at("plane").at("offset").get<std::string>()));
    s.deck = deck_from_name(j.at("deck").get<std::string>());
    s.label = hop_label_from_string(j.at("label").get<std::string>());
    s.defect = j.at("defect").get<std::uint64_t>();
    if (j.contains("vertices")) {
      auto snap = std::make_shared<HopSnapshot>();
      std::vector<RationalVector> rows;
      for (const auto& row : j.at("vertices")) {
        RationalVector r;
        for (const auto& x : row) r.push_back(parse_rational(x.get<std::string>()));
        rows.push_back(std::move(r));
      }
      snap->polytope = Polytope::from_rows(rows);
      snap->top = j.value("top", std::vector<std::size_t>{});
      snap->bottom = j.value("bottom", std::vector<std::size_t>{});
      snap->defect = s.defect;
      s.snapshot = std::move(snap);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed hop sample: ") + e.what());
  }
}

nlohmann::json to_wire_json(const HopSample& s) {
  nlohmann::json j;
  const auto n = s.plane.unit_normal();
  j["plane"] = {{"normal", n}, {"offset", s.plane.unit_offset()}, {"deck", deck_name(s.deck)}};
  j["label"] = to_string(s.label);
  j["labelIndex"] = label_index(s.label);
  j["defect"] = s.defect;
  if (s.snapshot) {
    const auto& p = s.snapshot->polytope;
    j["d"] = p.dimension();
    std::vector<std::size_t> top = s.snapshot->top;
    if (top.empty() && s.snapshot->bottom.empty()) {
      top.resize(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) top[i] = i;
    }
    j["topVertices"] = float_rows(p, top);
    j["bottomVertices"] = float_rows(p, s.snapshot->bottom);
  }
  return j;
}

}  // namespace hopper

namespace hopper {

namespace {

std::size_t affine_rank(const std::vector<RationalVector>& points) {
  if (points.size() < 2) return 0;
  std::vector<RationalVector> m;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RationalVector row(points[i].size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = points[i][j] - points[0][j];
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  const std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const Rational factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool verify_hop_sample(const HopSample& sample) {
  if (!sample.snapshot) return false;
  const Polytope& p = sample.snapshot->polytope;
  if (sample.plane.dimension() != p.dimension()) return false;
  std::vector<RationalVector> on_plane;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (sample.plane.side(p.vertex(i)) == 0) on_plane.emplace_back(p.vertex(i).begin(), p.vertex(i).end());
  }
  if (affine_rank(on_plane) != p.dimension() - 1) return false;
  const auto& top = sample.snapshot->top;
  const auto& bottom = sample.snapshot->bottom;
  if (top.empty() && bottom.empty()) return !sample.deck;
  std::vector<int> seen(p.size(), 0);
  for (std::size_t i : top) {
    if (i >= p.size()) return false;
    ++seen[i];
  }
  for (std::size_t i : bottom) {
    if (i >= p.size()) return false;
    ++seen[i];
  }
  return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

}  // namespace hopper

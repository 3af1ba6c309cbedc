#include "hopper/verify.hpp"

#include "hopper/cyclic.hpp"
#include "hopper/errors.hpp"
#include "hopper/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hopper {

nlohmann::json verification_report(const Polytope& p) {
  const SpanningReport spanning = proper_spanning_check(p, Arithmetic::Exact);
  nlohmann::json j = {{"vertices", p.size()}, {"dimension", p.dimension()}, {"properSpanning", spanning.ok}};
  if (!spanning.ok) {
    throw DegenerateInput(spanning.rank_deficient ? "points do not span the space"
                                                  : "some rows are not vertices of their hull");
  }
  const Hull hull = facet_enumeration(p, Arithmetic::Exact);
  j["facets"] = hull.facets.size();

  const HirschGap gap = hirsch_gap(p);
  j["vertexEdgeDiameter"] = gap.vertex_edge_diameter;
  j["facetRidgeDiameter"] = gap.facet_ridge_diameter;
  j["hirschGap"] = gap.gap;
  j["dualHirschGap"] = gap.dual_gap;
  j["hirschViolated"] = gap.gap > 0;
  if (gap.width_excess) j["widthExcess"] = *gap.width_excess;
  if (gap.implied_dimension) j["impliedDimension"] = *gap.implied_dimension;

  const Neighbourliness nb = neighbourliness_fitness(hull);
  j["neighbourliness"] = {{"k", nb.k}, {"fraction", nb.fraction}, {"score", nb.score()}};
  if (nb.k >= p.dimension() / 2) j["combinatoriallyCyclic"] = is_combinatorially_cyclic(hull);

  try {
    j["dualMonotoneLength"] = dual_monotone_path_length(p, hull, TieBreak::Error);
  } catch (const NonGenericFunctional&) {
    j["dualMonotoneLength"] = nullptr;
  }

  try {
    const PrismatoidView view = analyze_prismatoid(p, hull);
    const PathCount paths = long_path_count(view);
    j["isPrismatoid"] = true;
    j["decks"] = {view.prismatoid.top.size(), view.prismatoid.bottom.size()};
    j["width"] = width(view);
    j["defect"] = defect(view);
    j["averageWidth"] = average_width(view, PairConvention::ExcludeEqual);
    j["longPaths"] = paths.count;
    j["longPathsSaturated"] = paths.saturated;
  } catch (const NotPrismatoid&) {
    j["isPrismatoid"] = false;
  }
  return j;
}

nlohmann::json verify_file(const std::filesystem::path& path) {
  nlohmann::json j = verification_report(read_polytope_file(path));
  j["file"] = path.string();
  return j;
}

std::string format_verification(const nlohmann::json& j) {
  std::ostringstream out;
  out << j.value("vertices", 0) << " vertices in dimension " << j.value("dimension", 0) << ", "
      << j.value("facets", 0) << " facets\n";
  out << "diameters: vertex-edge " << j.value("vertexEdgeDiameter", 0) << ", facet-ridge "
      << j.value("facetRidgeDiameter", 0) << "; Hirsch gap " << j.value("hirschGap", 0L) << " (dual "
      << j.value("dualHirschGap", 0L) << ")\n";
  if (j.value("isPrismatoid", false)) {
    out << "prismatoid with decks " << j["decks"][0] << "+" << j["decks"][1] << ", width " << j["width"]
        << ", defect " << j["defect"] << ", average width " << j["averageWidth"] << ", long paths " << j["longPaths"]
        << "\n";
    if (j.contains("impliedDimension"))
      out << "width exceeds the dimension: implied Hirsch counterexample dimension " << j["impliedDimension"] << "\n";
  } else {
    out << "not a prismatoid\n";
  }
  const auto& nb = j["neighbourliness"];
  out << "neighbourliness k=" << nb["k"] << " fraction " << nb["fraction"];
  if (j.contains("combinatoriallyCyclic")) out << (j["combinatoriallyCyclic"].get<bool>() ? ", cyclic" : ", not cyclic");
  out << "\n";
  if (!j["dualMonotoneLength"].is_null()) out << "dual monotone path length " << j["dualMonotoneLength"] << "\n";
  return out.str();
}

nlohmann::json pca_report(const Polytope& p) {
  const Prismatoid q = detect_prismatoid(p);
  const ScaleProfile s = pca_scale_profile(q);
  return {{"decks", {q.top.size(), q.bottom.size()}},
          {"eigenMin", s.eigen_min},
          {"eigenMax", s.eigen_max},
          {"ratio", s.ratio()},
          {"log10Ratio", std::log10(s.ratio())}};
}

std::string trajectory_svg(const RunReport& report) {
  constexpr double kWidth = 720, kHeight = 400, kMargin = 50;
  std::vector<std::pair<double, double>> best;
  double running = report.seeds.empty() ? 0 : report.seeds.front().fitness.headline();
  for (const auto& s : report.seeds) running = std::max(running, s.fitness.headline());
  best.emplace_back(0, running);
  for (const auto& t : report.trajectory) {
    if (t.headline > running) {
      running = t.headline;
      best.emplace_back(static_cast<double>(t.step), running);
    }
  }
  const double x_max = std::max<double>(1, std::max<double>(report.steps, best.back().first));
  double y_min = best.front().second, y_max = best.front().second;
  for (const auto& t : report.trajectory) {
    y_min = std::min(y_min, t.headline);
    y_max = std::max(y_max, t.headline);
  }
  if (y_max - y_min < 1e-9) {
    y_min -= 1;
    y_max += 1;
  }
  auto px = [&](double x) { return kMargin + (kWidth - 2 * kMargin) * x / x_max; };
  auto py = [&](double y) { return kHeight - kMargin - (kHeight - 2 * kMargin) * (y - y_min) / (y_max - y_min); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">step</text>\n";
  svg << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 " << kHeight / 2
      << ")\" text-anchor=\"middle\">fitness</text>\n";
  svg << "<text x=\"" << kMargin << "\" y=\"" << kMargin - 16 << "\">" << report.scenario << " " << report.mode
      << ", seed " << report.seed << "</text>\n";
  svg << "<text x=\"" << kMargin - 6 << "\" y=\"" << py(y_max) << "\" text-anchor=\"end\">" << y_max << "</text>\n";
  svg << "<text x=\"" << kMargin - 6 << "\" y=\"" << py(y_min) << "\" text-anchor=\"end\">" << y_min << "</text>\n";
  svg << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"end\">" << x_max
      << "</text>\n";
  for (const auto& t : report.trajectory)
    svg << "<circle cx=\"" << px(static_cast<double>(t.step)) << "\" cy=\"" << py(t.headline)
        << "\" r=\"2\" fill=\"steelblue\" fill-opacity=\"0.5\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"firebrick\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (i > 0) svg << px(best[i].first) << "," << py(best[i - 1].second) << " ";
    svg << px(best[i].first) << "," << py(best[i].second) << " ";
  }
  svg << px(x_max) << "," << py(best.back().second) << "\"/>\n";
  for (const auto& a : report.ascensions)
    svg << "<line x1=\"" << px(static_cast<double>(a.step)) << "\" y1=\"" << kMargin << "\" x2=\""
        << px(static_cast<double>(a.step)) << "\" y2=\"" << kHeight - kMargin
        << "\" stroke=\"darkgreen\" stroke-dasharray=\"4 3\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hopper

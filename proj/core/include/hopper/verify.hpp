#pragma once

#include "hopper/orchestrator.hpp"
#include "hopper/polytope.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace hopper {

/// Exact-arithmetic report of every metric that applies to p: hull size,
/// graph diameters and Hirsch gap, neighbourliness, and for prismatoids the
/// deck sizes, width, defect, average width and long-path count. Throws
/// DegenerateInput when p is not a valid vertex description.
nlohmann::json verification_report(const Polytope& p);
nlohmann::json verify_file(const std::filesystem::path& path);
std::string format_verification(const nlohmann::json& report);

/// Deck covariance profile of a prismatoid. Throws NotPrismatoid.
nlohmann::json pca_report(const Polytope& p);

/// Best-fitness trajectory of a run report as a standalone SVG document.
std::string trajectory_svg(const RunReport& report);

}  // namespace hopper

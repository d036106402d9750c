#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvcx/core.hpp"

namespace curvcx {

enum class RowStatus { verified_at_scale, hypothesis_not_met, skipped_budget, violated };
std::string to_string(RowStatus s);

struct ReportRow {
  std::string name;
  std::string hypothesis;
  bool hypothesis_met = false;
  std::string conclusion;
  RowStatus status = RowStatus::skipped_budget;
  /// Counterexample faces for violated rows, witnesses otherwise.
  std::vector<std::int64_t> cells;
};

struct ReportOptions {
  std::optional<FaceId> center;  // default: the structure's center, else 0
  std::optional<int> radius;     // default: min(trusted radius, 4), else the eccentricity
  std::size_t ball_budget = 4000;   // largest ball handed to dense or pairwise work
  std::size_t cheeger_region = 14;
};

struct Dashboard {
  FaceId center = 0;
  int radius = 0;
  std::string family;
  std::vector<ReportRow> rows;
};

Dashboard report(const Structure& s, const ReportOptions& opt = {});

}  // namespace curvcx

// Copyright 2026 The LVMC Authors. - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LVMC_RUN_IO_HPP
#define LVMC_RUN_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lvmc/optimizer.hpp"

namespace lvmc {

/// One iteration of a run, as written to the line-delimited log. Doubles are
/// serialized with 17 significant digits so that parse(format(r)) == r.
struct RunRecord {
  long iteration = 0;
  double cost = 0.0;
  double cost_error = 0.0;
  double acceptance = 0.0;
  double sx = 0.0, sx_error = 0.0;
  double sy = 0.0, sy_error = 0.0;
  double sz = 0.0, sz_error = 0.0;
  double wall_time_seconds = 0.0;
  std::string checkpoint;  // optional

  bool operator==(const RunRecord&) const = default;
};

RunRecord run_record_from(const TrajectoryRecord& record);

/// `iter=3 cost=... cost_err=... acc=... sx=... sx_err=... sy=... sy_err=...
///  sz=... sz_err=... time=... [checkpoint=...]`, single line, no newline.
std::string format_run_record(const RunRecord& r);

/// Inverse of format_run_record; throws std::invalid_argument on unknown or
/// missing keys. Lines starting with '#' are comments (rejected here; callers
/// filter them when scanning logs).
RunRecord parse_run_record(std::string_view line);

/// Key/value sections written as an INI-style file with `# lvmc <version>`
/// and the resolved config echo at the top.
using SummarySection = std::pair<std::string, std::vector<std::pair<std::string, std::string>>>;

void write_summary_file(const std::filesystem::path& path,
                        const std::vector<SummarySection>& sections,
                        const std::string& config_echo);

std::string format_full(double v);  // 17 significant digits

}  // namespace lvmc

#endif  // LVMC_RUN_IO_HPP

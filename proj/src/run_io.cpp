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

#include "lvmc/run_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lvmc/version.hpp"

namespace lvmc {

std::string format_full(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

RunRecord run_record_from(const TrajectoryRecord& t) {
  RunRecord r;
  r.iteration = t.iteration;
  r.cost = t.cost.real_mean();
  r.cost_error = t.cost.error_of_mean;
  r.acceptance = t.acceptance_rate;
  r.sx = t.sigma_x.real_mean();
  r.sx_error = t.sigma_x.error_of_mean;
  r.sy = t.sigma_y.real_mean();
  r.sy_error = t.sigma_y.error_of_mean;
  r.sz = t.sigma_z.real_mean();
  r.sz_error = t.sigma_z.error_of_mean;
  r.wall_time_seconds = t.wall_time_seconds;
  r.checkpoint = t.checkpoint_path;
  return r;
}

std::string format_run_record(const RunRecord& r) {
  std::ostringstream out;
  out << "iter=" << r.iteration;
  out << " cost=" << format_full(r.cost) << " cost_err=" << format_full(r.cost_error);
  out << " acc=" << format_full(r.acceptance);
  out << " sx=" << format_full(r.sx) << " sx_err=" << format_full(r.sx_error);
  out << " sy=" << format_full(r.sy) << " sy_err=" << format_full(r.sy_error);
  out << " sz=" << format_full(r.sz) << " sz_err=" << format_full(r.sz_error);
  out << " time=" << format_full(r.wall_time_seconds);
  if (!r.checkpoint.empty()) out << " checkpoint=" << r.checkpoint;
  return out.str();
}

RunRecord parse_run_record(std::string_view line) {
  RunRecord r;
  bool have_iter = false, have_cost = false;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("parse_run_record: malformed token '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    const auto as_double = [&] {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) {
        throw std::invalid_argument("parse_run_record: bad number in '" + token + "'");
      }
      return v;
    };
    if (key == "iter") {
      r.iteration = static_cast<long>(as_double());
      have_iter = true;
    } else if (key == "cost") {
      r.cost = as_double();
      have_cost = true;
    } else if (key == "cost_err") {
      r.cost_error = as_double();
    } else if (key == "acc") {
      r.acceptance = as_double();
    } else if (key == "sx") {
      r.sx = as_double();
    } else if (key == "sx_err") {
      r.sx_error = as_double();
    } else if (key == "sy") {
      r.sy = as_double();
    } else if (key == "sy_err") {
      r.sy_error = as_double();
    } else if (key == "sz") {
      r.sz = as_double();
    } else if (key == "sz_err") {
      r.sz_error = as_double();
    } else if (key == "time") {
      r.wall_time_seconds = as_double();
    } else if (key == "checkpoint") {
      r.checkpoint = value;
    } else {
      throw std::invalid_argument("parse_run_record: unknown key '" + key + "'");
    }
  }
  if (!have_iter || !have_cost) {
    throw std::invalid_argument("parse_run_record: record lacks iter/cost fields");
  }
  return r;
}

void write_summary_file(const std::filesystem::path& path,
                        const std::vector<SummarySection>& sections,
                        const std::string& config_echo) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_summary_file: cannot open " + path.string());
  out << "# lvmc " << kVersion << "\n";
  for (const auto& [name, entries] : sections) {
    out << "[" << name << "]\n";
    for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
    out << "\n";
  }
  out << config_echo;
  if (!out) throw std::runtime_error("write_summary_file: write failed for " + path.string());
}

}  // namespace lvmc

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

#ifndef LVMC_CONFIG_HPP
#define LVMC_CONFIG_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lvmc/model.hpp"
#include "lvmc/optimizer.hpp"
#include "lvmc/sampler.hpp"

namespace lvmc {

/// Parse or validation failure; carries the offending location for CLI
/// error messages ("file:line" and "section.key").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, std::string field, int line = 0);

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// Minimal INI-style file: `[section]` headers, `key = value` entries,
/// `#` comments. Section and key order is preserved.
struct IniFile {
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
  };

  std::vector<Section> sections;
  std::string origin;  // file name for error messages

  static IniFile parse(std::string_view text, std::string origin);
  static IniFile parse_file(const std::filesystem::path& path);

  const Section* find(std::string_view name) const;
  const Entry* find(std::string_view section, std::string_view key) const;
  std::string render() const;
};

/// Typed view over one section; tracks consumed keys so that finish() can
/// reject typos.
class SectionReader {
 public:
  SectionReader(const IniFile& file, std::string section, bool required);

  bool present() const { return section_ != nullptr; }
  std::string require_string(const std::string& key);
  double require_double(const std::string& key);
  int require_int(const std::string& key);

  std::string get_string(const std::string& key, std::string fallback);
  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback);
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::optional<double> optional_double(const std::string& key);
  std::optional<std::vector<double>> optional_double_list(const std::string& key);

  /// Throws on any key in the section that was never read.
  void finish();

 private:
  const IniFile::Entry* lookup(const std::string& key);
  [[noreturn]] void fail(const std::string& key, const std::string& what, int line);

  const IniFile* file_;
  std::string name_;
  const IniFile::Section* section_;
  std::vector<bool> consumed_;
};

/// One experiment: model, ansatz, sampling, optimization and output settings.
struct ExperimentConfig {
  struct ModelBlock {
    int n_sites = 0;
    double coupling = 0.0;
    std::vector<double> field_values;  // one entry for a single run, several for a sweep
    double gamma = 1.0;
    std::string boundary = "periodic";  // periodic | open
  };
  struct AnsatzBlock {
    double alpha = 1.0;
    double beta = 1.0;
    double init_scale = 0.01;
    std::uint64_t init_seed = 1;
  };
  struct RunBlock {
    EstimationMode mode = EstimationMode::sampled;
    std::string output_dir = "lvmc-output";
    int checkpoint_every = 100;
    long final_observable_samples = 20000;  // per chain, sampled mode summary
  };
  struct CompareBlock {
    double abs_tolerance = 0.02;
    double rel_tolerance = 0.05;
  };

  ModelBlock model;
  AnsatzBlock ansatz;
  SamplerConfig sampler;
  OptimizerConfig optimizer;
  RunBlock run;
  CompareBlock compare;

  TransverseIsingModel make_model(double field_value) const;
  NdmParameters make_initial_parameters() const;
  /// The single field value; throws if the config holds a sweep list.
  double single_field() const;
  void validate() const;

  /// Resolved key = value echo (defaults materialized), emitted into every
  /// output file. `section_prefix` namespaces the sections, e.g. "config.".
  std::string render(const std::string& section_prefix = "") const;
};

ExperimentConfig parse_experiment_config(const std::filesystem::path& path);
ExperimentConfig experiment_config_from_ini(const IniFile& ini,
                                            const std::string& section_prefix = "");

}  // namespace lvmc

#endif  // LVMC_CONFIG_HPP

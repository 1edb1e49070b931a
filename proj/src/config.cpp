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

#include "lvmc/config.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

namespace lvmc {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(value);
  while (std::getline(in, token, ',')) parts.push_back(trim(token));
  return parts;
}

}  // namespace

ConfigError::ConfigError(std::string message, std::string field, int line)
    : std::runtime_error(std::move(message)), field_(std::move(field)), line_(line) {}

IniFile IniFile::parse(std::string_view text, std::string origin) {
  IniFile file;
  file.origin = std::move(origin);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  Section* current = nullptr;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(file.origin + ":" + std::to_string(line_no) +
                              ": malformed section header '" + raw + "'",
                          line, line_no);
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      file.sections.push_back({name, line_no, {}});
      current = &file.sections.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(file.origin + ":" + std::to_string(line_no) +
                            ": expected 'key = value', got '" + raw + "'",
                        line, line_no);
    }
    if (current == nullptr) {
      throw ConfigError(file.origin + ":" + std::to_string(line_no) +
                            ": entry before any [section]",
                        line, line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(file.origin + ":" + std::to_string(line_no) + ": empty key", line,
                        line_no);
    }
    current->entries.push_back({key, value, line_no});
  }
  return file;
}

IniFile IniFile::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string(), path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.filename().string());
}

const IniFile::Section* IniFile::find(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const IniFile::Entry* IniFile::find(std::string_view section, std::string_view key) const {
  const Section* s = find(section);
  if (s == nullptr) return nullptr;
  for (const auto& e : s->entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

std::string IniFile::render() const {
  std::ostringstream out;
  for (const auto& s : sections) {
    out << "[" << s.name << "]\n";
    for (const auto& e : s.entries) out << e.key << " = " << e.value << "\n";
    out << "\n";
  }
  return out.str();
}

SectionReader::SectionReader(const IniFile& file, std::string section, bool required)
    : file_(&file), name_(std::move(section)), section_(file.find(name_)) {
  if (required && section_ == nullptr) {
    throw ConfigError(file.origin + ": missing required section [" + name_ + "]", name_);
  }
  if (section_ != nullptr) consumed_.assign(section_->entries.size(), false);
}

const IniFile::Entry* SectionReader::lookup(const std::string& key) {
  if (section_ == nullptr) return nullptr;
  for (std::size_t i = 0; i < section_->entries.size(); ++i) {
    if (section_->entries[i].key == key) {
      consumed_[i] = true;
      return &section_->entries[i];
    }
  }
  return nullptr;
}

void SectionReader::fail(const std::string& key, const std::string& what, int line) {
  throw ConfigError(file_->origin + (line > 0 ? ":" + std::to_string(line) : "") + ": " +
                        what + " for field " + name_ + "." + key,
                    name_ + "." + key, line);
}

std::string SectionReader::require_string(const std::string& key) {
  const auto* e = lookup(key);
  if (e == nullptr) fail(key, "missing required value", section_ ? section_->line : 0);
  return e->value;
}

namespace {

std::optional<double> to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<long long> to_integer(const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

double SectionReader::require_double(const std::string& key) {
  const auto* e = lookup(key);
  if (e == nullptr) fail(key, "missing required value", section_ ? section_->line : 0);
  const auto v = to_double(e->value);
  if (!v) fail(key, "expected a number, got '" + e->value + "'", e->line);
  return *v;
}

int SectionReader::require_int(const std::string& key) {
  const auto* e = lookup(key);
  if (e == nullptr) fail(key, "missing required value", section_ ? section_->line : 0);
  const auto v = to_integer(e->value);
  if (!v) fail(key, "expected an integer, got '" + e->value + "'", e->line);
  return static_cast<int>(*v);
}

std::string SectionReader::get_string(const std::string& key, std::string fallback) {
  const auto* e = lookup(key);
  return e != nullptr ? e->value : std::move(fallback);
}

double SectionReader::get_double(const std::string& key, double fallback) {
  const auto* e = lookup(key);
  if (e == nullptr) return fallback;
  const auto v = to_double(e->value);
  if (!v) fail(key, "expected a number, got '" + e->value + "'", e->line);
  return *v;
}

int SectionReader::get_int(const std::string& key, int fallback) {
  const auto* e = lookup(key);
  if (e == nullptr) return fallback;
  const auto v = to_integer(e->value);
  if (!v) fail(key, "expected an integer, got '" + e->value + "'", e->line);
  return static_cast<int>(*v);
}

std::uint64_t SectionReader::get_uint64(const std::string& key, std::uint64_t fallback) {
  const auto* e = lookup(key);
  if (e == nullptr) return fallback;
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
  if (ec != std::errc{} || ptr != e->value.data() + e->value.size()) {
    fail(key, "expected an unsigned integer, got '" + e->value + "'", e->line);
  }
  return v;
}

bool SectionReader::get_bool(const std::string& key, bool fallback) {
  const auto* e = lookup(key);
  if (e == nullptr) return fallback;
  if (e->value == "true" || e->value == "1") return true;
  if (e->value == "false" || e->value == "0") return false;
  fail(key, "expected true/false, got '" + e->value + "'", e->line);
}

std::optional<double> SectionReader::optional_double(const std::string& key) {
  const auto* e = lookup(key);
  if (e == nullptr) return std::nullopt;
  const auto v = to_double(e->value);
  if (!v) fail(key, "expected a number, got '" + e->value + "'", e->line);
  return v;
}

std::optional<std::vector<double>> SectionReader::optional_double_list(const std::string& key) {
  const auto* e = lookup(key);
  if (e == nullptr) return std::nullopt;
  std::vector<double> values;
  for (const auto& part : split_list(e->value)) {
    const auto v = to_double(part);
    if (!v) fail(key, "expected a comma-separated list of numbers, got '" + e->value + "'",
                 e->line);
    values.push_back(*v);
  }
  if (values.empty()) fail(key, "empty list", e->line);
  return values;
}

void SectionReader::finish() {
  if (section_ == nullptr) return;
  for (std::size_t i = 0; i < section_->entries.size(); ++i) {
    if (!consumed_[i]) {
      const auto& e = section_->entries[i];
      throw ConfigError(file_->origin + ":" + std::to_string(e.line) + ": unknown field " +
                            name_ + "." + e.key,
                        name_ + "." + e.key, e.line);
    }
  }
}

TransverseIsingModel ExperimentConfig::make_model(double field_value) const {
  if (model.boundary == "open") {
    return TransverseIsingModel::open_chain(model.n_sites, model.coupling, field_value,
                                            model.gamma);
  }
  return TransverseIsingModel::periodic_ring(model.n_sites, model.coupling, field_value,
                                             model.gamma);
}

NdmParameters ExperimentConfig::make_initial_parameters() const {
  return NdmParameters::random(model.n_sites, ansatz.alpha, ansatz.beta, ansatz.init_scale,
                               ansatz.init_seed);
}

double ExperimentConfig::single_field() const {
  if (model.field_values.size() != 1) {
    throw ConfigError("this command needs a single model.field value; got a list of " +
                          std::to_string(model.field_values.size()),
                      "model.field");
  }
  return model.field_values.front();
}

void ExperimentConfig::validate() const {
  if (model.n_sites < 1) throw ConfigError("model.n_sites must be >= 1", "model.n_sites");
  if (!(model.gamma > 0.0)) throw ConfigError("model.gamma must be > 0", "model.gamma");
  if (model.boundary != "periodic" && model.boundary != "open") {
    throw ConfigError("model.boundary must be 'periodic' or 'open', got '" + model.boundary +
                          "'",
                      "model.boundary");
  }
  if (model.field_values.empty()) {
    throw ConfigError("one of model.field or model.field_list is required", "model.field");
  }
  const auto integral = [](double x) { return std::abs(x - std::lround(x)) < 1e-9 && x > 0.5; };
  if (!integral(ansatz.alpha * model.n_sites)) {
    throw ConfigError("ansatz.alpha * n_sites must be a positive integer", "ansatz.alpha");
  }
  if (!integral(ansatz.beta * model.n_sites)) {
    throw ConfigError("ansatz.beta * n_sites must be a positive integer", "ansatz.beta");
  }
  if (run.mode == EstimationMode::full_summation && model.n_sites > 6) {
    throw ConfigError("run.mode = exact-summation requires n_sites <= 6", "run.mode");
  }
  if (run.checkpoint_every < 1) {
    throw ConfigError("run.checkpoint_every must be >= 1", "run.checkpoint_every");
  }
  if (optimizer.n_iterations < 1) {
    throw ConfigError("optimizer.n_iterations must be >= 1", "optimizer.n_iterations");
  }
  try {
    sampler.validate(model.n_sites);
    optimizer.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what(), "sampler/optimizer");
  }
}

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::string ExperimentConfig::render(const std::string& prefix) const {
  std::ostringstream out;
  out << "[" << prefix << "model]\n";
  out << "n_sites = " << model.n_sites << "\n";
  out << "coupling = " << format_double(model.coupling) << "\n";
  if (model.field_values.size() == 1) {
    out << "field = " << format_double(model.field_values.front()) << "\n";
  } else {
    out << "field_list = ";
    for (std::size_t i = 0; i < model.field_values.size(); ++i) {
      out << (i ? ", " : "") << format_double(model.field_values[i]);
    }
    out << "\n";
  }
  out << "gamma = " << format_double(model.gamma) << "\n";
  out << "boundary = " << model.boundary << "\n\n";

  out << "[" << prefix << "ansatz]\n";
  out << "alpha = " << format_double(ansatz.alpha) << "\n";
  out << "beta = " << format_double(ansatz.beta) << "\n";
  out << "init_scale = " << format_double(ansatz.init_scale) << "\n";
  out << "init_seed = " << ansatz.init_seed << "\n\n";

  out << "[" << prefix << "sampler]\n";
  out << "n_chains = " << sampler.n_chains << "\n";
  out << "n_samples_per_chain = " << sampler.n_samples_per_chain << "\n";
  out << "burn_in_sweeps = " << sampler.burn_in_sweeps << "\n";
  out << "max_flips_per_move = " << sampler.max_flips_per_move << "\n";
  out << "seed = " << sampler.seed << "\n\n";

  out << "[" << prefix << "optimizer]\n";
  out << "n_iterations = " << optimizer.n_iterations << "\n";
  out << "learning_rate = " << format_double(optimizer.learning_rate) << "\n";
  out << "schedule = "
      << (optimizer.schedule == LearningSchedule::constant ? "constant" : "exponential")
      << "\n";
  out << "decay_rate = " << format_double(optimizer.decay_rate) << "\n";
  out << "sr_enabled = " << (optimizer.sr_enabled ? "true" : "false") << "\n";
  out << "sr_diag_shift = " << format_double(optimizer.sr_diag_shift) << "\n";
  out << "solver_tolerance = " << format_double(optimizer.solver_tolerance) << "\n\n";

  out << "[" << prefix << "run]\n";
  out << "mode = "
      << (run.mode == EstimationMode::sampled ? "sampled" : "exact-summation") << "\n";
  out << "output = " << run.output_dir << "\n";
  out << "checkpoint_every = " << run.checkpoint_every << "\n";
  out << "final_observable_samples = " << run.final_observable_samples << "\n\n";

  out << "[" << prefix << "compare]\n";
  out << "abs_tolerance = " << format_double(compare.abs_tolerance) << "\n";
  out << "rel_tolerance = " << format_double(compare.rel_tolerance) << "\n";
  return out.str();
}

ExperimentConfig experiment_config_from_ini(const IniFile& ini, const std::string& prefix) {
  ExperimentConfig cfg;

  SectionReader model(ini, prefix + "model", /*required=*/true);
  cfg.model.n_sites = model.require_int("n_sites");
  cfg.model.coupling = model.require_double("coupling");
  const auto field = model.optional_double("field");
  const auto field_list = model.optional_double_list("field_list");
  if (field && field_list) {
    throw ConfigError("model.field and model.field_list are mutually exclusive",
                      "model.field");
  }
  if (field) cfg.model.field_values = {*field};
  if (field_list) cfg.model.field_values = *field_list;
  cfg.model.gamma = model.get_double("gamma", 1.0);
  cfg.model.boundary = model.get_string("boundary", "periodic");
  model.finish();

  SectionReader ansatz(ini, prefix + "ansatz", /*required=*/true);
  cfg.ansatz.alpha = ansatz.require_double("alpha");
  cfg.ansatz.beta = ansatz.require_double("beta");
  cfg.ansatz.init_scale = ansatz.get_double("init_scale", 0.01);
  cfg.ansatz.init_seed = ansatz.get_uint64("init_seed", 1);
  ansatz.finish();

  SectionReader sampler(ini, prefix + "sampler", /*required=*/false);
  cfg.sampler.n_chains = sampler.get_int("n_chains", 1);
  cfg.sampler.n_samples_per_chain = sampler.get_int("n_samples_per_chain", 1000);
  // Burn-in defaults to 10% of the retained sweeps.
  cfg.sampler.burn_in_sweeps = sampler.get_int(
      "burn_in_sweeps",
      static_cast<int>((cfg.sampler.n_samples_per_chain + 9) / 10));
  // Defaulting to two flips keeps the per-sweep spin-flip parity random;
  // with exactly one flip per move an always-accepting chain revisits a
  // single parity sector at the sweep boundaries.
  cfg.sampler.max_flips_per_move =
      sampler.get_int("max_flips_per_move", std::min(2, cfg.model.n_sites));
  cfg.sampler.seed = sampler.get_uint64("seed", 0);
  sampler.finish();

  SectionReader optimizer(ini, prefix + "optimizer", /*required=*/true);
  cfg.optimizer.n_iterations = optimizer.require_int("n_iterations");
  cfg.optimizer.learning_rate = optimizer.get_double("learning_rate", 0.01);
  const std::string schedule = optimizer.get_string("schedule", "constant");
  if (schedule == "constant") {
    cfg.optimizer.schedule = LearningSchedule::constant;
  } else if (schedule == "exponential") {
    cfg.optimizer.schedule = LearningSchedule::exponential_decay;
  } else {
    throw ConfigError("optimizer.schedule must be 'constant' or 'exponential', got '" +
                          schedule + "'",
                      "optimizer.schedule");
  }
  cfg.optimizer.decay_rate = optimizer.get_double("decay_rate", 1.0);
  cfg.optimizer.sr_enabled = optimizer.get_bool("sr_enabled", true);
  cfg.optimizer.sr_diag_shift = optimizer.get_double("sr_diag_shift", 0.01);
  cfg.optimizer.solver_tolerance = optimizer.get_double("solver_tolerance", 1e-6);
  optimizer.finish();

  SectionReader run(ini, prefix + "run", /*required=*/false);
  const std::string mode = run.get_string("mode", "sampled");
  if (mode == "sampled") {
    cfg.run.mode = EstimationMode::sampled;
  } else if (mode == "exact-summation") {
    cfg.run.mode = EstimationMode::full_summation;
  } else {
    throw ConfigError("run.mode must be 'sampled' or 'exact-summation', got '" + mode + "'",
                      "run.mode");
  }
  cfg.run.output_dir = run.get_string("output", "lvmc-output");
  cfg.run.checkpoint_every = run.get_int("checkpoint_every", 100);
  cfg.run.final_observable_samples =
      run.get_int("final_observable_samples", 20000);
  run.finish();

  SectionReader compare(ini, prefix + "compare", /*required=*/false);
  cfg.compare.abs_tolerance = compare.get_double("abs_tolerance", 0.02);
  cfg.compare.rel_tolerance = compare.get_double("rel_tolerance", 0.05);
  compare.finish();

  cfg.validate();
  return cfg;
}

ExperimentConfig parse_experiment_config(const std::filesystem::path& path) {
  return experiment_config_from_ini(IniFile::parse_file(path));
}

}  // namespace lvmc

// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "factorsum/io.hpp"
#include "factorsum/optimizer.hpp"
#include "factorsum/sampler.hpp"

namespace factorsum {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The full run description. Its JSON form is the config file; every leaf is
/// addressable by a dotted path (e.g. `sampling.s_f`).
struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  std::string corpus_path;
  std::string split = "test";

  double s_f = 0.2;
  std::size_t n_d = 20;

  std::string provider = "extractive";  // file | extractive | oracle | ensemble
  std::vector<std::string> views;
  std::size_t extractive_k = 3;

  std::string budget_mode = "fixed";  // fixed | oracle | model
  std::optional<double> budget_value;
  std::string dataset = "pubmed";
  double budget_correction = 0.0;

  std::string content_mode = "none";  // none | lead | model | reference
  std::string advisor;

  double alpha = 1.0;
  double beta = 1.0;
  double redundancy_t = 0.4;
  std::optional<std::size_t> patience;  // defaults to n_d
  std::string content_score = "f1";     // f1 | recall | precision
  std::string greedy_variant = "strict";  // strict | literal

  std::string out = "out";
  bool write_views = false;

  bool eval_stem = true;
  std::string rouge_l = "text";  // text | sum

  std::vector<double> sweep_budgets;
  std::optional<double> calibrate_target;
  std::size_t calibrate_rounds = 5;
  double calibrate_tolerance = 2.0;

  SamplingConfig sampling() const { return {s_f, n_d, seed, false}; }
};

inline json to_json(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["jobs"] = c.jobs;
  j["corpus"] = {{"path", c.corpus_path}, {"split", c.split}};
  j["sampling"] = {{"s_f", c.s_f}, {"n_d", c.n_d}};
  j["provider"] = {{"kind", c.provider}, {"views", c.views}, {"k", c.extractive_k}};
  j["budget"] = {{"mode", c.budget_mode},
                 {"value", c.budget_value ? json(*c.budget_value) : json(nullptr)},
                 {"dataset", c.dataset},
                 {"correction", c.budget_correction}};
  j["content"] = {{"mode", c.content_mode}};
  j["advisor"] = c.advisor;
  j["guidance"] = {{"alpha", c.alpha},
                   {"beta", c.beta},
                   {"redundancy_t", c.redundancy_t},
                   {"patience", c.patience ? json(*c.patience) : json(nullptr)},
                   {"content_score", c.content_score},
                   {"variant", c.greedy_variant}};
  j["out"] = c.out;
  j["write_views"] = c.write_views;
  j["eval"] = {{"stem", c.eval_stem}, {"rouge_l", c.rouge_l}};
  j["sweep"] = {{"budgets", c.sweep_budgets}};
  j["calibrate"] = {{"target", c.calibrate_target ? json(*c.calibrate_target)
                                                  : json(nullptr)},
                    {"rounds", c.calibrate_rounds},
                    {"tolerance", c.calibrate_tolerance}};
  return j;
}

namespace detail {

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

template <typename T>
void read_opt(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    out.reset();
  } else {
    out = j.at(key).get<T>();
  }
}

inline const json& section(const json& j, const char* key) {
  static const json empty = json::object();
  if (!j.contains(key)) return empty;
  if (!j.at(key).is_object())
    throw ConfigError(std::string("config section '") + key + "' must be an object");
  return j.at(key);
}

}  // namespace detail

inline RunConfig run_config_from_json(const json& j) {
  RunConfig c;
  try {
    detail::read_opt(j, "seed", c.seed);
    detail::read_opt(j, "jobs", c.jobs);
    const json& corpus = detail::section(j, "corpus");
    detail::read_opt(corpus, "path", c.corpus_path);
    detail::read_opt(corpus, "split", c.split);
    const json& sampling = detail::section(j, "sampling");
    detail::read_opt(sampling, "s_f", c.s_f);
    detail::read_opt(sampling, "n_d", c.n_d);
    const json& provider = detail::section(j, "provider");
    detail::read_opt(provider, "kind", c.provider);
    if (provider.contains("views")) {
      const json& v = provider.at("views");
      c.views = v.is_string() ? std::vector<std::string>{v.get<std::string>()}
                              : v.get<std::vector<std::string>>();
    }
    detail::read_opt(provider, "k", c.extractive_k);
    const json& budget = detail::section(j, "budget");
    detail::read_opt(budget, "mode", c.budget_mode);
    detail::read_opt(budget, "value", c.budget_value);
    detail::read_opt(budget, "dataset", c.dataset);
    detail::read_opt(budget, "correction", c.budget_correction);
    const json& content = detail::section(j, "content");
    detail::read_opt(content, "mode", c.content_mode);
    detail::read_opt(j, "advisor", c.advisor);
    const json& g = detail::section(j, "guidance");
    detail::read_opt(g, "alpha", c.alpha);
    detail::read_opt(g, "beta", c.beta);
    detail::read_opt(g, "redundancy_t", c.redundancy_t);
    detail::read_opt(g, "patience", c.patience);
    detail::read_opt(g, "content_score", c.content_score);
    detail::read_opt(g, "variant", c.greedy_variant);
    detail::read_opt(j, "out", c.out);
    detail::read_opt(j, "write_views", c.write_views);
    const json& ev = detail::section(j, "eval");
    detail::read_opt(ev, "stem", c.eval_stem);
    detail::read_opt(ev, "rouge_l", c.rouge_l);
    const json& sweep = detail::section(j, "sweep");
    detail::read_opt(sweep, "budgets", c.sweep_budgets);
    const json& cal = detail::section(j, "calibrate");
    detail::read_opt(cal, "target", c.calibrate_target);
    detail::read_opt(cal, "rounds", c.calibrate_rounds);
    detail::read_opt(cal, "tolerance", c.calibrate_tolerance);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return c;
}

/// Sets `dotted.path` in a JSON config. The value is parsed as JSON when
/// possible (numbers, booleans, null, lists) and kept as a string otherwise.
inline void apply_override(json& config, const std::string& dotted,
                           const std::string& value) {
  if (dotted.empty()) throw ConfigError("empty override key");
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;
  }
  json* node = &config;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    if (key.empty()) throw ConfigError("malformed override key '" + dotted + "'");
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      (*node)[key] = parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

inline json load_config_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace factorsum

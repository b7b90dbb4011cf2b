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

// factorsum: command-line driver for the summarization pipeline.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "factorsum/factorsum.hpp"

namespace fs = factorsum;

namespace {

// Flag values collected before they are folded into the JSON config.
struct Flags {
  std::string config;
  std::optional<std::string> seed, jobs, corpus, split, s_f, n_d, budget_mode,
      budget, budget_correction, content_mode, alpha, beta, redundancy_t,
      patience, provider, advisor, out;
  std::vector<std::string> views;
};

struct FlagSpec {
  std::optional<std::string> Flags::*field;
  const char* path;
  bool is_string;
};

constexpr FlagSpec kFlagSpecs[] = {
    {&Flags::seed, "seed", false},
    {&Flags::jobs, "jobs", false},
    {&Flags::corpus, "corpus.path", true},
    {&Flags::split, "corpus.split", true},
    {&Flags::s_f, "sampling.s_f", false},
    {&Flags::n_d, "sampling.n_d", false},
    {&Flags::budget_mode, "budget.mode", true},
    {&Flags::budget, "budget.value", false},
    {&Flags::budget_correction, "budget.correction", false},
    {&Flags::content_mode, "content.mode", true},
    {&Flags::alpha, "guidance.alpha", false},
    {&Flags::beta, "guidance.beta", false},
    {&Flags::redundancy_t, "guidance.redundancy_t", false},
    {&Flags::patience, "guidance.patience", false},
    {&Flags::provider, "provider.kind", true},
    {&Flags::advisor, "advisor", true},
    {&Flags::out, "out", true},
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration");
  cmd->add_option("--seed", f.seed, "global seed (fallback: FACTORSUM_SEED)");
  cmd->add_option("--jobs", f.jobs, "document-level worker threads");
  cmd->add_option("--corpus", f.corpus, "JSONL corpus (.jsonl or .jsonl.gz)");
  cmd->add_option("--split", f.split, "split name used for synthesized ids");
  cmd->add_option("--s-f", f.s_f, "sampling factor in (0, 1]");
  cmd->add_option("--n-d", f.n_d, "views per document");
  cmd->add_option("--budget-mode", f.budget_mode, "fixed|oracle|model");
  cmd->add_option("--budget", f.budget, "fixed budget in words");
  cmd->add_option("--budget-correction", f.budget_correction,
                  "additive budget correction");
  cmd->add_option("--content-mode", f.content_mode, "none|lead|model|reference");
  cmd->add_option("--alpha", f.alpha, "budget term weight");
  cmd->add_option("--beta", f.beta, "content term weight");
  cmd->add_option("--redundancy-t", f.redundancy_t, "redundancy threshold");
  cmd->add_option("--patience", f.patience, "non-improving iterations tolerated");
  cmd->add_option("--provider", f.provider, "file|extractive|oracle|ensemble");
  cmd->add_option("--views", f.views, "summary view file(s)");
  cmd->add_option("--advisor", f.advisor, "advisor summaries JSONL");
  cmd->add_option("--out", f.out, "output directory");
  cmd->allow_extras();
}

// Folds config file, env seed, named flags and `--dotted.key value` extras
// into one RunConfig.
fs::RunConfig resolve_config(const Flags& f, const std::vector<std::string>& extras) {
  fs::json j = f.config.empty() ? fs::json::object() : fs::load_config_json(f.config);
  if (!f.seed && !j.contains("seed")) {
    if (const char* env = std::getenv("FACTORSUM_SEED")) fs::apply_override(j, "seed", env);
  }
  for (const auto& spec : kFlagSpecs) {
    const auto& value = f.*(spec.field);
    if (!value) continue;
    if (spec.is_string) {
      fs::apply_override(j, spec.path, fs::json(*value).dump());
    } else {
      fs::apply_override(j, spec.path, *value);
    }
  }
  if (!f.views.empty()) j["provider"]["views"] = f.views;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.find('.') == std::string::npos)
      throw fs::ConfigError("unrecognized argument '" + arg + "'");
    std::string key = arg.substr(2);
    std::string value;
    if (auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size())
        throw fs::ConfigError("missing value for '" + arg + "'");
      value = extras[++i];
    }
    fs::apply_override(j, key, value);
  }
  return fs::run_config_from_json(j);
}

fs::Corpus load_corpus_for(const fs::RunConfig& c) {
  if (c.corpus_path.empty()) throw fs::ConfigError("--corpus is required");
  return fs::load_corpus(c.corpus_path, c.split);
}

std::filesystem::path out_dir(const fs::RunConfig& c) { return c.out; }

int cmd_stats(const fs::RunConfig& c) {
  const auto corpus = load_corpus_for(c);
  std::cout << fs::to_json(fs::corpus_stats(corpus)).dump(2) << '\n';
  return 0;
}

int cmd_sample_views(const fs::RunConfig& c, bool training) {
  fs::SamplingConfig sc = c.sampling();
  sc.enforce_oracle = training;
  sc.validate();
  const auto corpus = load_corpus_for(c);
  const auto records = fs::build_view_dataset(corpus, sc);
  const auto path =
      out_dir(c) / (training ? "train_views.jsonl" : "document_views.jsonl");
  fs::export_view_dataset(path, records);
  std::cout << "wrote " << records.size() << " views to " << path.string() << '\n';
  return 0;
}

int cmd_generate(const fs::RunConfig& c) {
  fs::validate_config(c);
  const auto corpus = load_corpus_for(c);
  const auto result = fs::run_generate(c, corpus);
  std::cout << "wrote " << result.results.size() << " summaries to "
            << (out_dir(c) / "summaries.jsonl").string() << '\n';
  if (result.report) std::cout << fs::format_report(*result.report);
  return 0;
}

int cmd_evaluate(const fs::RunConfig& c, const std::string& predictions,
                 const std::string& baseline, std::size_t resamples) {
  if (predictions.empty()) throw fs::ConfigError("--predictions is required");
  const auto corpus = load_corpus_for(c);
  const auto opts = fs::eval_options(c);
  const auto report = fs::evaluate(fs::load_predictions(predictions), corpus, opts);
  fs::json j = fs::to_json(report);
  std::string text = fs::format_report(report);
  if (!baseline.empty()) {
    const auto base = fs::evaluate(fs::load_predictions(baseline), corpus, opts);
    if (base.per_doc.size() != report.per_doc.size())
      throw fs::ConfigError("baseline covers a different set of documents");
    auto column = [](const fs::EvalReport& r, double fs::DocScore::*m) {
      std::vector<double> out;
      for (const auto& d : r.per_doc) out.push_back(d.*m);
      return out;
    };
    fs::json sig;
    for (auto [name, member] : {std::pair{"r1", &fs::DocScore::r1},
                                std::pair{"r2", &fs::DocScore::r2},
                                std::pair{"rl", &fs::DocScore::rl}}) {
      sig[name] = fs::paired_bootstrap(column(report, member), column(base, member),
                                       resamples, c.seed);
      text += std::string("p-value vs baseline (") + name +
              "): " + std::to_string(sig[name].get<double>()) + "\n";
    }
    j["p_values"] = sig;
  }
  fs::write_text(out_dir(c) / "report.json", j.dump(2) + "\n");
  fs::write_text(out_dir(c) / "report.txt", text);
  std::cout << text;
  return 0;
}

int cmd_coverage(const fs::RunConfig& c) {
  const auto corpus = load_corpus_for(c);
  const auto s = fs::coverage_stats(corpus, c.s_f, c.n_d, c.seed);
  std::cout << fs::json{{"s_f", c.s_f},
                        {"n_d", c.n_d},
                        {"coverage_pct", s.coverage_pct},
                        {"mean_view_sentences", s.mean_view_sentences}}
                   .dump(2)
            << '\n';
  return 0;
}

int cmd_sweep(const fs::RunConfig& c) {
  if (c.sweep_budgets.empty())
    throw fs::ConfigError("sweep needs --budgets (or sweep.budgets in the config)");
  const auto pipeline = fs::make_pipeline(c);
  const auto corpus = load_corpus_for(c);
  const auto rows = fs::budget_sweep(pipeline, corpus, c.sweep_budgets);
  fs::json j = fs::json::array();
  for (const auto& [b, r] : rows) {
    fs::json row = fs::to_json(r);
    row.erase("per_doc");
    row["budget"] = b;
    j.push_back(row);
  }
  const std::string csv = fs::sweep_csv(rows);
  fs::write_text(out_dir(c) / "sweep.csv", csv);
  fs::write_text(out_dir(c) / "sweep.json", j.dump(2) + "\n");
  std::cout << csv;
  return 0;
}

int cmd_calibrate(const fs::RunConfig& c) {
  const auto pipeline = fs::make_pipeline(c);
  const auto corpus = load_corpus_for(c);
  const double target = c.calibrate_target.value_or(fs::mean_reference_words(corpus));
  const auto result = fs::run_calibration(pipeline, corpus, target);
  fs::json rounds = fs::json::array();
  for (const auto& r : result.rounds)
    rounds.push_back({{"correction", r.correction}, {"mean_length", r.mean_length}});
  const fs::json j{{"target_mean", target},
                   {"correction", result.correction},
                   {"converged", result.converged},
                   {"rounds", rounds}};
  fs::write_text(out_dir(c) / "calibration.json", j.dump(2) + "\n");
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorized long-document summarization: view sampling, guided "
               "greedy composition and ROUGE evaluation"};
  app.require_subcommand(1);

  Flags flags;
  std::string predictions;
  std::string baseline;
  std::size_t resamples = 10000;
  std::string budgets_arg;
  std::optional<double> target;
  std::size_t toy_docs = 50;
  std::uint64_t toy_seed = 7;
  std::string toy_output;

  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"stats", "print corpus statistics"},
      {"sample-views", "write sampled document views (generation mode)"},
      {"export-train", "write the view training dataset (oracle enforced)"},
      {"generate", "compose summaries and evaluate when references exist"},
      {"evaluate", "score a predictions file against a corpus"},
      {"coverage", "oracle coverage of sampled views"},
      {"sweep", "evaluate a grid of fixed budgets on one candidate pool"},
      {"calibrate", "fit the additive budget correction"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common_flags(sub, flags);
    subs.push_back(sub);
  }
  app.get_subcommand("evaluate")->add_option("--predictions", predictions,
                                             "summaries JSONL {doc_id, summary}");
  app.get_subcommand("evaluate")->add_option("--baseline", baseline,
                                             "second predictions file for a paired "
                                             "bootstrap test");
  app.get_subcommand("evaluate")->add_option("--resamples", resamples,
                                             "bootstrap resamples");
  app.get_subcommand("sweep")->add_option("--budgets", budgets_arg,
                                          "comma-separated budgets");
  app.get_subcommand("calibrate")->add_option("--target", target,
                                              "target mean length (default: mean "
                                              "reference length)");
  CLI::App* toy = app.add_subcommand("make-toy", "write a synthetic toy corpus");
  toy->add_option("--n-docs", toy_docs, "number of documents");
  toy->add_option("--seed", toy_seed, "generator seed");
  toy->add_option("--output", toy_output, "output JSONL path")->required();

  CLI11_PARSE(app, argc, argv);

  std::string stage = "config";
  try {
    if (toy->parsed()) {
      fs::ToyCorpusSpec spec;
      spec.n_docs = toy_docs;
      spec.seed = toy_seed;
      fs::save_corpus(toy_output, fs::make_toy_corpus(spec));
      std::cout << "wrote " << toy_docs << " documents to " << toy_output << '\n';
      return 0;
    }
    CLI::App* active = nullptr;
    for (auto* s : subs)
      if (s->parsed()) active = s;
    const std::string name = active->get_name();
    fs::RunConfig config = resolve_config(flags, active->remaining());
    if (!budgets_arg.empty()) {
      config.sweep_budgets.clear();
      std::size_t start = 0;
      while (start <= budgets_arg.size()) {
        std::size_t comma = budgets_arg.find(',', start);
        if (comma == std::string::npos) comma = budgets_arg.size();
        const std::string tok = budgets_arg.substr(start, comma - start);
        if (!tok.empty()) config.sweep_budgets.push_back(std::stod(tok));
        start = comma + 1;
      }
    }
    if (target) config.calibrate_target = target;
    stage = name;
    if (name == "stats") return cmd_stats(config);
    if (name == "sample-views") return cmd_sample_views(config, false);
    if (name == "export-train") return cmd_sample_views(config, true);
    if (name == "generate") return cmd_generate(config);
    if (name == "evaluate") return cmd_evaluate(config, predictions, baseline, resamples);
    if (name == "coverage") return cmd_coverage(config);
    if (name == "sweep") return cmd_sweep(config);
    if (name == "calibrate") return cmd_calibrate(config);
  } catch (const fs::ConfigError& e) {
    std::cerr << "error [" << stage << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error [" << stage << "]: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

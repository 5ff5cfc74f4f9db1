// Copyright 2026 The WSDMS Authors. All Rights Reserved.
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

#include "wsdms/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wsdms/checkpoint.h"
#include "wsdms/corpus_io.h"
#include "wsdms/diagnostics.h"
#include "wsdms/errors.h"
#include "wsdms/synthetic.h"
#include "wsdms/trainer.h"

namespace wsdms {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Flags that shape a TrainConfig. Unset optionals keep the base value.
struct ConfigFlags {
  std::string config_path;
  bool desk_scale = false;
  std::uint64_t seed = 0;
  std::optional<double> lambda;
  std::optional<double> lr;
  std::optional<std::size_t> epochs;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> kernels;
  std::optional<std::string> tau_mode;
  std::optional<std::string> link_mode;
  std::optional<std::string> aggregate;
  std::optional<std::string> consistency;
  std::optional<std::string> kernel_reading;
  std::optional<std::size_t> batch_size;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> layers;
  std::optional<std::size_t> heads;
  std::vector<std::string> ablate;
};

void AddConfigFlags(CLI::App* app, ConfigFlags& f) {
  app->add_option("--config", f.config_path, "JSON file with TrainConfig fields");
  app->add_flag("--desk-scale", f.desk_scale, "d=32, K=10, 200 epochs");
  app->add_option("--lambda", f.lambda, "consistency/label trade-off in [0,1]");
  app->add_option("--lr", f.lr, "Adam learning rate");
  app->add_option("--epochs", f.epochs, "maximum epochs");
  app->add_option("--dim", f.dim, "embedding dimension (must match the corpus)");
  app->add_option("--kernels", f.kernels, "number of Gaussian kernels");
  app->add_option("--tau-mode", f.tau_mode, "linking threshold rule")
      ->check(CLI::IsMember({"range-midpoint", "median", "off"}));
  app->add_option("--link-mode", f.link_mode, "sentence/tree linking")
      ->check(CLI::IsMember({"threshold", "full"}));
  app->add_option("--aggregate", f.aggregate, "article aggregation")
      ->check(CLI::IsMember({"weighted", "threshold-mil"}));
  app->add_option("--consistency", f.consistency, "consistency term variant")
      ->check(CLI::IsMember({"product", "weighted"}));
  app->add_option("--kernel-reading", f.kernel_reading, "kernel scorer reading")
      ->check(CLI::IsMember({"per-neighbor", "node-logsum"}));
  app->add_option("--batch-size", f.batch_size, "articles per step; 0 = full batch");
  app->add_option("--rounds", f.rounds, "message-passing rounds");
  app->add_option("--layers", f.layers, "self-attention blocks");
  app->add_option("--heads", f.heads, "attention heads per block");
  app->add_option("--ablate", f.ablate, "comma-separated ablation flags")
      ->delimiter(',')
      ->check(CLI::IsMember(AblationNames()));
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TrainConfig BuildConfig(const ConfigFlags& f, std::size_t corpus_dim) {
  TrainConfig c;
  if (!f.config_path.empty()) c = ConfigFromJson(ReadFile(f.config_path));
  if (f.desk_scale) {
    const TrainConfig desk = TrainConfig::DeskScale();
    c.num_kernels = desk.num_kernels;
    c.max_epochs = desk.max_epochs;
  }
  c.seed = f.seed;
  if (f.lambda) c.lambda = *f.lambda;
  if (f.lr) c.learning_rate = *f.lr;
  if (f.epochs) c.max_epochs = *f.epochs;
  if (f.kernels) c.num_kernels = *f.kernels;
  if (f.tau_mode) c.tau_mode = ParseTauMode(*f.tau_mode);
  if (f.link_mode) c.ablation.full_connect = *f.link_mode == "full";
  if (f.aggregate) c.ablation.threshold_mil = *f.aggregate == "threshold-mil";
  if (f.consistency) c.consistency = ParseConsistency(*f.consistency);
  if (f.kernel_reading) c.kernel_reading = ParseKernelReading(*f.kernel_reading);
  if (f.batch_size) c.batch_size = *f.batch_size;
  if (f.rounds) c.propagation_rounds = *f.rounds;
  if (f.layers) c.encoder_layers = *f.layers;
  if (f.heads) c.encoder_heads = *f.heads;
  for (const std::string& name : f.ablate) ApplyAblation(c, name);
  if (f.dim && *f.dim != corpus_dim) {
    throw ConfigError("--dim " + std::to_string(*f.dim) +
                      " does not match the corpus dimension " +
                      std::to_string(corpus_dim));
  }
  c.dim = corpus_dim;
  c.Validate();
  return c;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "'");
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

json MetricsJson(const Metrics& m) {
  return {{"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"accuracy", m.accuracy},
          {"precision_undefined", m.precision_undefined},
          {"recall_undefined", m.recall_undefined},
          {"tp", m.counts.tp},
          {"fp", m.counts.fp},
          {"fn", m.counts.fn},
          {"tn", m.counts.tn}};
}

class Runner {
 public:
  Runner(int argc, const char* const* argv, std::ostream& out)
      : out_(out), args_(argv, argv + argc) {}

  void Manifest(const std::string& command, std::uint64_t seed,
                const fs::path& dir, const std::optional<TrainConfig>& config,
                const std::vector<std::string>& outputs) {
    json m = {{"command", command},
              {"argv", args_},
              {"seed", seed},
              {"version", kVersion},
              {"compiler", __VERSION__},
              {"outputs", outputs}};
    if (config) m["config"] = json::parse(ConfigToJson(*config));
    WriteText(dir / "manifest.json", m.dump(2) + "\n");
  }

  std::ostream& out() { return out_; }

 private:
  std::ostream& out_;
  std::vector<std::string> args_;
};

}  // namespace

int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Weakly supervised misinforming-sentence detection"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string corpus_path;
  std::string test_corpus_path;
  std::string checkpoint_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  ConfigFlags flags;
  SyntheticConfig synth;
  std::size_t train_size = 0;

  CLI::App* train = app.add_subcommand("train", "train on article labels");
  train->add_option("--corpus", corpus_path, "JSONL corpus")->required();
  train->add_option("--out", out_dir, "output directory")->required();
  train->add_option("--checkpoint", checkpoint_path, "checkpoint path (default <out>/model.ckpt)");
  train->add_option("--seed", flags.seed, "random seed");
  AddConfigFlags(train, flags);

  CLI::App* eval = app.add_subcommand("eval", "score a checkpoint on a labelled corpus");
  eval->add_option("--corpus", corpus_path, "JSONL corpus")->required();
  eval->add_option("--checkpoint", checkpoint_path, "checkpoint")->required();
  eval->add_option("--out", out_dir, "output directory")->required();
  eval->add_option("--seed", seed, "recorded in the manifest");

  CLI::App* predict = app.add_subcommand("predict", "dump sentence and article predictions");
  predict->add_option("--corpus", corpus_path, "JSONL corpus")->required();
  predict->add_option("--checkpoint", checkpoint_path, "checkpoint")->required();
  predict->add_option("--out", out_dir, "output directory")->required();
  predict->add_option("--seed", seed, "recorded in the manifest");

  CLI::App* gen = app.add_subcommand("gen-synth", "generate a synthetic corpus");
  gen->add_option("--out", out_dir, "output directory")->required();
  gen->add_option("--articles", synth.num_articles, "number of articles");
  gen->add_option("--sentences", synth.sentences_per_article, "sentences per article");
  gen->add_option("--trees", synth.trees_per_article, "trees per article");
  gen->add_option("--posts", synth.posts_per_tree, "posts per tree");
  gen->add_option("--dim", synth.dim, "embedding dimension");
  gen->add_option("--noise", synth.noise, "embedding noise norm");
  gen->add_option("--misinform-rate", synth.misinform_rate,
                  "per-sentence misinforming rate in fake articles");
  gen->add_option("--fake-fraction", synth.fake_fraction, "share of fake articles");
  gen->add_option("--stance", synth.stance, "planted stance strength");
  gen->add_option("--seed", synth.seed, "random seed");

  CLI::App* entropy = app.add_subcommand("entropy-report",
                                         "kernel vs dot-product attention entropy");
  entropy->add_option("--corpus", corpus_path, "JSONL corpus")->required();
  entropy->add_option("--out", out_dir, "output directory")->required();
  entropy->add_option("--checkpoint", checkpoint_path,
                      "trained model (default: freshly initialised weights)");
  entropy->add_option("--seed", flags.seed, "seed of the fresh weights");
  AddConfigFlags(entropy, flags);

  CLI::App* ablate = app.add_subcommand("ablate", "train and compare ablations");
  ablate->add_option("--corpus", corpus_path, "JSONL corpus")->required();
  ablate->add_option("--out", out_dir, "output directory")->required();
  ablate->add_option("--test-corpus", test_corpus_path, "held-out corpus");
  ablate->add_option("--train-size", train_size,
                     "train on the first N articles, test on the rest");
  ablate->add_option("--seed", flags.seed, "random seed");
  AddConfigFlags(ablate, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Runner run(argc, argv, out);
  try {
    const fs::path dir(out_dir);
    if (*gen) {
      EnsureDir(dir);
      const Corpus corpus = GenerateSynthetic(synth);
      WriteCorpus(corpus, dir / "corpus.jsonl");
      run.Manifest("gen-synth", synth.seed, dir, std::nullopt,
                   {"corpus.jsonl", SidecarPath("corpus.jsonl").string()});
      out << "wrote " << corpus.articles.size() << " articles to "
          << (dir / "corpus.jsonl").string() << '\n';
      return kExitOk;
    }

    const Corpus corpus = LoadCorpus(corpus_path);
    if (*train) {
      const TrainConfig config = BuildConfig(flags, corpus.dim);
      EnsureDir(dir);
      const TrainResult result = Train(corpus, config);
      const fs::path ckpt =
          checkpoint_path.empty() ? dir / "model.ckpt" : fs::path(checkpoint_path);
      SaveCheckpoint(result.model, ckpt.string());
      WriteText(dir / "loss_trace.csv", FormatLossTrace(result.loss_trace));
      run.Manifest("train", config.seed, dir, config,
                   {ckpt.string(), "loss_trace.csv"});
      out << "epochs " << result.loss_trace.size() << " final loss "
          << Num(result.loss_trace.empty() ? 0.0 : result.loss_trace.back())
          << (result.converged ? " (converged)" : "") << '\n';
      return kExitOk;
    }
    if (*eval) {
      const Model model = LoadCheckpoint(checkpoint_path);
      EnsureDir(dir);
      const EvaluationReport report = Evaluate(corpus, model);
      const json j = {{"article", MetricsJson(report.article)},
                      {"sentence", MetricsJson(report.sentence)},
                      {"articles_scored", report.articles_scored},
                      {"sentences_scored", report.sentences_scored}};
      WriteText(dir / "metrics.json", j.dump(2) + "\n");
      run.Manifest("eval", seed, dir, model.config, {"metrics.json"});
      out << "article P " << Num(report.article.precision) << " R "
          << Num(report.article.recall) << " F1 " << Num(report.article.f1) << " Acc "
          << Num(report.article.accuracy) << '\n';
      out << "sentence P " << Num(report.sentence.precision) << " R "
          << Num(report.sentence.recall) << " F1 " << Num(report.sentence.f1) << " Acc "
          << Num(report.sentence.accuracy) << '\n';
      return kExitOk;
    }
    if (*predict) {
      const Model model = LoadCheckpoint(checkpoint_path);
      EnsureDir(dir);
      const std::vector<ArticlePrediction> preds = Predict(corpus, model);
      std::ostringstream sentences, articles, links;
      for (const ArticlePrediction& p : preds) {
        for (std::size_t i = 0; i < p.sentences.size(); ++i) {
          WriteSentencePrediction(sentences, p.article_id, i,
                                  p.sentences[i].p_misinforming,
                                  p.sentences[i].top_trees);
        }
        WriteArticlePrediction(articles, p.article_id, p.p_fake, p.alpha);
        WriteLinkGraph(links, p.article_id, p.links);
      }
      WriteText(dir / "sentences.tsv", sentences.str());
      WriteText(dir / "articles.tsv", articles.str());
      WriteText(dir / "links.tsv", links.str());
      run.Manifest("predict", seed, dir, model.config,
                   {"sentences.tsv", "articles.tsv", "links.tsv"});
      out << "predicted " << preds.size() << " articles\n";
      return kExitOk;
    }
    if (*entropy) {
      Model model;
      if (!checkpoint_path.empty()) {
        model = LoadCheckpoint(checkpoint_path);
      } else {
        model.config = BuildConfig(flags, corpus.dim);
        model.bank = KernelBank::Default(model.config.num_kernels);
        model.params = InitParams(model.config);
      }
      EnsureDir(dir);
      const EntropyReport report = ComputeEntropyReport(corpus, model);
      std::ostringstream csv;
      WriteEntropyCsv(csv, report);
      WriteText(dir / "entropy.csv", csv.str());
      run.Manifest("entropy-report", model.config.seed, dir, model.config,
                   {"entropy.csv"});
      out << "kernel " << Num(report.kernel_mean) << " dot-product "
          << Num(report.dot_product_mean) << " nats over " << report.distributions
          << " distributions\n";
      return kExitOk;
    }
    if (*ablate) {
      const std::vector<std::string> names = flags.ablate;
      ConfigFlags base_flags = flags;
      base_flags.ablate.clear();
      const TrainConfig config = BuildConfig(base_flags, corpus.dim);
      Corpus train_set = corpus;
      Corpus test_set = corpus;
      if (!test_corpus_path.empty()) {
        test_set = LoadCorpus(test_corpus_path);
      } else if (train_size > 0) {
        std::tie(train_set, test_set) = SplitCorpus(corpus, train_size);
      }
      EnsureDir(dir);
      const std::vector<std::string>& run_names = names.empty() ? AblationNames() : names;
      const std::vector<AblationRow> rows =
          RunAblations(train_set, test_set, config, run_names);
      std::ostringstream csv, svg;
      WriteAblationCsv(csv, rows);
      WriteAblationSvg(svg, rows);
      WriteText(dir / "ablation.csv", csv.str());
      WriteText(dir / "ablation.svg", svg.str());
      run.Manifest("ablate", config.seed, dir, config, {"ablation.csv", "ablation.svg"});
      out << csv.str();
      return kExitOk;
    }
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCorpus;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace wsdms

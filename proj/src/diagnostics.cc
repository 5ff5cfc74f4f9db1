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

#include "wsdms/diagnostics.h"

#include <cmath>
#include <cstdio>

#include "wsdms/errors.h"

namespace wsdms {
namespace {

std::string Fixed(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

double AttentionEntropy(std::span<const double> w) {
  if (w.empty()) throw DegenerateInputError("entropy of an empty distribution");
  double total = 0.0;
  double h = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw DegenerateInputError("entropy input has a negative or non-finite weight");
    }
    total += x;
    if (x > 0.0) h -= x * std::log(x);
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DegenerateInputError("entropy input does not sum to 1");
  }
  return h;
}

EntropyReport ComputeEntropyReport(std::span<const ConversationTree> trees,
                                   const KernelBank& bank, const ParamStore& params,
                                   KernelReading reading) {
  EntropyReport report;
  double kernel_total = 0.0;
  double dot_total = 0.0;
  for (const ConversationTree& tree : trees) {
    const TreeFeatures features = ComputeTreeFeatures(tree, bank, reading);
    ad::Tape tape;
    KernelScorer scorer;
    scorer.weight = tape.Constant(params.Get("kernel.weight"));
    scorer.bias = tape.Constant(params.Get("kernel.bias"));
    const auto kernel = PostAttention(tape, features, scorer, PostScorer::kKernel);
    const auto dot = PostAttention(tape, features, scorer, PostScorer::kDotProduct);
    TreeEntropy row;
    row.tree_id = tree.id();
    for (std::size_t p = 0; p < kernel.size(); ++p) {
      row.kernel += AttentionEntropy(kernel[p].values());
      row.dot_product += AttentionEntropy(dot[p].values());
    }
    kernel_total += row.kernel;
    dot_total += row.dot_product;
    report.distributions += kernel.size();
    row.kernel /= static_cast<double>(kernel.size());
    row.dot_product /= static_cast<double>(kernel.size());
    report.per_tree.push_back(row);
  }
  if (report.distributions > 0) {
    report.kernel_mean = kernel_total / static_cast<double>(report.distributions);
    report.dot_product_mean = dot_total / static_cast<double>(report.distributions);
  }
  return report;
}

EntropyReport ComputeEntropyReport(const Corpus& corpus, const Model& model) {
  std::vector<ConversationTree> trees;
  for (const Article& a : corpus.articles) {
    trees.insert(trees.end(), a.trees.begin(), a.trees.end());
  }
  return ComputeEntropyReport(trees, model.bank, model.params,
                              model.config.kernel_reading);
}

void WriteEntropyCsv(std::ostream& out, const EntropyReport& report) {
  out << "tree_id,kernel_entropy,dot_product_entropy\n";
  for (const TreeEntropy& row : report.per_tree) {
    out << row.tree_id << ',' << Fixed(row.kernel) << ',' << Fixed(row.dot_product)
        << '\n';
  }
  out << "mean," << Fixed(report.kernel_mean) << ',' << Fixed(report.dot_product_mean)
      << '\n';
}

std::vector<AblationRow> RunAblations(const Corpus& train, const Corpus& test,
                                      const TrainConfig& base,
                                      std::span<const std::string> names) {
  std::vector<AblationRow> rows;
  rows.push_back({"base", Evaluate(test, Train(train, base).model)});
  for (const std::string& name : names) {
    TrainConfig config = base;
    ApplyAblation(config, name);
    rows.push_back({name, Evaluate(test, Train(train, config).model)});
  }
  return rows;
}

void WriteAblationCsv(std::ostream& out, std::span<const AblationRow> rows) {
  out << "variant,article_precision,article_recall,article_f1,article_accuracy,"
         "sentence_precision,sentence_recall,sentence_f1,sentence_accuracy\n";
  for (const AblationRow& row : rows) {
    const Metrics& a = row.report.article;
    const Metrics& s = row.report.sentence;
    out << row.name << ',' << Fixed(a.precision, 4) << ',' << Fixed(a.recall, 4) << ','
        << Fixed(a.f1, 4) << ',' << Fixed(a.accuracy, 4) << ',' << Fixed(s.precision, 4)
        << ',' << Fixed(s.recall, 4) << ',' << Fixed(s.f1, 4) << ','
        << Fixed(s.accuracy, 4) << '\n';
  }
}

void WriteAblationSvg(std::ostream& out, std::span<const AblationRow> rows) {
  const int group = 70;
  const int bar = 24;
  const int height = 220;
  const int base_y = 180;
  const int plot_h = 150;
  const int width = 60 + group * static_cast<int>(rows.size()) + 20;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  out << "<line x1=\"50\" y1=\"" << base_y << "\" x2=\"" << width - 10 << "\" y2=\""
      << base_y << "\" stroke=\"black\"/>\n";
  out << "<text x=\"45\" y=\"" << base_y - plot_h << "\" text-anchor=\"end\">1.0</text>\n";
  out << "<text x=\"45\" y=\"" << base_y << "\" text-anchor=\"end\">0.0</text>\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int x = 60 + group * static_cast<int>(i);
    const double f1[2] = {rows[i].report.article.f1, rows[i].report.sentence.f1};
    const char* colors[2] = {"#4472c4", "#ed7d31"};
    for (int k = 0; k < 2; ++k) {
      const int h = static_cast<int>(std::lround(f1[k] * plot_h));
      out << "<rect x=\"" << x + k * bar << "\" y=\"" << base_y - h << "\" width=\""
          << bar - 2 << "\" height=\"" << h << "\" fill=\"" << colors[k] << "\"/>\n";
    }
    out << "<text x=\"" << x + bar << "\" y=\"" << base_y + 14
        << "\" text-anchor=\"middle\">" << XmlEscape(rows[i].name) << "</text>\n";
  }
  out << "<text x=\"60\" y=\"14\" fill=\"#4472c4\">article F1</text>\n";
  out << "<text x=\"140\" y=\"14\" fill=\"#ed7d31\">sentence F1</text>\n";
  out << "</svg>\n";
}

}  // namespace wsdms

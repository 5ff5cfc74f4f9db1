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

#include "wsdms/synthetic.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsdms/errors.h"
#include "wsdms/numerics.h"
#include "wsdms/random.h"

namespace wsdms {
namespace {

using Vec = std::vector<double>;

Vec Normalized(Vec v) {
  const double n = Norm(v);
  if (!(n > 0.0)) throw DegenerateInputError("generated a zero vector");
  for (double& x : v) x /= n;
  return v;
}

void Axpy(double a, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void ProjectOut(const Vec& unit, Vec& v) { Axpy(-Dot(unit, v), unit, v); }

// Random unit vector orthogonal to every vector in `basis` (assumed
// orthonormal) whenever the dimension leaves room.
Vec RandomDirection(Rng& rng, std::size_t dim, const std::vector<Vec>& basis) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec v = rng.NormalVector(dim);
    if (basis.size() < dim) {
      for (const Vec& b : basis) ProjectOut(b, v);
    } else {
      ProjectOut(basis.front(), v);
    }
    if (Norm(v) > 1e-6) return Normalized(std::move(v));
  }
  throw DegenerateInputError("could not draw a random direction");
}

Vec Perturbed(Rng& rng, Vec v, double scale) {
  if (scale > 0.0) {
    const double per_axis = scale / std::sqrt(static_cast<double>(v.size()));
    for (double& x : v) x += per_axis * rng.Normal();
  }
  return v;
}

enum class TreeKind { kRefuting, kSupportive, kNeutral };

ConversationTree MakeTree(Rng& rng, const SyntheticConfig& config,
                          const std::string& id, const Vec& center) {
  std::vector<Post> posts;
  for (std::size_t k = 0; k < config.posts_per_tree; ++k) {
    Post post;
    post.id = id + "p" + std::to_string(k);
    post.text = "reply " + std::to_string(k) + " in " + id;
    std::size_t parent = 0;
    if (k > 0) {
      parent = rng.Below(k);
      post.parent = posts[parent].id;
    }
    if (k > 0 && rng.Bernoulli(config.reshare_rate)) {
      post.embedding = posts[parent].embedding;
    } else {
      Vec v = Perturbed(rng, center, config.post_jitter);
      v = Perturbed(rng, std::move(v), config.noise);
      post.embedding = Tensor::Vector(Normalized(std::move(v)));
    }
    posts.push_back(std::move(post));
  }
  return ConversationTree(id, std::move(posts));
}

}  // namespace

void SyntheticConfig::Validate() const {
  if (num_articles < 1 || sentences_per_article < 1 || trees_per_article < 1 ||
      posts_per_tree < 1) {
    throw ConfigError("synthetic counts must all be >= 1");
  }
  if (dim < 2) throw ConfigError("synthetic dimension must be >= 2");
  if (!(misinform_rate > 0.0 && misinform_rate < 1.0)) {
    throw ConfigError("misinform rate must lie in (0, 1)");
  }
  if (!(noise >= 0.0)) throw ConfigError("noise must be non-negative");
  if (!(fake_fraction >= 0.0 && fake_fraction <= 1.0)) {
    throw ConfigError("fake fraction must lie in [0, 1]");
  }
  if (!(stance > 0.0)) throw ConfigError("stance strength must be positive");
  if (!(post_jitter >= 0.0) || !(reshare_rate >= 0.0 && reshare_rate < 1.0)) {
    throw ConfigError("post jitter and reshare rate out of range");
  }
}

Corpus GenerateSynthetic(const SyntheticConfig& config) {
  config.Validate();
  Rng rng(config.seed);
  const std::size_t d = config.dim;
  const double a = config.stance;

  Corpus corpus;
  corpus.dim = d;
  corpus.provenance.source = "synthetic";
  corpus.provenance.seed = config.seed;
  const Vec stance = Normalized(rng.NormalVector(d));
  corpus.provenance.stance_axis = stance;

  const auto num_fake = static_cast<std::size_t>(
      std::llround(config.fake_fraction * static_cast<double>(config.num_articles)));
  std::vector<unsigned char> is_fake(config.num_articles, 0);
  std::fill(is_fake.begin(), is_fake.begin() + static_cast<long>(num_fake), 1);
  rng.Shuffle(is_fake);

  const std::size_t n = config.sentences_per_article;
  const std::size_t m = config.trees_per_article;
  for (std::size_t ai = 0; ai < config.num_articles; ++ai) {
    Article article;
    article.id = "a" + std::to_string(ai);
    article.label = is_fake[ai] ? ArticleLabel::kFake : ArticleLabel::kReal;

    std::vector<Vec> topics;
    std::vector<Vec> basis = {stance};
    for (std::size_t i = 0; i < n; ++i) {
      topics.push_back(RandomDirection(rng, d, basis));
      basis.push_back(topics.back());
    }

    // At most one refuting tree per misinforming sentence fits in m trees.
    std::vector<bool> misinforming(n, false);
    if (is_fake[ai]) {
      std::size_t count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        misinforming[i] = rng.Bernoulli(config.misinform_rate);
        count += misinforming[i];
      }
      if (count == 0) misinforming[rng.Below(n)] = true;
      std::vector<std::size_t> flagged;
      for (std::size_t i = 0; i < n; ++i) {
        if (misinforming[i]) flagged.push_back(i);
      }
      rng.Shuffle(flagged);
      for (std::size_t k = m; k < flagged.size(); ++k) misinforming[flagged[k]] = false;
    }

    Vec title(d, 0.0);
    for (const Vec& t : topics) Axpy(1.0, t, title);
    article.title.text = "headline of article " + std::to_string(ai);
    article.title.embedding =
        Tensor::Vector(Normalized(Perturbed(rng, Normalized(title), config.noise)));

    for (std::size_t i = 0; i < n; ++i) {
      Vec s = topics[i];
      Axpy(a, stance, s);
      Sentence sentence;
      sentence.text = "claim " + std::to_string(i) + " of article " + std::to_string(ai);
      sentence.embedding =
          Tensor::Vector(Normalized(Perturbed(rng, Normalized(s), config.noise)));
      sentence.label = QuarantinedLabel(misinforming[i] ? SentenceLabel::kMisinforming
                                                        : SentenceLabel::kClean);
      article.sentences.push_back(std::move(sentence));
    }

    // Misinforming sentences claim trees first, then clean ones in order.
    std::vector<std::pair<std::size_t, TreeKind>> plan;
    for (std::size_t i = 0; i < n; ++i) {
      if (misinforming[i]) plan.emplace_back(i, TreeKind::kRefuting);
    }
    for (std::size_t i = 0; i < n && plan.size() < m; ++i) {
      if (misinforming[i]) continue;
      plan.emplace_back(i, rng.Bernoulli(0.5) ? TreeKind::kSupportive
                                              : TreeKind::kNeutral);
    }
    while (plan.size() < m) plan.emplace_back(rng.Below(n), TreeKind::kNeutral);
    rng.Shuffle(plan);

    for (std::size_t j = 0; j < plan.size(); ++j) {
      const auto [target, kind] = plan[j];
      Vec center = topics[target];
      if (kind == TreeKind::kRefuting) Axpy(-a, stance, center);
      if (kind == TreeKind::kSupportive) Axpy(a, stance, center);
      article.trees.push_back(MakeTree(rng, config,
                                       article.id + "t" + std::to_string(j),
                                       Normalized(std::move(center))));
    }
    corpus.articles.push_back(std::move(article));
  }
  ValidateCorpus(corpus);
  return corpus;
}

std::vector<std::vector<bool>> NearestEvidenceOracle(const Corpus& corpus,
                                                     double stance_strength) {
  const Vec& stance = corpus.provenance.stance_axis;
  if (stance.size() != corpus.dim) {
    throw ConfigError("oracle needs the generator's stance axis");
  }
  // Half of the stance component a/sqrt(1+a^2) of a unit tree centre.
  const double margin =
      0.5 * stance_strength / std::sqrt(1.0 + stance_strength * stance_strength);

  std::vector<std::vector<bool>> out;
  for (const Article& article : corpus.articles) {
    std::vector<Vec> means;
    for (const ConversationTree& tree : article.trees) {
      Vec mean(corpus.dim, 0.0);
      for (const Post& p : tree.posts()) {
        Axpy(1.0 / static_cast<double>(tree.size()),
             Vec(p.embedding.values().begin(), p.embedding.values().end()), mean);
      }
      means.push_back(std::move(mean));
    }
    std::vector<bool> flags;
    for (const Sentence& s : article.sentences) {
      Vec topic(s.embedding.values().begin(), s.embedding.values().end());
      ProjectOut(stance, topic);
      double best = -INFINITY;
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < means.size(); ++j) {
        Vec tree_topic = means[j];
        ProjectOut(stance, tree_topic);
        if (Norm(tree_topic) == 0.0 || Norm(topic) == 0.0) continue;
        const double c = CosineSimilarity(topic, tree_topic);
        if (c > best) {
          best = c;
          best_j = j;
        }
      }
      flags.push_back(!means.empty() && Dot(means[best_j], stance) < -margin);
    }
    out.push_back(std::move(flags));
  }
  return out;
}

}  // namespace wsdms

// src/spkfilter/reduce.cpp

// Copyright 2026 The corpusforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "corpusforge/spkfilter/reduce.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "corpusforge/util/error.hpp"
#include "corpusforge/util/rng.hpp"

namespace corpusforge::spkfilter {

std::string reducer_name(Reducer r) {
  return r == Reducer::kPca ? "pca" : "tsne";
}

Reducer reducer_from_name(const std::string& name) {
  if (name == "pca") return Reducer::kPca;
  if (name == "tsne") return Reducer::kTsne;
  raise("unknown reducer '{}' (expected pca or tsne)", name);
}

namespace {

Eigen::MatrixXd to_matrix(const EmbeddingSet& set) {
  const auto n = static_cast<Eigen::Index>(set.count());
  const auto d = static_cast<Eigen::Index>(set.dim);
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      x(i, j) = static_cast<double>(set.row(i)[j]);
  return x;
}

Reduced2d reduce_pca(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  require(solver.info() == Eigen::Success, "PCA eigendecomposition failed");

  // Eigenvalues come out ascending; the last two columns are the top axes.
  Eigen::MatrixXd axes(x.cols(), 2);
  axes.col(0) = solver.eigenvectors().col(x.cols() - 1);
  axes.col(1) = solver.eigenvectors().col(x.cols() - 2);
  for (int a = 0; a < 2; ++a) {
    Eigen::Index biggest = 0;
    axes.col(a).cwiseAbs().maxCoeff(&biggest);
    if (axes(biggest, a) < 0.0) axes.col(a) = -axes.col(a);
  }

  Eigen::MatrixXd projected = centered * axes;
  Reduced2d out;
  out.reducer = Reducer::kPca;
  out.points.resize(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    out.points[static_cast<size_t>(i)] = {projected(i, 0), projected(i, 1)};
  return out;
}

// Per-point precision calibration: binary search beta so the conditional
// distribution's perplexity matches the target.
Eigen::MatrixXd conditional_affinities(const Eigen::MatrixXd& d2,
                                       double perplexity) {
  const Eigen::Index n = d2.rows();
  const double target_entropy = std::log(perplexity);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double beta = 1.0, beta_lo = 0.0, beta_hi = 1e300;
    Eigen::VectorXd row(n);
    for (int it = 0; it < 64; ++it) {
      double sum = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        row(j) = j == i ? 0.0 : std::exp(-beta * d2(i, j));
        sum += row(j);
      }
      if (sum <= 0.0) {
        row.setConstant(1.0 / static_cast<double>(n - 1));
        row(i) = 0.0;
        break;
      }
      // H = log(sum) + beta * E[d2]
      double weighted = 0.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) weighted += row(j) * d2(i, j);
      double entropy = std::log(sum) + beta * weighted / sum;
      row /= sum;
      if (std::abs(entropy - target_entropy) < 1e-5) break;
      if (entropy > target_entropy) {
        beta_lo = beta;
        beta = beta_hi >= 1e300 ? beta * 2.0 : (beta + beta_hi) / 2.0;
      } else {
        beta_hi = beta;
        beta = (beta + beta_lo) / 2.0;
      }
    }
    p.row(i) = row;
  }
  return p;
}

Reduced2d reduce_tsne(const Eigen::MatrixXd& x, const TsneConfig& cfg) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd d2(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d2(i, j) = (x.row(i) - x.row(j)).squaredNorm();

  Reduced2d out;
  out.reducer = Reducer::kTsne;
  out.points.assign(static_cast<size_t>(n), {0.0, 0.0});
  if (d2.maxCoeff() < 1e-12) {
    out.degenerate = true;  // identical rows: nothing to embed
    return out;
  }

  double perplexity =
      std::min(cfg.perplexity, static_cast<double>(n - 1) / 3.0);
  perplexity = std::max(perplexity, 1.0 + 1e-9);
  Eigen::MatrixXd p = conditional_affinities(d2, perplexity);
  p = (p + p.transpose()) / (2.0 * static_cast<double>(n));
  p = p.cwiseMax(1e-12);

  Rng rng(cfg.seed);
  Eigen::MatrixXd y(n, 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int a = 0; a < 2; ++a) y(i, a) = rng.next_gaussian() * 1e-4;

  Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(n, 2);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, 2);
  const int exaggeration_iters = std::min(250, cfg.iters / 2);
  const double learning_rate = 200.0;

  for (int iter = 0; iter < cfg.iters; ++iter) {
    double exaggeration = iter < exaggeration_iters ? 12.0 : 1.0;
    double momentum = iter < 250 ? 0.5 : 0.8;

    // Student-t affinities in the embedding.
    Eigen::MatrixXd num(n, n);
    double qsum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      num(i, i) = 0.0;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        double w = 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
        num(i, j) = w;
        num(j, i) = w;
        qsum += 2.0 * w;
      }
    }
    qsum = std::max(qsum, 1e-12);

    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        double q = num(i, j) / qsum;
        double mult = (exaggeration * p(i, j) - q) * num(i, j);
        grad.row(i) += 4.0 * mult * (y.row(i) - y.row(j));
      }
    }

    for (Eigen::Index i = 0; i < n; ++i) {
      for (int a = 0; a < 2; ++a) {
        bool same_sign = (grad(i, a) > 0.0) == (velocity(i, a) > 0.0);
        gains(i, a) = same_sign ? std::max(gains(i, a) * 0.8, 0.01)
                                : gains(i, a) + 0.2;
        velocity(i, a) = momentum * velocity(i, a) -
                         learning_rate * gains(i, a) * grad(i, a);
      }
    }
    y += velocity;
    y.rowwise() -= y.colwise().mean();
  }

  for (Eigen::Index i = 0; i < n; ++i)
    out.points[static_cast<size_t>(i)] = {y(i, 0), y(i, 1)};
  return out;
}

}  // namespace

Reduced2d reduce_2d(const EmbeddingSet& set, const ReduceConfig& cfg) {
  require(set.count() >= 3,
          "insufficient utterances: {} rows, need at least 3", set.count());
  require(set.dim >= 2, "embedding dimension must be at least 2");
  Eigen::MatrixXd x = to_matrix(set);
  if (cfg.reducer == Reducer::kPca) return reduce_pca(x);
  return reduce_tsne(x, cfg.tsne);
}

}  // namespace corpusforge::spkfilter

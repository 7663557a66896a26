#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace aescap {

// One regression head: n samples of dim-dimensional scores, row-major.
struct HeadBatch {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> predicted;
  std::vector<double> truth;

  double& pred(std::size_t i, std::size_t d) { return predicted[i * dim + d]; }
  double pred(std::size_t i, std::size_t d) const { return predicted[i * dim + d]; }
};

// Predicted and true scores for a batch: m attribute heads, one global head
// and one object head, plus the non-negative aesthetic-bias coefficient of
// the object term.
struct LossBatch {
  std::vector<HeadBatch> attributes;
  HeadBatch global;
  HeadBatch object;
  double aesthetic_bias = 0.0;

  std::size_t attribute_count() const { return attributes.size(); }
  std::size_t batch_size() const { return global.n; }

  // Throws DataError on shape mismatch, empty batch or negative bias.
  void validate() const;
};

struct LossOptions {
  bool include_object = false;
  // The object term is written without the 1/2N factor; this flag applies
  // it for consistency experiments.
  bool normalized_object = false;
};

// (1/2N) sum_i ||pred_i - true_i||^2 over attribute head j.
double attribute_loss(const LossBatch& batch, std::size_t j);
// Same calculation over the global head.
double global_loss(const LossBatch& batch);
// aesthetic_bias * sum_i ||pred_i - true_i||^2 (1/2N applied when
// normalized).
double object_loss(const LossBatch& batch, bool normalized = false);
// Sum of the m attribute losses and the global loss, plus the object loss
// when included.
double total_loss(const LossBatch& batch, const LossOptions& options = {});

// d total_loss / d predicted, per head, same shapes as the batch.
struct BatchGradients {
  std::vector<std::vector<double>> attributes;
  std::vector<double> global;
  std::vector<double> object;
};

BatchGradients gradients(const LossBatch& batch, const LossOptions& options = {});

// Central-difference verification of the analytic gradients. Only evaluates
// the loss, never the analytic path. Relative error per coordinate is
// |analytic - fd| / max(1, |analytic|, |fd|).
struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t coordinates = 0;
};

GradCheckResult finite_difference_check(const LossBatch& batch, const LossOptions& options = {},
                                        double step = 1e-5);

// Deterministic batch with scores uniform in [lo, hi], fully determined by
// the seed.
LossBatch random_batch(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t dims,
                       double aesthetic_bias, double lo = 0.0, double hi = 10.0);

}  // namespace aescap

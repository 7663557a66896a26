#include "aescap/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aescap/errors.hpp"
#include "aescap/sampling.hpp"

namespace aescap {

namespace {

void validate_head(const HeadBatch& head, std::size_t n, const std::string& name) {
  if (head.n != n)
    throw DataError("loss batch: head '" + name + "' has batch size " + std::to_string(head.n) +
                    ", expected " + std::to_string(n));
  if (head.dim == 0) throw DataError("loss batch: head '" + name + "' has zero dimension");
  const std::size_t want = head.n * head.dim;
  if (head.predicted.size() != want || head.truth.size() != want)
    throw DataError("loss batch: head '" + name + "' shape mismatch");
}

double sum_squared_error(const HeadBatch& head) {
  double sum = 0.0;
  for (std::size_t i = 0; i < head.predicted.size(); ++i) {
    const double d = head.predicted[i] - head.truth[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

void LossBatch::validate() const {
  if (attributes.empty()) throw DataError("loss batch: needs at least one attribute head");
  const std::size_t n = global.n;
  if (n == 0) throw DataError("loss batch: batch size must be >= 1");
  for (std::size_t j = 0; j < attributes.size(); ++j)
    validate_head(attributes[j], n, "attribute " + std::to_string(j));
  validate_head(global, n, "global");
  validate_head(object, n, "object");
  if (aesthetic_bias < 0.0) throw DataError("loss batch: aesthetic_bias must be >= 0");
}

double attribute_loss(const LossBatch& batch, std::size_t j) {
  if (j >= batch.attributes.size()) throw DataError("attribute_loss: head index out of range");
  const HeadBatch& head = batch.attributes[j];
  return 0.5 * sum_squared_error(head) / static_cast<double>(head.n);
}

double global_loss(const LossBatch& batch) {
  return 0.5 * sum_squared_error(batch.global) / static_cast<double>(batch.global.n);
}

double object_loss(const LossBatch& batch, bool normalized) {
  const double sse = sum_squared_error(batch.object);
  if (normalized) return batch.aesthetic_bias * 0.5 * sse / static_cast<double>(batch.object.n);
  return batch.aesthetic_bias * sse;
}

double total_loss(const LossBatch& batch, const LossOptions& options) {
  double loss = 0.0;
  for (std::size_t j = 0; j < batch.attributes.size(); ++j) loss += attribute_loss(batch, j);
  loss += global_loss(batch);
  if (options.include_object) loss += object_loss(batch, options.normalized_object);
  return loss;
}

namespace {

std::vector<double> head_gradient(const HeadBatch& head, double scale) {
  std::vector<double> grad(head.predicted.size());
  for (std::size_t i = 0; i < grad.size(); ++i)
    grad[i] = scale * (head.predicted[i] - head.truth[i]);
  return grad;
}

}  // namespace

BatchGradients gradients(const LossBatch& batch, const LossOptions& options) {
  BatchGradients out;
  out.attributes.reserve(batch.attributes.size());
  for (const auto& head : batch.attributes)
    out.attributes.push_back(head_gradient(head, 1.0 / static_cast<double>(head.n)));
  out.global = head_gradient(batch.global, 1.0 / static_cast<double>(batch.global.n));
  if (options.include_object) {
    const double scale =
        options.normalized_object
            ? batch.aesthetic_bias / static_cast<double>(batch.object.n)
            : 2.0 * batch.aesthetic_bias;
    out.object = head_gradient(batch.object, scale);
  } else {
    out.object.assign(batch.object.predicted.size(), 0.0);
  }
  return out;
}

GradCheckResult finite_difference_check(const LossBatch& batch, const LossOptions& options,
                                        double step) {
  batch.validate();
  const BatchGradients analytic = gradients(batch, options);
  LossBatch probe = batch;

  GradCheckResult result;
  const auto check_coord = [&](std::vector<double>& coords, std::size_t i, double analytic_g) {
    const double saved = coords[i];
    coords[i] = saved + step;
    const double up = total_loss(probe, options);
    coords[i] = saved - step;
    const double down = total_loss(probe, options);
    coords[i] = saved;
    const double fd = (up - down) / (2.0 * step);
    const double denom = std::max({1.0, std::abs(analytic_g), std::abs(fd)});
    result.max_rel_error = std::max(result.max_rel_error, std::abs(analytic_g - fd) / denom);
    ++result.coordinates;
  };

  for (std::size_t j = 0; j < probe.attributes.size(); ++j)
    for (std::size_t i = 0; i < probe.attributes[j].predicted.size(); ++i)
      check_coord(probe.attributes[j].predicted, i, analytic.attributes[j][i]);
  for (std::size_t i = 0; i < probe.global.predicted.size(); ++i)
    check_coord(probe.global.predicted, i, analytic.global[i]);
  for (std::size_t i = 0; i < probe.object.predicted.size(); ++i)
    check_coord(probe.object.predicted, i, analytic.object[i]);
  return result;
}

LossBatch random_batch(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t dims,
                       double aesthetic_bias, double lo, double hi) {
  if (n == 0 || m == 0 || dims == 0)
    throw DataError("random_batch: n, m and dims must all be >= 1");
  std::mt19937_64 rng(seed);
  const auto fill_head = [&](HeadBatch& head) {
    head.n = n;
    head.dim = dims;
    head.predicted.resize(n * dims);
    head.truth.resize(n * dims);
    for (auto& v : head.predicted) v = uniform_real(rng, lo, hi);
    for (auto& v : head.truth) v = uniform_real(rng, lo, hi);
  };
  LossBatch batch;
  batch.attributes.resize(m);
  for (auto& head : batch.attributes) fill_head(head);
  fill_head(batch.global);
  fill_head(batch.object);
  batch.aesthetic_bias = aesthetic_bias;
  return batch;
}

}  // namespace aescap

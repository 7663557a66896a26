#include <doctest.h>

#include <cmath>

#include "aescap/errors.hpp"
#include "aescap/loss.hpp"

using namespace aescap;

namespace {

HeadBatch head_of(std::size_t n, std::size_t dim, std::vector<double> predicted,
                  std::vector<double> truth) {
  HeadBatch h;
  h.n = n;
  h.dim = dim;
  h.predicted = std::move(predicted);
  h.truth = std::move(truth);
  return h;
}

// One attribute head + global + object, single sample.
LossBatch simple_batch() {
  LossBatch batch;
  batch.attributes.push_back(head_of(1, 2, {3.0, 4.0}, {0.0, 0.0}));
  batch.global = head_of(1, 2, {1.0, 1.0}, {1.0, 1.0});
  batch.object = head_of(1, 2, {1.0, 1.0}, {0.0, 0.0});
  batch.aesthetic_bias = 1.0;
  return batch;
}

}  // namespace

TEST_SUITE("loss") {

TEST_CASE("exact predictions give zero loss and zero gradients") {
  LossBatch batch;
  batch.attributes.push_back(head_of(2, 3, {1, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5, 6}));
  batch.global = head_of(2, 1, {7, 8}, {7, 8});
  batch.object = head_of(2, 1, {9, 9}, {9, 9});
  batch.aesthetic_bias = 2.5;
  CHECK(attribute_loss(batch, 0) == 0.0);
  CHECK(global_loss(batch) == 0.0);
  CHECK(object_loss(batch) == 0.0);
  CHECK(total_loss(batch, {.include_object = true}) == 0.0);
  const auto grads = gradients(batch, {.include_object = true});
  for (double g : grads.attributes[0]) CHECK(g == 0.0);
  for (double g : grads.global) CHECK(g == 0.0);
  for (double g : grads.object) CHECK(g == 0.0);
}

TEST_CASE("half mean squared error: residual (3,4) gives 12.5") {
  const LossBatch batch = simple_batch();
  CHECK(attribute_loss(batch, 0) == 12.5);
  CHECK(global_loss(batch) == 0.0);
}

TEST_CASE("duplicating every sample leaves the loss unchanged") {
  LossBatch batch;
  batch.attributes.push_back(head_of(2, 2, {3, 4, 1, 0}, {0, 0, 0, 1}));
  batch.global = head_of(2, 1, {2, 5}, {1, 1});
  batch.object = head_of(2, 1, {0, 0}, {0, 0});
  batch.aesthetic_bias = 0.0;

  LossBatch doubled;
  doubled.attributes.push_back(head_of(4, 2, {3, 4, 1, 0, 3, 4, 1, 0}, {0, 0, 0, 1, 0, 0, 0, 1}));
  doubled.global = head_of(4, 1, {2, 5, 2, 5}, {1, 1, 1, 1});
  doubled.object = head_of(4, 1, {0, 0, 0, 0}, {0, 0, 0, 0});
  doubled.aesthetic_bias = 0.0;

  CHECK(attribute_loss(batch, 0) == attribute_loss(doubled, 0));
  CHECK(global_loss(batch) == global_loss(doubled));
}

TEST_CASE("object loss: zero bias kills the term, unit bias sums squares") {
  LossBatch batch = simple_batch();
  batch.aesthetic_bias = 0.0;
  CHECK(object_loss(batch) == 0.0);
  batch.aesthetic_bias = 1.0;
  CHECK(object_loss(batch) == 2.0);  // residual (1,1), no 1/2N factor
  CHECK(object_loss(batch, /*normalized=*/true) == 1.0);
}

TEST_CASE("object loss scales linearly in the bias") {
  LossBatch batch = simple_batch();
  batch.aesthetic_bias = 1.0;
  const double base = object_loss(batch);
  for (double c : {2.0, 7.0, 0.25}) {
    batch.aesthetic_bias = c;
    CHECK(object_loss(batch) == c * base);
  }
}

TEST_CASE("total loss adds component losses") {
  // loss 1.5 = (1/2) * 3 ones; loss 2.5 = (1/2) * 5 ones; global 1.0
  LossBatch batch;
  batch.attributes.push_back(head_of(1, 3, {1, 1, 1}, {0, 0, 0}));
  batch.attributes.push_back(head_of(1, 5, {1, 1, 1, 1, 1}, {0, 0, 0, 0, 0}));
  batch.global = head_of(1, 2, {1, 1}, {0, 0});
  batch.object = head_of(1, 1, {0}, {0});
  batch.aesthetic_bias = 0.0;
  CHECK(attribute_loss(batch, 0) == 1.5);
  CHECK(attribute_loss(batch, 1) == 2.5);
  CHECK(global_loss(batch) == 1.0);
  CHECK(total_loss(batch) == 5.0);
}

TEST_CASE("object-inclusive total equals base total plus object term") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const LossBatch batch = random_batch(seed, 5, 3, 2, 0.7);
    const double combined = total_loss(batch, {.include_object = true});
    const double split = total_loss(batch) + object_loss(batch);
    CHECK(std::abs(combined - split) <= 1e-12);
  }
}

TEST_CASE("analytic gradients match a hand-rolled central difference") {
  // independent oracle: local finite differences, not the library checker
  LossBatch batch;
  batch.attributes.push_back(head_of(2, 2, {3, 4, 1, 0}, {0, 1, 2, 2}));
  batch.global = head_of(2, 1, {2, 5}, {1, 1});
  batch.object = head_of(2, 1, {4, 1}, {3, 3});
  batch.aesthetic_bias = 0.8;
  const LossOptions options{.include_object = true};
  const auto grads = gradients(batch, options);

  const double h = 1e-5;
  const auto fd_at = [&](std::vector<double>& coords, std::size_t i) {
    const double saved = coords[i];
    coords[i] = saved + h;
    const double up = total_loss(batch, options);
    coords[i] = saved - h;
    const double down = total_loss(batch, options);
    coords[i] = saved;
    return (up - down) / (2 * h);
  };
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::abs(grads.attributes[0][i] - fd_at(batch.attributes[0].predicted, i)) < 1e-6);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(std::abs(grads.global[i] - fd_at(batch.global.predicted, i)) < 1e-6);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(std::abs(grads.object[i] - fd_at(batch.object.predicted, i)) < 1e-6);
}

TEST_CASE("library gradient check stays under 1e-6 on random batches") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    const LossBatch batch = random_batch(seed, 6, 4, 3, 1.3);
    for (bool normalized : {false, true}) {
      const auto result = finite_difference_check(
          batch, {.include_object = true, .normalized_object = normalized});
      CHECK(result.max_rel_error < 1e-6);
      CHECK(result.coordinates == 6 * 3 * (4 + 2));
    }
  }
}

TEST_CASE("permuting samples leaves every loss unchanged") {
  LossBatch batch = random_batch(21, 4, 2, 3, 0.5);
  LossBatch permuted = batch;
  // swap samples 0 and 3 in every head
  const auto swap_rows = [](HeadBatch& h, std::size_t a, std::size_t b) {
    for (std::size_t d = 0; d < h.dim; ++d) {
      std::swap(h.predicted[a * h.dim + d], h.predicted[b * h.dim + d]);
      std::swap(h.truth[a * h.dim + d], h.truth[b * h.dim + d]);
    }
  };
  for (auto& head : permuted.attributes) swap_rows(head, 0, 3);
  swap_rows(permuted.global, 0, 3);
  swap_rows(permuted.object, 0, 3);
  CHECK(total_loss(batch, {.include_object = true}) ==
        total_loss(permuted, {.include_object = true}));
}

TEST_CASE("losses are non-negative and zero only at exact prediction") {
  const LossBatch batch = random_batch(33, 3, 2, 2, 0.9);
  CHECK(total_loss(batch, {.include_object = true}) > 0.0);
  CHECK(attribute_loss(batch, 0) >= 0.0);
  CHECK(object_loss(batch) >= 0.0);
}

TEST_CASE("shape mismatches are fatal") {
  LossBatch batch = simple_batch();
  batch.attributes[0].truth.pop_back();
  CHECK_THROWS_AS(batch.validate(), DataError);

  LossBatch bad_bias = simple_batch();
  bad_bias.aesthetic_bias = -0.1;
  CHECK_THROWS_AS(bad_bias.validate(), DataError);

  LossBatch mixed = simple_batch();
  mixed.global.n = 2;
  CHECK_THROWS_AS(mixed.validate(), DataError);

  CHECK_THROWS_AS(attribute_loss(simple_batch(), 5), DataError);
}

}  // TEST_SUITE

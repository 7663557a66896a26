#include <doctest.h>

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "aescap/corpus_io.hpp"
#include "aescap/errors.hpp"
#include "aescap/pipeline.hpp"
#include "aescap/sampling.hpp"
#include "fixtures.hpp"

using namespace aescap;
using aescap::testing::make_fixture_corpora;
using aescap::testing::temp_dir;

namespace {

PipelineConfig fixture_config(const aescap::testing::FixturePaths& paths,
                              const std::filesystem::path& out_dir) {
  PipelineConfig cfg;
  cfg.fully_annotated = paths.fully_annotated;
  cfg.weakly_annotated = paths.weakly_annotated;
  cfg.negatives = paths.negatives;
  cfg.out_dir = out_dir;
  cfg.lexicon_k = 60;
  cfg.top_fraction = 0.75;
  cfg.seed = 20240801;
  cfg.workers = 1;
  return cfg;
}

std::vector<std::string> artifact_checksums(const PipelineResult& result) {
  return {file_checksum(result.canonical_fully_annotated),
          file_checksum(result.canonical_weakly_annotated),
          file_checksum(result.canonical_negatives),
          file_checksum(result.lexicon_csv),
          file_checksum(result.classifier_model),
          file_checksum(result.scored),
          file_checksum(result.dataset),
          file_checksum(result.stats),
          file_checksum(result.manifest)};
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("negative sampling: whole corpus when n equals the population") {
  const auto all = sample_without_replacement(50, 50, 9);
  REQUIRE(all.size() == 50);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
}

TEST_CASE("negative sampling is seed-deterministic") {
  CHECK(sample_without_replacement(1000, 100, 42) == sample_without_replacement(1000, 100, 42));
}

TEST_CASE("different seeds draw different samples") {
  const auto a = sample_without_replacement(100, 50, 1);
  const auto b = sample_without_replacement(100, 50, 2);
  std::set<std::size_t> sa(a.begin(), a.end());
  std::size_t overlap = 0;
  for (const auto i : b) overlap += sa.contains(i) ? 1 : 0;
  CHECK(overlap < 50);  // loose: not the identical sample
}

TEST_CASE("sampling more than the population is fatal") {
  CHECK_THROWS_AS(sample_without_replacement(10, 11, 0), DataError);
}

TEST_CASE("end-to-end fixture run produces a consistent dataset") {
  const auto dir = temp_dir("pipeline_run");
  const auto paths = make_fixture_corpora(dir / "corpora", 515);
  REQUIRE(paths.weak_comments >= 200);
  REQUIRE(paths.weak_images >= 30);

  const auto cfg = fixture_config(paths, dir / "out");
  const PipelineResult result = run_pipeline(cfg);

  const auto dataset = read_dataset(result.dataset);
  REQUIRE_FALSE(dataset.empty());
  for (const auto& rec : dataset) {
    CHECK(rec.references.size() >= cfg.min_refs);
    CHECK(1 + rec.references.size() <= 5);
    for (std::size_t i = 1; i < rec.weights.size(); ++i)
      CHECK(rec.weights[0] >= rec.weights[i]);
  }

  // manifest reconciliation: every weak comment has exactly one fate
  std::ifstream in(result.manifest);
  const auto manifest = nlohmann::json::parse(in);
  const auto& fates = manifest["stages"]["assemble"]["fates"];
  std::uint64_t accounted = 0;
  for (const auto& [key, value] : fates.items()) {
    (void)key;
    accounted += value.get<std::uint64_t>();
  }
  CHECK(accounted == manifest["stages"]["score"]["comments"].get<std::uint64_t>());
  CHECK(manifest["reconciliation"]["weak_comments_in"] == manifest["stages"]["score"]["comments"]);
  // both screening passes and the length screen all fired
  CHECK(fates["emitted"].get<std::uint64_t>() > 0);
  CHECK(fates["failed_rank"].get<std::uint64_t>() > 0);
  CHECK(fates["failed_classifier"].get<std::uint64_t>() > 0);
  CHECK(fates["failed_length"].get<std::uint64_t>() > 0);
  // ingest recorded the two malformed weak lines
  CHECK(manifest["stages"]["ingest"]["weakly_annotated"]["malformed"].get<std::uint64_t>() == 2);

  // with the rank cut wide open, nothing fails rank and the camera-jargon
  // comments surface as unassignable
  auto generous = fixture_config(paths, dir / "out_generous");
  generous.top_fraction.reset();  // default top_n exceeds the corpus size
  const PipelineResult wide = run_pipeline(generous);
  std::ifstream wide_in(wide.manifest);
  const auto wide_manifest = nlohmann::json::parse(wide_in);
  const auto& wide_fates = wide_manifest["stages"]["assemble"]["fates"];
  CHECK(wide_fates["failed_rank"].get<std::uint64_t>() == 0);
  CHECK(wide_fates["no_attribute"].get<std::uint64_t>() > 0);
}

TEST_CASE("reruns and worker counts do not change a single output byte") {
  const auto dir = temp_dir("pipeline_determinism");
  const auto paths = make_fixture_corpora(dir / "corpora", 616);

  auto cfg1 = fixture_config(paths, dir / "out1");
  const auto sums1 = artifact_checksums(run_pipeline(cfg1));

  auto cfg2 = fixture_config(paths, dir / "out2");
  const auto sums2 = artifact_checksums(run_pipeline(cfg2));
  CHECK(sums1 == sums2);

  auto cfg4 = fixture_config(paths, dir / "out4");
  cfg4.workers = 4;
  const auto sums4 = artifact_checksums(run_pipeline(cfg4));
  CHECK(sums1 == sums4);
}

TEST_CASE("a missing input halts with the stage name") {
  const auto dir = temp_dir("pipeline_missing");
  const auto paths = make_fixture_corpora(dir / "corpora", 717);
  auto cfg = fixture_config(paths, dir / "out");
  cfg.weakly_annotated = dir / "corpora" / "does_not_exist.jsonl";
  CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("config"), StageError);
}

TEST_CASE("a failing stage leaves stale markers, not half-written artifacts") {
  const auto dir = temp_dir("pipeline_stale");
  const auto paths = make_fixture_corpora(dir / "corpora", 818);
  auto cfg = fixture_config(paths, dir / "out");
  cfg.negative_count = paths.negative_comments + 1000;  // classifier stage must fail
  CHECK_THROWS_AS(run_pipeline(cfg), StageError);
  CHECK(std::filesystem::exists(cfg.out_dir / "canonical_weakly_annotated.jsonl"));
  CHECK_FALSE(std::filesystem::exists(cfg.out_dir / "classifier.json"));
  CHECK_FALSE(std::filesystem::exists(cfg.out_dir / "dataset.jsonl"));
  for (const auto& entry : std::filesystem::directory_iterator(cfg.out_dir))
    CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("per-attribute rank mode still reconciles") {
  const auto dir = temp_dir("pipeline_per_attr");
  const auto paths = make_fixture_corpora(dir / "corpora", 919);
  auto cfg = fixture_config(paths, dir / "out");
  cfg.per_attribute_rank = true;
  cfg.top_fraction.reset();
  cfg.top_n = 60;
  const PipelineResult result = run_pipeline(cfg);
  std::ifstream in(result.manifest);
  const auto manifest = nlohmann::json::parse(in);
  std::uint64_t accounted = 0;
  for (const auto& [key, value] : manifest["stages"]["assemble"]["fates"].items()) {
    (void)key;
    accounted += value.get<std::uint64_t>();
  }
  CHECK(accounted == manifest["stages"]["score"]["comments"].get<std::uint64_t>());
}

}  // TEST_SUITE

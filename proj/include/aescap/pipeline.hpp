#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "aescap/filter.hpp"

namespace aescap {

// Everything a full run needs. Stages communicate only via files under
// out_dir, so each screening pass can be audited and rerun in isolation.
struct PipelineConfig {
  std::filesystem::path fully_annotated;
  std::filesystem::path weakly_annotated;
  std::filesystem::path negatives;
  std::filesystem::path out_dir;

  std::size_t lexicon_k = 1000;
  BowVariant variant = BowVariant::Count;
  std::size_t top_n = 100000;
  std::optional<double> top_fraction;  // overrides top_n when set
  bool per_attribute_rank = false;     // experimental
  double threshold = 0.5;
  double alpha = 1.0;
  std::optional<std::size_t> negative_count;  // default: number of positives
  std::size_t min_refs = 3;
  std::size_t min_tokens = 5;
  std::size_t max_tokens = 30;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  std::filesystem::path norm_config;   // builtin lists when empty
  std::filesystem::path split_config;  // builtin partition when empty
};

struct PipelineResult {
  std::filesystem::path canonical_fully_annotated;
  std::filesystem::path canonical_weakly_annotated;
  std::filesystem::path canonical_negatives;
  std::filesystem::path lexicon_csv;
  std::filesystem::path classifier_model;
  std::filesystem::path scored;
  std::filesystem::path dataset;
  std::filesystem::path stats;
  std::filesystem::path manifest;
};

// Runs ingest -> lexicon -> classifier -> score -> assemble -> stats and
// writes a run manifest. Identical config and inputs yield bit-identical
// artifacts regardless of worker count. A stage failure halts the run with
// the stage name; partial files are renamed *.stale.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace aescap

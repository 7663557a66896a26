#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aescap/textnorm.hpp"
#include "aescap/types.hpp"

namespace aescap {

struct EvalPair {
  TokenizedText candidate;
  std::vector<TokenizedText> references;
  AttributeV2 attribute = AttributeV2::Composition;
};

enum class BleuSmoothing {
  None,
  // Adds 1 to numerator and denominator of zero precisions for n >= 2.
  AddOne,
};

// Clipped n-gram match statistics, additive across pairs, so corpus-level
// BLEU of one pair equals its sentence BLEU.
struct BleuStats {
  std::array<std::uint64_t, 4> match{};
  std::array<std::uint64_t, 4> total{};
  std::uint64_t candidate_len = 0;
  std::uint64_t reference_len = 0;  // closest reference length, ties -> shorter

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats bleu_stats(const TokenizedText& candidate, std::span<const TokenizedText> references);
double bleu_score(const BleuStats& stats, BleuSmoothing smoothing);

// Geometric mean of modified 1..4-gram precisions against the references,
// times the brevity penalty. An empty candidate scores 0.
double bleu4(const EvalPair& pair, BleuSmoothing smoothing);

// F1 over proposition sets: content unigrams plus adjacent content-word
// bigrams after bow-scoring normalization. Returns 0 when either
// proposition set is empty.
double spice_lite(const EvalPair& pair, const NormalizationConfig& cfg);

struct AttributeMetrics {
  std::uint64_t pairs = 0;
  double bleu4 = 0.0;  // fraction in [0,1]
  double spice = 0.0;  // fraction in [0,1]
};

struct MetricReport {
  std::map<AttributeV2, AttributeMetrics> per_attribute;
  AttributeMetrics overall;
  std::vector<std::string> notes;
};

struct EvaluateOptions {
  BleuSmoothing smoothing = BleuSmoothing::AddOne;
  // Corpus-level aggregation is the default; per-sentence mean by flag.
  bool sentence_level_bleu = false;
};

MetricReport evaluate_corpus(std::span<const EvalPair> pairs, const NormalizationConfig& cfg,
                             const EvaluateOptions& options);

// Table with columns Method/Attribute/BLEU4/SPICE; BLEU reported as
// percent, SPICE as a fraction, with units labeled.
std::string render_metric_table(const MetricReport& report, const std::string& method);

}  // namespace aescap

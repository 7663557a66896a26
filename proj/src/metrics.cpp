#include "aescap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_map>

namespace aescap {

namespace {

// n-grams keyed by tokens joined with a separator that cannot occur inside
// a token.
constexpr char kSep = '\x1f';

std::unordered_map<std::string, std::uint64_t> ngram_counts(const std::vector<std::string>& tokens,
                                                            std::size_t n) {
  std::unordered_map<std::string, std::uint64_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t j = 1; j < n; ++j) {
      key.push_back(kSep);
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t n = 0; n < 4; ++n) {
    match[n] += other.match[n];
    total[n] += other.total[n];
  }
  candidate_len += other.candidate_len;
  reference_len += other.reference_len;
  return *this;
}

BleuStats bleu_stats(const TokenizedText& candidate, std::span<const TokenizedText> references) {
  BleuStats stats;
  const std::size_t c = candidate.tokens.size();
  stats.candidate_len = c;

  // Effective reference length: closest to the candidate, ties broken by
  // the shorter reference.
  std::uint64_t best_len = 0;
  bool first = true;
  for (const auto& ref : references) {
    const std::uint64_t r = ref.tokens.size();
    if (first) {
      best_len = r;
      first = false;
      continue;
    }
    const auto dist = [&](std::uint64_t len) {
      return len > c ? len - c : c - len;
    };
    if (dist(r) < dist(best_len) || (dist(r) == dist(best_len) && r < best_len)) best_len = r;
  }
  stats.reference_len = best_len;

  for (std::size_t n = 1; n <= 4; ++n) {
    const auto cand_counts = ngram_counts(candidate.tokens, n);
    std::unordered_map<std::string, std::uint64_t> max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : ngram_counts(ref.tokens, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    std::uint64_t clipped = 0;
    std::uint64_t total = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      const auto it = max_ref.find(gram);
      if (it != max_ref.end()) clipped += std::min(count, it->second);
    }
    stats.match[n - 1] = clipped;
    stats.total[n - 1] = total;
  }
  return stats;
}

double bleu_score(const BleuStats& stats, BleuSmoothing smoothing) {
  if (stats.candidate_len == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    std::uint64_t num = stats.match[n];
    std::uint64_t den = stats.total[n];
    if (num == 0 || den == 0) {
      if (smoothing == BleuSmoothing::AddOne && n >= 1) {
        num += 1;
        den += 1;
      } else {
        return 0.0;
      }
    }
    log_sum += 0.25 * std::log(static_cast<double>(num) / static_cast<double>(den));
  }
  double brevity = 1.0;
  if (stats.candidate_len < stats.reference_len)
    brevity = std::exp(1.0 - static_cast<double>(stats.reference_len) /
                                 static_cast<double>(stats.candidate_len));
  return brevity * std::exp(log_sum);
}

double bleu4(const EvalPair& pair, BleuSmoothing smoothing) {
  return bleu_score(bleu_stats(pair.candidate, pair.references), smoothing);
}

namespace {

std::set<std::string> propositions(const TokenizedText& text, const NormalizationConfig& cfg) {
  const auto norm = normalize(text, cfg, NormalizeMode::BowScoring);
  std::set<std::string> props;
  for (const auto& t : norm.tokens) props.insert(t);
  for (std::size_t i = 0; i + 1 < norm.tokens.size(); ++i)
    props.insert(norm.tokens[i] + kSep + norm.tokens[i + 1]);
  return props;
}

}  // namespace

double spice_lite(const EvalPair& pair, const NormalizationConfig& cfg) {
  const auto cand = propositions(pair.candidate, cfg);
  if (cand.empty()) return 0.0;
  std::set<std::string> refs;
  for (const auto& ref : pair.references) {
    const auto p = propositions(ref, cfg);
    refs.insert(p.begin(), p.end());
  }
  if (refs.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& p : cand) inter += refs.contains(p) ? 1 : 0;
  const double precision = static_cast<double>(inter) / static_cast<double>(cand.size());
  const double recall = static_cast<double>(inter) / static_cast<double>(refs.size());
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

MetricReport evaluate_corpus(std::span<const EvalPair> pairs, const NormalizationConfig& cfg,
                             const EvaluateOptions& options) {
  MetricReport report;

  struct Agg {
    BleuStats stats;
    double bleu_sum = 0.0;
    double spice_sum = 0.0;
    std::uint64_t pairs = 0;
    std::uint64_t empty_candidates = 0;
  };
  std::map<AttributeV2, Agg> per_attr;
  Agg overall;

  for (const auto& pair : pairs) {
    const BleuStats stats = bleu_stats(pair.candidate, pair.references);
    const double bleu = bleu_score(stats, options.smoothing);
    const double spice = spice_lite(pair, cfg);
    for (Agg* agg : {&per_attr[pair.attribute], &overall}) {
      agg->stats += stats;
      agg->bleu_sum += bleu;
      agg->spice_sum += spice;
      agg->pairs += 1;
      if (pair.candidate.tokens.empty()) agg->empty_candidates += 1;
    }
  }

  const auto finish = [&](const Agg& agg) {
    AttributeMetrics m;
    m.pairs = agg.pairs;
    if (agg.pairs == 0) return m;
    m.bleu4 = options.sentence_level_bleu ? agg.bleu_sum / static_cast<double>(agg.pairs)
                                          : bleu_score(agg.stats, options.smoothing);
    m.spice = agg.spice_sum / static_cast<double>(agg.pairs);
    return m;
  };

  for (const auto& [attr, agg] : per_attr) {
    report.per_attribute[attr] = finish(agg);
    if (agg.empty_candidates > 0)
      report.notes.push_back(std::string(to_string(attr)) + ": " +
                             std::to_string(agg.empty_candidates) +
                             " empty candidate(s) scored 0");
  }
  report.overall = finish(overall);
  for (auto attr : kAttributesV2)
    if (!report.per_attribute.contains(attr))
      report.notes.push_back(std::string(to_string(attr)) + ": no pairs, omitted");
  return report;
}

std::string render_metric_table(const MetricReport& report, const std::string& method) {
  std::ostringstream out;
  out << "method            attribute    pairs  BLEU4(%)  SPICE(fraction)\n";
  const auto row = [&](const std::string& attr, const AttributeMetrics& m) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-17s %-12s %5llu %9.2f %16.4f\n", method.c_str(),
                  attr.c_str(), static_cast<unsigned long long>(m.pairs), m.bleu4 * 100.0,
                  m.spice);
    out << buf;
  };
  for (const auto& [attr, m] : report.per_attribute) row(std::string(to_string(attr)), m);
  row("overall", report.overall);
  for (const auto& note : report.notes) out << "note: " << note << '\n';
  return out.str();
}

}  // namespace aescap

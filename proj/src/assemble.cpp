#include "aescap/assemble.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace aescap {

std::vector<AttributeV2> assign_attributes(const TokenizedText& normalized,
                                           const std::map<AttributeV2, Lexicon>& lexicons) {
  std::map<AttributeV2, LexiconIndex> indexes;
  for (const auto& [attr, lex] : lexicons) indexes.emplace(attr, LexiconIndex::from(lex));
  std::vector<AttributeV2> out;
  for (const auto& [attr, index] : indexes) {
    const bool hit = std::any_of(normalized.tokens.begin(), normalized.tokens.end(),
                                 [&](const std::string& t) { return index.contains(t); });
    if (hit) out.push_back(attr);
  }
  return out;
}

bool length_filter(const TokenizedText& tokens, std::size_t min_tokens, std::size_t max_tokens) {
  return tokens.tokens.size() >= min_tokens && tokens.tokens.size() <= max_tokens;
}

AssembleResult assemble_dataset(std::span<const ScoredComment> scored,
                                const std::map<AttributeV2, Lexicon>& lexicons,
                                const NormalizationConfig& cfg, const AssembleOptions& options) {
  AssembleResult result;

  std::map<AttributeV2, LexiconIndex> indexes;
  for (const auto& [attr, lex] : lexicons) indexes.emplace(attr, LexiconIndex::from(lex));

  struct GroupMember {
    const ScoredComment* comment;
  };
  // (image_id, attribute) -> members
  std::map<std::pair<std::string, AttributeV2>, std::vector<GroupMember>> groups;

  // Per-image flag: did any comment of this image land in an attribute?
  std::map<std::string, bool> image_has_attribute;
  // Fate per comment, resolved after group construction.
  enum class Fate { Pending, Emitted, Excess, SmallGroup };
  std::unordered_map<const ScoredComment*, Fate> fates;

  for (const ScoredComment& sc : scored) {
    if (!sc.passed_rank) {
      ++result.drops.failed_rank;
      continue;
    }
    if (!sc.passed_classifier) {
      ++result.drops.failed_classifier;
      continue;
    }
    const TokenizedText raw = tokenize(sc.comment.text);
    if (!length_filter(raw, options.min_tokens, options.max_tokens)) {
      ++result.drops.failed_length;
      continue;
    }
    const TokenizedText normalized = normalize(raw, cfg, NormalizeMode::BowScoring);
    auto& has_attr = image_has_attribute[sc.comment.image_id];
    bool any = false;
    for (const auto& [attr, index] : indexes) {
      const bool hit = std::any_of(normalized.tokens.begin(), normalized.tokens.end(),
                                   [&](const std::string& t) { return index.contains(t); });
      if (!hit) continue;
      groups[{sc.comment.image_id, attr}].push_back({&sc});
      any = true;
    }
    if (!any) {
      ++result.drops.no_attribute;
      continue;
    }
    has_attr = true;
    fates[&sc] = Fate::Pending;
  }

  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(), [](const GroupMember& a, const GroupMember& b) {
      if (a.comment->bow_weight != b.comment->bow_weight)
        return a.comment->bow_weight > b.comment->bow_weight;
      return a.comment->comment.comment_id < b.comment->comment.comment_id;
    });
    if (members.size() < 1 + options.min_refs) {
      ++result.dropped_groups;
      for (const auto& m : members) {
        auto& fate = fates[m.comment];
        if (fate == Fate::Pending) fate = Fate::SmallGroup;
      }
      continue;
    }
    AttributeCaptionSet set;
    set.image_id = key.first;
    set.attribute = key.second;
    set.ground_truth = members.front().comment->comment.text;
    set.weights.push_back(members.front().comment->bow_weight);
    fates[members.front().comment] = Fate::Emitted;
    const std::size_t take = std::min(members.size(), options.max_captions);
    for (std::size_t i = 1; i < take; ++i) {
      set.references.push_back(members[i].comment->comment.text);
      set.weights.push_back(members[i].comment->bow_weight);
      fates[members[i].comment] = Fate::Emitted;
    }
    for (std::size_t i = take; i < members.size(); ++i) {
      auto& fate = fates[members[i].comment];
      if (fate == Fate::Pending || fate == Fate::SmallGroup) fate = Fate::Excess;
    }
    result.sets.push_back(std::move(set));
  }

  // Emitted wins over excess wins over small-group when a comment joined
  // several attribute groups.
  for (const auto& [comment, fate] : fates) {
    (void)comment;
    switch (fate) {
      case Fate::Emitted: ++result.drops.emitted; break;
      case Fate::Excess: ++result.drops.excess_in_group; break;
      case Fate::SmallGroup: ++result.drops.group_too_small; break;
      case Fate::Pending: ++result.drops.group_too_small; break;
    }
  }

  for (const auto& [image, has] : image_has_attribute)
    if (!has) result.images_without_attributes.push_back(image);
  std::sort(result.images_without_attributes.begin(), result.images_without_attributes.end());

  // groups is an ordered map, so sets are already sorted by
  // (image_id, attribute); keep the guarantee explicit.
  std::sort(result.sets.begin(), result.sets.end(),
            [](const AttributeCaptionSet& a, const AttributeCaptionSet& b) {
              if (a.image_id != b.image_id) return a.image_id < b.image_id;
              return a.attribute < b.attribute;
            });
  return result;
}

DatasetStats compute_stats(std::span<const AttributeCaptionSet> dataset,
                           const Lexicon* bias_lexicon, const NormalizationConfig* cfg) {
  DatasetStats stats;
  std::set<std::string> images;
  std::map<AttributeV2, std::set<std::string>> attr_images;

  for (const auto& rec : dataset) {
    const std::uint64_t captions = 1 + rec.references.size();
    images.insert(rec.image_id);
    attr_images[rec.attribute].insert(rec.image_id);
    auto& a = stats.per_attribute[rec.attribute];
    a.captions += captions;
    stats.total_captions += captions;
    ++stats.total_sets;
  }
  stats.total_images = images.size();
  for (auto& [attr, a] : stats.per_attribute) {
    a.images = attr_images[attr].size();
    a.average_captions_per_image =
        a.images == 0 ? 0.0 : static_cast<double>(a.captions) / static_cast<double>(a.images);
  }
  stats.average_defined = stats.total_images > 0;
  stats.average_captions_per_image =
      stats.average_defined
          ? static_cast<double>(stats.total_captions) / static_cast<double>(stats.total_images)
          : 0.0;
  stats.average_captions_per_set =
      stats.total_sets > 0
          ? static_cast<double>(stats.total_captions) / static_cast<double>(stats.total_sets)
          : 0.0;

  if (bias_lexicon != nullptr && cfg != nullptr && stats.total_captions > 0) {
    const LexiconIndex index = LexiconIndex::from(*bias_lexicon);
    double sum = 0.0;
    for (const auto& rec : dataset) {
      const auto score = [&](const std::string& caption) {
        return bow_weight(normalize(tokenize(caption), *cfg, NormalizeMode::BowScoring), index,
                          BowVariant::FrequencyWeighted);
      };
      sum += score(rec.ground_truth);
      for (const auto& ref : rec.references) sum += score(ref);
    }
    stats.bow_bias_per_caption = sum / static_cast<double>(stats.total_captions);
  }
  return stats;
}

std::string stats_to_json_string(const DatasetStats& stats) {
  nlohmann::json j;
  j["total_images"] = stats.total_images;
  j["total_captions"] = stats.total_captions;
  j["total_sets"] = stats.total_sets;
  j["average_captions_per_image"] = stats.average_captions_per_image;
  j["average_captions_per_set"] = stats.average_captions_per_set;
  j["average_defined"] = stats.average_defined;
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [attr, a] : stats.per_attribute) {
    nlohmann::json entry;
    entry["images"] = a.images;
    entry["captions"] = a.captions;
    entry["average_captions_per_image"] = a.average_captions_per_image;
    per[std::string(to_string(attr))] = entry;
  }
  j["per_attribute"] = per;
  if (stats.bow_bias_per_caption) j["bow_bias_per_caption"] = *stats.bow_bias_per_caption;
  return j.dump(2) + "\n";
}

std::string render_stats_table(const DatasetStats& stats) {
  std::ostringstream out;
  out << "attribute      images  captions  captions/image\n";
  const auto row = [&](const std::string& name, std::uint64_t images, std::uint64_t captions,
                       double average) {
    out << name;
    for (std::size_t i = name.size(); i < 15; ++i) out << ' ';
    std::string img = std::to_string(images);
    std::string cap = std::to_string(captions);
    for (std::size_t i = img.size(); i < 6; ++i) out << ' ';
    out << img << "  ";
    for (std::size_t i = cap.size(); i < 8; ++i) out << ' ';
    out << cap << "  ";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%14.2f", average);
    out << buf << '\n';
  };
  for (const auto& [attr, a] : stats.per_attribute)
    row(std::string(to_string(attr)), a.images, a.captions, a.average_captions_per_image);
  row("total", stats.total_images, stats.total_captions, stats.average_captions_per_image);
  if (!stats.average_defined) out << "note: empty dataset, averages reported as 0\n";
  if (stats.bow_bias_per_caption)
    out << "bow bias per caption (frequency-weighted surrogate): " << *stats.bow_bias_per_caption
        << '\n';
  return out.str();
}

}  // namespace aescap

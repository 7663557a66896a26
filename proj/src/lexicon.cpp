#include "aescap/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "aescap/errors.hpp"
#include "aescap/parallel.hpp"

namespace aescap {

bool Lexicon::contains(std::string_view term) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const LexiconEntry& e) { return e.term == term; });
}

std::uint64_t Lexicon::frequency_of(std::string_view term) const {
  for (const auto& e : entries)
    if (e.term == term) return e.frequency;
  return 0;
}

std::map<LegacyAttribute, TermCounts> count_terms(std::span<const RawComment> comments,
                                                  const NormalizationConfig& cfg,
                                                  std::size_t workers) {
  // Sharded counting merged by addition; the reduction is commutative so
  // results do not depend on worker count.
  std::vector<std::map<LegacyAttribute, TermCounts>> shards(std::max<std::size_t>(workers, 1));
  std::mutex shard_mutex;
  std::size_t next_shard = 0;
  std::string first_error;

  parallel_chunks(comments.size(), workers, [&](std::size_t begin, std::size_t end) {
    std::map<LegacyAttribute, TermCounts> local;
    std::string error;
    for (std::size_t i = begin; i < end && error.empty(); ++i) {
      const RawComment& c = comments[i];
      if (!c.attribute_hint) {
        error = "comment '" + c.comment_id + "' has no attribute hint";
        break;
      }
      const auto normalized = normalize(tokenize(c.text), cfg, NormalizeMode::KeywordExtraction);
      TermCounts& counts = local[*c.attribute_hint];
      for (const auto& token : normalized.tokens) ++counts[token];
    }
    std::lock_guard<std::mutex> lock(shard_mutex);
    shards[next_shard++] = std::move(local);
    if (!error.empty() && first_error.empty()) first_error = std::move(error);
  });

  if (!first_error.empty()) throw DataError(first_error);

  std::map<LegacyAttribute, TermCounts> merged;
  for (auto& shard : shards)
    for (auto& [attr, counts] : shard)
      for (auto& [term, n] : counts) merged[attr][term] += n;
  return merged;
}

namespace {

std::vector<LexiconEntry> ranked_entries(const TermCounts& table) {
  std::vector<LexiconEntry> entries;
  entries.reserve(table.size());
  for (const auto& [term, freq] : table)
    if (freq > 0) entries.push_back({term, freq});
  std::sort(entries.begin(), entries.end(), [](const LexiconEntry& a, const LexiconEntry& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.term < b.term;
  });
  return entries;
}

}  // namespace

Lexicon top_k(const TermCounts& table, std::size_t k, std::string attribute) {
  if (k == 0) throw DataError("top_k requires k >= 1");
  Lexicon lex;
  lex.attribute = std::move(attribute);
  lex.k = k;
  lex.entries = ranked_entries(table);
  if (lex.entries.size() > k) lex.entries.resize(k);
  return lex;
}

AttributeSplitConfig::Target AttributeSplitConfig::target_of(const std::string& term) const {
  if (auto it = partition.find(term); it != partition.end()) return it->second;
  return Target::Both;
}

AttributeSplitConfig AttributeSplitConfig::parse_text(std::string_view text) {
  AttributeSplitConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[' && line.back() == ']') continue;  // single optional section header
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("split config line " + std::to_string(lineno) + ": expected term=target");
    const std::string term = line.substr(0, eq);
    const std::string target = line.substr(eq + 1);
    if (target == "light")
      cfg.partition[term] = Target::Light;
    else if (target == "color")
      cfg.partition[term] = Target::Color;
    else if (target == "both")
      cfg.partition[term] = Target::Both;
    else
      throw DataError("split config line " + std::to_string(lineno) + ": unknown target '" +
                      target + "'");
  }
  return cfg;
}

AttributeSplitConfig AttributeSplitConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read split config: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

const AttributeSplitConfig& AttributeSplitConfig::builtin() {
  static const AttributeSplitConfig cfg = parse_text(R"cfg(
# Routing of legacy color-lighting terms, v1
light=light
lighting=light
sky=light
shadows=light
shadow=light
exposure=light
exposed=light
bright=light
brightness=light
dark=light
darkness=light
highlights=light
highlight=light
backlit=light
backlighting=light
glow=light
sunlight=light
lit=light
dim=light
overexposed=light
underexposed=light
silhouette=light
color=color
colors=color
colorful=color
black&white=color
blue=color
red=color
green=color
yellow=color
orange=color
purple=color
pink=color
brown=color
black=color
white=color
gray=color
saturation=color
saturated=color
desaturated=color
hue=color
hues=color
tone=color
tones=color
tint=color
vibrant=color
vivid=color
muted=color
monochrome=color
sepia=color
warm=color
cool=color
)cfg");
  return cfg;
}

namespace {

TermCounts entries_to_counts(const Lexicon& lex) {
  TermCounts counts;
  for (const auto& e : lex.entries) counts[e.term] += e.frequency;
  return counts;
}

const Lexicon& require(const std::map<LegacyAttribute, Lexicon>& lexicons, LegacyAttribute a) {
  auto it = lexicons.find(a);
  if (it == lexicons.end())
    throw DataError("merge_attributes: missing legacy attribute '" + std::string(to_string(a)) +
                    "'");
  return it->second;
}

}  // namespace

std::map<AttributeV2, Lexicon> merge_attributes(const std::map<LegacyAttribute, Lexicon>& lexicons,
                                                const AttributeSplitConfig& split) {
  for (auto a : kLegacyAttributes) require(lexicons, a);

  const Lexicon& composition = require(lexicons, LegacyAttribute::Composition);
  const Lexicon& depth = require(lexicons, LegacyAttribute::DepthOfField);
  const Lexicon& focus = require(lexicons, LegacyAttribute::Focus);
  const Lexicon& color_lighting = require(lexicons, LegacyAttribute::ColorLighting);
  const Lexicon& subject = require(lexicons, LegacyAttribute::SubjectOfPhoto);
  // GeneralImpression and UseOfCamera are dropped.

  std::map<AttributeV2, Lexicon> out;

  // Composition absorbs depth-of-field and focus: sum frequencies, then
  // re-rank and re-cap.
  TermCounts merged = entries_to_counts(composition);
  for (const auto& e : depth.entries) merged[e.term] += e.frequency;
  for (const auto& e : focus.entries) merged[e.term] += e.frequency;
  const std::size_t comp_k = std::max({composition.k, depth.k, focus.k, std::size_t{1}});
  out[AttributeV2::Composition] =
      top_k(merged, comp_k, std::string(to_string(AttributeV2::Composition)));

  // ColorLighting splits into Light and Color by the configured partition;
  // unassigned terms go to both sides.
  TermCounts light_counts;
  TermCounts color_counts;
  for (const auto& e : color_lighting.entries) {
    switch (split.target_of(e.term)) {
      case AttributeSplitConfig::Target::Light:
        light_counts[e.term] += e.frequency;
        break;
      case AttributeSplitConfig::Target::Color:
        color_counts[e.term] += e.frequency;
        break;
      case AttributeSplitConfig::Target::Both:
        light_counts[e.term] += e.frequency;
        color_counts[e.term] += e.frequency;
        break;
    }
  }
  const std::size_t cl_k = std::max(color_lighting.k, std::size_t{1});
  out[AttributeV2::Light] = top_k(light_counts, cl_k, std::string(to_string(AttributeV2::Light)));
  out[AttributeV2::Color] = top_k(color_counts, cl_k, std::string(to_string(AttributeV2::Color)));

  Lexicon subj = subject;
  subj.attribute = std::string(to_string(AttributeV2::Subject));
  out[AttributeV2::Subject] = std::move(subj);

  return out;
}

LexiconIndex LexiconIndex::from(const Lexicon& lex) {
  LexiconIndex index;
  index.frequencies.reserve(lex.entries.size());
  for (const auto& e : lex.entries) {
    auto& slot = index.frequencies[e.term];
    slot = std::max(slot, e.frequency);
  }
  return index;
}

Lexicon union_lexicon(const std::map<AttributeV2, Lexicon>& lexicons) {
  TermCounts best;
  for (const auto& [attr, lex] : lexicons) {
    (void)attr;
    for (const auto& e : lex.entries) {
      auto& slot = best[e.term];
      slot = std::max(slot, e.frequency);
    }
  }
  Lexicon out;
  out.attribute = "union";
  out.k = best.size();
  out.entries = ranked_entries(best);
  return out;
}

void write_lexicons_csv(const std::map<AttributeV2, Lexicon>& lexicons,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write lexicon csv: " + path.string());
  out << "attribute,term,frequency,rank\n";
  for (const auto& [attr, lex] : lexicons) {
    std::size_t rank = 1;
    for (const auto& e : lex.entries) {
      if (e.term.find(',') != std::string::npos || e.term.find('\n') != std::string::npos)
        throw DataError("lexicon term not CSV-safe: '" + e.term + "'");
      out << to_string(attr) << ',' << e.term << ',' << e.frequency << ',' << rank++ << '\n';
    }
  }
  if (!out) throw DataError("write failed: " + path.string());
}

std::map<AttributeV2, Lexicon> read_lexicons_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read lexicon csv: " + path.string());
  std::map<AttributeV2, Lexicon> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "attribute,term,frequency,rank") continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 4)
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected 4 CSV fields");
    const auto attr = attribute_v2_from_string(fields[0]);
    if (!attr)
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": unknown attribute '" +
                      fields[0] + "'");
    std::uint64_t freq = 0;
    try {
      freq = std::stoull(fields[2]);
    } catch (const std::exception&) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": bad frequency");
    }
    auto& lex = out[*attr];
    lex.attribute = fields[0];
    lex.entries.push_back({fields[1], freq});
  }
  for (auto& [attr, lex] : out) {
    (void)attr;
    lex.k = lex.entries.size();
    // entries arrive rank-ordered; enforce the invariant anyway
    std::sort(lex.entries.begin(), lex.entries.end(),
              [](const LexiconEntry& a, const LexiconEntry& b) {
                if (a.frequency != b.frequency) return a.frequency > b.frequency;
                return a.term < b.term;
              });
  }
  return out;
}

}  // namespace aescap

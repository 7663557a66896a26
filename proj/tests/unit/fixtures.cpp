#include "fixtures.hpp"

#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "aescap/errors.hpp"
#include "aescap/sampling.hpp"

namespace aescap::testing {

using nlohmann::json;

RawComment comment(std::string id, std::string image, std::string text, Source source) {
  RawComment c;
  c.comment_id = std::move(id);
  c.image_id = std::move(image);
  c.source = source;
  c.text = std::move(text);
  return c;
}

RawComment hinted(std::string id, std::string image, std::string text, LegacyAttribute hint) {
  RawComment c = comment(std::move(id), std::move(image), std::move(text), Source::FullyAnnotated);
  c.attribute_hint = hint;
  return c;
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "aescap-tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

namespace {

const std::vector<std::string>& pool(LegacyAttribute a) {
  static const std::vector<std::string> color_lighting = {
      "light",      "exposure", "shadows", "highlights", "contrast",    "bright", "dark",
      "backlit",    "glow",     "color",   "blue",       "red",         "saturation",
      "tones",      "vibrant",  "warm",    "muted",      "black&white", "golden"};
  static const std::vector<std::string> composition = {
      "composition", "lines",    "leading",  "perspective", "shot",       "framing",
      "balance",     "crop",     "angle",    "symmetry",    "thirds",     "foreground",
      "placement"};
  static const std::vector<std::string> depth = {"field",   "depth",     "bokeh",     "blur",
                                                 "shallow", "isolation", "separation"};
  static const std::vector<std::string> focus = {"focus", "sharp",     "soft",
                                                 "crisp", "sharpness", "tack"};
  static const std::vector<std::string> general = {"good",      "great",    "nice",
                                                   "excellent", "wonderful", "lovely"};
  static const std::vector<std::string> subject = {"subject", "interesting", "beautiful",
                                                   "capture", "expression",  "moment",
                                                   "story",   "striking"};
  static const std::vector<std::string> camera = {"shutter", "speed", "iso",
                                                  "aperture", "tripod", "lens", "settings"};
  switch (a) {
    case LegacyAttribute::ColorLighting: return color_lighting;
    case LegacyAttribute::Composition: return composition;
    case LegacyAttribute::DepthOfField: return depth;
    case LegacyAttribute::Focus: return focus;
    case LegacyAttribute::GeneralImpression: return general;
    case LegacyAttribute::SubjectOfPhoto: return subject;
    case LegacyAttribute::UseOfCamera: return camera;
  }
  throw DataError("unknown attribute");
}

const std::vector<std::string>& negative_captions() {
  static const std::vector<std::string> captions = [] {
    const std::vector<std::string> nouns = {"man",  "woman", "dog",    "cat",  "bus",   "train",
                                            "bear", "zebra", "child",  "rider", "horse", "player"};
    const std::vector<std::string> verbs = {"standing", "sitting", "riding",
                                            "walking",  "holding", "eating"};
    const std::vector<std::string> places = {"on the road",     "near the station",
                                             "in the kitchen",  "at the market",
                                             "by the door",     "under the bridge",
                                             "next to the wall", "outside the shop"};
    std::vector<std::string> out;
    for (const auto& n : nouns)
      for (const auto& v : verbs)
        for (const auto& p : places)
          out.push_back("a " + n + " is " + v + " " + p);
    return out;
  }();
  return captions;
}

// Picks skew toward the front of the pool so term frequencies differ.
std::string pick(std::mt19937_64& rng, const std::vector<std::string>& words) {
  const std::uint64_t a = bounded_draw(rng, words.size());
  const std::uint64_t b = bounded_draw(rng, words.size());
  return words[static_cast<std::size_t>(std::min(a, b))];
}

// Glue words are all stopwords or function words, so they vanish under
// keyword extraction and only pool terms reach the lexicons.
std::string aligned_sentence(std::mt19937_64& rng, const std::vector<std::string>& primary,
                             const std::vector<std::string>& secondary) {
  const std::uint64_t shape = bounded_draw(rng, 3);
  const std::string a = pick(rng, primary);
  const std::string b = pick(rng, primary);
  const std::string c = pick(rng, primary);
  const std::string d = pick(rng, secondary);
  switch (shape) {
    case 0: return "the " + a + " and " + b + " with " + c + " here";
    case 1: return "really " + a + " with such " + b + " and more " + c + " now";
    default: return "this " + a + " is so " + b + " and that " + c + " " + d + " again";
  }
}

// Generic captions carrying exactly one lexicon color term: enough BoW
// weight to enter the ranking, still clearly negative to the classifier.
const std::vector<std::string>& mixed_generic_captions() {
  static const std::vector<std::string> captions = {
      "a man is riding near the blue wall by the station",
      "a plate of red food sits on the counter",
      "a bus with warm paint parked near the station",
      "a child is holding a blue umbrella outside the shop",
  };
  return captions;
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("fixture: cannot write " + path.string());
  for (const auto& line : lines) out << line << '\n';
}

std::string comment_line(const std::string& image, const std::string& text,
                         const std::string& id = "", const std::string& hint = "") {
  json j;
  if (!id.empty()) j["comment_id"] = id;
  j["image_id"] = image;
  if (!hint.empty()) j["attribute_hint"] = hint;
  j["text"] = text;
  return j.dump();
}

}  // namespace

FixturePaths make_fixture_corpora(const std::filesystem::path& dir, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  FixturePaths paths;
  paths.fully_annotated = dir / "fa.jsonl";
  paths.weakly_annotated = dir / "weak.jsonl";
  paths.negatives = dir / "neg.jsonl";

  std::mt19937_64 rng(seed);

  // fully annotated: 40 images x 7 attributes x 2 comments
  std::vector<std::string> fa_lines;
  for (int img = 0; img < 40; ++img) {
    char image_id[16];
    std::snprintf(image_id, sizeof(image_id), "p%03d", img);
    std::vector<std::string> ids;
    for (auto attr : kLegacyAttributes) {
      for (int j = 0; j < 2; ++j) {
        const auto& words = pool(attr);
        const std::string text = aligned_sentence(rng, words, words);
        const std::string id = std::string("fa-") + image_id + "-" +
                               std::string(to_string(attr)) + "-" + std::to_string(j);
        ids.push_back(id);
        fa_lines.push_back(comment_line(image_id, text, id, std::string(to_string(attr))));
        ++paths.fa_comments;
      }
    }
    if (img % 10 == 0) {
      json rec;
      rec["image_id"] = image_id;
      rec["comment_ids"] = ids;
      rec["scores"] = {{"composition", 6.5}, {"color_lighting", 7.0}};
      fa_lines.push_back(rec.dump());
    }
  }
  write_lines(paths.fully_annotated, fa_lines);

  // weakly annotated: 36 images x 7 comments, ids synthesized by ingest
  const std::array<LegacyAttribute, 5> weak_pools = {
      LegacyAttribute::ColorLighting, LegacyAttribute::Composition, LegacyAttribute::DepthOfField,
      LegacyAttribute::Focus, LegacyAttribute::SubjectOfPhoto};
  std::vector<std::string> weak_lines;
  for (int img = 0; img < 36; ++img) {
    char image_id[16];
    std::snprintf(image_id, sizeof(image_id), "w%03d", img);
    ++paths.weak_images;
    const auto& primary = pool(weak_pools[static_cast<std::size_t>(img) % weak_pools.size()]);
    const auto& secondary =
        pool(weak_pools[(static_cast<std::size_t>(img) + 2) % weak_pools.size()]);
    for (int j = 0; j < 5; ++j) {
      weak_lines.push_back(comment_line(image_id, aligned_sentence(rng, primary, secondary)));
      ++paths.weak_comments;
    }
    weak_lines.push_back(comment_line(image_id, "nice shot"));
    ++paths.weak_comments;
    if (img % 7 == 3) {
      // camera-jargon comment: passes the classifier but matches no target
      // attribute lexicon once use-of-camera is deleted
      weak_lines.push_back(comment_line(
          image_id, aligned_sentence(rng, pool(LegacyAttribute::UseOfCamera),
                                     pool(LegacyAttribute::UseOfCamera))));
    } else {
      const auto& mixed = mixed_generic_captions();
      weak_lines.push_back(
          comment_line(image_id, mixed[bounded_draw(rng, mixed.size())]));
    }
    ++paths.weak_comments;
  }
  // two malformed lines: recorded in the error report, never dropped silently
  weak_lines.push_back("this is not json {");
  weak_lines.push_back(comment_line("w000", "   "));
  write_lines(paths.weakly_annotated, weak_lines);

  // negatives: generic captions, larger than the positive class
  std::vector<std::string> neg_lines;
  const auto& generic = negative_captions();
  for (int i = 0; i < 620; ++i) {
    const std::string image_id = "coco-" + std::to_string(i / 5);
    neg_lines.push_back(comment_line(image_id, generic[static_cast<std::size_t>(i) % generic.size()]));
    ++paths.negative_comments;
  }
  write_lines(paths.negatives, neg_lines);
  return paths;
}

}  // namespace aescap::testing

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "aescap/assemble.hpp"
#include "aescap/corpus_io.hpp"
#include "aescap/errors.hpp"
#include "aescap/filter.hpp"
#include "aescap/lexicon.hpp"
#include "aescap/loss.hpp"
#include "aescap/metrics.hpp"
#include "aescap/pipeline.hpp"
#include "aescap/sampling.hpp"
#include "aescap/textnorm.hpp"
#include "aescap/version.hpp"

namespace py = pybind11;
using namespace aescap;

namespace {

NormalizationConfig resolve_norm(const std::optional<std::string>& path) {
  return path ? NormalizationConfig::load(*path) : NormalizationConfig::builtin();
}

NormalizeMode parse_mode(const std::string& mode) {
  if (mode == "keyword_extraction") return NormalizeMode::KeywordExtraction;
  if (mode == "bow_scoring") return NormalizeMode::BowScoring;
  throw DataError("unknown mode '" + mode + "' (keyword_extraction | bow_scoring)");
}

BowVariant parse_variant(const std::string& variant) {
  if (variant == "count") return BowVariant::Count;
  if (variant == "frequency_weighted") return BowVariant::FrequencyWeighted;
  throw DataError("unknown variant '" + variant + "' (count | frequency_weighted)");
}

BleuSmoothing parse_smoothing(const std::string& smoothing) {
  if (smoothing == "none") return BleuSmoothing::None;
  if (smoothing == "add_one") return BleuSmoothing::AddOne;
  throw DataError("unknown smoothing '" + smoothing + "' (none | add_one)");
}

TokenizedText wrap_tokens(const std::vector<std::string>& tokens) {
  TokenizedText t;
  t.tokens = tokens;
  t.original = join_tokens(tokens);
  return t;
}

std::vector<RawComment> as_comments(const std::vector<std::string>& texts, Source source) {
  std::vector<RawComment> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    RawComment c;
    c.comment_id = "py#" + std::to_string(i);
    c.image_id = "py";
    c.source = source;
    c.text = texts[i];
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_aescap, m) {
  m.doc() = "aesthetic caption corpus toolkit";
  m.attr("__version__") = kToolVersion;

  py::register_exception<DataError>(m, "DataError");

  m.def("tokenize",
        [](const std::string& text) { return tokenize(text).tokens; },
        py::arg("text"),
        "Lowercase tokens split on non-alphanumeric boundaries; '&' and "
        "apostrophes survive inside tokens.");

  m.def(
      "normalize",
      [](const std::vector<std::string>& tokens, const std::string& mode,
         const std::optional<std::string>& config_path) {
        const auto cfg = resolve_norm(config_path);
        return normalize(wrap_tokens(tokens), cfg, parse_mode(mode)).tokens;
      },
      py::arg("tokens"), py::arg("mode") = "keyword_extraction",
      py::arg("config_path") = std::nullopt);

  py::class_<Lexicon>(m, "Lexicon")
      .def_readonly("attribute", &Lexicon::attribute)
      .def_readonly("k", &Lexicon::k)
      .def_property_readonly("entries",
                             [](const Lexicon& lex) {
                               std::vector<std::pair<std::string, std::uint64_t>> out;
                               out.reserve(lex.entries.size());
                               for (const auto& e : lex.entries)
                                 out.emplace_back(e.term, e.frequency);
                               return out;
                             })
      .def("contains", [](const Lexicon& lex, const std::string& term) { return lex.contains(term); })
      .def("frequency_of",
           [](const Lexicon& lex, const std::string& term) { return lex.frequency_of(term); });

  m.def(
      "build_lexicon",
      [](const std::vector<std::pair<std::string, std::uint64_t>>& entries,
         const std::string& attribute, std::size_t k) {
        TermCounts counts;
        for (const auto& [term, freq] : entries) counts[term] += freq;
        return top_k(counts, k, attribute);
      },
      py::arg("entries"), py::arg("attribute") = "union", py::arg("k") = 1000,
      "Rank (term, frequency) pairs into a lexicon capped at k.");

  m.def(
      "read_lexicons_csv",
      [](const std::string& path) {
        std::map<std::string, Lexicon> out;
        for (const auto& [attr, lex] : read_lexicons_csv(path))
          out[std::string(to_string(attr))] = lex;
        return out;
      },
      py::arg("path"));

  m.def(
      "bow_weight",
      [](const std::vector<std::string>& tokens, const Lexicon& lexicon,
         const std::string& variant) {
        return bow_weight(wrap_tokens(tokens), lexicon, parse_variant(variant));
      },
      py::arg("tokens"), py::arg("lexicon"), py::arg("variant") = "count");

  py::class_<ClassifierModel>(m, "ClassifierModel")
      .def_property_readonly("vocabulary", &ClassifierModel::vocabulary)
      .def_property_readonly("alpha", &ClassifierModel::alpha)
      .def(
          "classify",
          [](const ClassifierModel& model, const std::string& text, double threshold) {
            const ClassifyResult r = classify(model, tokenize(text), threshold);
            return std::make_pair(r.prob, r.pass);
          },
          py::arg("text"), py::arg("threshold") = 0.5)
      .def("save", [](const ClassifierModel& model, const std::string& path) { model.save(path); })
      .def_static("load", [](const std::string& path) { return ClassifierModel::load(path); });

  m.def(
      "train_classifier",
      [](const std::vector<std::string>& positives, const std::vector<std::string>& negatives,
         double alpha) {
        const auto pos = as_comments(positives, Source::FullyAnnotated);
        const auto neg = as_comments(negatives, Source::NegativeCorpus);
        return train_classifier(pos, neg, alpha);
      },
      py::arg("positives"), py::arg("negatives"), py::arg("alpha") = 1.0);

  m.def(
      "bleu4",
      [](const std::string& candidate, const std::vector<std::string>& references,
         const std::string& smoothing) {
        EvalPair pair;
        pair.candidate = tokenize(candidate);
        for (const auto& r : references) pair.references.push_back(tokenize(r));
        return bleu4(pair, parse_smoothing(smoothing));
      },
      py::arg("candidate"), py::arg("references"), py::arg("smoothing") = "add_one");

  m.def(
      "spice_lite",
      [](const std::string& candidate, const std::vector<std::string>& references,
         const std::optional<std::string>& config_path) {
        EvalPair pair;
        pair.candidate = tokenize(candidate);
        for (const auto& r : references) pair.references.push_back(tokenize(r));
        return spice_lite(pair, resolve_norm(config_path));
      },
      py::arg("candidate"), py::arg("references"), py::arg("config_path") = std::nullopt);

  py::class_<HeadBatch>(m, "HeadBatch")
      .def(py::init([](std::size_t n, std::size_t dim, const std::vector<double>& predicted,
                       const std::vector<double>& truth) {
             HeadBatch h;
             h.n = n;
             h.dim = dim;
             h.predicted = predicted;
             h.truth = truth;
             return h;
           }),
           py::arg("n"), py::arg("dim"), py::arg("predicted"), py::arg("truth"));

  py::class_<LossBatch>(m, "LossBatch")
      .def(py::init([](const std::vector<HeadBatch>& attributes, const HeadBatch& global,
                       const HeadBatch& object, double aesthetic_bias) {
             LossBatch b;
             b.attributes = attributes;
             b.global = global;
             b.object = object;
             b.aesthetic_bias = aesthetic_bias;
             b.validate();
             return b;
           }),
           py::arg("attributes"), py::arg("global_head"), py::arg("object_head"),
           py::arg("aesthetic_bias") = 0.0)
      .def_readonly("aesthetic_bias", &LossBatch::aesthetic_bias);

  m.def("attribute_loss", &attribute_loss, py::arg("batch"), py::arg("j"));
  m.def("global_loss", &global_loss, py::arg("batch"));
  m.def("object_loss", &object_loss, py::arg("batch"), py::arg("normalized") = false);
  m.def(
      "total_loss",
      [](const LossBatch& batch, bool include_object, bool normalized_object) {
        return total_loss(batch, {include_object, normalized_object});
      },
      py::arg("batch"), py::arg("include_object") = false, py::arg("normalized_object") = false);
  m.def(
      "gradient_check",
      [](std::uint64_t seed, std::size_t n, std::size_t m_heads, std::size_t dims, double bias,
         bool normalized_object) {
        const LossBatch batch = random_batch(seed, n, m_heads, dims, bias);
        return finite_difference_check(batch, {true, normalized_object}).max_rel_error;
      },
      py::arg("seed") = 42, py::arg("n") = 8, py::arg("m") = 5, py::arg("dims") = 4,
      py::arg("bias") = 1.0, py::arg("normalized_object") = false,
      "Max relative error of analytic gradients vs central differences on a "
      "seeded random batch.");

  m.def("sample_without_replacement", &sample_without_replacement, py::arg("population"),
        py::arg("n"), py::arg("seed"));

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_readwrite("fully_annotated", &PipelineConfig::fully_annotated)
      .def_readwrite("weakly_annotated", &PipelineConfig::weakly_annotated)
      .def_readwrite("negatives", &PipelineConfig::negatives)
      .def_readwrite("out_dir", &PipelineConfig::out_dir)
      .def_readwrite("lexicon_k", &PipelineConfig::lexicon_k)
      .def_readwrite("top_n", &PipelineConfig::top_n)
      .def_readwrite("top_fraction", &PipelineConfig::top_fraction)
      .def_readwrite("threshold", &PipelineConfig::threshold)
      .def_readwrite("alpha", &PipelineConfig::alpha)
      .def_readwrite("negative_count", &PipelineConfig::negative_count)
      .def_readwrite("min_refs", &PipelineConfig::min_refs)
      .def_readwrite("min_tokens", &PipelineConfig::min_tokens)
      .def_readwrite("max_tokens", &PipelineConfig::max_tokens)
      .def_readwrite("seed", &PipelineConfig::seed)
      .def_readwrite("workers", &PipelineConfig::workers)
      .def_property(
          "variant",
          [](const PipelineConfig& cfg) {
            return cfg.variant == BowVariant::Count ? "count" : "frequency_weighted";
          },
          [](PipelineConfig& cfg, const std::string& v) { cfg.variant = parse_variant(v); });

  m.def(
      "run_pipeline",
      [](const PipelineConfig& cfg) {
        const PipelineResult r = run_pipeline(cfg);
        std::map<std::string, std::string> out;
        out["lexicon"] = r.lexicon_csv.string();
        out["classifier"] = r.classifier_model.string();
        out["scored"] = r.scored.string();
        out["dataset"] = r.dataset.string();
        out["stats"] = r.stats.string();
        out["manifest"] = r.manifest.string();
        return out;
      },
      py::arg("config"));

  m.def("file_checksum", [](const std::string& path) { return file_checksum(path); },
        py::arg("path"));
}

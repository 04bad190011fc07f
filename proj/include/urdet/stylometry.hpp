#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "urdet/error.hpp"
#include "urdet/text_norm.hpp"
#include "urdet/unicode.hpp"

namespace urdet::stylometry {

using text::Label;

/// Per-text measurements. Ratios whose denominator is zero stay empty.
struct FeatureVector {
  size_t char_count = 0;
  size_t word_count = 0;
  size_t sentence_count = 0;
  double avg_word_length = 0.0;
  double avg_sentence_length = 0.0;
  double sentence_length_std = 0.0;
  double punctuation_density = 0.0;
  double char_diversity = 0.0;
  double ttr = 0.0;
  std::optional<double> bigram_uniqueness;
  std::optional<double> trigram_uniqueness;
};

/// Metric names in report order. The first six are the complexity measures.
inline constexpr std::array<std::string_view, 11> kMetricNames{
    "ttr",
    "avg_word_length",
    "avg_sentence_length",
    "sentence_length_std",
    "punctuation_density",
    "char_diversity",
    "char_count",
    "word_count",
    "sentence_count",
    "bigram_uniqueness",
    "trigram_uniqueness",
};

inline constexpr std::array<std::string_view, 6> kComplexityMeasures{
    "ttr", "avg_word_length", "avg_sentence_length", "sentence_length_std", "punctuation_density",
    "char_diversity"};

inline std::optional<double> metric(const FeatureVector& f, std::string_view name) {
  if (name == "char_count") return static_cast<double>(f.char_count);
  if (name == "word_count") return static_cast<double>(f.word_count);
  if (name == "sentence_count") return static_cast<double>(f.sentence_count);
  if (name == "avg_word_length") return f.avg_word_length;
  if (name == "avg_sentence_length") return f.avg_sentence_length;
  if (name == "sentence_length_std") return f.sentence_length_std;
  if (name == "punctuation_density") return f.punctuation_density;
  if (name == "char_diversity") return f.char_diversity;
  if (name == "ttr") return f.ttr;
  if (name == "bigram_uniqueness") return f.bigram_uniqueness;
  if (name == "trigram_uniqueness") return f.trigram_uniqueness;
  return std::nullopt;
}

using Token = std::u32string;

inline double type_token_ratio(const std::vector<Token>& tokens) {
  if (tokens.empty()) throw Error(ErrorKind::NoWords, "type-token ratio of an empty token sequence");
  const std::unordered_set<Token> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

inline double type_token_ratio(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw Error(ErrorKind::NoWords, "type-token ratio of an empty token sequence");
  const std::unordered_set<std::string> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

struct NgramEntry {
  std::vector<std::string> gram;
  size_t frequency = 0;
};

struct NgramTable {
  size_t n = 2;
  std::vector<NgramEntry> entries;  // frequency desc, then lexicographic
  size_t total = 0;
  size_t unique = 0;
};

/// Accumulates n-gram counts over any number of token sequences. Windows
/// never cross from one sequence into the next.
class NgramCounter {
 public:
  explicit NgramCounter(size_t n) : n_(n) {
    if (n == 0) throw Error(ErrorKind::InvalidConfig, "n-gram order must be positive");
  }

  void add(const std::vector<std::string>& tokens) {
    for (size_t i = 0; i + n_ <= tokens.size(); ++i) {
      ++counts_[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                         tokens.begin() + static_cast<std::ptrdiff_t>(i + n_))];
      ++total_;
    }
  }

  /// Full table when `limit` is absent; otherwise only the `limit` most
  /// frequent entries (total and unique still describe the full table).
  NgramTable table(std::optional<size_t> limit = std::nullopt) const {
    NgramTable out;
    out.n = n_;
    out.total = total_;
    out.unique = counts_.size();
    out.entries.reserve(counts_.size());
    for (const auto& [gram, freq] : counts_) out.entries.push_back({gram, freq});
    // counts_ is ordered, so a stable sort keeps ties lexicographic.
    std::stable_sort(out.entries.begin(), out.entries.end(),
                     [](const NgramEntry& a, const NgramEntry& b) { return a.frequency > b.frequency; });
    if (limit && *limit < out.entries.size()) out.entries.resize(*limit);
    return out;
  }

 private:
  size_t n_;
  size_t total_ = 0;
  std::map<std::vector<std::string>, size_t> counts_;
};

inline NgramTable ngram_table(const std::vector<std::string>& tokens, size_t n) {
  NgramCounter counter(n);
  if (tokens.size() < n) {
    throw Error(ErrorKind::TooShort, std::to_string(tokens.size()) + " tokens, need at least " + std::to_string(n));
  }
  counter.add(tokens);
  return counter.table();
}

namespace detail {

inline std::optional<double> ngram_uniqueness(const std::vector<Token>& tokens, size_t n) {
  if (tokens.size() < n) return std::nullopt;
  std::unordered_set<Token> seen;
  const size_t total = tokens.size() - n + 1;
  for (size_t i = 0; i < total; ++i) {
    // U+0000 cannot appear in a token, so it is a safe join separator.
    Token key;
    for (size_t k = 0; k < n; ++k) {
      if (k) key.push_back(U'\0');
      key += tokens[i + k];
    }
    seen.insert(std::move(key));
  }
  return static_cast<double>(seen.size()) / static_cast<double>(total);
}

}  // namespace detail

/// Features of one preprocessed text. Sentences without any word are not
/// counted as sentences.
inline FeatureVector extract_features(std::u32string_view text) {
  const auto tokens = text::tokenize_words(text);
  if (tokens.empty()) throw Error(ErrorKind::NoWords, "text has no word tokens");

  FeatureVector f;
  f.char_count = text.size();
  f.word_count = tokens.size();

  std::vector<double> sentence_words;
  for (const auto& sentence : text::split_sentences(text)) {
    const size_t words = text::tokenize_words(std::u32string_view(sentence)).size();
    if (words > 0) sentence_words.push_back(static_cast<double>(words));
  }
  f.sentence_count = sentence_words.size();
  if (!sentence_words.empty()) {
    double sum = 0.0;
    for (double w : sentence_words) sum += w;
    f.avg_sentence_length = sum / static_cast<double>(sentence_words.size());
    double ss = 0.0;
    for (double w : sentence_words) ss += (w - f.avg_sentence_length) * (w - f.avg_sentence_length);
    f.sentence_length_std = std::sqrt(ss / static_cast<double>(sentence_words.size()));
  }

  size_t letters = 0;
  for (const auto& t : tokens) letters += t.size();
  f.avg_word_length = static_cast<double>(letters) / static_cast<double>(tokens.size());

  size_t punctuation = 0;
  std::unordered_set<char32_t> distinct;
  for (char32_t cp : text) {
    if (text::is_preserved_punctuation(cp)) ++punctuation;
    distinct.insert(cp);
  }
  f.punctuation_density = static_cast<double>(punctuation) / static_cast<double>(text.size());
  f.char_diversity = static_cast<double>(distinct.size()) / static_cast<double>(text.size());
  f.ttr = type_token_ratio(tokens);
  f.bigram_uniqueness = detail::ngram_uniqueness(tokens, 2);
  f.trigram_uniqueness = detail::ngram_uniqueness(tokens, 3);
  return f;
}

inline FeatureVector extract_features(std::string_view utf8) {
  return extract_features(std::u32string_view(unicode::to_u32(utf8)));
}

// ---------------------------------------------------------------------------
// Corpus summary

struct GroupSummary {
  size_t total_texts = 0;
  size_t total_words = 0;
  size_t total_chars = 0;
  size_t unique_words = 0;
  double avg_text_length = 0.0;
  double avg_words_per_text = 0.0;
  double vocabulary_richness = 0.0;  // mean per-text distinct-token count
};

struct SkippedDocument {
  std::string id;
  std::string reason;
};

struct CorpusSummary {
  std::map<Label, GroupSummary> groups;
  std::vector<SkippedDocument> skipped;
};

struct LabeledText {
  std::string id;
  std::string text;  // preprocessed
  Label label = Label::human;
};

inline CorpusSummary corpus_summary(const std::vector<LabeledText>& docs) {
  struct Accumulator {
    GroupSummary summary;
    std::unordered_set<Token> vocabulary;
    size_t distinct_sum = 0;
  };
  std::map<Label, Accumulator> acc;
  CorpusSummary out;

  for (const auto& doc : docs) {
    const std::u32string scalars = unicode::to_u32(doc.text);
    const auto tokens = text::tokenize_words(std::u32string_view(scalars));
    if (tokens.empty()) {
      out.skipped.push_back({doc.id, "NoWords"});
      continue;
    }
    Accumulator& a = acc[doc.label];
    ++a.summary.total_texts;
    a.summary.total_words += tokens.size();
    a.summary.total_chars += scalars.size();
    const std::unordered_set<Token> types(tokens.begin(), tokens.end());
    a.distinct_sum += types.size();
    a.vocabulary.insert(types.begin(), types.end());
  }

  for (auto& [label, a] : acc) {
    GroupSummary s = a.summary;
    const double n = static_cast<double>(s.total_texts);
    s.unique_words = a.vocabulary.size();
    s.avg_text_length = static_cast<double>(s.total_chars) / n;
    s.avg_words_per_text = static_cast<double>(s.total_words) / n;
    s.vocabulary_richness = static_cast<double>(a.distinct_sum) / n;
    out.groups[label] = s;
  }
  return out;
}

}  // namespace urdet::stylometry

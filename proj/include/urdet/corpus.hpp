#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "urdet/error.hpp"
#include "urdet/random.hpp"
#include "urdet/text_norm.hpp"
#include "urdet/unicode.hpp"

namespace urdet::corpus {

using text::Label;

struct ChunkingConfig {
  size_t window = 450;
  size_t overlap = 100;
  size_t min_chunk = 45;

  void validate() const {
    if (window == 0) throw Error(ErrorKind::InvalidConfig, "window must be positive");
    if (overlap == 0 || overlap >= window) {
      throw Error(ErrorKind::InvalidConfig, "overlap must satisfy 0 < overlap < window");
    }
    if (min_chunk == 0 || min_chunk > window) {
      throw Error(ErrorKind::InvalidConfig, "min_chunk must satisfy 0 < min_chunk <= window");
    }
  }
};

struct Chunk {
  std::string chunk_id;
  std::string parent_id;
  size_t index = 0;
  std::string text;
  Label label = Label::human;
  size_t char_start = 0;  // scalar offsets into the parent text
  size_t char_end = 0;
};

struct ChunkingSummary {
  size_t total_texts = 0;
  size_t texts_chunked = 0;
  size_t total_chunks = 0;
  double avg_chunks_per_text = 0.0;
  size_t chunk_length_min = 0;
  size_t chunk_length_max = 0;
  double chunk_length_mean = 0.0;
  double chunk_length_std = 0.0;  // population
  std::map<Label, size_t> label_counts;
  /// Chunks that absorbed a short final fragment and may exceed the window.
  size_t tail_merged = 0;
};

/// Half-open scalar span inside a parent text.
struct Span {
  size_t begin = 0;
  size_t end = 0;
  size_t size() const { return end - begin; }
};

struct SpanPlan {
  std::vector<Span> spans;
  bool tail_merged = false;
};

/// Computes chunk spans over `text`. Windows advance by `window - overlap`
/// from the previous cut; cuts and starts snap to whitespace so that words
/// stay whole whenever the window contains any whitespace.
inline SpanPlan plan_chunks(std::u32string_view text, const ChunkingConfig& config) {
  config.validate();
  const size_t length = text.size();
  auto ws = [&](size_t i) { return text::is_whitespace(text[i]); };
  auto trim_back = [&](size_t begin, size_t end) {
    while (end > begin && ws(end - 1)) --end;
    return end;
  };

  SpanPlan plan;
  size_t start = 0;
  while (start < length && ws(start)) ++start;
  if (start == length) return plan;

  if (length <= config.window) {
    plan.spans.push_back({start, trim_back(start, length)});
    return plan;
  }

  size_t prev_cut = 0;  // cut of the chunk before the current one
  while (start < length) {
    const size_t boundary = start + config.window;
    if (boundary >= length) {
      plan.spans.push_back({start, trim_back(start, length)});
      break;
    }

    size_t cut = boundary;
    if (!ws(boundary) && !ws(boundary - 1)) {
      const size_t lower = std::max(start, prev_cut);
      for (size_t e = boundary - 1; e > lower; --e) {
        if (ws(e)) {
          cut = e;
          break;
        }
      }
    }
    plan.spans.push_back({start, trim_back(start, cut)});

    const size_t floor = std::max(start + 1, prev_cut);
    size_t next = std::max(cut > config.overlap ? cut - config.overlap : 0, floor);
    if (next < length && next > 0 && !ws(next) && !ws(next - 1)) {
      size_t back = next;
      while (back > floor && !ws(back - 1)) --back;
      if (back > floor || back == 0 || ws(back - 1)) {
        next = back;
      } else {
        size_t fwd = next;
        while (fwd < cut && !ws(fwd)) ++fwd;
        if (fwd < cut) next = fwd;
      }
    }
    while (next < length && ws(next)) ++next;
    prev_cut = cut;
    start = next;
  }

  if (plan.spans.size() > 1 && plan.spans.back().size() < config.min_chunk) {
    const size_t tail_end = plan.spans.back().end;
    plan.spans.pop_back();
    plan.spans.back().end = tail_end;
    plan.tail_merged = true;
  }
  return plan;
}

inline std::string make_chunk_id(std::string_view parent_id, size_t index) {
  return std::string(parent_id) + "_" + std::to_string(index);
}

inline std::vector<Chunk> chunk_text(const std::string& parent_id, std::string_view text, Label label,
                                     const ChunkingConfig& config, bool* tail_merged = nullptr) {
  config.validate();
  const std::u32string scalars = unicode::to_u32(text);
  const SpanPlan plan = plan_chunks(scalars, config);
  if (plan.spans.empty()) {
    throw Error(ErrorKind::MalformedInput, "document '" + parent_id + "' has no text to chunk");
  }
  if (tail_merged) *tail_merged = plan.tail_merged;

  std::vector<Chunk> chunks;
  chunks.reserve(plan.spans.size());
  for (size_t i = 0; i < plan.spans.size(); ++i) {
    const Span& span = plan.spans[i];
    chunks.push_back(Chunk{
        make_chunk_id(parent_id, i), parent_id, i,
        unicode::to_utf8(std::u32string_view(scalars).substr(span.begin, span.size())), label,
        span.begin, span.end});
  }
  return chunks;
}

/// Minimal document view for corpus-level chunking.
struct Document {
  std::string id;
  std::string text;
  Label label = Label::human;
};

struct ChunkedCorpus {
  std::vector<Chunk> chunks;
  ChunkingSummary summary;
};

inline ChunkedCorpus chunk_corpus(const std::vector<Document>& docs, const ChunkingConfig& config) {
  config.validate();
  ChunkedCorpus out;
  ChunkingSummary& s = out.summary;
  s.label_counts = {{Label::human, 0}, {Label::ai, 0}};
  std::vector<double> lengths;

  for (const Document& doc : docs) {
    bool merged = false;
    auto chunks = chunk_text(doc.id, doc.text, doc.label, config, &merged);
    ++s.total_texts;
    if (chunks.size() > 1) ++s.texts_chunked;
    if (merged) ++s.tail_merged;
    for (auto& c : chunks) {
      lengths.push_back(static_cast<double>(c.char_end - c.char_start));
      ++s.label_counts[c.label];
      out.chunks.push_back(std::move(c));
    }
  }

  s.total_chunks = out.chunks.size();
  if (s.total_texts > 0) {
    s.avg_chunks_per_text = static_cast<double>(s.total_chunks) / static_cast<double>(s.total_texts);
  }
  if (!lengths.empty()) {
    const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
    s.chunk_length_min = static_cast<size_t>(*lo);
    s.chunk_length_max = static_cast<size_t>(*hi);
    const double n = static_cast<double>(lengths.size());
    s.chunk_length_mean = std::accumulate(lengths.begin(), lengths.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : lengths) ss += (x - s.chunk_length_mean) * (x - s.chunk_length_mean);
    s.chunk_length_std = std::sqrt(ss / n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Splitting

enum class SplitMode { chunk_level, grouped };

struct SplitConfig {
  std::array<double, 3> ratios{0.8, 0.1, 0.1};
  uint64_t seed = 42;
  SplitMode mode = SplitMode::chunk_level;

  void validate() const {
    double sum = 0.0;
    for (double r : ratios) {
      if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidConfig, "each split ratio must lie in (0, 1)");
      sum += r;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorKind::InvalidConfig, "split ratios must sum to 1");
  }
};

/// Largest-remainder (Hamilton) apportionment of `n` seats. Equal remainders
/// go to the earlier split.
inline std::array<size_t, 3> apportion(size_t n, const std::array<double, 3>& ratios) {
  std::array<size_t, 3> sizes{};
  std::array<double, 3> remainders{};
  size_t assigned = 0;
  for (size_t i = 0; i < 3; ++i) {
    const double quota = static_cast<double>(n) * ratios[i];
    sizes[i] = static_cast<size_t>(std::floor(quota));
    remainders[i] = quota - std::floor(quota);
    assigned += sizes[i];
  }
  std::array<size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return remainders[a] > remainders[b] + 1e-9;
  });
  for (size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[order[k % 3]];
  return sizes;
}

struct LabelCounts {
  size_t human = 0;
  size_t ai = 0;
  size_t total() const { return human + ai; }
};

inline LabelCounts count_labels(const std::vector<Chunk>& chunks) {
  LabelCounts c;
  for (const auto& ch : chunks) (ch.label == Label::human ? c.human : c.ai)++;
  return c;
}

struct DatasetSplit {
  std::vector<Chunk> train;
  std::vector<Chunk> validation;
  std::vector<Chunk> test;

  std::array<const std::vector<Chunk>*, 3> parts() const { return {&train, &validation, &test}; }
  std::array<LabelCounts, 3> label_counts() const {
    return {count_labels(train), count_labels(validation), count_labels(test)};
  }
};

inline constexpr std::array<std::string_view, 3> kSplitNames{"train", "validation", "test"};

inline DatasetSplit split(const std::vector<Chunk>& chunks, const SplitConfig& config) {
  config.validate();
  if (chunks.empty()) throw Error(ErrorKind::EmptySplit, "no chunks to split");
  std::mt19937_64 rng(config.seed);
  DatasetSplit out;
  std::array<std::vector<Chunk>*, 3> targets{&out.train, &out.validation, &out.test};

  if (config.mode == SplitMode::chunk_level) {
    const auto sizes = apportion(chunks.size(), config.ratios);
    for (size_t i = 0; i < 3; ++i) {
      if (sizes[i] == 0) {
        throw Error(ErrorKind::EmptySplit, std::string(kSplitNames[i]) + " split would be empty");
      }
    }
    std::vector<size_t> order(chunks.size());
    std::iota(order.begin(), order.end(), size_t{0});
    seeded_shuffle(std::span<size_t>(order), rng);
    size_t pos = 0;
    for (size_t i = 0; i < 3; ++i) {
      targets[i]->reserve(sizes[i]);
      for (size_t k = 0; k < sizes[i]; ++k) targets[i]->push_back(chunks[order[pos++]]);
    }
    return out;
  }

  // Grouped: apportion parents, then carry every chunk of a parent along.
  std::vector<std::string> parents;
  std::unordered_map<std::string, std::vector<size_t>> members;
  for (size_t i = 0; i < chunks.size(); ++i) {
    auto [it, inserted] = members.try_emplace(chunks[i].parent_id);
    if (inserted) parents.push_back(chunks[i].parent_id);
    it->second.push_back(i);
  }
  const auto sizes = apportion(parents.size(), config.ratios);
  for (size_t i = 0; i < 3; ++i) {
    if (sizes[i] == 0) {
      throw Error(ErrorKind::EmptySplit, std::string(kSplitNames[i]) + " split would have no parent documents");
    }
  }
  seeded_shuffle(std::span<std::string>(parents), rng);
  size_t pos = 0;
  for (size_t i = 0; i < 3; ++i) {
    for (size_t k = 0; k < sizes[i]; ++k) {
      for (size_t idx : members.at(parents[pos])) targets[i]->push_back(chunks[idx]);
      ++pos;
    }
  }
  return out;
}

inline std::string_view to_string(SplitMode mode) {
  return mode == SplitMode::chunk_level ? "chunk" : "grouped";
}

}  // namespace urdet::corpus

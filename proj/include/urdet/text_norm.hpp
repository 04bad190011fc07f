#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "urdet/error.hpp"
#include "urdet/unicode.hpp"

namespace urdet::text {

enum class Label { human, ai };

enum class Generator { gpt_4o_mini, gemini, kimi, unknown };

struct RawDocument {
  std::string id;
  std::string text;
  Label label = Label::human;
  std::optional<Generator> generator;
  std::string source;
  std::string domain;
};

struct NormalizedText {
  std::string text;
  size_t original_length = 0;
  size_t normalized_length = 0;
};

// ---------------------------------------------------------------------------
// Character classes

/// Harakat and related marks: U+064B..U+0655 and superscript alef U+0670.
constexpr bool is_diacritic(char32_t cp) {
  return (cp >= 0x064B && cp <= 0x0655) || cp == 0x0670;
}

constexpr bool is_sentence_terminator(char32_t cp) {
  return cp == 0x06D4 || cp == 0x061F || cp == U'!' || cp == U'.';
}

/// Punctuation that survives filtering.
constexpr bool is_preserved_punctuation(char32_t cp) {
  switch (cp) {
    case 0x06D4:  // ۔
    case 0x060C:  // ،
    case 0x061B:  // ؛
    case 0x061F:  // ؟
    case U'.':
    case U',':
    case U'!':
    case U'"':
    case U'\'':
    case U'(':
    case U')':
    case U'-':
      return true;
    default:
      return false;
  }
}

inline bool is_whitespace(char32_t cp) {
  return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0;
}

constexpr bool in_arabic_script_block(char32_t cp) {
  return (cp >= 0x0600 && cp <= 0x06FF) || (cp >= 0x0750 && cp <= 0x077F) ||
         (cp >= 0xFB50 && cp <= 0xFDFF) || (cp >= 0xFE70 && cp <= 0xFEFF);
}

constexpr bool is_arabic_indic_digit(char32_t cp) {
  return (cp >= 0x0660 && cp <= 0x0669) || (cp >= 0x06F0 && cp <= 0x06F9);
}

constexpr bool is_ascii_alnum(char32_t cp) {
  return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') || (cp >= U'0' && cp <= U'9');
}

/// Membership in the allowed-character set. Inside the Arabic-script blocks
/// only letters and digits qualify, so signs such as ٪ (U+066A) are dropped.
inline bool is_allowed(char32_t cp) {
  if (is_ascii_alnum(cp) || is_whitespace(cp) || is_preserved_punctuation(cp) ||
      is_arabic_indic_digit(cp)) {
    return true;
  }
  return in_arabic_script_block(cp) && !is_diacritic(cp) && unicode::is_letter_or_digit(cp);
}

/// Characters stripped from token edges.
inline bool is_token_punctuation(char32_t cp) {
  return is_preserved_punctuation(cp) || unicode::is_general_punctuation(cp);
}

// ---------------------------------------------------------------------------
// Pipeline steps

inline std::u32string normalize_unicode(std::u32string_view text) { return unicode::nfc(text); }

inline std::u32string remove_diacritics(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::copy_if(text.begin(), text.end(), std::back_inserter(out),
               [](char32_t cp) { return !is_diacritic(cp); });
  return out;
}

inline std::u32string filter_characters(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::copy_if(text.begin(), text.end(), std::back_inserter(out), is_allowed);
  return out;
}

inline std::u32string collapse_whitespace(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t cp : text) {
    if (is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(cp);
  }
  return out;
}

/// Runs the four steps in order. Returns an empty string when nothing
/// survives; `preprocess` turns that into an error.
inline std::u32string preprocess_text(std::u32string_view text) {
  return collapse_whitespace(filter_characters(remove_diacritics(normalize_unicode(text))));
}

inline NormalizedText preprocess(const RawDocument& doc) {
  const std::u32string original = unicode::to_u32(doc.text);
  const std::u32string cleaned = preprocess_text(original);
  if (cleaned.empty()) {
    throw Error(ErrorKind::EmptyAfterPreprocess, "document '" + doc.id + "' is empty after preprocessing");
  }
  return NormalizedText{unicode::to_utf8(cleaned), original.size(), cleaned.size()};
}

// UTF-8 conveniences.
inline std::string normalize_unicode(std::string_view utf8) {
  return unicode::to_utf8(normalize_unicode(unicode::to_u32(utf8)));
}
inline std::string remove_diacritics(std::string_view utf8) {
  return unicode::to_utf8(remove_diacritics(unicode::to_u32(utf8)));
}
inline std::string filter_characters(std::string_view utf8) {
  return unicode::to_utf8(filter_characters(unicode::to_u32(utf8)));
}
inline std::string collapse_whitespace(std::string_view utf8) {
  return unicode::to_utf8(collapse_whitespace(unicode::to_u32(utf8)));
}
inline std::string preprocess_text(std::string_view utf8) {
  return unicode::to_utf8(preprocess_text(unicode::to_u32(utf8)));
}

// ---------------------------------------------------------------------------
// Segmentation

inline std::u32string strip_punctuation(std::u32string_view token) {
  size_t begin = 0;
  size_t end = token.size();
  while (begin < end && is_token_punctuation(token[begin])) ++begin;
  while (end > begin && is_token_punctuation(token[end - 1])) --end;
  return std::u32string(token.substr(begin, end - begin));
}

inline std::vector<std::u32string> tokenize_words(std::u32string_view text) {
  std::vector<std::u32string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_whitespace(text[i])) ++i;
    const size_t start = i;
    while (i < text.size() && !is_whitespace(text[i])) ++i;
    if (i > start) {
      auto token = strip_punctuation(text.substr(start, i - start));
      if (!token.empty()) tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

inline std::vector<std::string> tokenize_words(std::string_view utf8) {
  std::vector<std::string> out;
  for (const auto& token : tokenize_words(std::u32string_view(unicode::to_u32(utf8)))) {
    out.push_back(unicode::to_utf8(token));
  }
  return out;
}

namespace detail {
inline std::u32string_view trim(std::u32string_view s) {
  size_t begin = 0;
  size_t end = s.size();
  while (begin < end && is_whitespace(s[begin])) ++begin;
  while (end > begin && is_whitespace(s[end - 1])) --end;
  return s.substr(begin, end - begin);
}
}  // namespace detail

/// A sentence ends after a maximal run of terminators, so "واہ!!" stays one
/// sentence. Trailing text without a terminator is its own sentence.
inline std::vector<std::u32string> split_sentences(std::u32string_view text) {
  std::vector<std::u32string> sentences;
  auto emit = [&](std::u32string_view piece) {
    const auto trimmed = detail::trim(piece);
    if (!trimmed.empty()) sentences.emplace_back(trimmed);
  };
  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (is_sentence_terminator(text[i])) {
      while (i < text.size() && is_sentence_terminator(text[i])) ++i;
      emit(text.substr(start, i - start));
      start = i;
    } else {
      ++i;
    }
  }
  emit(text.substr(start));
  return sentences;
}

inline std::vector<std::string> split_sentences(std::string_view utf8) {
  std::vector<std::string> out;
  for (const auto& s : split_sentences(std::u32string_view(unicode::to_u32(utf8)))) {
    out.push_back(unicode::to_utf8(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enum names used by the JSONL schema.

inline std::string_view to_string(Label label) { return label == Label::human ? "human" : "ai"; }

inline std::optional<Label> parse_label(std::string_view s) {
  if (s == "human") return Label::human;
  if (s == "ai") return Label::ai;
  return std::nullopt;
}

inline std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::gpt_4o_mini: return "gpt-4o-mini";
    case Generator::gemini: return "gemini";
    case Generator::kimi: return "kimi";
    case Generator::unknown: return "unknown";
  }
  return "unknown";
}

inline std::optional<Generator> parse_generator(std::string_view s) {
  if (s == "gpt-4o-mini") return Generator::gpt_4o_mini;
  if (s == "gemini") return Generator::gemini;
  if (s == "kimi") return Generator::kimi;
  if (s == "unknown") return Generator::unknown;
  return std::nullopt;
}

}  // namespace urdet::text

#pragma once

#include <string>
#include <string_view>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "urdet/error.hpp"

namespace urdet::unicode {

// Text is exchanged as UTF-8 and processed as UTF-32 so that every length and
// offset counts Unicode scalar values.

inline std::u32string to_u32(std::string_view utf8) {
  const auto ustr = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  std::u32string out(static_cast<size_t>(ustr.countChar32()), U'\0');
  UErrorCode status = U_ZERO_ERROR;
  const int32_t n = ustr.toUTF32(reinterpret_cast<UChar32*>(out.data()),
                                 static_cast<int32_t>(out.size()), status);
  if (U_FAILURE(status) && status != U_STRING_NOT_TERMINATED_WARNING) {
    throw Error(ErrorKind::MalformedInput, "UTF-32 conversion failed");
  }
  out.resize(static_cast<size_t>(n));
  return out;
}

inline std::string to_utf8(std::u32string_view text) {
  const auto ustr = icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(text.data()), static_cast<int32_t>(text.size()));
  std::string out;
  ustr.toUTF8String(out);
  return out;
}

inline size_t scalar_count(std::string_view utf8) { return to_u32(utf8).size(); }

/// Canonical composition (NFC).
inline std::u32string nfc(std::u32string_view text) {
  if (text.empty()) return {};
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::Io, std::string("ICU NFC instance unavailable: ") + u_errorName(status));
  }
  const auto src = icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(text.data()), static_cast<int32_t>(text.size()));
  const icu::UnicodeString composed = normalizer->normalize(src, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::MalformedInput, std::string("NFC failed: ") + u_errorName(status));
  }
  std::string utf8;
  composed.toUTF8String(utf8);
  return to_u32(utf8);
}

inline bool is_nfc(std::u32string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  const auto src = icu::UnicodeString::fromUTF32(
      reinterpret_cast<const UChar32*>(text.data()), static_cast<int32_t>(text.size()));
  return normalizer->isNormalized(src, status) && U_SUCCESS(status);
}

inline bool is_letter_or_digit(char32_t cp) {
  const auto cls = U_GET_GC_MASK(static_cast<UChar32>(cp));
  return (cls & (U_GC_L_MASK | U_GC_ND_MASK)) != 0;
}

inline bool is_general_punctuation(char32_t cp) {
  return u_ispunct(static_cast<UChar32>(cp)) != 0;
}

}  // namespace urdet::unicode

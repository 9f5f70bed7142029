// Copyright 2026 The Crossproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unicode.h"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "crossproj/error.h"

namespace crossproj::internal {
namespace {

const icu::Normalizer2 &Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) {
    throw Error(ErrorCode::kIo, "ICU NFC normalizer unavailable");
  }
  return *nfc;
}

}  // namespace

std::string NormalizeNfc(std::string_view utf8) {
  const icu::Normalizer2 &nfc = Nfc();
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  UErrorCode status = U_ZERO_ERROR;
  if (nfc.isNormalized(text, status) && U_SUCCESS(status)) {
    return std::string(utf8);
  }
  status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfc.normalize(text, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInvalidRecord, "cannot NFC-normalize text");
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool IsNfc(std::string_view utf8) {
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  UErrorCode status = U_ZERO_ERROR;
  bool normalized = Nfc().isNormalized(text, status);
  return U_SUCCESS(status) && normalized;
}

}  // namespace crossproj::internal

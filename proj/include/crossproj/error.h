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

#ifndef CROSSPROJ_ERROR_H_
#define CROSSPROJ_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace crossproj {

enum class ErrorCode {
  // Corpus parsing.
  kMalformedJson,
  kUnknownRole,
  kUnknownFrame,
  kUnknownPos,
  kSpanOutOfRange,
  kInvalidRecord,
  // Embedding store.
  kBadMagic,
  kUnsupportedVersion,
  kDimMismatch,
  kTruncatedFile,
  kTokenMapOutOfRange,
  kZeroVector,
  kDuplicateId,
  // Operations.
  kIndexOutOfRange,
  kShapeMismatch,
  kSentenceMismatch,
  kMissingEmbeddings,
  kPredicateNotInPair,
  kCoverageGap,
  kInvalidArgument,
  kIo,
};

// Stable name used in diagnostics, e.g. "UnknownRole".
std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported with this exception. `line` is the
// 1-based input line for corpus errors and 0 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message, int line = 0);

  ErrorCode code() const { return code_; }
  int line() const { return line_; }
  const std::string &detail() const { return detail_; }
  const std::string &file() const { return file_; }

  // Copy attributed to input `path`; what() becomes "path:line: Name: ...".
  Error InFile(const std::string &path) const;

 private:
  ErrorCode code_;
  int line_;
  std::string detail_;
  std::string file_;
};

}  // namespace crossproj

#endif  // CROSSPROJ_ERROR_H_

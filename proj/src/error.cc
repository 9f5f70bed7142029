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

#include "crossproj/error.h"

namespace crossproj {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedJson: return "MalformedJson";
    case ErrorCode::kUnknownRole: return "UnknownRole";
    case ErrorCode::kUnknownFrame: return "UnknownFrame";
    case ErrorCode::kUnknownPos: return "UnknownPos";
    case ErrorCode::kSpanOutOfRange: return "SpanOutOfRange";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kTokenMapOutOfRange: return "TokenMapOutOfRange";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kSentenceMismatch: return "SentenceMismatch";
    case ErrorCode::kMissingEmbeddings: return "MissingEmbeddings";
    case ErrorCode::kPredicateNotInPair: return "PredicateNotInPair";
    case ErrorCode::kCoverageGap: return "CoverageGap";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

std::string Describe(ErrorCode code, const std::string &message, int line) {
  std::string out(ErrorCodeName(code));
  if (line > 0) out += " at line " + std::to_string(line);
  out += ": ";
  out += message;
  return out;
}

std::string DescribeInFile(ErrorCode code, const std::string &message,
                           int line, const std::string &file) {
  std::string out = file;
  if (line > 0) out += ":" + std::to_string(line);
  out += ": ";
  out += ErrorCodeName(code);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string &message, int line)
    : std::runtime_error(Describe(code, message, line)),
      code_(code),
      line_(line),
      detail_(message) {}

Error Error::InFile(const std::string &path) const {
  Error out = *this;
  static_cast<std::runtime_error &>(out) =
      std::runtime_error(DescribeInFile(code_, detail_, line_, path));
  out.file_ = path;
  return out;
}

}  // namespace crossproj

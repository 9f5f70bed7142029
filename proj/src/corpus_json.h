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

#ifndef CROSSPROJ_SRC_CORPUS_JSON_H_
#define CROSSPROJ_SRC_CORPUS_JSON_H_

#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "crossproj/corpus.h"
#include "crossproj/inventory.h"

namespace crossproj::internal {

using Json = nlohmann::json;

// Compact, key-sorted, UTF-8 output.
std::string DumpCanonical(const Json &value);

Json SentenceToJson(const Sentence &sentence);
Json PairToJson(const SentencePair &pair);

// Decoders validate every invariant and report failures at `line`.
// `extra_keys` lists top-level pair keys tolerated besides the schema.
Sentence SentenceFromJson(const Json &value, int line,
                          const FrameInventory &inventory);
SentencePair PairFromJson(const Json &value, int line,
                          const FrameInventory &inventory,
                          std::initializer_list<std::string_view> extra_keys = {});

// Field accessors raising kMalformedJson.
const Json &Field(const Json &object, std::string_view key, int line);
int IntField(const Json &object, std::string_view key, int line);
int AsInt(const Json &value, int line, std::string_view what);
std::string StringField(const Json &object, std::string_view key, int line);

// Calls `fn(json, line)` for each non-blank line of JSON-lines `data`.
void ForEachJsonLine(std::string_view data,
                     const std::function<void(const Json &, int)> &fn);

}  // namespace crossproj::internal

#endif  // CROSSPROJ_SRC_CORPUS_JSON_H_

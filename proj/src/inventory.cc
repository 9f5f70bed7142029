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

#include "crossproj/inventory.h"

#include <cctype>

#include "json.hpp"

#include "crossproj/error.h"

namespace crossproj {
namespace internal {
extern const char kBundledInventoryJson[];
}  // namespace internal

namespace {

using Json = nlohmann::json;

std::map<std::string, std::string, std::less<>> ReadLabelMap(
    const Json &root, const char *key, bool required) {
  std::map<std::string, std::string, std::less<>> out;
  auto it = root.find(key);
  if (it == root.end()) {
    if (required) {
      throw Error(ErrorCode::kMalformedJson,
                  std::string("inventory lacks '") + key + "'");
    }
    return out;
  }
  if (!it->is_object()) {
    throw Error(ErrorCode::kMalformedJson,
                std::string("inventory '") + key + "' is not an object");
  }
  for (const auto &[label, definition] : it->items()) {
    if (!definition.is_string() || label.empty()) {
      throw Error(ErrorCode::kMalformedJson,
                  std::string("bad entry in inventory '") + key + "'");
    }
    out.emplace(label, definition.get<std::string>());
  }
  return out;
}

std::string Lower(std::string_view word) {
  std::string out(word);
  for (char &c : out) c = static_cast<char>(std::tolower(
      static_cast<unsigned char>(c)));
  return out;
}

bool HasLower(std::string_view word) {
  for (char c : word) {
    if (std::islower(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

// Splits on anything but ASCII letters and '-'.
std::vector<std::string_view> Words(std::string_view text) {
  std::vector<std::string_view> words;
  size_t i = 0;
  while (i < text.size()) {
    auto is_word = [&](size_t k) {
      unsigned char c = static_cast<unsigned char>(text[k]);
      return std::isalpha(c) || c == '-';
    };
    while (i < text.size() && !is_word(i)) ++i;
    size_t start = i;
    while (i < text.size() && is_word(i)) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

// "A cause makes an agent ..." rather than a dictionary gloss.
bool LooksLikeStructure(
    std::string_view text,
    const std::map<std::string, std::string, std::less<>> &roles) {
  std::vector<std::string_view> words = Words(text);
  return words.size() >= 2 && (words[0] == "A" || words[0] == "An") &&
         roles.count(Lower(words[1])) > 0;
}

}  // namespace

std::set<std::string> ParseArgumentStructure(
    std::string_view text,
    const std::map<std::string, std::string, std::less<>> &roles) {
  std::set<std::string> out;
  for (std::string_view word : Words(text)) {
    // Upper-case words are the frame verb itself.
    if (!HasLower(word)) continue;
    std::string key = Lower(word);
    if (roles.count(key) > 0) out.insert(key);
  }
  return out;
}

const FrameInventory &FrameInventory::Bundled() {
  static const FrameInventory *inventory =
      new FrameInventory(FromJson(internal::kBundledInventoryJson));
  return *inventory;
}

FrameInventory FrameInventory::FromJson(std::string_view text) {
  Json root = Json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw Error(ErrorCode::kMalformedJson, "inventory is not a JSON object");
  }
  FrameInventory inv;
  inv.frames_ = ReadLabelMap(root, "frames", true);
  inv.roles_ = ReadLabelMap(root, "roles", true);
  auto structures = ReadLabelMap(root, "argument_structures", false);
  for (const auto &[frame, definition] : inv.frames_) {
    auto it = structures.find(frame);
    if (it != structures.end()) {
      inv.structures_[frame] = ParseArgumentStructure(it->second, inv.roles_);
    } else if (LooksLikeStructure(definition, inv.roles_)) {
      inv.structures_[frame] = ParseArgumentStructure(definition, inv.roles_);
    }
  }
  for (const auto &[frame, unused] : structures) {
    if (!inv.HasFrame(frame)) {
      throw Error(ErrorCode::kUnknownFrame,
                  "argument structure for unknown frame " + frame);
    }
  }
  return inv;
}

bool FrameInventory::HasFrame(std::string_view frame) const {
  return frames_.find(frame) != frames_.end();
}

bool FrameInventory::HasRole(std::string_view role) const {
  return roles_.find(role) != roles_.end();
}

const std::set<std::string> *FrameInventory::ArgumentStructure(
    std::string_view frame) const {
  auto it = structures_.find(frame);
  return it == structures_.end() ? nullptr : &it->second;
}

}  // namespace crossproj

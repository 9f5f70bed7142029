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

#ifndef CROSSPROJ_INVENTORY_H_
#define CROSSPROJ_INVENTORY_H_

#include <map>
#include <set>
#include <string>
#include <string_view>

namespace crossproj {

// VerbAtlas frame and role definitions.
//
// Inventory files are JSON objects with `frames` and `roles` maps from label
// to definition text, plus an optional `argument_structures` map from frame
// label to a prototypical structure sentence such as
// "An agent AFFIRMS a theme to a recipient (+attribute)".
class FrameInventory {
 public:
  // The inventory compiled into the library.
  static const FrameInventory &Bundled();

  static FrameInventory FromJson(std::string_view text);

  bool HasFrame(std::string_view frame) const;
  bool HasRole(std::string_view role) const;

  // Roles of the frame's prototypical argument structure, or nullptr when
  // the inventory has no structure description for the frame.
  const std::set<std::string> *ArgumentStructure(std::string_view frame) const;

  const std::map<std::string, std::string, std::less<>> &frames() const {
    return frames_;
  }
  const std::map<std::string, std::string, std::less<>> &roles() const {
    return roles_;
  }

 private:
  std::map<std::string, std::string, std::less<>> frames_;
  std::map<std::string, std::string, std::less<>> roles_;
  std::map<std::string, std::set<std::string>, std::less<>> structures_;
};

// Role labels mentioned in a structure sentence, in the inventory's spelling.
std::set<std::string> ParseArgumentStructure(
    std::string_view text, const std::map<std::string, std::string,
                                          std::less<>> &roles);

}  // namespace crossproj

#endif  // CROSSPROJ_INVENTORY_H_

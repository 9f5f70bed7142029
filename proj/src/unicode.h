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

#ifndef CROSSPROJ_SRC_UNICODE_H_
#define CROSSPROJ_SRC_UNICODE_H_

#include <string>
#include <string_view>

namespace crossproj::internal {

// NFC form of valid UTF-8 text.
std::string NormalizeNfc(std::string_view utf8);
bool IsNfc(std::string_view utf8);

}  // namespace crossproj::internal

#endif  // CROSSPROJ_SRC_UNICODE_H_

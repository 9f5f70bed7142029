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

// Annotated parallel corpora: tokens with coarse POS, predicates carrying a
// VerbAtlas frame and an optional BabelNet sense, and role-labeled argument
// spans. Corpora are stored as JSON-lines, one sentence pair per line:
//
//   {"gold_alignment":[[0,0],...]|null,"id":"...",
//    "source":{"arguments":[{"end":1,"predicate":0,"role":"agent","start":0}],
//              "lang":"en",
//              "predicates":[{"frame":"AFFIRM","sense":"bn:00082527v","token":2}],
//              "tokens":[{"pos":"NOUN","surface":"Mr."},...]},
//    "target":{...}}
//
// Serialization is canonical: sorted keys, no insignificant whitespace, one
// record per line terminated by '\n'.

#ifndef CROSSPROJ_CORPUS_H_
#define CROSSPROJ_CORPUS_H_

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crossproj/inventory.h"

namespace crossproj {

// Closed coarse tagset. OTHER holds punctuation and symbols.
enum class Pos { kVerb, kNoun, kAdj, kAdv, kAdp, kAux, kPart, kOther };

std::string_view PosName(Pos pos);
std::optional<Pos> ParsePos(std::string_view name);

struct Token {
  int index = 0;
  std::string surface;
  Pos pos = Pos::kOther;

  bool operator==(const Token &) const = default;
};

struct Predicate {
  int token = 0;
  std::string frame;
  std::optional<std::string> sense;

  bool operator==(const Predicate &) const = default;
};

// Inclusive token span [start, end] labeled with a role of one predicate.
struct Argument {
  int predicate = 0;
  std::string role;
  int start = 0;
  int end = 0;

  bool operator==(const Argument &) const = default;
};

struct Sentence {
  std::string lang;
  std::vector<Token> tokens;
  std::vector<Predicate> predicates;
  std::vector<Argument> arguments;

  int size() const { return static_cast<int>(tokens.size()); }

  // Index into `predicates` of the predicate anchored at `token`, or -1.
  int PredicateAt(int token) const;

  bool operator==(const Sentence &) const = default;
};

// (source token, target token).
using TokenPair = std::pair<int, int>;

struct SentencePair {
  std::string id;
  Sentence source;
  Sentence target;
  std::optional<std::vector<TokenPair>> gold_alignment;

  // Same pair with the roles of source and target exchanged.
  SentencePair Swapped() const;

  bool operator==(const SentencePair &) const = default;
};

// True for "bn:" followed by 8 digits and "v".
bool IsValidSense(std::string_view sense);

// Parses a JSON-lines corpus. Blank lines are skipped. Every type invariant
// is checked against `inventory`; failures raise Error with the 1-based line.
std::vector<SentencePair> ParseCorpus(
    std::string_view data,
    const FrameInventory &inventory = FrameInventory::Bundled());
// Also records the 1-based input line of every pair in `lines`.
std::vector<SentencePair> ParseCorpus(std::string_view data,
                                      const FrameInventory &inventory,
                                      std::vector<int> *lines);
std::vector<SentencePair> ParseCorpus(
    std::istream &in,
    const FrameInventory &inventory = FrameInventory::Bundled());

// Canonical JSON-lines serialization.
std::string SerializeCorpus(std::span<const SentencePair> pairs);
std::string SerializePair(const SentencePair &pair);

// Checks structural invariants of one sentence without an inventory
// (ranges, duplicate predicate anchors, span/predicate overlap, NFC).
// Throws Error on the first violation.
void CheckSentence(const Sentence &sentence);

enum class ViolationKind {
  kUnknownFrame,
  kUnknownRole,
  // Strict mode only: role is not part of the frame's argument structure.
  kRoleOutsideStructure,
};

struct Violation {
  ViolationKind kind;
  int predicate = -1;
  int argument = -1;
  std::string label;

  bool operator==(const Violation &) const = default;
};

std::vector<Violation> ValidateAgainstInventory(
    const Sentence &sentence, const FrameInventory &inventory,
    bool strict = false);

// Removes predicates whose surface is in `stoplist` (and their arguments)
// from both sides of every pair. Gold alignments are kept.
std::vector<SentencePair> StripPredicates(
    std::span<const SentencePair> pairs,
    std::span<const std::string> stoplist);

// Light verbs shipped as the default exclusion list.
std::span<const std::string> DefaultLightVerbs();

}  // namespace crossproj

#endif  // CROSSPROJ_CORPUS_H_

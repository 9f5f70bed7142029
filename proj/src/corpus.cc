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

#include "crossproj/corpus.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <iterator>
#include <set>
#include <sstream>

#include "corpus_json.h"
#include "crossproj/error.h"
#include "unicode.h"

namespace crossproj {

namespace {

constexpr std::array<std::string_view, 8> kPosNames = {
    "VERB", "NOUN", "ADJ", "ADV", "ADP", "AUX", "PART", "OTHER"};

}  // namespace

std::string_view PosName(Pos pos) {
  return kPosNames[static_cast<size_t>(pos)];
}

std::optional<Pos> ParsePos(std::string_view name) {
  for (size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == name) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

int Sentence::PredicateAt(int token) const {
  for (size_t i = 0; i < predicates.size(); ++i) {
    if (predicates[i].token == token) return static_cast<int>(i);
  }
  return -1;
}

SentencePair SentencePair::Swapped() const {
  SentencePair out{id, target, source, std::nullopt};
  if (gold_alignment) {
    std::vector<TokenPair> links;
    links.reserve(gold_alignment->size());
    for (const auto &[s, t] : *gold_alignment) links.emplace_back(t, s);
    std::sort(links.begin(), links.end());
    out.gold_alignment = std::move(links);
  }
  return out;
}

bool IsValidSense(std::string_view sense) {
  if (sense.size() != 12 || sense.substr(0, 3) != "bn:" || sense.back() != 'v')
    return false;
  return std::all_of(sense.begin() + 3, sense.end() - 1, [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

void CheckSentence(const Sentence &s) {
  if (s.lang.empty()) throw Error(ErrorCode::kInvalidRecord, "empty lang");
  const int n = s.size();
  for (int i = 0; i < n; ++i) {
    const Token &t = s.tokens[i];
    if (t.index != i) {
      throw Error(ErrorCode::kInvalidRecord,
                  "token index " + std::to_string(t.index) + " at position " +
                      std::to_string(i));
    }
    if (t.surface.empty()) {
      throw Error(ErrorCode::kInvalidRecord,
                  "empty surface at token " + std::to_string(i));
    }
    if (!internal::IsNfc(t.surface)) {
      throw Error(ErrorCode::kInvalidRecord,
                  "surface not NFC at token " + std::to_string(i));
    }
  }
  std::set<int> anchors;
  for (const Predicate &p : s.predicates) {
    if (p.token < 0 || p.token >= n) {
      throw Error(ErrorCode::kSpanOutOfRange,
                  "predicate token " + std::to_string(p.token) +
                      " outside sentence of " + std::to_string(n));
    }
    if (!anchors.insert(p.token).second) {
      throw Error(ErrorCode::kInvalidRecord,
                  "two predicates on token " + std::to_string(p.token));
    }
    if (p.sense && !IsValidSense(*p.sense)) {
      throw Error(ErrorCode::kInvalidRecord, "bad sense id '" + *p.sense + "'");
    }
  }
  for (const Argument &a : s.arguments) {
    if (a.predicate < 0 ||
        a.predicate >= static_cast<int>(s.predicates.size())) {
      throw Error(ErrorCode::kInvalidRecord,
                  "argument names missing predicate " +
                      std::to_string(a.predicate));
    }
    if (a.start < 0 || a.start > a.end || a.end >= n) {
      throw Error(ErrorCode::kSpanOutOfRange,
                  "span [" + std::to_string(a.start) + ", " +
                      std::to_string(a.end) + "] outside sentence of " +
                      std::to_string(n));
    }
    int anchor = s.predicates[a.predicate].token;
    if (a.start <= anchor && anchor <= a.end) {
      throw Error(ErrorCode::kSpanOutOfRange,
                  "span [" + std::to_string(a.start) + ", " +
                      std::to_string(a.end) + "] covers its predicate token " +
                      std::to_string(anchor));
    }
  }
}

namespace internal {

std::string DumpCanonical(const Json &value) {
  return value.dump(-1, ' ', false, Json::error_handler_t::strict);
}

Json SentenceToJson(const Sentence &s) {
  Json tokens = Json::array();
  for (const Token &t : s.tokens) {
    tokens.push_back({{"pos", PosName(t.pos)}, {"surface", t.surface}});
  }
  Json predicates = Json::array();
  for (const Predicate &p : s.predicates) {
    predicates.push_back(
        {{"frame", p.frame},
         {"sense", p.sense ? Json(*p.sense) : Json(nullptr)},
         {"token", p.token}});
  }
  Json arguments = Json::array();
  for (const Argument &a : s.arguments) {
    arguments.push_back({{"end", a.end},
                         {"predicate", a.predicate},
                         {"role", a.role},
                         {"start", a.start}});
  }
  return {{"arguments", std::move(arguments)},
          {"lang", s.lang},
          {"predicates", std::move(predicates)},
          {"tokens", std::move(tokens)}};
}

Json PairToJson(const SentencePair &pair) {
  Json gold = nullptr;
  if (pair.gold_alignment) {
    gold = Json::array();
    for (const auto &[s, t] : *pair.gold_alignment) gold.push_back({s, t});
  }
  return {{"gold_alignment", std::move(gold)},
          {"id", pair.id},
          {"source", SentenceToJson(pair.source)},
          {"target", SentenceToJson(pair.target)}};
}

const Json &Field(const Json &object, std::string_view key, int line) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw Error(ErrorCode::kMalformedJson,
                "missing field '" + std::string(key) + "'", line);
  }
  return *it;
}

int AsInt(const Json &value, int line, std::string_view what) {
  if (!value.is_number_integer()) {
    throw Error(ErrorCode::kMalformedJson,
                "'" + std::string(what) + "' is not an integer", line);
  }
  int64_t v = value.get<int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) {
    throw Error(ErrorCode::kSpanOutOfRange,
                "'" + std::string(what) + "' out of range", line);
  }
  return static_cast<int>(v);
}

int IntField(const Json &object, std::string_view key, int line) {
  return AsInt(Field(object, key, line), line, key);
}

std::string StringField(const Json &object, std::string_view key, int line) {
  const Json &v = Field(object, key, line);
  if (!v.is_string()) {
    throw Error(ErrorCode::kMalformedJson,
                "'" + std::string(key) + "' is not a string", line);
  }
  return v.get<std::string>();
}

namespace {

void RequireObject(const Json &v, std::string_view what, int line,
                   std::initializer_list<std::string_view> keys) {
  if (!v.is_object()) {
    throw Error(ErrorCode::kMalformedJson,
                std::string(what) + " is not an object", line);
  }
  for (const auto &[key, unused] : v.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(ErrorCode::kMalformedJson,
                  "unexpected field '" + key + "' in " + std::string(what),
                  line);
    }
  }
}

const Json &ArrayField(const Json &object, std::string_view key, int line) {
  const Json &v = Field(object, key, line);
  if (!v.is_array()) {
    throw Error(ErrorCode::kMalformedJson,
                "'" + std::string(key) + "' is not an array", line);
  }
  return v;
}

// Re-raises structural errors with the record's line number.
template <typename Fn>
void AtLine(int line, Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    if (e.line() != 0) throw;
    throw Error(e.code(), e.detail(), line);
  }
}

}  // namespace

Sentence SentenceFromJson(const Json &v, int line,
                          const FrameInventory &inventory) {
  RequireObject(v, "sentence", line,
                {"arguments", "lang", "predicates", "tokens"});
  Sentence s;
  s.lang = StringField(v, "lang", line);
  for (const Json &t : ArrayField(v, "tokens", line)) {
    RequireObject(t, "token", line, {"pos", "surface"});
    std::string pos_name = StringField(t, "pos", line);
    std::optional<Pos> pos = ParsePos(pos_name);
    if (!pos) {
      throw Error(ErrorCode::kUnknownPos, "unknown POS '" + pos_name + "'",
                  line);
    }
    s.tokens.push_back({static_cast<int>(s.tokens.size()),
                        NormalizeNfc(StringField(t, "surface", line)), *pos});
  }
  for (const Json &p : ArrayField(v, "predicates", line)) {
    RequireObject(p, "predicate", line, {"frame", "sense", "token"});
    Predicate pred;
    pred.token = IntField(p, "token", line);
    pred.frame = StringField(p, "frame", line);
    if (!inventory.HasFrame(pred.frame)) {
      throw Error(ErrorCode::kUnknownFrame,
                  "unknown frame '" + pred.frame + "'", line);
    }
    auto sense = p.find("sense");
    if (sense != p.end() && !sense->is_null()) {
      if (!sense->is_string()) {
        throw Error(ErrorCode::kMalformedJson, "'sense' is not a string",
                    line);
      }
      pred.sense = sense->get<std::string>();
    }
    s.predicates.push_back(std::move(pred));
  }
  for (const Json &a : ArrayField(v, "arguments", line)) {
    RequireObject(a, "argument", line, {"end", "predicate", "role", "start"});
    Argument arg;
    arg.predicate = IntField(a, "predicate", line);
    arg.role = StringField(a, "role", line);
    arg.start = IntField(a, "start", line);
    arg.end = IntField(a, "end", line);
    if (!inventory.HasRole(arg.role)) {
      throw Error(ErrorCode::kUnknownRole, "unknown role '" + arg.role + "'",
                  line);
    }
    s.arguments.push_back(std::move(arg));
  }
  AtLine(line, [&] { CheckSentence(s); });
  return s;
}

SentencePair PairFromJson(const Json &v, int line,
                          const FrameInventory &inventory,
                          std::initializer_list<std::string_view> extra_keys) {
  if (!v.is_object()) {
    throw Error(ErrorCode::kMalformedJson, "record is not an object", line);
  }
  for (const auto &[key, unused] : v.items()) {
    bool known = key == "id" || key == "source" || key == "target" ||
                 key == "gold_alignment" ||
                 std::find(extra_keys.begin(), extra_keys.end(), key) !=
                     extra_keys.end();
    if (!known) {
      throw Error(ErrorCode::kMalformedJson,
                  "unexpected field '" + key + "' in record", line);
    }
  }
  SentencePair pair;
  pair.id = StringField(v, "id", line);
  pair.source = SentenceFromJson(Field(v, "source", line), line, inventory);
  pair.target = SentenceFromJson(Field(v, "target", line), line, inventory);
  if (pair.source.lang == pair.target.lang) {
    throw Error(ErrorCode::kInvalidRecord,
                "source and target share lang '" + pair.source.lang + "'",
                line);
  }
  auto gold = v.find("gold_alignment");
  if (gold != v.end() && !gold->is_null()) {
    if (!gold->is_array()) {
      throw Error(ErrorCode::kMalformedJson,
                  "'gold_alignment' is not an array", line);
    }
    std::vector<TokenPair> links;
    for (const Json &link : *gold) {
      if (!link.is_array() || link.size() != 2) {
        throw Error(ErrorCode::kMalformedJson,
                    "gold link is not a [source, target] pair", line);
      }
      int s = AsInt(link[0], line, "gold source");
      int t = AsInt(link[1], line, "gold target");
      if (s < 0 || s >= pair.source.size() || t < 0 ||
          t >= pair.target.size()) {
        throw Error(ErrorCode::kSpanOutOfRange,
                    "gold link [" + std::to_string(s) + ", " +
                        std::to_string(t) + "] out of range",
                    line);
      }
      links.emplace_back(s, t);
    }
    pair.gold_alignment = std::move(links);
  }
  return pair;
}

void ForEachJsonLine(std::string_view data,
                     const std::function<void(const Json &, int)> &fn) {
  int line = 0;
  size_t pos = 0;
  while (pos < data.size()) {
    size_t nl = data.find('\n', pos);
    size_t end = nl == std::string_view::npos ? data.size() : nl;
    std::string_view text = data.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    bool blank = std::all_of(text.begin(), text.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c));
    });
    if (blank) continue;
    Json value = Json::parse(text, nullptr, false);
    if (value.is_discarded()) {
      throw Error(ErrorCode::kMalformedJson, "invalid JSON", line);
    }
    fn(value, line);
  }
}

}  // namespace internal

std::vector<SentencePair> ParseCorpus(std::string_view data,
                                      const FrameInventory &inventory) {
  return ParseCorpus(data, inventory, nullptr);
}

std::vector<SentencePair> ParseCorpus(std::string_view data,
                                      const FrameInventory &inventory,
                                      std::vector<int> *lines) {
  std::vector<SentencePair> pairs;
  std::set<std::string, std::less<>> ids;
  internal::ForEachJsonLine(data, [&](const internal::Json &v, int line) {
    pairs.push_back(internal::PairFromJson(v, line, inventory));
    if (!ids.insert(pairs.back().id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "pair id '" + pairs.back().id + "' repeated", line);
    }
    if (lines != nullptr) lines->push_back(line);
  });
  return pairs;
}

std::vector<SentencePair> ParseCorpus(std::istream &in,
                                      const FrameInventory &inventory) {
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return ParseCorpus(data, inventory);
}

std::string SerializePair(const SentencePair &pair) {
  return internal::DumpCanonical(internal::PairToJson(pair)) + "\n";
}

std::string SerializeCorpus(std::span<const SentencePair> pairs) {
  std::string out;
  for (const SentencePair &pair : pairs) out += SerializePair(pair);
  return out;
}

std::vector<Violation> ValidateAgainstInventory(
    const Sentence &sentence, const FrameInventory &inventory, bool strict) {
  std::vector<Violation> out;
  for (size_t i = 0; i < sentence.predicates.size(); ++i) {
    const Predicate &p = sentence.predicates[i];
    if (!inventory.HasFrame(p.frame)) {
      out.push_back({ViolationKind::kUnknownFrame, static_cast<int>(i), -1,
                     p.frame});
    }
  }
  for (size_t j = 0; j < sentence.arguments.size(); ++j) {
    const Argument &a = sentence.arguments[j];
    if (!inventory.HasRole(a.role)) {
      out.push_back({ViolationKind::kUnknownRole, a.predicate,
                     static_cast<int>(j), a.role});
      continue;
    }
    if (!strict || a.predicate < 0 ||
        a.predicate >= static_cast<int>(sentence.predicates.size())) {
      continue;
    }
    const std::set<std::string> *structure =
        inventory.ArgumentStructure(sentence.predicates[a.predicate].frame);
    if (structure != nullptr && structure->count(a.role) == 0) {
      out.push_back({ViolationKind::kRoleOutsideStructure, a.predicate,
                     static_cast<int>(j), a.role});
    }
  }
  return out;
}

std::vector<SentencePair> StripPredicates(
    std::span<const SentencePair> pairs,
    std::span<const std::string> stoplist) {
  auto strip = [&](const Sentence &in) {
    Sentence out = in;
    out.predicates.clear();
    out.arguments.clear();
    std::vector<int> remap(in.predicates.size(), -1);
    for (size_t i = 0; i < in.predicates.size(); ++i) {
      const std::string &surface = in.tokens[in.predicates[i].token].surface;
      if (std::find(stoplist.begin(), stoplist.end(), surface) !=
          stoplist.end()) {
        continue;
      }
      remap[i] = static_cast<int>(out.predicates.size());
      out.predicates.push_back(in.predicates[i]);
    }
    for (const Argument &a : in.arguments) {
      if (remap[a.predicate] < 0) continue;
      Argument moved = a;
      moved.predicate = remap[a.predicate];
      out.arguments.push_back(std::move(moved));
    }
    return out;
  };
  std::vector<SentencePair> out;
  out.reserve(pairs.size());
  for (const SentencePair &pair : pairs) {
    out.push_back({pair.id, strip(pair.source), strip(pair.target),
                   pair.gold_alignment});
  }
  return out;
}

std::span<const std::string> DefaultLightVerbs() {
  static const std::array<std::string, 5> kLightVerbs = {
      "开展", "作出", "受到", "获得", "得到"};
  return kLightVerbs;
}

}  // namespace crossproj

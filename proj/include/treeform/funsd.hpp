#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treeform/errors.hpp"

namespace treeform {

struct BoundingBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  bool operator==(const BoundingBox&) const = default;
};

enum class Label { Header, Question, Answer, Other };

const char* to_string(Label label);
std::optional<Label> label_from_string(const std::string& s);

struct Word {
  std::string text;
  BoundingBox box;
  bool operator==(const Word&) const = default;
};

struct Entity {
  int id = 0;
  std::string text;
  Label label = Label::Other;
  std::optional<BoundingBox> box;
  std::vector<Word> words;

  bool operator==(const Entity&) const = default;
};

// Directed entity link, stored once per logical link (FUNSD files repeat
// each link on both endpoint entities).
struct Link {
  int from = 0;
  int to = 0;
  auto operator<=>(const Link&) const = default;
};

struct FunsdDocument {
  std::vector<Entity> entities;
  std::vector<Link> links;  // deduplicated, no self-links, sorted
  std::optional<int> page_width;
  std::optional<int> page_height;

  bool operator==(const FunsdDocument&) const = default;

  const Entity* find(int id) const;
  bool has_entity(int id) const { return find(id) != nullptr; }
  // Page extent: stored dimension, or the maximum box extent when absent.
  int effective_page_width() const;
  int effective_page_height() const;
};

struct ValidationIssue {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Warning;
  std::optional<int> entity_id;
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

struct ParsedFunsd {
  FunsdDocument doc;
  std::vector<ValidationIssue> warnings;  // normalization notes (self-links etc.)
};

// Accepts both the bare array-of-entities shape and {"form": [...]}.
// Throws ParseError on malformed JSON, SchemaError on shape violations.
ParsedFunsd parse_funsd(const std::string& raw);

std::string serialize_funsd(const FunsdDocument& doc);

// Consistency checks; never throws, never mutates. Issues ordered by
// (entity_id, message) with document-level issues first.
std::vector<ValidationIssue> validate(const FunsdDocument& doc);

}  // namespace treeform

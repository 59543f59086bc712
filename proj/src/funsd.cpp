#include "treeform/funsd.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace treeform {

using nlohmann::json;

const char* to_string(Label label) {
  switch (label) {
    case Label::Header: return "header";
    case Label::Question: return "question";
    case Label::Answer: return "answer";
    case Label::Other: return "other";
  }
  return "other";
}

std::optional<Label> label_from_string(const std::string& s) {
  if (s == "header") return Label::Header;
  if (s == "question") return Label::Question;
  if (s == "answer") return Label::Answer;
  if (s == "other") return Label::Other;
  return std::nullopt;
}

const Entity* FunsdDocument::find(int id) const {
  for (const Entity& e : entities)
    if (e.id == id) return &e;
  return nullptr;
}

int FunsdDocument::effective_page_width() const {
  if (page_width) return *page_width;
  int w = 0;
  for (const Entity& e : entities)
    if (e.box) w = std::max(w, e.box->x1);
  return w;
}

int FunsdDocument::effective_page_height() const {
  if (page_height) return *page_height;
  int h = 0;
  for (const Entity& e : entities)
    if (e.box) h = std::max(h, e.box->y1);
  return h;
}

namespace {

BoundingBox parse_box(const json& j, const std::string& path,
                      std::vector<ValidationIssue>* warnings, int entity_id) {
  if (!j.is_array() || j.size() != 4 || !j[0].is_number())
    throw SchemaError("box must be an array of four numbers", path);
  BoundingBox b{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
  auto warn = [&](const char* msg) {
    if (warnings)
      warnings->push_back({ValidationIssue::Severity::Warning, entity_id, msg});
  };
  if (b.x0 > b.x1) { std::swap(b.x0, b.x1); warn("box x-coordinates reversed"); }
  if (b.y0 > b.y1) { std::swap(b.y0, b.y1); warn("box y-coordinates reversed"); }
  if (b.x0 < 0 || b.y0 < 0) {
    b.x0 = std::max(b.x0, 0);
    b.y0 = std::max(b.y0, 0);
    b.x1 = std::max(b.x1, 0);
    b.y1 = std::max(b.y1, 0);
    warn("negative box coordinate clamped to 0");
  }
  return b;
}

const json& require_field(const json& e, const char* key, const std::string& path) {
  auto it = e.find(key);
  if (it == e.end())
    throw SchemaError(std::string("missing required field `") + key + "`", path);
  return *it;
}

}  // namespace

ParsedFunsd parse_funsd(const std::string& raw) {
  json root;
  try {
    root = json::parse(raw);
  } catch (const json::parse_error& err) {
    throw ParseError(err.what(), err.byte);
  }

  ParsedFunsd out;
  const json* form = nullptr;
  if (root.is_array()) {
    form = &root;
  } else if (root.is_object() && root.contains("form")) {
    if (!root["form"].is_array())
      throw SchemaError("`form` must be an array", "/form");
    form = &root["form"];
    if (root.contains("page_width")) out.doc.page_width = root["page_width"].get<int>();
    if (root.contains("page_height")) out.doc.page_height = root["page_height"].get<int>();
  } else {
    throw SchemaError("expected an entity array or an object with a `form` key");
  }

  std::set<Link> links;
  std::unordered_set<int> seen_ids;
  std::vector<std::pair<int, int>> raw_links;
  for (std::size_t i = 0; i < form->size(); ++i) {
    const json& je = (*form)[i];
    std::string path = "/form/" + std::to_string(i);
    if (!je.is_object()) throw SchemaError("entity must be an object", path);

    Entity e;
    const json& jid = require_field(je, "id", path);
    if (!jid.is_number_integer()) throw SchemaError("`id` must be an integer", path);
    e.id = jid.get<int>();
    if (!seen_ids.insert(e.id).second)
      throw SchemaError("duplicate entity id " + std::to_string(e.id), path);

    const json& jtext = require_field(je, "text", path);
    if (!jtext.is_string()) throw SchemaError("`text` must be a string", path);
    e.text = jtext.get<std::string>();

    const json& jlabel = require_field(je, "label", path);
    if (!jlabel.is_string()) throw SchemaError("`label` must be a string", path);
    auto label = label_from_string(jlabel.get<std::string>());
    if (!label)
      throw SchemaError("unknown label `" + jlabel.get<std::string>() + "`", path);
    e.label = *label;

    const json& jlinking = require_field(je, "linking", path);
    if (!jlinking.is_array()) throw SchemaError("`linking` must be an array", path);
    for (const json& jl : jlinking) {
      if (!jl.is_array() || jl.size() != 2 || !jl[0].is_number_integer())
        throw SchemaError("link must be a pair of integers", path);
      raw_links.emplace_back(jl[0].get<int>(), jl[1].get<int>());
    }

    if (je.contains("box") && !je["box"].is_null())
      e.box = parse_box(je["box"], path + "/box", &out.warnings, e.id);
    if (je.contains("words") && je["words"].is_array()) {
      for (const json& jw : je["words"]) {
        Word w;
        w.text = jw.value("text", std::string());
        if (jw.contains("box")) w.box = parse_box(jw["box"], path + "/words", nullptr, e.id);
        e.words.push_back(std::move(w));
      }
    }
    out.doc.entities.push_back(std::move(e));
  }

  for (auto [from, to] : raw_links) {
    if (from == to) {
      // Record the warning once per distinct self-link.
      ValidationIssue issue{ValidationIssue::Severity::Warning, from,
                            "self-link removed"};
      if (std::find(out.warnings.begin(), out.warnings.end(), issue) ==
          out.warnings.end())
        out.warnings.push_back(issue);
      continue;
    }
    links.insert({from, to});
  }
  out.doc.links.assign(links.begin(), links.end());
  return out;
}

std::string serialize_funsd(const FunsdDocument& doc) {
  json form = json::array();
  for (const Entity& e : doc.entities) {
    json je;
    je["id"] = e.id;
    je["text"] = e.text;
    je["label"] = to_string(e.label);
    json linking = json::array();
    for (const Link& l : doc.links)
      if (l.from == e.id) linking.push_back(json::array({l.from, l.to}));
    je["linking"] = std::move(linking);
    if (e.box) je["box"] = json::array({e.box->x0, e.box->y0, e.box->x1, e.box->y1});
    if (!e.words.empty()) {
      json words = json::array();
      for (const Word& w : e.words)
        words.push_back({{"text", w.text},
                         {"box", json::array({w.box.x0, w.box.y0, w.box.x1, w.box.y1})}});
      je["words"] = std::move(words);
    }
    form.push_back(std::move(je));
  }
  json root;
  root["form"] = std::move(form);
  if (doc.page_width) root["page_width"] = *doc.page_width;
  if (doc.page_height) root["page_height"] = *doc.page_height;
  return root.dump(2) + "\n";
}

std::vector<ValidationIssue> validate(const FunsdDocument& doc) {
  std::vector<ValidationIssue> issues;
  auto error = [&](std::optional<int> id, std::string msg) {
    issues.push_back({ValidationIssue::Severity::Error, id, std::move(msg)});
  };
  auto warning = [&](std::optional<int> id, std::string msg) {
    issues.push_back({ValidationIssue::Severity::Warning, id, std::move(msg)});
  };

  std::set<Link> seen;
  for (const Link& l : doc.links) {
    if (!doc.has_entity(l.from)) error(l.from, "dangling link source");
    if (!doc.has_entity(l.to)) error(l.to, "dangling link target");
    if (!seen.insert(l).second) warning(l.from, "duplicate link");
  }

  for (const Entity& e : doc.entities) {
    if (e.label == Label::Other) warning(e.id, "entity labeled `other`");
    if (e.label == Label::Answer) {
      bool prompted = false;
      for (const Link& l : doc.links) {
        const Entity* from = doc.find(l.from);
        if (l.to == e.id && from && from->label == Label::Question) prompted = true;
      }
      if (!prompted) warning(e.id, "unprompted answer");
    }
    if (e.label == Label::Question) {
      bool answered = false;
      for (const Link& l : doc.links) {
        const Entity* to = doc.find(l.to);
        if (l.from == e.id && to && to->label == Label::Answer) answered = true;
      }
      if (!answered) warning(e.id, "unanswered question");
    }
  }

  std::stable_sort(issues.begin(), issues.end(),
                   [](const ValidationIssue& a, const ValidationIssue& b) {
                     int ia = a.entity_id.value_or(-1);
                     int ib = b.entity_id.value_or(-1);
                     if (ia != ib) return ia < ib;
                     return a.message < b.message;
                   });
  return issues;
}

}  // namespace treeform

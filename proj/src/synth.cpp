#include "treeform/synth.hpp"

#include <algorithm>
#include <stdexcept>

namespace treeform {

namespace {

// splitmix64; fixed algorithm so fixtures are stable across platforms.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state = splitmix64(state + 1);
    return state;
  }
  int range(const IntRange& r) {
    if (r.hi <= r.lo) return r.lo;
    return r.lo + static_cast<int>(next() % static_cast<std::uint64_t>(r.hi - r.lo + 1));
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

const std::vector<std::string>& default_vocabulary() {
  static const std::vector<std::string> words = {
      "account", "address", "agency",  "amount",  "branch",  "city",
      "company", "contact", "county",  "date",    "dept",    "district",
      "email",   "fax",     "form",    "item",    "manager", "name",
      "number",  "office",  "order",   "phone",   "product", "quantity",
      "region",  "report",  "sender",  "signature", "state", "status",
      "subject", "title",   "total",   "type",    "unit",    "zip"};
  return words;
}

namespace {

struct Builder {
  const SynthConfig& cfg;
  Rng rng;
  FunsdDocument doc;
  int next_id = 0;
  int text_counter = 0;
  int y = 40;
  const std::vector<std::string>& vocab;

  Builder(const SynthConfig& c) : cfg(c), rng(c.seed), vocab(c.vocabulary) {}

  std::string fresh_text() {
    const std::string& w = vocab[rng.next() % vocab.size()];
    return w + " " + std::to_string(text_counter++);
  }

  int add_entity(std::string text, Label label, int x0, int y0, int w, int h) {
    Entity e;
    e.id = next_id++;
    e.text = std::move(text);
    e.label = label;
    e.box = BoundingBox{x0, y0, x0 + w, y0 + h};
    doc.entities.push_back(std::move(e));
    return doc.entities.back().id;
  }
  void link(int from, int to) { doc.links.push_back({from, to}); }
};

}  // namespace

SynthForm generate(const SynthConfig& config) {
  if (config.vocabulary.empty())
    throw std::invalid_argument("empty vocabulary");

  Builder b(config);
  int sections = b.rng.range(config.sections);

  struct Section {
    TreeFormNode node{NodeKind::Header, "", {}};
  };
  std::vector<TreeFormNode> section_nodes;

  for (int s = 0; s < sections; ++s) {
    std::string title = b.fresh_text();
    int header_id = b.add_entity(title, Label::Header, 40, b.y, 300, 24);
    b.y += 48;
    TreeFormNode node{NodeKind::Header, "", {TreeFormNode::leaf(title)}};

    std::vector<TreeFormNode> questions, entries;
    int qa = b.rng.range(config.qa_per_section);
    for (int q = 0; q < qa; ++q) {
      std::string qt = b.fresh_text();
      std::string at = b.fresh_text();
      int qid = b.add_entity(qt, Label::Question, 70, b.y, 180, 20);
      int aid = b.add_entity(at, Label::Answer, 430, b.y, 180, 20);
      b.link(header_id, qid);
      b.link(qid, aid);
      b.y += 48;
      questions.push_back(TreeFormNode::question(qt, at));
    }

    if (b.rng.uniform() < config.table_probability) {
      int cols = b.rng.range(config.table_cols);
      int rows = b.rng.range(config.table_rows);
      int ty = b.y;
      std::vector<int> col_qids;
      std::vector<std::string> col_texts;
      for (int c = 0; c < cols; ++c) {
        std::string qt = b.fresh_text();
        int qid = b.add_entity(qt, Label::Question, 70 + 230 * c, ty, 180, 20);
        b.link(header_id, qid);
        col_qids.push_back(qid);
        col_texts.push_back(std::move(qt));
      }
      std::vector<std::vector<std::string>> cell_texts(rows,
                                                       std::vector<std::string>(cols));
      for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) {
          std::string at = b.fresh_text();
          int aid = b.add_entity(at, Label::Answer, 70 + 230 * c,
                                 ty + 48 * (r + 1), 180, 20);
          b.link(col_qids[c], aid);
          cell_texts[r][c] = std::move(at);
        }
      b.y = ty + 48 * (rows + 1);
      for (int r = 0; r < rows; ++r) {
        TreeFormNode entry{NodeKind::Entry, "", {}};
        for (int c = 0; c < cols; ++c)
          entry.children.push_back(
              TreeFormNode::question(col_texts[c], cell_texts[r][c]));
        entries.push_back(std::move(entry));
      }
    }

    for (auto& q : questions) node.children.push_back(std::move(q));
    for (auto& e : entries) node.children.push_back(std::move(e));
    section_nodes.push_back(std::move(node));
  }

  SynthForm out;
  out.funsd = std::move(b.doc);
  std::sort(out.funsd.links.begin(), out.funsd.links.end());
  out.funsd.page_width = std::max(config.page_width, 700);
  out.funsd.page_height = std::max(config.page_height, b.y + 40);

  if (section_nodes.empty()) {
    // nothing generated
  } else if (section_nodes.size() == 1) {
    out.treeform.roots.push_back(std::move(section_nodes[0]));
  } else {
    // The topmost header is the form title and adopts the other sections,
    // which sort before its own questions in canonical child order.
    TreeFormNode root = std::move(section_nodes[0]);
    std::vector<TreeFormNode> merged;
    for (TreeFormNode& c : root.children)
      if (c.kind == NodeKind::Value) merged.push_back(std::move(c));
    for (std::size_t s = 1; s < section_nodes.size(); ++s)
      merged.push_back(std::move(section_nodes[s]));
    for (TreeFormNode& c : root.children)
      if (c.kind == NodeKind::Question) merged.push_back(std::move(c));
    for (TreeFormNode& c : root.children)
      if (c.kind == NodeKind::Entry) merged.push_back(std::move(c));
    root.children = std::move(merged);
    out.treeform.roots.push_back(std::move(root));
  }
  return out;
}

std::vector<SynthForm> generate_corpus(const SynthConfig& config, int count) {
  std::vector<SynthForm> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    SynthConfig c = config;
    c.seed = config.seed ^ static_cast<std::uint64_t>(i);
    out[static_cast<std::size_t>(i)] = generate(c);
  }
  return out;
}

namespace {

// Stable per-element draw: raising a rate never un-perturbs an element.
double element_uniform(std::uint64_t seed, std::uint64_t tag, std::uint64_t a,
                       std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(tag ^ splitmix64(a ^ splitmix64(b))));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::uint64_t element_hash(std::uint64_t seed, std::uint64_t tag, std::uint64_t a,
                           std::uint64_t b = 0) {
  return splitmix64(1 + splitmix64(seed ^ splitmix64(tag ^ splitmix64(a ^ splitmix64(b)))));
}

constexpr std::uint64_t kTagLabel = 0xA1;
constexpr std::uint64_t kTagLink = 0xA2;
constexpr std::uint64_t kTagChar = 0xA3;
constexpr std::uint64_t kTagSplit = 0xA4;

}  // namespace

FunsdDocument perturb(const FunsdDocument& doc, const NoiseSpec& noise) {
  FunsdDocument out = doc;

  if (noise.label_flip_rate > 0.0) {
    const Label main_labels[] = {Label::Header, Label::Question, Label::Answer};
    for (Entity& e : out.entities) {
      if (element_uniform(noise.seed, kTagLabel, static_cast<std::uint64_t>(e.id)) >=
          noise.label_flip_rate)
        continue;
      std::vector<Label> choices;
      for (Label l : main_labels)
        if (l != e.label) choices.push_back(l);
      std::uint64_t h = element_hash(noise.seed, kTagLabel,
                                     static_cast<std::uint64_t>(e.id));
      e.label = choices[h % choices.size()];
    }
  }

  if (noise.link_drop_rate > 0.0) {
    std::erase_if(out.links, [&](const Link& l) {
      return element_uniform(noise.seed, kTagLink, static_cast<std::uint64_t>(l.from),
                             static_cast<std::uint64_t>(l.to)) < noise.link_drop_rate;
    });
  }

  if (noise.char_edit_rate > 0.0) {
    for (Entity& e : out.entities) {
      for (std::size_t i = 0; i < e.text.size(); ++i) {
        if (element_uniform(noise.seed, kTagChar, static_cast<std::uint64_t>(e.id),
                            i) >= noise.char_edit_rate)
          continue;
        std::uint64_t h =
            element_hash(noise.seed, kTagChar, static_cast<std::uint64_t>(e.id), i);
        char repl = static_cast<char>('a' + h % 26);
        if (repl == e.text[i]) repl = static_cast<char>('a' + (h + 1) % 26);
        e.text[i] = repl;
      }
    }
  }

  if (noise.entity_split_rate > 0.0) {
    int next_id = 0;
    for (const Entity& e : out.entities) next_id = std::max(next_id, e.id + 1);
    std::size_t original_count = out.entities.size();
    for (std::size_t i = 0; i < original_count; ++i) {
      Entity& e = out.entities[i];
      if (e.text.size() < 2) continue;
      if (element_uniform(noise.seed, kTagSplit, static_cast<std::uint64_t>(e.id)) >=
          noise.entity_split_rate)
        continue;
      std::size_t mid = e.text.size() / 2;
      Entity tail;
      tail.id = next_id++;
      tail.text = e.text.substr(mid);
      tail.label = e.label;
      if (e.box) {
        int mx = (e.box->x0 + e.box->x1) / 2;
        tail.box = BoundingBox{mx, e.box->y0, e.box->x1, e.box->y1};
        e.box->x1 = mx;
      }
      e.text.resize(mid);
      out.entities.push_back(std::move(tail));
    }
  }
  return out;
}

}  // namespace treeform

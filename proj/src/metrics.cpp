#include "treeform/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace treeform {

using nlohmann::json;

double PRF::precision() const {
  if (tp + fp == 0) return fn == 0 ? 1.0 : 0.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double PRF::recall() const {
  if (tp + fn == 0) return fp == 0 ? 1.0 : 0.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double PRF::f1() const {
  double p = precision(), r = recall();
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

PRF tree_f1(const AggregatedTree& pred, const AggregatedTree& gt,
            const Alignment& alignment) {
  std::map<int, int> pred_to_gt;
  for (const Alignment::Pair& p : alignment.pairs) pred_to_gt[p.pred] = p.gt;

  std::set<AggregatedTree::Edge> gt_edges(gt.edges.begin(), gt.edges.end());
  PRF prf;
  for (const AggregatedTree::Edge& e : pred.edges) {
    int parent = e.parent, child = e.child;
    if (parent != kRoot) {
      auto it = pred_to_gt.find(parent);
      if (it == pred_to_gt.end()) continue;  // unaligned endpoint -> fp
      parent = it->second;
    }
    auto it = pred_to_gt.find(child);
    if (it == pred_to_gt.end()) continue;
    child = it->second;
    if (gt_edges.count({parent, child, e.label})) ++prf.tp;
  }
  prf.fp = static_cast<long long>(pred.edges.size()) - prf.tp;
  prf.fn = static_cast<long long>(gt.edges.size()) - prf.tp;
  return prf;
}

namespace {

std::vector<Label> scored_labels(const FunsdDocument& doc) {
  std::vector<Label> labels;
  for (const Entity& e : doc.entities)
    if (e.label != Label::Other) labels.push_back(e.label);
  return labels;
}

// Entity id -> index among non-`other` entities (the alignment index space).
std::map<int, int> node_index_of(const FunsdDocument& doc) {
  std::map<int, int> idx;
  int next = 0;
  for (const Entity& e : doc.entities)
    if (e.label != Label::Other) idx[e.id] = next++;
  return idx;
}

}  // namespace

PRF labeling_f1(const FunsdDocument& pred, const FunsdDocument& gt,
                const Alignment& alignment) {
  std::vector<Label> pred_labels = scored_labels(pred);
  std::vector<Label> gt_labels = scored_labels(gt);
  PRF prf;
  for (const Alignment::Pair& p : alignment.pairs) {
    if (p.pred < static_cast<int>(pred_labels.size()) &&
        p.gt < static_cast<int>(gt_labels.size()) &&
        pred_labels[p.pred] == gt_labels[p.gt])
      ++prf.tp;
  }
  prf.fp = static_cast<long long>(pred_labels.size()) - prf.tp;
  prf.fn = static_cast<long long>(gt_labels.size()) - prf.tp;
  return prf;
}

PRF linking_f1(const FunsdDocument& pred, const FunsdDocument& gt,
               const Alignment& alignment) {
  std::map<int, int> pred_idx = node_index_of(pred);
  std::map<int, int> gt_idx = node_index_of(gt);
  std::map<int, int> pred_to_gt;
  for (const Alignment::Pair& p : alignment.pairs) pred_to_gt[p.pred] = p.gt;

  auto scored_links = [](const FunsdDocument& doc, const std::map<int, int>& idx) {
    std::set<std::pair<int, int>> links;
    for (const Link& l : doc.links) {
      auto a = idx.find(l.from), b = idx.find(l.to);
      if (a != idx.end() && b != idx.end())
        links.insert({a->second, b->second});
    }
    return links;
  };
  std::set<std::pair<int, int>> pred_links = scored_links(pred, pred_idx);
  std::set<std::pair<int, int>> gt_links = scored_links(gt, gt_idx);

  PRF prf;
  for (const auto& [a, b] : pred_links) {
    auto ma = pred_to_gt.find(a), mb = pred_to_gt.find(b);
    if (ma == pred_to_gt.end() || mb == pred_to_gt.end()) continue;
    if (gt_links.count({ma->second, mb->second})) ++prf.tp;
  }
  prf.fp = static_cast<long long>(pred_links.size()) - prf.tp;
  prf.fn = static_cast<long long>(gt_links.size()) - prf.tp;
  return prf;
}

double aggregate_values(std::vector<double> values, Aggregation mode) {
  if (values.empty()) throw std::invalid_argument("empty corpus");
  if (mode == Aggregation::Mean) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

MetricReport aggregate_report(std::vector<DocScores> per_document,
                              Aggregation mode) {
  if (per_document.empty()) throw std::invalid_argument("empty corpus");
  MetricReport report;
  report.aggregation = mode;

  auto aggregate_field = [&](std::optional<double> DocScores::*field) {
    std::vector<double> values;
    for (const DocScores& d : per_document)
      if (d.*field) values.push_back(*(d.*field));
    return values.empty() ? std::optional<double>()
                          : aggregate_values(std::move(values), mode);
  };
  report.corpus.id = "corpus";
  report.corpus.labeling_f1 = aggregate_field(&DocScores::labeling_f1);
  report.corpus.linking_f1 = aggregate_field(&DocScores::linking_f1);
  report.corpus.tree_f1 = aggregate_field(&DocScores::tree_f1);
  report.corpus.naa = aggregate_field(&DocScores::naa);
  report.corpus.ganted = aggregate_field(&DocScores::ganted);
  report.per_document = std::move(per_document);
  return report;
}

namespace {

double round_to(double v, int decimals) {
  double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

std::string format_fixed(double v, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

json scores_to_json(const DocScores& d) {
  json j;
  j["id"] = d.id;
  if (d.labeling_f1) j["labeling_f1"] = round_to(*d.labeling_f1, 1);
  if (d.linking_f1) j["linking_f1"] = round_to(*d.linking_f1, 1);
  if (d.tree_f1) j["tree_f1"] = round_to(*d.tree_f1, 1);
  if (d.naa) j["naa"] = round_to(*d.naa, 2);
  if (d.ganted) j["ganted"] = round_to(*d.ganted, 1);
  return j;
}

}  // namespace

std::string report_to_json(const MetricReport& report) {
  json j;
  j["aggregation"] = report.aggregation == Aggregation::Mean ? "mean" : "median";
  json docs = json::array();
  for (const DocScores& d : report.per_document) docs.push_back(scores_to_json(d));
  j["documents"] = std::move(docs);
  j["corpus"] = scores_to_json(report.corpus);
  return j.dump(2) + "\n";
}

std::string report_to_tsv(const MetricReport& report) {
  std::string out = "document\tlabeling_f1\tlinking_f1\ttree_f1\tnaa\tganted\n";
  auto row = [&](const DocScores& d) {
    auto cell = [](const std::optional<double>& v, int decimals) {
      return v ? format_fixed(*v, decimals) : std::string("-");
    };
    out += d.id + "\t" + cell(d.labeling_f1, 1) + "\t" + cell(d.linking_f1, 1) +
           "\t" + cell(d.tree_f1, 1) + "\t" + cell(d.naa, 2) + "\t" +
           cell(d.ganted, 1) + "\n";
  };
  for (const DocScores& d : report.per_document) row(d);
  row(report.corpus);
  return out;
}

}  // namespace treeform

#include "treeform/align.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treeform {

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) { cp = c; len = 1; }
    else if ((c & 0xE0) == 0xC0) { cp = c & 0x1F; len = 2; }
    else if ((c & 0xF0) == 0xE0) { cp = c & 0x0F; len = 3; }
    else if ((c & 0xF8) == 0xF0) { cp = c & 0x07; len = 4; }
    else { out.push_back(c); ++i; continue; }
    if (i + len > s.size()) { out.push_back(c); ++i; continue; }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) { ok = false; break; }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) { out.push_back(c); ++i; continue; }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::size_t codepoint_count(std::string_view s) { return decode_utf8(s).size(); }

namespace {

std::size_t levenshtein_u32(const std::u32string& a, const std::u32string& b) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double normalized_u32(const std::u32string& a, const std::u32string& b) {
  std::size_t n = std::max(a.size(), b.size());
  if (n == 0) return 0.0;
  return static_cast<double>(levenshtein_u32(a, b)) / static_cast<double>(n);
}

std::vector<std::u32string> decode_all(const std::vector<std::string>& v) {
  std::vector<std::u32string> out;
  out.reserve(v.size());
  for (const std::string& s : v) out.push_back(decode_utf8(s));
  return out;
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein_u32(decode_utf8(a), decode_utf8(b));
}

double normalized_levenshtein(std::string_view a, std::string_view b) {
  return normalized_u32(decode_utf8(a), decode_utf8(b));
}

std::vector<double> distance_matrix_serial(const std::vector<std::string>& pred,
                                           const std::vector<std::string>& gt) {
  auto p = decode_all(pred);
  auto g = decode_all(gt);
  std::vector<double> d(p.size() * g.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      d[i * g.size() + j] = normalized_u32(p[i], g[j]);
  return d;
}

std::vector<double> distance_matrix_parallel(const std::vector<std::string>& pred,
                                             const std::vector<std::string>& gt) {
  auto p = decode_all(pred);
  auto g = decode_all(gt);
  std::vector<double> d(p.size() * g.size());
  const std::int64_t rows = static_cast<std::int64_t>(p.size());
#pragma omp parallel for schedule(dynamic) if (rows * static_cast<std::int64_t>(g.size()) > 256)
  for (std::int64_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      d[static_cast<std::size_t>(i) * g.size() + j] = normalized_u32(p[i], g[j]);
  return d;
}

int Alignment::gt_for_pred(int pred_index) const {
  for (const Pair& p : pairs)
    if (p.pred == pred_index) return p.gt;
  return -1;
}

int Alignment::pred_for_gt(int gt_index) const {
  for (const Pair& p : pairs)
    if (p.gt == gt_index) return p.pred;
  return -1;
}

Alignment greedy_align(const std::vector<std::string>& pred,
                       const std::vector<std::string>& gt, double threshold) {
  Alignment out;
  out.threshold = threshold;
  const std::size_t np = pred.size(), ng = gt.size();
  std::vector<double> dist = distance_matrix_parallel(pred, gt);
  std::vector<bool> pred_used(np, false), gt_used(ng, false);

  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    int best_p = -1, best_g = -1;
    for (std::size_t g = 0; g < ng; ++g) {
      if (gt_used[g]) continue;
      for (std::size_t p = 0; p < np; ++p) {
        if (pred_used[p]) continue;
        double d = dist[p * ng + g];
        if (d >= threshold) continue;
        if (d < best) {
          best = d;
          best_p = static_cast<int>(p);
          best_g = static_cast<int>(g);
        }
        // Equal distances keep the earlier (g, p) found by the scan order.
      }
    }
    if (best_p < 0) break;
    pred_used[best_p] = gt_used[best_g] = true;
    out.pairs.push_back({best_p, best_g, best});
  }

  for (std::size_t p = 0; p < np; ++p)
    if (!pred_used[p]) out.unaligned_pred.push_back(static_cast<int>(p));
  for (std::size_t g = 0; g < ng; ++g)
    if (!gt_used[g]) out.unaligned_gt.push_back(static_cast<int>(g));
  return out;
}

double naa(const Alignment& alignment) {
  std::size_t total = alignment.pairs.size() + alignment.unaligned_pred.size() +
                      alignment.unaligned_gt.size();
  if (total == 0) return 0.0;
  double sum = 0.0;
  for (const Alignment::Pair& p : alignment.pairs) sum += p.distance;
  sum += static_cast<double>(alignment.unaligned_pred.size());
  sum += static_cast<double>(alignment.unaligned_gt.size());
  return sum / static_cast<double>(total);
}

}  // namespace treeform

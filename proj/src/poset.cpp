#include "torusos/poset.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace torusos {

GradedPoset::GradedPoset(std::vector<std::size_t> ranks, std::vector<std::vector<bool>> leq)
    : ranks_(std::move(ranks)), leq_(std::move(leq)) {
  if (leq_.size() != ranks_.size()) throw Error(ErrorCode::ShapeMismatch, "order table has wrong size");
  for (std::size_t i = 0; i < leq_.size(); ++i) {
    if (leq_[i].size() != ranks_.size()) throw Error(ErrorCode::ShapeMismatch, "order table has wrong size");
    leq_[i][i] = true;
  }
}

GradedPoset GradedPoset::chain(std::size_t n) {
  std::vector<std::size_t> r(n);
  std::iota(r.begin(), r.end(), 0);
  std::vector<std::vector<bool>> t(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) t[i][j] = true;
  return GradedPoset(r, t);
}

GradedPoset GradedPoset::antichain(std::size_t n) {
  return GradedPoset(std::vector<std::size_t>(n, 0), std::vector<std::vector<bool>>(n, std::vector<bool>(n)));
}

std::vector<std::pair<std::size_t, std::size_t>> GradedPoset::hasse_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) {
      if (!less(i, j)) continue;
      bool cover = true;
      for (std::size_t k = 0; k < size() && cover; ++k)
        if (less(i, k) && less(k, j)) cover = false;
      if (cover) out.emplace_back(i, j);
    }
  return out;
}

Integer GradedPoset::mobius(std::size_t x, std::size_t y) const {
  if (!leq(x, y)) return 0;
  // elements of [x, y] in increasing rank order
  std::vector<std::size_t> interval;
  for (std::size_t z = 0; z < size(); ++z)
    if (leq(x, z) && leq(z, y)) interval.push_back(z);
  std::stable_sort(interval.begin(), interval.end(),
                   [&](std::size_t a, std::size_t b) { return ranks_[a] < ranks_[b]; });
  std::vector<Integer> mu(size());
  for (auto z : interval) {
    if (z == x) {
      mu[z] = 1;
      continue;
    }
    Integer sum = 0;
    for (auto w : interval)
      if (less(w, z)) sum += mu[w];
    mu[z] = -sum;
  }
  return mu[y];
}

GradedPoset GradedPoset::down_set(std::size_t top, std::vector<std::size_t>* members) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < size(); ++i)
    if (leq(i, top)) keep.push_back(i);
  std::vector<std::size_t> r;
  std::vector<std::vector<bool>> t(keep.size(), std::vector<bool>(keep.size()));
  for (std::size_t a = 0; a < keep.size(); ++a) {
    r.push_back(ranks_[keep[a]]);
    for (std::size_t b = 0; b < keep.size(); ++b) t[a][b] = leq(keep[a], keep[b]);
  }
  if (members) *members = keep;
  return GradedPoset(r, t);
}

namespace {

using Signature = std::tuple<std::size_t, std::size_t, std::size_t>;

std::vector<Signature> signatures(const GradedPoset& p) {
  std::vector<Signature> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t down = 0, up = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p.less(j, i)) ++down;
      if (p.less(i, j)) ++up;
    }
    out[i] = {p.rank(i), down, up};
  }
  return out;
}

struct Matcher {
  const GradedPoset& p;
  const GradedPoset& q;
  std::vector<Signature> sp, sq;
  std::vector<std::size_t> order;  // elements of p in assignment order
  std::vector<std::size_t> image;
  std::vector<bool> used;

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const std::size_t x = order[depth];
    for (std::size_t y = 0; y < q.size(); ++y) {
      if (used[y] || sp[x] != sq[y]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        const std::size_t z = order[k];
        if (p.leq(z, x) != q.leq(image[z], y) || p.leq(x, z) != q.leq(y, image[z])) ok = false;
      }
      if (!ok) continue;
      image[x] = y;
      used[y] = true;
      if (extend(depth + 1)) return true;
      used[y] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::size_t>> poset_isomorphic(const GradedPoset& p, const GradedPoset& q) {
  if (p.size() != q.size()) return std::nullopt;
  Matcher m{p, q, signatures(p), signatures(q), {}, std::vector<std::size_t>(p.size()),
            std::vector<bool>(q.size(), false)};
  auto a = m.sp, b = m.sq;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return std::nullopt;
  m.order.resize(p.size());
  std::iota(m.order.begin(), m.order.end(), 0);
  std::stable_sort(m.order.begin(), m.order.end(),
                   [&](std::size_t x, std::size_t y) { return p.rank(x) < p.rank(y); });
  if (!m.extend(0)) return std::nullopt;
  return m.image;
}

}  // namespace torusos

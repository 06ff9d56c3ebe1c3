#include "torusos/hyperplane.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace torusos {

struct CentralArrangement::Impl {
  std::size_t dim = 0;
  std::vector<IntVector> normals;
  std::vector<std::size_t> labels;
  std::vector<unsigned char> rank;  // indexed by mask
  std::vector<IndexSet> circuits;
  std::vector<IndexSet> broken;
};

namespace {

std::size_t rank_of(const std::vector<IntVector>& normals, std::size_t dim, IndexSet s) {
  std::vector<IntVector> rows;
  for (auto i : elements(s)) rows.push_back(normals[i]);
  return rank(IntMatrix::from_rows(rows, dim));
}

}  // namespace

std::shared_ptr<const CentralArrangement::Impl> CentralArrangement::make(std::size_t dim,
                                                                         const std::vector<IntVector>& normals,
                                                                         const std::vector<std::size_t>& labels) {
  if (labels.size() != normals.size()) throw Error(ErrorCode::ShapeMismatch, "one label per normal required");
  auto impl = std::make_shared<CentralArrangement::Impl>();
  impl->dim = dim;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const auto& v = normals[i];
    if (v.size() != dim) throw Error(ErrorCode::ShapeMismatch, "normal has wrong length");
    if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; }))
      throw Error(ErrorCode::InvalidArgument, "zero normal vector");
    bool duplicate = false;
    for (const auto& w : impl->normals)
      if (torusos::rank(IntMatrix::from_rows({v, w}, dim)) == 1) {
        duplicate = true;
        break;
      }
    if (duplicate) continue;
    impl->normals.push_back(v);
    impl->labels.push_back(labels[i]);
  }
  const std::size_t n = impl->normals.size();
  if (n > max_ground_set())
    throw Error(ErrorCode::TooManyHypertori,
                "arrangement has " + std::to_string(n) + " hyperplanes; the limit is " +
                    std::to_string(max_ground_set()) + " (raise with TORUSOS_MAX_N)");
  const IndexSet total = full_set(n);
  impl->rank.assign(std::size_t{1} << n, 0);
  for (IndexSet s = 1; s <= total && s != 0; ++s) {
    // adding one vector raises the rank by at most one
    const std::size_t top = static_cast<std::size_t>(31 - std::countl_zero(s));
    const IndexSet rest = s & ~singleton(top);
    const std::size_t base = impl->rank[rest];
    if (base == dim) {
      impl->rank[s] = static_cast<unsigned char>(base);
    } else {
      impl->rank[s] = static_cast<unsigned char>(rank_of(impl->normals, dim, s));
    }
    if (s == total) break;
  }
  for (IndexSet s = 1; s <= total && s != 0; ++s) {
    const std::size_t size = popcount(s);
    if (static_cast<std::size_t>(impl->rank[s]) + 1 == size) {
      bool minimal = true;
      for (auto x : elements(s))
        if (impl->rank[s & ~singleton(x)] != size - 1) {
          minimal = false;
          break;
        }
      if (minimal) {
        impl->circuits.push_back(s);
        impl->broken.push_back(s & (s - 1));
      }
    }
    if (s == total) break;
  }
  return impl;
}

namespace {

std::vector<std::size_t> iota_labels(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

CentralArrangement::CentralArrangement() : impl_(make(0, {}, {})) {}

CentralArrangement::CentralArrangement(std::size_t dim, const std::vector<IntVector>& normals)
    : impl_(make(dim, normals, iota_labels(normals.size()))) {}

CentralArrangement::CentralArrangement(std::size_t dim, const std::vector<IntVector>& normals,
                                       const std::vector<std::size_t>& labels)
    : impl_(make(dim, normals, labels)) {}

std::size_t CentralArrangement::dim() const { return impl_->dim; }
std::size_t CentralArrangement::size() const { return impl_->normals.size(); }
const IntVector& CentralArrangement::normal(std::size_t i) const { return impl_->normals.at(i); }
const std::vector<IntVector>& CentralArrangement::normals() const { return impl_->normals; }
std::size_t CentralArrangement::label(std::size_t i) const { return impl_->labels.at(i); }
const std::vector<std::size_t>& CentralArrangement::labels() const { return impl_->labels; }

std::optional<std::size_t> CentralArrangement::position_of_label(std::size_t label) const {
  const auto& l = impl_->labels;
  auto it = std::find(l.begin(), l.end(), label);
  if (it == l.end()) return std::nullopt;
  return static_cast<std::size_t>(it - l.begin());
}

std::size_t CentralArrangement::rank(IndexSet s) const {
  if ((s & ~ground()) != 0) throw Error(ErrorCode::IndexOutOfRange, "hyperplane index out of range");
  return impl_->rank[s];
}

std::size_t CentralArrangement::rank() const { return impl_->rank[ground()]; }

IndexSet CentralArrangement::closure(IndexSet s) const {
  const std::size_t r = rank(s);
  IndexSet out = s;
  for (std::size_t j = 0; j < size(); ++j)
    if (!contains(s, j) && impl_->rank[s | singleton(j)] == r) out |= singleton(j);
  return out;
}

const std::vector<IndexSet>& CentralArrangement::circuits() const { return impl_->circuits; }
const std::vector<IndexSet>& CentralArrangement::broken_circuits() const { return impl_->broken; }

bool CentralArrangement::is_nbc(IndexSet s) const {
  if (!independent(s)) return false;
  for (auto b : impl_->broken)
    if ((b & ~s) == 0) return false;
  return true;
}

CentralArrangement CentralArrangement::localize(IndexSet closure) const {
  std::vector<IntVector> normals;
  std::vector<std::size_t> labels;
  for (auto i : elements(closure)) {
    normals.push_back(normal(i));
    labels.push_back(label(i));
  }
  return CentralArrangement(dim(), normals, labels);
}

bool operator==(const CentralArrangement& a, const CentralArrangement& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->dim == b.impl_->dim && a.impl_->normals == b.impl_->normals && a.impl_->labels == b.impl_->labels;
}

IntersectionLattice::IntersectionLattice(const CentralArrangement& a) {
  std::vector<IndexSet> closures;
  const IndexSet total = a.ground();
  for (IndexSet s = 0;; ++s) {
    if (a.closure(s) == s) closures.push_back(s);
    if (s == total) break;
  }
  for (auto c : closures) flats_.push_back({c, a.rank(c)});
  std::sort(flats_.begin(), flats_.end(), [](const Flat& x, const Flat& y) {
    if (x.rank != y.rank) return x.rank < y.rank;
    return lex_less(x.closure, y.closure);
  });
  mobius_.resize(flats_.size());
  for (std::size_t x = 0; x < flats_.size(); ++x) {
    if (x == 0) {
      mobius_[x] = 1;
      continue;
    }
    Integer sum = 0;
    for (std::size_t y = 0; y < x; ++y)
      if (leq(y, x)) sum += mobius_[y];
    mobius_[x] = -sum;
  }
}

bool IntersectionLattice::leq(std::size_t x, std::size_t y) const {
  return (flats_[x].closure & ~flats_[y].closure) == 0;
}

std::optional<std::size_t> IntersectionLattice::index_of(IndexSet closure) const {
  for (std::size_t i = 0; i < flats_.size(); ++i)
    if (flats_[i].closure == closure) return i;
  return std::nullopt;
}

IntersectionLattice intersection_lattice(const CentralArrangement& a) { return IntersectionLattice(a); }

Integer mobius(const IntersectionLattice& lattice, const Flat& x) {
  auto i = lattice.index_of(x.closure);
  if (!i) throw Error(ErrorCode::InvalidArgument, "flat is not in the lattice");
  return lattice.mobius(*i);
}

std::vector<IndexSet> nbc_sets(const CentralArrangement& a, std::size_t k) {
  std::vector<IndexSet> out;
  for (const auto& subset : k_subsets(a.size(), k)) {
    const IndexSet s = to_index_set(subset);
    if (a.is_nbc(s)) out.push_back(s);
  }
  return out;
}

OSElement OSElement::one(const CentralArrangement& a) { return monomial(a, 0); }

OSElement OSElement::monomial(const CentralArrangement& a, IndexSet s, const Integer& coeff) {
  if (!a.is_nbc(s)) throw Error(ErrorCode::InvalidArgument, "monomial is not an NBC set");
  OSElement e(a);
  e.add(s, coeff);
  return e;
}

Integer OSElement::coefficient(IndexSet s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Integer(0) : it->second;
}

void OSElement::add(IndexSet s, const Integer& c) {
  if (c == 0) return;
  auto& slot = terms_[s];
  slot += c;
  if (slot == 0) terms_.erase(s);
}

OSElement& OSElement::operator+=(const OSElement& o) {
  if (!(arrangement_ == o.arrangement_)) throw Error(ErrorCode::ArrangementMismatch, "OS elements over different arrangements");
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

OSElement& OSElement::operator-=(const OSElement& o) {
  if (!(arrangement_ == o.arrangement_)) throw Error(ErrorCode::ArrangementMismatch, "OS elements over different arrangements");
  for (const auto& [s, c] : o.terms_) add(s, -c);
  return *this;
}

OSElement operator*(const Integer& c, const OSElement& a) {
  OSElement out(a.arrangement_);
  if (c == 0) return out;
  for (const auto& [s, v] : a.terms_) out.terms_.emplace(s, c * v);
  return out;
}

bool operator==(const OSElement& a, const OSElement& b) {
  return a.arrangement_ == b.arrangement_ && a.terms_ == b.terms_;
}

std::string OSElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    const Integer mag = c < 0 ? Integer(-c) : c;
    if (mag != 1 || s == 0) os << mag.get_str();
    if (s == 0) continue;
    os << "e";
    bool f = true;
    for (auto i : elements(s)) {
      os << (f ? "" : ",") << i;
      f = false;
    }
  }
  return os.str();
}

OSElement os_straighten(const CentralArrangement& a, const std::map<IndexSet, Integer, LexLess>& combination) {
  std::map<IndexSet, Integer, LexLess> pending;
  for (const auto& [s, c] : combination) {
    if ((s & ~a.ground()) != 0) throw Error(ErrorCode::IndexOutOfRange, "hyperplane index out of range");
    if (c != 0) pending[s] += c;
  }
  const auto& circuits = a.circuits();
  const auto& broken = a.broken_circuits();
  OSElement result(a);
  while (!pending.empty()) {
    auto it = std::prev(pending.end());
    const IndexSet s = it->first;
    const Integer c = it->second;
    pending.erase(it);
    if (c == 0 || !a.independent(s)) continue;
    std::size_t which = broken.size();
    for (std::size_t b = 0; b < broken.size(); ++b)
      if ((broken[b] & ~s) == 0) {
        which = b;
        break;
      }
    if (which == broken.size()) {
      result.add(s, c);
      continue;
    }
    // e_S = sigma * e_B * e_R and e_B = sum_{t >= 1} (-1)^{t+1} e_{C - c_t}
    const IndexSet b = broken[which];
    const IndexSet circuit = circuits[which];
    const IndexSet rest = s & ~b;
    const int sigma = merge_sign(b, rest);
    const auto elems = elements(circuit);
    for (std::size_t t = 1; t < elems.size(); ++t) {
      const IndexSet piece = circuit & ~singleton(elems[t]);
      if ((piece & rest) != 0) continue;
      const int sign = sigma * ((t % 2 == 1) ? 1 : -1) * merge_sign(piece, rest);
      pending[piece | rest] += sign * c;
    }
  }
  return result;
}

OSElement os_reduce(const CentralArrangement& a, const std::vector<std::size_t>& monomial, int sign) {
  IndexSet s = 0;
  int parity = sign;
  for (std::size_t pos = 0; pos < monomial.size(); ++pos) {
    const std::size_t i = monomial[pos];
    if (i >= a.size()) throw Error(ErrorCode::IndexOutOfRange, "hyperplane index out of range");
    if (contains(s, i)) return OSElement(a);
    // moving e_i left past every larger index already present
    const IndexSet larger = s & ~((singleton(i) << 1) - 1);
    if (popcount(larger) % 2 == 1) parity = -parity;
    s |= singleton(i);
  }
  return os_straighten(a, {{s, Integer(parity)}});
}

OSElement os_multiply(const OSElement& x, const OSElement& y) {
  if (!(x.arrangement() == y.arrangement()))
    throw Error(ErrorCode::ArrangementMismatch, "OS elements over different arrangements");
  std::map<IndexSet, Integer, LexLess> combination;
  for (const auto& [s, c] : x.terms())
    for (const auto& [t, d] : y.terms()) {
      if ((s & t) != 0) continue;
      combination[s | t] += merge_sign(s, t) * c * d;
    }
  return os_straighten(x.arrangement(), combination);
}

OSElement brieskorn_project(const OSElement& a, const Flat& x) {
  OSElement out(a.arrangement());
  for (const auto& [s, c] : a.terms())
    if (a.arrangement().closure(s) == x.closure) out.add(s, c);
  return out;
}

OSElement brieskorn_include(const OSElement& a, const CentralArrangement& ambient) {
  const auto& sub = a.arrangement();
  std::vector<std::size_t> position(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    auto p = ambient.position_of_label(sub.label(i));
    if (!p) throw Error(ErrorCode::LabelNotFound, "label " + std::to_string(sub.label(i)) + " not in the ambient arrangement");
    position[i] = *p;
  }
  OSElement out(ambient);
  for (const auto& [s, c] : a.terms()) {
    std::vector<std::size_t> mono;
    for (auto i : elements(s)) mono.push_back(position[i]);
    out += c * os_reduce(ambient, mono);
  }
  return out;
}

std::size_t os_betti(const CentralArrangement& a, std::size_t k) {
  const IntersectionLattice lattice(a);
  Integer total = 0;
  for (std::size_t x = 0; x < lattice.size(); ++x)
    if (lattice.flats()[x].rank == k) total += abs(lattice.mobius(x));
  const std::size_t nbc = nbc_sets(a, k).size();
  if (total != static_cast<unsigned long>(nbc))
    throw std::logic_error("Betti number mismatch between Mobius and NBC counts");
  return nbc;
}

}  // namespace torusos

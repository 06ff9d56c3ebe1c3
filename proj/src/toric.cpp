#include "torusos/toric.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace torusos {

ToricArrangement::ToricArrangement(std::size_t dim, std::vector<Hypertorus> hypertori)
    : dim_(dim), hypertori_(std::move(hypertori)) {
  for (auto& h : hypertori_) {
    if (h.character.size() != dim_) throw Error(ErrorCode::ShapeMismatch, "character has wrong length");
    if (std::all_of(h.character.begin(), h.character.end(), [](const Integer& x) { return x == 0; }))
      throw Error(ErrorCode::InvalidArgument, "zero character");
    h.phase = h.phase.mod_one();
  }
}

IntMatrix ToricArrangement::character_matrix() const {
  IntMatrix m(dim_, hypertori_.size());
  for (std::size_t j = 0; j < hypertori_.size(); ++j)
    for (std::size_t i = 0; i < dim_; ++i) m(i, j) = hypertori_[j].character[i];
  return m;
}

std::optional<Rational> Layer::evaluate(const IntVector& v) const {
  auto coords = lattice_coordinates(lattice, v);
  if (!coords) return std::nullopt;
  Rational value;
  for (std::size_t k = 0; k < coords->size(); ++k)
    if ((*coords)[k] != 0) value = value + Rational((*coords)[k]) * phases[k];
  return value.mod_one();
}

bool operator<(const Layer& a, const Layer& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  if (a.lattice != b.lattice) return a.lattice < b.lattice;
  return a.phases < b.phases;
}

IndexSet layer_support(const ToricArrangement& a, const IntMatrix& lattice, const PhaseVector& phases) {
  const Layer probe{lattice, phases, 0};
  IndexSet s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto v = probe.evaluate(a.character(i));
    if (v && *v == a.phase(i)) s |= singleton(i);
  }
  return s;
}

LayerPoset::LayerPoset(ToricArrangement arrangement, std::vector<Layer> layers)
    : arrangement_(std::move(arrangement)), layers_(std::move(layers)) {
  std::sort(layers_.begin(), layers_.end());
  const std::size_t n = layers_.size();
  std::vector<std::size_t> ranks(n);
  std::vector<std::vector<bool>> table(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    ranks[i] = layers_[i].rank();
    for (std::size_t j = 0; j < n; ++j) {
      if (layers_[i].rank() > layers_[j].rank()) continue;
      bool below = true;
      for (std::size_t r = 0; r < layers_[i].rank() && below; ++r) {
        auto v = layers_[j].evaluate(layers_[i].lattice.row(r));
        if (!v || *v != layers_[i].phases[r]) below = false;
      }
      table[i][j] = below;
    }
  }
  poset_ = GradedPoset(ranks, table);
}

std::size_t LayerPoset::max_rank() const {
  std::size_t r = 0;
  for (const auto& l : layers_) r = std::max(r, l.rank());
  return r;
}

std::vector<std::size_t> LayerPoset::of_rank(std::size_t q) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < layers_.size(); ++i)
    if (layers_[i].rank() == q) out.push_back(i);
  return out;
}

std::string LayerPoset::id(std::size_t i) const {
  const std::size_t q = rank(i);
  std::size_t index = 0;
  for (std::size_t j = 0; j < i; ++j)
    if (rank(j) == q) ++index;
  return "L" + std::to_string(q) + "." + std::to_string(index);
}

std::optional<std::size_t> LayerPoset::index_of(const Layer& l) const {
  auto it = std::lower_bound(layers_.begin(), layers_.end(), l);
  if (it == layers_.end() || !(*it == l)) return std::nullopt;
  return static_cast<std::size_t>(it - layers_.begin());
}

LayerPoset layer_poset(const ToricArrangement& a) {
  if (a.size() > max_ground_set())
    throw Error(ErrorCode::TooManyHypertori, "arrangement has " + std::to_string(a.size()) +
                                                 " hypertori; the limit is " + std::to_string(max_ground_set()) +
                                                 " (raise with TORUSOS_MAX_N)");
  const std::size_t d = a.dim();
  std::set<Layer> found;
  Layer torus{IntMatrix(0, d), {}, 0};
  torus.support = layer_support(a, torus.lattice, torus.phases);
  found.insert(torus);
  std::vector<Layer> frontier{torus};
  while (!frontier.empty()) {
    std::vector<Layer> next;
    for (const auto& l : frontier)
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (contains(l.support, i)) continue;
        const IntMatrix lifted = saturate(l.lattice.append_row(a.character(i)));
        // a character already in the span either contains L or misses it
        if (lifted.rows() == l.rank()) continue;
        std::vector<PhaseConstraint> constraints;
        for (std::size_t r = 0; r < l.rank(); ++r) constraints.push_back({l.lattice.row(r), l.phases[r]});
        constraints.push_back({a.character(i), a.phase(i)});
        auto solutions = solve_phase_extension(lifted, constraints);
        if (!solutions) continue;
        for (auto& phi : *solutions) {
          Layer candidate{lifted, std::move(phi), 0};
          candidate.support = layer_support(a, candidate.lattice, candidate.phases);
          if (found.insert(candidate).second) next.push_back(candidate);
        }
      }
    frontier = std::move(next);
  }
  return LayerPoset(a, std::vector<Layer>(found.begin(), found.end()));
}

std::optional<std::vector<std::size_t>> poset_isomorphic(const LayerPoset& p, const LayerPoset& q) {
  return poset_isomorphic(p.poset(), q.poset());
}

CentralArrangement local_arrangement(const ToricArrangement& a, const Layer& l) {
  if (l.lattice.cols() != a.dim() || l.phases.size() != l.rank())
    throw Error(ErrorCode::LayerNotInArrangement, "layer has the wrong shape for this arrangement");
  const IndexSet support = layer_support(a, l.lattice, l.phases);
  std::vector<IntVector> normals;
  std::vector<std::size_t> labels;
  for (auto i : elements(support)) {
    normals.push_back(a.character(i));
    labels.push_back(i);
  }
  // L must be a full component of the intersection of the hypertori through it
  if (saturate(IntMatrix::from_rows(normals, a.dim())) != l.lattice)
    throw Error(ErrorCode::LayerNotInArrangement, "layer is not a component of an intersection of hypertori");
  return CentralArrangement(a.dim(), normals, labels);
}

Integer multiplicity(const ToricArrangement& a, IndexSet s) {
  if ((s & ~full_set(a.size())) != 0) throw Error(ErrorCode::IndexOutOfRange, "hypertorus index out of range");
  return product(invariant_factors(a.character_matrix().select_cols(elements(s))));
}

ToricArrangement deletion(const ToricArrangement& a, std::size_t i) {
  if (i >= a.size()) throw Error(ErrorCode::IndexOutOfRange, "hypertorus index out of range");
  auto h = a.hypertori();
  h.erase(h.begin() + static_cast<std::ptrdiff_t>(i));
  return ToricArrangement(a.dim(), std::move(h));
}

namespace {

struct Piece {
  std::size_t source;
  IntVector character;  // may be zero or imprimitive
  Rational phase;
};

// Every other hypertorus written in coordinates where Y_i = {z_0 = const}.
std::vector<Piece> restricted_pieces(const ToricArrangement& a, std::size_t i) {
  if (i >= a.size()) throw Error(ErrorCode::IndexOutOfRange, "hypertorus index out of range");
  if (gcd(a.character(i)) != 1)
    throw Error(ErrorCode::NonPrimitiveCharacter, "restriction needs a primitive character");
  const std::size_t d = a.dim();
  IntMatrix column(d, 1);
  for (std::size_t k = 0; k < d; ++k) column(k, 0) = a.character(i)[k];
  // U chi_i^T = e_0, so chi_j = (U chi_j^T)^T (U^{-1})^T with chi_i the first new basis row
  const IntMatrix u = hermite_normal_form(column).U;
  std::vector<Piece> out;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j == i) continue;
    IntVector coords(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t m = 0; m < d; ++m) coords[k] += u(k, m) * a.character(j)[m];
    IntVector rest(coords.begin() + 1, coords.end());
    out.push_back({j, rest, (a.phase(j) - Rational(coords[0]) * a.phase(i)).mod_one()});
  }
  return out;
}

}  // namespace

ToricArrangement restriction(const ToricArrangement& a, std::size_t i) {
  const auto pieces = restricted_pieces(a, i);
  std::vector<Hypertorus> out;
  auto push_unique = [&](IntVector chi, Rational phase) {
    // canonical sign: first nonzero coordinate positive
    for (const auto& x : chi)
      if (x != 0) {
        if (x < 0) {
          for (auto& y : chi) y = -y;
          phase = (Rational() - phase).mod_one();
        }
        break;
      }
    for (const auto& h : out)
      if (h.character == chi && h.phase == phase) return;
    out.push_back({std::move(chi), phase});
  };
  for (const auto& p : pieces) {
    const Integer g = gcd(p.character);
    if (g == 0) continue;  // parallel to Y_i: either disjoint from it or containing it
    // g parallel components t^{chi/g} = exp(2 pi i (phase + k) / g)
    IntVector primitive(p.character.size());
    for (std::size_t k = 0; k < primitive.size(); ++k) primitive[k] = p.character[k] / g;
    for (Integer k = 0; k < g; ++k)
      push_unique(primitive, Rational(p.phase.num() + k * p.phase.den(), p.phase.den() * g).mod_one());
  }
  return ToricArrangement(a.dim() - 1, std::move(out));
}

bool restriction_is_valid(const ToricArrangement& a, std::size_t i) {
  if (i >= a.size() || gcd(a.character(i)) != 1) return false;
  for (const auto& p : restricted_pieces(a, i))
    if (gcd(p.character) == 0 && p.phase == Rational()) return false;
  return true;
}

std::vector<Integer> poly_add(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::vector<Integer> poly_shift(const std::vector<Integer>& a, std::size_t k) {
  std::vector<Integer> out(k, Integer(0));
  out.insert(out.end(), a.begin(), a.end());
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::string poly_str(const std::vector<Integer>& a) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    os << (first ? "" : " + ") << a[k].get_str();
    if (k == 1) os << "t";
    if (k > 1) os << "t^" << k;
    first = false;
  }
  return first ? "0" : os.str();
}

std::vector<Integer> nbc_pair_counts(const LayerPoset& poset) {
  std::vector<Integer> counts(poset.max_rank() + 1);
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const auto local = local_arrangement(poset.arrangement(), poset.layer(i));
    counts[poset.rank(i)] += static_cast<unsigned long>(nbc_sets(local, poset.rank(i)).size());
  }
  return counts;
}

std::vector<Integer> poincare_polynomial(const LayerPoset& poset) {
  const std::size_t d = poset.arrangement().dim();
  const auto counts = nbc_pair_counts(poset);
  std::vector<Integer> p{Integer(0)};
  for (std::size_t j = 0; j < counts.size(); ++j) {
    // N_j (1 + t)^{d - j} t^j
    std::vector<Integer> term(d - j + 1);
    Integer binom = 1;
    for (std::size_t k = 0; k <= d - j; ++k) {
      term[k] = binom * counts[j];
      binom = binom * (d - j - k) / (k + 1);
    }
    p = poly_add(p, poly_shift(term, j));
  }
  return p;
}

std::vector<Integer> poincare_polynomial(const ToricArrangement& a) { return poincare_polynomial(layer_poset(a)); }

MultiplicityOracle arithmetic_matroid(const ToricArrangement& a) {
  if (a.size() > max_ground_set())
    throw Error(ErrorCode::TooManyHypertori, "arrangement exceeds the subset limit (raise with TORUSOS_MAX_N)");
  return oracle_from_matrix(a.character_matrix());
}

}  // namespace torusos

#include "torusos/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace torusos {

namespace {

// p-subsets of {0..n-1} as IndexSets, in lexicographic order
const std::vector<IndexSet>& lex_subsets(std::size_t n, std::size_t p) {
  thread_local std::map<std::pair<std::size_t, std::size_t>, std::vector<IndexSet>> cache;
  auto [it, fresh] = cache.try_emplace({n, p});
  if (fresh)
    for (const auto& s : k_subsets(n, p)) it->second.push_back(to_index_set(s));
  return it->second;
}

std::size_t subset_position(std::size_t n, IndexSet s) {
  const auto& all = lex_subsets(n, popcount(s));
  auto it = std::lower_bound(all.begin(), all.end(), s, LexLess{});
  if (it == all.end() || *it != s) throw Error(ErrorCode::IndexOutOfRange, "exterior monomial outside the quotient basis");
  return static_cast<std::size_t>(it - all.begin());
}

bool set_less(IndexSet a, IndexSet b) {
  if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
  return lex_less(a, b);
}

std::string set_str(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

ToricCohomology::ToricCohomology(const ToricArrangement& a) : poset_(layer_poset(a)) {
  const std::size_t n = poset_.size(), d = a.dim();
  locals_.reserve(n);
  kernels_.reserve(n);
  above_.resize(n);
  below_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = poset_.layer(i);
    locals_.push_back(local_arrangement(a, l));
    kernels_.push_back(l.rank() == 0 ? IntMatrix::identity(d) : right_kernel(l.lattice));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (poset_.leq(i, j)) {
        above_[i].push_back(j);
        below_[j].push_back(i);
      }

  for (std::size_t i = 0; i < n; ++i) {
    const IntMatrix from_t = kernels_[i].transpose();
    for (auto j : above_[i]) {
      const std::size_t rf = quotient_rank(i), rt = quotient_rank(j);
      IntMatrix m(rf, rt);
      const IntMatrix to_t = kernels_[j].transpose();
      for (std::size_t k = 0; k < rf; ++k) {
        IntVector e(rf, 0);
        e[k] = 1;
        const auto lift = solve_left(from_t, e);
        if (!lift) throw std::logic_error("quotient coordinates are not surjective");
        const IntVector image = *lift * to_t;
        for (std::size_t c = 0; c < rt; ++c) m(k, c) = image[c];
      }
      std::vector<IntMatrix> powers;
      for (std::size_t p = 0; p <= rf; ++p) powers.push_back(exterior_power_map(m, p));
      maps_.emplace(std::make_pair(i, j), std::move(powers));
    }
  }
}

IntVector ToricCohomology::quotient_coordinates(std::size_t layer, const IntVector& v) const {
  if (v.size() != dim()) throw Error(ErrorCode::ShapeMismatch, "vector length differs from the torus dimension");
  return v * kernels_.at(layer).transpose();
}

const IntMatrix& ToricCohomology::quotient_map(std::size_t from, std::size_t to) const {
  return exterior_map(from, to, 1);
}

const IntMatrix& ToricCohomology::exterior_map(std::size_t from, std::size_t to, std::size_t p) const {
  auto it = maps_.find({from, to});
  if (it == maps_.end()) throw Error(ErrorCode::NotComparable, "layers are not comparable");
  if (p >= it->second.size()) throw Error(ErrorCode::IndexOutOfRange, "exterior degree exceeds the layer dimension");
  return it->second[p];
}

std::size_t ToricCohomology::layer_of_hypertorus(std::size_t i) const {
  if (i >= arrangement().size()) throw Error(ErrorCode::IndexOutOfRange, "hypertorus index out of range");
  std::vector<std::size_t> found;
  for (auto l : poset_.of_rank(1))
    if (contains(poset_.layer(l).support, i)) found.push_back(l);
  if (found.size() != 1)
    throw Error(ErrorCode::NonPrimitiveCharacter, "hypertorus " + std::to_string(i) + " is not connected");
  return found.front();
}

bool operator<(const ClassKey& a, const ClassKey& b) {
  if (a.layer != b.layer) return a.layer < b.layer;
  if (a.exterior != b.exterior) return set_less(a.exterior, b.exterior);
  if (a.os != b.os) return set_less(a.os, b.os);
  return false;
}

ToricClass ToricClass::basis(std::size_t layer, IndexSet exterior, IndexSet os, const Integer& c) {
  ToricClass out;
  out.add({layer, exterior, os}, c);
  return out;
}

Integer ToricClass::coefficient(const ClassKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Integer(0) : it->second;
}

void ToricClass::add(const ClassKey& k, const Integer& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ToricClass ToricClass::component(std::size_t layer) const {
  ToricClass out;
  for (const auto& [k, c] : terms_)
    if (k.layer == layer) out.terms_.emplace(k, c);
  return out;
}

ToricClass ToricClass::os_part(std::size_t q) const {
  ToricClass out;
  for (const auto& [k, c] : terms_)
    if (popcount(k.os) == q) out.terms_.emplace(k, c);
  return out;
}

std::vector<std::size_t> ToricClass::layers() const {
  std::vector<std::size_t> out;
  for (const auto& [k, c] : terms_)
    if (out.empty() || out.back() != k.layer) out.push_back(k.layer);
  return out;
}

ToricClass& ToricClass::operator+=(const ToricClass& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ToricClass& ToricClass::operator-=(const ToricClass& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

ToricClass operator*(const Integer& c, const ToricClass& a) {
  ToricClass out;
  if (c == 0) return out;
  for (const auto& [k, v] : a.terms_) out.terms_.emplace(k, c * v);
  return out;
}

std::string key_label(const ToricCohomology& h, const ClassKey& k) {
  std::vector<std::size_t> labels;
  for (auto i : elements(k.os)) labels.push_back(h.local(k.layer).label(i));
  return "(" + h.poset().id(k.layer) + ", " + set_str(elements(k.exterior)) + ", " + set_str(labels) + ")";
}

std::string class_str(const ToricCohomology& h, const ToricClass& c) {
  if (c.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : c.terms()) {
    if (!first) out << (v < 0 ? " - " : " + ");
    else if (v < 0) out << "-";
    first = false;
    const Integer m = abs(v);
    if (m != 1) out << m.get_str() << "*";
    out << key_label(h, k);
  }
  return out.str();
}

ToricClass torus_class(const ToricCohomology& h, const IntVector& v) {
  if (v.size() != h.dim()) throw Error(ErrorCode::ShapeMismatch, "vector length differs from the torus dimension");
  ToricClass out;
  for (std::size_t i = 0; i < v.size(); ++i) out.add({0, singleton(i), 0}, v[i]);
  return out;
}

ToricClass hypertorus_class(const ToricCohomology& h, std::size_t i) {
  const std::size_t l = h.layer_of_hypertorus(i);
  const auto pos = h.local(l).position_of_label(i);
  if (!pos) throw Error(ErrorCode::LabelNotFound, "hypertorus is parallel to an earlier one through the same layer");
  return ToricClass::basis(l, 0, singleton(*pos));
}

std::vector<ToricClass> layer_basis(const ToricCohomology& h, std::size_t layer) {
  std::vector<ToricClass> out;
  const auto nbc = nbc_sets(h.local(layer), h.rank(layer));
  for (std::size_t p = 0; p <= h.quotient_rank(layer); ++p)
    for (auto e : lex_subsets(h.quotient_rank(layer), p))
      for (auto s : nbc) out.push_back(ToricClass::basis(layer, e, s));
  return out;
}

ToricClass diagram_map(const ToricCohomology& h, std::size_t from, std::size_t to, const ToricClass& c) {
  if (!h.poset().leq(from, to)) throw Error(ErrorCode::NotComparable, "diagram maps go upward only");
  ToricClass out;
  const std::size_t qf = h.quotient_rank(from), qt = h.quotient_rank(to);
  for (const auto& [k, coeff] : c.terms()) {
    if (k.layer != from) continue;
    const std::size_t p = popcount(k.exterior);
    if (p > qt) continue;
    const IntMatrix& m = h.exterior_map(from, to, p);
    const std::size_t row = subset_position(qf, k.exterior);
    const OSElement os = brieskorn_include(OSElement::monomial(h.local(from), k.os), h.local(to));
    const auto& targets = lex_subsets(qt, p);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (m(row, j) == 0) continue;
      for (const auto& [s, v] : os.terms()) out.add({to, targets[j], s}, coeff * m(row, j) * v);
    }
  }
  return out;
}

ToricClass cup(const ToricCohomology& h, std::size_t layer, const ToricClass& a, const ToricClass& b) {
  ToricClass out;
  const auto& local = h.local(layer);
  for (const auto& [ka, ca] : a.terms()) {
    if (ka.layer != layer) throw Error(ErrorCode::InvalidArgument, "cup factor lives on another layer");
    const OSElement la = OSElement::monomial(local, ka.os);
    for (const auto& [kb, cb] : b.terms()) {
      if (kb.layer != layer) throw Error(ErrorCode::InvalidArgument, "cup factor lives on another layer");
      if ((ka.exterior & kb.exterior) != 0) continue;
      int sign = merge_sign(ka.exterior, kb.exterior);
      if ((popcount(ka.os) * popcount(kb.exterior)) % 2 == 1) sign = -sign;
      const OSElement prod = os_multiply(la, OSElement::monomial(local, kb.os));
      for (const auto& [s, v] : prod.terms())
        out.add({layer, ka.exterior | kb.exterior, s}, sign * ca * cb * v);
    }
  }
  return out;
}

bool is_a_form(const ToricCohomology& h, const ToricClass& c) {
  return std::all_of(c.terms().begin(), c.terms().end(),
                     [&](const auto& t) { return popcount(t.first.os) == h.rank(t.first.layer); });
}

ToricClass multiply_A(const ToricCohomology& h, const ToricClass& a, const ToricClass& b) {
  if (!is_a_form(h, a) || !is_a_form(h, b)) throw Error(ErrorCode::NotAForm, "multiply_A needs A-form classes");
  ToricClass out;
  const auto& poset = h.poset();
  for (auto l : a.layers()) {
    const auto al = a.component(l);
    for (auto m : b.layers()) {
      const auto bm = b.component(m);
      for (auto t : h.above(l)) {
        if (!poset.leq(m, t) || h.rank(t) != h.rank(l) + h.rank(m)) continue;
        out += cup(h, t, diagram_map(h, l, t, al), diagram_map(h, m, t, bm));
      }
    }
  }
  return out;
}

ToricClass embed_p(const ToricCohomology& h, const ToricClass& a) {
  if (!is_a_form(h, a)) throw Error(ErrorCode::NotAForm, "embed_p needs an A-form class");
  ToricClass out;
  for (auto l : a.layers()) {
    const auto al = a.component(l);
    for (auto t : h.above(l)) out += diagram_map(h, l, t, al);
  }
  return out;
}

ToricClass project_pi(const ToricCohomology& h, const ToricClass& c) {
  ToricClass out;
  for (const auto& [k, v] : c.terms())
    if (popcount(k.os) == h.rank(k.layer)) out.add(k, v);
  return out;
}

bool is_coherent(const ToricCohomology& h, const ToricClass& c) {
  for (std::size_t l = 0; l < h.layer_count(); ++l) {
    const auto own = c.component(l);
    for (std::size_t q = 0; q < h.rank(l); ++q) {
      ToricClass sum;
      for (auto s : h.below(l))
        if (h.rank(s) == q) sum += diagram_map(h, s, l, c.os_part(q));
      if (!(sum == own.os_part(q))) return false;
    }
  }
  return true;
}

ToricClass multiply_B(const ToricCohomology& h, const ToricClass& a, const ToricClass& b) {
  if (!is_coherent(h, a) || !is_coherent(h, b)) throw Error(ErrorCode::NotCoherent, "multiply_B needs coherent classes");
  const auto pa = project_pi(h, a), pb = project_pi(h, b);
  ToricClass out;
  for (auto l : pa.layers()) {
    const auto al = pa.component(l);
    for (auto m : pb.layers()) {
      const auto bm = pb.component(m);
      for (auto t : h.above(l))
        if (h.poset().leq(m, t)) out += cup(h, t, diagram_map(h, l, t, al), diagram_map(h, m, t, bm));
    }
  }
  if (!is_coherent(h, out)) throw std::logic_error("product of coherent classes is not coherent");
  return out;
}

ToricClass multiply_natural(const ToricCohomology& h, const ToricClass& a, const ToricClass& b) {
  ToricClass out;
  const auto bl = b.layers();
  for (auto l : a.layers())
    if (std::binary_search(bl.begin(), bl.end(), l)) out += cup(h, l, a.component(l), b.component(l));
  return out;
}

std::vector<ClassKey> ring_basis(const ToricCohomology& h, std::size_t k) {
  std::vector<ClassKey> out;
  for (std::size_t l = 0; l < h.layer_count(); ++l) {
    const std::size_t r = h.rank(l);
    if (k < r || k - r > h.quotient_rank(l)) continue;
    const auto nbc = nbc_sets(h.local(l), r);
    for (auto e : lex_subsets(h.quotient_rank(l), k - r))
      for (auto s : nbc) out.push_back({l, e, s});
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntVector ring_coordinates(const ToricCohomology& h, const ToricClass& c, std::size_t k) {
  const auto basis = ring_basis(h, k);
  IntVector out(basis.size(), 0);
  for (const auto& [key, v] : c.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), key);
    if (it == basis.end() || !(*it == key))
      throw Error(ErrorCode::InvalidArgument, "class has a term outside A^" + std::to_string(k));
    out[static_cast<std::size_t>(it - basis.begin())] = v;
  }
  return out;
}

Integer betti(const ToricArrangement& a, std::size_t k) {
  const auto poset = layer_poset(a);
  const auto p = poincare_polynomial(poset);
  const Integer route1 = k < p.size() ? p[k] : Integer(0);
  Integer route2 = 0;
  const std::size_t d = a.dim();
  for (std::size_t l = 0; l < poset.size(); ++l) {
    const std::size_t q = poset.rank(l);
    if (k < q) continue;
    route2 += binomial(d - q, k - q) * static_cast<unsigned long>(nbc_sets(local_arrangement(a, poset.layer(l)), q).size());
  }
  if (route1 != route2) throw std::logic_error("Betti number routes disagree in degree " + std::to_string(k));
  return route1;
}

bool WhitneyReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const WhitneyRow& r) { return r.ok(); });
}

WhitneyReport whitney_check(const ToricCohomology& h) {
  WhitneyReport report;
  for (std::size_t l = 0; l < h.layer_count(); ++l)
    report.rows.push_back({l, h.poset().mobius(l), nbc_sets(h.local(l), h.rank(l)).size()});
  return report;
}

bool GenerationReport::generated() const {
  return std::all_of(rows.begin(), rows.end(), [](const GenerationRow& r) { return r.product_rank == r.betti; });
}

bool GenerationReport::generated_over_z() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const GenerationRow& r) { return r.product_rank == r.betti && r.index == 1; });
}

namespace {

ToricClass from_coordinates(const std::vector<ClassKey>& basis, const IntMatrix& m, std::size_t row) {
  ToricClass out;
  for (std::size_t j = 0; j < basis.size(); ++j) out.add(basis[j], m(row, j));
  return out;
}

std::vector<ToricClass> basis_classes(const std::vector<ClassKey>& keys) {
  std::vector<ToricClass> out;
  for (const auto& k : keys) out.push_back(ToricClass::basis(k.layer, k.exterior, k.os));
  return out;
}

}  // namespace

GenerationReport degree1_generation(const ToricCohomology& h) {
  GenerationReport report;
  const std::size_t d = h.dim();
  if (d == 0) return report;
  const auto ones = basis_classes(ring_basis(h, 1));
  auto prev_basis = ring_basis(h, 1);
  IntMatrix span = IntMatrix::identity(prev_basis.size());
  report.rows.push_back({1, prev_basis.size(), prev_basis.size(), 1});
  for (std::size_t k = 2; k <= d; ++k) {
    const auto basis = ring_basis(h, k);
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < span.rows(); ++i) {
      const auto s = from_coordinates(prev_basis, span, i);
      for (const auto& g : ones) rows.push_back(ring_coordinates(h, multiply_A(h, s, g), k));
    }
    span = nonzero_rows(hermite_normal_form(IntMatrix::from_rows(rows, basis.size())).H);
    const std::size_t r = span.rows();
    const Integer index = r == basis.size() ? product(invariant_factors(span)) : Integer(0);
    report.rows.push_back({k, basis.size(), r, index});
    prev_basis = basis;
  }
  return report;
}

std::size_t annihilator_rank_deg1(const ToricCohomology& h, const ToricClass& u) {
  if (!is_a_form(h, u)) throw Error(ErrorCode::NotAForm, "annihilator probe needs an A-form class");
  for (const auto& [k, c] : u.terms())
    if (k.degree() != 1) throw Error(ErrorCode::InvalidArgument, "annihilator probe needs a degree-1 class");
  const auto ones = basis_classes(ring_basis(h, 1));
  const std::size_t width = ring_basis(h, 2).size();
  std::vector<IntVector> rows;
  for (const auto& v : ones) rows.push_back(ring_coordinates(h, multiply_A(h, u, v), 2));
  return ones.size() - rank(IntMatrix::from_rows(rows, width));
}

GradedRingSnapshot ring_snapshot(const ToricCohomology& h, const std::vector<std::size_t>& degrees, bool structure) {
  GradedRingSnapshot snap;
  std::vector<std::size_t> ds = degrees;
  if (structure && !ds.empty()) {
    const std::size_t top = *std::max_element(ds.begin(), ds.end());
    for (std::size_t k = 0; k <= top; ++k) ds.push_back(k);
  }
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  snap.degrees = ds;

  std::map<std::size_t, std::pair<std::size_t, std::size_t>> range;  // degree -> [begin, end)
  for (auto k : ds) {
    const auto keys = ring_basis(h, k);
    range[k] = {snap.basis.size(), snap.basis.size() + keys.size()};
    for (const auto& key : keys) {
      snap.basis.push_back(key);
      snap.labels.push_back(key_label(h, key));
      snap.degree_of.push_back(k);
    }
  }
  if (!structure) return snap;

  std::map<ClassKey, std::size_t> position;
  for (std::size_t i = 0; i < snap.basis.size(); ++i) position[snap.basis[i]] = i;
  const auto classes = basis_classes(snap.basis);
  for (std::size_t i = 0; i < snap.basis.size(); ++i)
    for (std::size_t j = 0; j < snap.basis.size(); ++j) {
      if (!range.count(snap.degree_of[i] + snap.degree_of[j])) continue;
      const auto prod = multiply_A(h, classes[i], classes[j]);
      for (const auto& [k, c] : prod.terms()) snap.constants.push_back({i, j, position.at(k), c});
    }
  return snap;
}

}  // namespace torusos

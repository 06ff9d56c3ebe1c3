#include "torusos/io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace torusos {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::ParseError, (pointer.empty() ? "/" : pointer) + ": " + what);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset one past the offending character
    std::size_t line = 1, col = 1;
    const std::size_t stop = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find(": "); p != std::string::npos && msg.find("parse error") != std::string::npos)
      msg = msg.substr(p + 2);
    throw Error(ErrorCode::ParseError, "syntax error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

const json& member(const json& obj, const char* key, const std::string& pointer) {
  if (!obj.is_object()) fail(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(pointer, std::string("missing key '") + key + "'");
  return *it;
}

Integer to_integer(const json& v, const std::string& pointer) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<unsigned long>()) : Integer(v.get<long>());
  if (v.is_string()) {
    Integer out;
    const auto s = v.get<std::string>();
    if (s.empty() || out.set_str(s, 10) != 0) fail(pointer, "malformed integer '" + s + "'");
    return out;
  }
  fail(pointer, "expected an integer");
}

std::size_t to_size(const json& v, const std::string& pointer) {
  const Integer i = to_integer(v, pointer);
  if (i < 0 || !i.fits_ulong_p()) fail(pointer, "expected a nonnegative integer");
  return i.get_ui();
}

}  // namespace

ToricArrangement parse_arrangement(const std::string& text) {
  const json doc = parse_json(text);
  const std::size_t dim = to_size(member(doc, "dim", ""), "/dim");
  if (dim == 0) fail("/dim", "dimension must be positive");
  const json& list = member(doc, "hypertori", "");
  if (!list.is_array()) fail("/hypertori", "expected an array");
  if (list.size() > max_ground_set())
    throw Error(ErrorCode::TooManyHypertori, "/hypertori: " + std::to_string(list.size()) + " hypertori exceed the cap of " +
                                                 std::to_string(max_ground_set()) + " (raise TORUSOS_MAX_N)");
  std::vector<Hypertorus> hypertori;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = "/hypertori/" + std::to_string(i);
    const json& chi = member(list[i], "chi", at);
    if (!chi.is_array()) fail(at + "/chi", "expected an array");
    if (chi.size() != dim) fail(at + "/chi", "length " + std::to_string(chi.size()) + " differs from dim " + std::to_string(dim));
    IntVector v;
    bool zero = true;
    for (std::size_t k = 0; k < chi.size(); ++k) {
      v.push_back(to_integer(chi[k], at + "/chi/" + std::to_string(k)));
      zero = zero && v.back() == 0;
    }
    if (zero) fail(at + "/chi", "character must be nonzero");
    Rational phase(0);
    if (auto it = list[i].find("phase"); it != list[i].end()) {
      if (it->is_number_integer()) {
        phase = Rational(to_integer(*it, at + "/phase"));
      } else if (it->is_string()) {
        try {
          phase = Rational::parse(it->get<std::string>());
        } catch (const Error& e) {
          fail(at + "/phase", e.what());
        }
      } else {
        fail(at + "/phase", "expected a string \"p/q\"");
      }
    }
    hypertori.push_back({std::move(v), phase});
  }
  return ToricArrangement(dim, std::move(hypertori));
}

std::string arrangement_to_json(const ToricArrangement& a) {
  json doc;
  doc["dim"] = a.dim();
  json list = json::array();
  for (const auto& h : a.hypertori()) {
    json chi = json::array();
    for (const auto& x : h.character) chi.push_back(x.get_str());
    list.push_back({{"chi", chi}, {"phase", h.phase.str()}});
  }
  doc["hypertori"] = list;
  return doc.dump(2) + "\n";
}

MultiplicityOracle parse_oracle(const std::string& text) {
  const json doc = parse_json(text);
  const std::size_t n = to_size(member(doc, "n", ""), "/n");
  const std::size_t d = to_size(member(doc, "d", ""), "/d");
  if (n > max_ground_set())
    throw Error(ErrorCode::TooManyColumns, "/n: ground set of " + std::to_string(n) + " exceeds the cap of " +
                                               std::to_string(max_ground_set()) + " (raise TORUSOS_MAX_N)");
  if (d > n) fail("/d", "rank exceeds the ground set size");
  const json& entries = member(doc, "entries", "");
  if (!entries.is_array()) fail("/entries", "expected an array");

  std::map<IndexSet, std::pair<std::size_t, Integer>> given;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string at = "/entries/" + std::to_string(i);
    const json& set = member(entries[i], "set", at);
    if (!set.is_array()) fail(at + "/set", "expected an array");
    IndexSet s = 0;
    for (std::size_t k = 0; k < set.size(); ++k) {
      const std::size_t e = to_size(set[k], at + "/set/" + std::to_string(k));
      if (e >= n) fail(at + "/set/" + std::to_string(k), "element out of range");
      if (contains(s, e)) fail(at + "/set/" + std::to_string(k), "repeated element");
      s |= singleton(e);
    }
    const std::size_t r = to_size(member(entries[i], "rank", at), at + "/rank");
    const Integer m = to_integer(member(entries[i], "m", at), at + "/m");
    if (r > popcount(s) || r > d) fail(at + "/rank", "rank exceeds the set size or d");
    if (m <= 0) fail(at + "/m", "multiplicity must be positive");
    if (!given.emplace(s, std::make_pair(r, m)).second) fail(at + "/set", "duplicate set");
  }

  const IndexSet all = full_set(n);
  if (given.size() == (std::size_t{1} << n)) {
    std::vector<std::size_t> ranks(std::size_t{1} << n);
    std::vector<Integer> mults(std::size_t{1} << n);
    for (const auto& [s, v] : given) {
      ranks[s] = v.first;
      mults[s] = v.second;
    }
    return MultiplicityOracle(n, d, std::move(ranks), std::move(mults));
  }
  for (IndexSet s = 0;; ++s) {
    if (popcount(s) <= d && !given.count(s)) {
      std::string elems;
      for (auto e : elements(s)) elems += (elems.empty() ? "" : ",") + std::to_string(e);
      fail("/entries", "missing set {" + elems + "}; give every subset or every subset of size at most d");
    }
    if (s == all) break;
  }
  std::map<IndexSet, std::pair<std::size_t, Integer>> small;
  for (const auto& [s, v] : given)
    if (popcount(s) <= d) small.emplace(s, v);
  return complete_oracle(n, d, small);
}

std::string oracle_to_json(const MultiplicityOracle& o) {
  json doc;
  doc["n"] = o.n();
  doc["d"] = o.d();
  json entries = json::array();
  for (IndexSet s = 0;; ++s) {
    entries.push_back({{"set", elements(s)}, {"rank", o.rank(s)}, {"m", o.multiplicity(s).get_str()}});
    if (s == full_set(o.n())) break;
  }
  doc["entries"] = entries;
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace torusos

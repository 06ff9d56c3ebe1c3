#include "torusos/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace torusos {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConstraintNotInLattice: return "ConstraintNotInLattice";
    case ErrorCode::UnderdeterminedPhase: return "UnderdeterminedPhase";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ArrangementMismatch: return "ArrangementMismatch";
    case ErrorCode::LabelNotFound: return "LabelNotFound";
    case ErrorCode::TooManyHypertori: return "TooManyHypertori";
    case ErrorCode::LayerNotInArrangement: return "LayerNotInArrangement";
    case ErrorCode::NonPrimitiveCharacter: return "NonPrimitiveCharacter";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::NotAForm: return "NotAForm";
    case ErrorCode::NotCoherent: return "NotCoherent";
    case ErrorCode::TooManyColumns: return "TooManyColumns";
    case ErrorCode::InconsistentOracle: return "InconsistentOracle";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::size_t max_ground_set() {
  constexpr std::size_t kDefault = 16;
  constexpr std::size_t kHardLimit = 30;
  const char* env = std::getenv("TORUSOS_MAX_N");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long value = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) return kDefault;
  return std::min<std::size_t>(value, kHardLimit);
}

std::vector<std::size_t> elements(IndexSet s) {
  std::vector<std::size_t> out;
  out.reserve(popcount(s));
  while (s != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

IndexSet to_index_set(const std::vector<std::size_t>& elems) {
  IndexSet s = 0;
  for (auto e : elems) s |= singleton(e);
  return s;
}

bool lex_less(IndexSet a, IndexSet b) {
  const IndexSet diff = a ^ b;
  if (diff == 0) return false;
  const IndexSet low = diff & (~diff + 1);
  const IndexSet above = ~((low << 1) - 1);
  if (a & low) {
    // b continues with a larger element, or b is a proper prefix of a
    return (b & above) != 0;
  }
  return (a & above) == 0;
}

int merge_sign(IndexSet a, IndexSet b) {
  std::size_t inversions = 0;
  for (auto y : elements(b)) {
    const IndexSet greater = a & ~((singleton(y) << 1) - 1);
    inversions += popcount(greater);
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

Rational::Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    Integer v;
    if (s.empty() || v.set_str(s, 10) != 0) {
      throw Error(ErrorCode::ParseError, "malformed rational '" + text + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), std::move(den));
}

Rational Rational::mod_one() const {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  return Rational(r, den_);
}

std::string Rational::str() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

bool operator<(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

}  // namespace torusos

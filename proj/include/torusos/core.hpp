#pragma once

#include <gmpxx.h>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace torusos {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Subsets of a ground set of at most 32 elements, bit i = element i.
using IndexSet = std::uint32_t;

enum class ErrorCode {
  ConstraintNotInLattice,
  UnderdeterminedPhase,
  IndexOutOfRange,
  ArrangementMismatch,
  LabelNotFound,
  TooManyHypertori,
  LayerNotInArrangement,
  NonPrimitiveCharacter,
  NotComparable,
  NotAForm,
  NotCoherent,
  TooManyColumns,
  InconsistentOracle,
  ShapeMismatch,
  InvalidArgument,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Subset-enumeration cap. Defaults to 16; `TORUSOS_MAX_N` raises it (max 30).
std::size_t max_ground_set();

inline std::size_t popcount(IndexSet s) { return static_cast<std::size_t>(std::popcount(s)); }
inline bool contains(IndexSet s, std::size_t i) { return (s >> i) & 1u; }
inline IndexSet singleton(std::size_t i) { return IndexSet{1} << i; }
inline IndexSet full_set(std::size_t n) {
  return n >= 32 ? ~IndexSet{0} : (IndexSet{1} << n) - 1;
}

std::vector<std::size_t> elements(IndexSet s);
IndexSet to_index_set(const std::vector<std::size_t>& elems);

/// Lexicographic order on the ascending element sequences of two sets.
bool lex_less(IndexSet a, IndexSet b);

struct LexLess {
  bool operator()(IndexSet a, IndexSet b) const { return lex_less(a, b); }
};

/// Sign of the shuffle that sorts the concatenation of disjoint sets `a` then `b`.
int merge_sign(IndexSet a, IndexSet b);

/// Exact rational, always reduced with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(Integer num) : num_(std::move(num)), den_(1) {}  // NOLINT(implicit)
  Rational(Integer num, Integer den);

  static Rational parse(const std::string& text);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  /// Representative of the class in Q/Z lying in [0, 1).
  Rational mod_one() const;

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  Integer num_;
  Integer den_;
};

/// Values of a homomorphism into Q/Z, each reduced into [0, 1).
using PhaseVector = std::vector<Rational>;

}  // namespace torusos

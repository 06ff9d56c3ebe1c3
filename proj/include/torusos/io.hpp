#pragma once

#include <string>

#include "torusos/matroid.hpp"
#include "torusos/toric.hpp"

namespace torusos {

/// {"dim": d, "hypertori": [{"chi": [..], "phase": "p/q"}, ..]}. The phase is
/// optional and defaults to "0"; integers may be JSON numbers or decimal strings.
/// Syntax errors report line:column, semantic errors a JSON pointer.
ToricArrangement parse_arrangement(const std::string& text);
std::string arrangement_to_json(const ToricArrangement& a);

/// {"n": n, "d": d, "entries": [{"set": [..], "rank": r, "m": m}, ..]} covering
/// either every subset or every subset of size at most d.
MultiplicityOracle parse_oracle(const std::string& text);
/// Writes every subset, in increasing mask order.
std::string oracle_to_json(const MultiplicityOracle& o);

std::string read_file(const std::string& path);

/// "fnv1a64:<16 hex digits>" of the bytes.
std::string digest(const std::string& bytes);

}  // namespace torusos

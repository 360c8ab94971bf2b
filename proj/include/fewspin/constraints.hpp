#pragma once

#include <map>
#include <string>
#include <vector>

#include "fewspin/gates.hpp"

namespace fewspin {

enum class ConstraintStatus { satisfied, violated, unverifiable };
std::string to_string(ConstraintStatus s);

struct ConstraintResult {
    char letter;
    ConstraintStatus status;
    double residual;  // 0 when unverifiable
    std::string statement;
};

// "AB" or "K2[AB]" -> "AB"; "ADBC" or "K4[ADBC]" -> "ADBC" with letters sorted inside each pair
// and the pairs ordered, so "CBDA" -> "ADBC".
std::string normalize_coupling_key(const std::string& key);

using CouplingAssignment = std::map<std::string, double>;

// Keys are normalized before lookup. Throws std::domain_error naming missing keys.
std::vector<ConstraintResult> check_gate_constraints(const CouplingAssignment& k, GateId g);

}  // namespace fewspin

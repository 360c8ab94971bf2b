#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fewspin/cg_basis.hpp"
#include "fewspin/constraints.hpp"
#include "fewspin/gates.hpp"
#include "fewspin/heitler_london.hpp"

namespace fewspin {

// 12 significant digits.
std::string format_double(double x);
// Value rounded to 12 significant digits, so JSON dumps stay short and stable.
double round12(double x);

extern const char* const kSweepHeader;

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

nlohmann::json coeffs_json(const DimensionlessParams& p, Geometry g, PotentialKind kind,
                           const CouplingResult& r);
nlohmann::json basis_json(const SpinPathBasis& b);
nlohmann::json couplings_json(const FourBodyCouplings& c);
nlohmann::json verify_cp_json(const FourBodyCouplings& c, const std::vector<ConditionReport>& conditions,
                              const CpResult& r);
nlohmann::json constraints_json(GateId g, const std::vector<ConstraintResult>& results);

// {"AB": 1.0, "K4[ABCD]": 2.0, ...}
CouplingAssignment parse_assignment(const nlohmann::json& j);

}  // namespace fewspin

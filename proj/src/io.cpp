#include "fewspin/io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fewspin {

using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::stod(format_double(x));
}

const char* const kSweepHeader = "x_b,x_v,x_c,K0,K2_AB,K2_AC,K4_ABCD,K4_ACBD,error";

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

json opt_json(const std::optional<double>& v) { return v ? json(round12(*v)) : json(nullptr); }

json cplx_json(cplx z) { return json::array({round12(z.real()), round12(z.imag())}); }

json matrix_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(cplx_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

// Commas and newlines would break the CSV row.
std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepHeader << '\n';
    for (const auto& row : rows) {
        os << format_double(row.params.x_b) << ',' << format_double(row.params.x_v) << ','
           << format_double(row.params.x_c) << ',';
        if (row.result) {
            const auto& k = row.result->K;
            os << format_double(k.K0) << ',' << format_double(k.K2_AB) << ',' << format_double(k.K2_AC) << ','
               << opt(k.K4_ABCD) << ',' << opt(k.K4_ACBD) << ',';
        } else {
            os << ",,,,,";
        }
        os << csv_safe(row.error) << '\n';
    }
}

json sweep_json(const std::vector<SweepRow>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json j{{"x_b", round12(row.params.x_b)}, {"x_v", round12(row.params.x_v)}, {"x_c", round12(row.params.x_c)}};
        if (row.result) {
            const auto& k = row.result->K;
            j["K0"] = round12(k.K0);
            j["K2_AB"] = round12(k.K2_AB);
            j["K2_AC"] = round12(k.K2_AC);
            j["K4_ABCD"] = opt_json(k.K4_ABCD);
            j["K4_ACBD"] = opt_json(k.K4_ACBD);
        } else {
            for (const char* f : {"K0", "K2_AB", "K2_AC", "K4_ABCD", "K4_ACBD"}) j[f] = nullptr;
        }
        j["error"] = row.error;
        out.push_back(j);
    }
    return out;
}

json coeffs_json(const DimensionlessParams& p, Geometry g, PotentialKind kind, const CouplingResult& r) {
    const auto& k = r.K;
    json j{{"geometry", to_string(g)},
           {"potential", to_string(kind)},
           {"x_b", round12(p.x_b)},
           {"x_v", round12(p.x_v)},
           {"x_c", round12(p.x_c)},
           {"K0", round12(k.K0)},
           {"K2_AB", round12(k.K2_AB)},
           {"K2_AC", round12(k.K2_AC)},
           {"displacement", round12(r.displacement)},
           {"bracket_failed", r.bracket_failed},
           {"relative_residual", round12(r.relative_residual)}};
    json ratios{{"K2_AC/K2_AB", round12(k.K2_AC / k.K2_AB)}};
    if (k.K4_ABCD && k.K4_ACBD) {
        j["K4_ABCD"] = round12(*k.K4_ABCD);
        j["K4_ACBD"] = round12(*k.K4_ACBD);
        ratios["K4_ABCD/K2_AB"] = round12(*k.K4_ABCD / k.K2_AB);
        ratios["K4_ACBD/K2_AC"] = round12(*k.K4_ACBD / k.K2_AC);
    }
    j["ratios"] = ratios;
    json sectors = json::array();
    for (std::size_t i = 0; i < r.sectors.size(); ++i)
        sectors.push_back({{"sector", r.sectors[i].name()}, {"energy", round12(r.energies[i])}});
    j["sectors"] = sectors;
    return j;
}

json basis_json(const SpinPathBasis& b) {
    json out = json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
        json vec = json::array();
        for (cplx z : b.vectors[i]) vec.push_back(cplx_json(z));
        out.push_back({{"path", b.paths[i]}, {"vector", vec}});
    }
    return out;
}

json couplings_json(const FourBodyCouplings& c) {
    return {{"Ja", round12(c.Ja)},   {"Jb", round12(c.Jb)},     {"Jc", round12(c.Jc)},
            {"Jd", round12(c.Jd)},   {"J2p", round12(c.J2p)},   {"J2pp", round12(c.J2pp)},
            {"J3p", round12(c.J3p)}, {"J3pp", round12(c.J3pp)}, {"J5", round12(c.J5)},
            {"JB", round12(c.JB)}};
}

json verify_cp_json(const FourBodyCouplings& c, const std::vector<ConditionReport>& conditions,
                    const CpResult& r) {
    json conds = json::array();
    for (const auto& cr : conditions)
        conds.push_back({{"id", cr.id}, {"satisfied", cr.satisfied}, {"residual", round12(cr.residual)}});
    return {{"couplings", couplings_json(c)},
            {"conditions", conds},
            {"code_block", matrix_json(r.code_block)},
            {"block_deviation", round12(r.block_deviation)},
            {"leakage", round12(r.leakage)},
            {"verdict", r.pass ? "PASS" : "FAIL"}};
}

json constraints_json(GateId g, const std::vector<ConstraintResult>& results) {
    json list = json::array();
    for (const auto& c : results)
        list.push_back({{"constraint", std::string(1, c.letter)},
                        {"status", to_string(c.status)},
                        {"residual", round12(c.residual)},
                        {"statement", c.statement}});
    return {{"gate", to_string(g)}, {"constraints", list}};
}

CouplingAssignment parse_assignment(const json& j) {
    if (!j.is_object()) throw std::domain_error("coupling assignment must be a JSON object");
    CouplingAssignment out;
    for (const auto& [key, v] : j.items()) {
        if (!v.is_number()) throw std::domain_error("coupling '" + key + "' is not a number");
        out[key] = v.get<double>();
    }
    return out;
}

}  // namespace fewspin

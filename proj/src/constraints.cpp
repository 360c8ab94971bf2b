#include "fewspin/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace fewspin {

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kIntTol = 1e-9;
constexpr double kEtaTol = 1e-8;

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double spread(std::initializer_list<double> v) {
    double r = 0.0;
    for (double a : v)
        for (double b : v) r = std::max(r, rel_diff(a, b));
    return r;
}

double int_distance(double x) { return std::isfinite(x) ? std::abs(x - std::round(x)) : INFINITY; }

class Lookup {
public:
    explicit Lookup(const CouplingAssignment& raw) {
        for (const auto& [key, v] : raw) k_[normalize_coupling_key(key)] = v;
    }
    void require(std::initializer_list<const char*> keys) {
        for (const char* key : keys)
            if (!k_.count(normalize_coupling_key(key)) &&
                std::find(missing_.begin(), missing_.end(), key) == missing_.end())
                missing_.push_back(key);
    }
    void throw_if_missing() const {
        if (missing_.empty()) return;
        std::string msg = "missing coupling keys:";
        for (const auto& m : missing_) msg += " " + m;
        throw std::domain_error(msg);
    }
    double operator()(const char* key) const { return k_.at(normalize_coupling_key(key)); }

private:
    std::map<std::string, double> k_;
    std::vector<std::string> missing_;
};

struct Rule {
    char letter;
    std::string statement;
    std::vector<const char*> keys;
    // residual and whether the rule passes; empty for unverifiable rules
    std::function<std::pair<double, bool>(const Lookup&)> eval;
};

std::pair<double, bool> equal_rel(double r) { return {r, r <= kRelTol}; }

// eta(J', J'') with J = -K4 / (3 K2) for the generator scale of U2'/U3'.
std::pair<double, bool> eta_rule(double k4a, double k4b, double k2) {
    const double r = rel_diff(k4a, k4b);
    if (r <= kRelTol) return {r, true};
    const double eta = std::abs(u23_entries(-k4a / (3 * k2), -k4b / (3 * k2)).eta);
    return {eta, eta < kEtaTol};
}

std::vector<Rule> rules_for(GateId g) {
    switch (g) {
        case GateId::UA: return {};
        case GateId::U5:
            return {
                {'a', "K2[GH] = K2[FG]/2", {"FG", "GH"},
                 [](const Lookup& k) { return equal_rel(rel_diff(k("GH"), 0.5 * k("FG"))); }},
                {'b', "K2[FH] = 0 or Lambda(K2[FH]/K2[FG]) even", {"FG", "FH"},
                 [](const Lookup& k) {
                     if (k("FH") == 0.0) return std::pair{0.0, true};
                     const double lam = u5_entries(k("FH") / k("FG")).Lambda.real();
                     const double r = int_distance(lam / 2.0);
                     return std::pair{r, r < kIntTol && std::round(lam / 2.0) >= 1};
                 }},
            };
        case GateId::UB:
        case GateId::U6:
            return {
                {'c', "K2 uniform over pairs of {A,B,C,D}", {"AB", "AC", "AD", "BC", "BD", "CD"},
                 [](const Lookup& k) {
                     return equal_rel(spread({k("AB"), k("AC"), k("AD"), k("BC"), k("BD"), k("CD")}));
                 }},
                {'d', "K4[ABCD] = K4[ACBD] = K4[ADBC]", {"ABCD", "ACBD", "ADBC"},
                 [](const Lookup& k) { return equal_rel(spread({k("ABCD"), k("ACBD"), k("ADBC")})); }},
                {'e', "K4[ABCD] = 2 m K2[AB], m integer", {"ABCD", "AB"},
                 [](const Lookup& k) {
                     const double r = int_distance(k("ABCD") / (2.0 * k("AB")));
                     return std::pair{r, r < kIntTol};
                 }},
            };
        case GateId::U2:
            return {
                {'f', "K2[FG] = K2[FH] = K2[GH]", {"FG", "FH", "GH"},
                 [](const Lookup& k) { return equal_rel(spread({k("FG"), k("FH"), k("GH")})); }},
                {'g', "K2[EF] = 9/2 K2[GH]", {"EF", "GH"},
                 [](const Lookup& k) { return equal_rel(rel_diff(k("EF"), 4.5 * k("GH"))); }},
                {'h', "K4[EGFH] = K4[EHFG]", {"EGFH", "EHFG"},
                 [](const Lookup& k) { return equal_rel(rel_diff(k("EGFH"), k("EHFG"))); }},
                {'i', "K4[EFGH] = K4[EGFH] or eta = 0", {"EFGH", "EGFH", "GH"},
                 [](const Lookup& k) { return eta_rule(k("EFGH"), k("EGFH"), k("GH")); }},
            };
        case GateId::U3:
            return {
                {'j', "K2[AB] = K2[AC] = K2[BC]", {"AB", "AC", "BC"},
                 [](const Lookup& k) { return equal_rel(spread({k("AB"), k("AC"), k("BC")})); }},
                {'k', "K2[CD] = 9/2 K2[AB]", {"CD", "AB"},
                 [](const Lookup& k) { return equal_rel(rel_diff(k("CD"), 4.5 * k("AB"))); }},
                {'l', "K4[ACBD] = K4[ADBC]", {"ACBD", "ADBC"},
                 [](const Lookup& k) { return equal_rel(rel_diff(k("ACBD"), k("ADBC"))); }},
                {'m', "K4[ABCD] = K4[ACBD] or eta = 0", {"ABCD", "ACBD", "AB"},
                 [](const Lookup& k) { return eta_rule(k("ABCD"), k("ACBD"), k("AB")); }},
            };
        case GateId::U1:
            return {
                {'n', "K2 uniform over pairs of {A,B,C,D}", {"AB", "AC", "AD", "BC", "BD", "CD"},
                 [](const Lookup& k) {
                     return equal_rel(spread({k("AB"), k("AC"), k("AD"), k("BC"), k("BD"), k("CD")}));
                 }},
                {'o', "K2[DE] = 2 K2[AB]", {"DE", "AB"},
                 [](const Lookup& k) { return equal_rel(rel_diff(k("DE"), 2.0 * k("AB"))); }},
                {'p', "K4[ABCD] = K4[ACBD] = K4[ADBC]", {"ABCD", "ACBD", "ADBC"},
                 [](const Lookup& k) { return equal_rel(spread({k("ABCD"), k("ACBD"), k("ADBC")})); }},
                {'q', "K4[ABCE] = K4[ACBE] = K4[AEBC]", {"ABCE", "ACBE", "AEBC"},
                 [](const Lookup& k) { return equal_rel(spread({k("ABCE"), k("ACBE"), k("AEBC")})); }},
                {'r', "K4[ADBE] = K4[AEBD]", {"ADBE", "AEBD"},
                 [](const Lookup& k) { return equal_rel(rel_diff(k("ADBE"), k("AEBD"))); }},
                {'s', "K4[ADCE] = K4[AECD]", {"ADCE", "AECD"},
                 [](const Lookup& k) { return equal_rel(rel_diff(k("ADCE"), k("AECD"))); }},
                {'t', "K4[BDCE] = K4[BECD]", {"BDCE", "BECD"},
                 [](const Lookup& k) { return equal_rel(rel_diff(k("BDCE"), k("BECD"))); }},
                {'u', "K4[ADBE] = K4[ADCE] = K4[BDCE]", {"ADBE", "ADCE", "BDCE"},
                 [](const Lookup& k) { return equal_rel(spread({k("ADBE"), k("ADCE"), k("BDCE")})); }},
                {'v', "K4[ABDE] single-valued in K4[ADBE]", {}, nullptr},
                {'w', "K4[BCDE] single-valued in K4[ADCE]", {}, nullptr},
                {'x', "K4[ACDE] single-valued in K4[BDCE]", {}, nullptr},
            };
    }
    return {};
}

}  // namespace

std::string to_string(ConstraintStatus s) {
    switch (s) {
        case ConstraintStatus::satisfied: return "satisfied";
        case ConstraintStatus::violated: return "violated";
        case ConstraintStatus::unverifiable: return "unverifiable";
    }
    return "?";
}

std::string normalize_coupling_key(const std::string& key) {
    std::string s = key;
    if (s.size() > 3 && (s.rfind("K2[", 0) == 0 || s.rfind("K4[", 0) == 0) && s.back() == ']')
        s = s.substr(3, s.size() - 4);
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const bool letters = std::all_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'H'; });
    if (!letters || (s.size() != 2 && s.size() != 4))
        throw std::domain_error("malformed coupling key '" + key + "'");
    std::string a = s.substr(0, 2);
    std::sort(a.begin(), a.end());
    if (a[0] == a[1]) throw std::domain_error("coupling key repeats a dot: '" + key + "'");
    if (s.size() == 2) return a;
    std::string b = s.substr(2, 2);
    std::sort(b.begin(), b.end());
    if (b[0] == b[1] || b.find_first_of(a) != std::string::npos)
        throw std::domain_error("coupling key repeats a dot: '" + key + "'");
    return a < b ? a + b : b + a;
}

std::vector<ConstraintResult> check_gate_constraints(const CouplingAssignment& k, GateId g) {
    Lookup look(k);
    const auto rules = rules_for(g);
    for (const auto& r : rules)
        for (const char* key : r.keys) look.require({key});
    look.throw_if_missing();
    std::vector<ConstraintResult> out;
    for (const auto& r : rules) {
        if (!r.eval) {
            out.push_back({r.letter, ConstraintStatus::unverifiable, 0.0, r.statement});
            continue;
        }
        const auto [res, ok] = r.eval(look);
        out.push_back({r.letter, ok ? ConstraintStatus::satisfied : ConstraintStatus::violated, res, r.statement});
    }
    return out;
}

}  // namespace fewspin

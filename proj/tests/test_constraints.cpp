#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fewspin/constraints.hpp"

using namespace fewspin;

namespace {

ConstraintResult find(const std::vector<ConstraintResult>& rs, char letter) {
    for (const auto& r : rs)
        if (r.letter == letter) return r;
    FAIL("constraint " << letter << " not reported");
    return {};
}

CouplingAssignment uniform_abcd(double k2, double k4) {
    CouplingAssignment a;
    for (const char* p : {"AB", "AC", "AD", "BC", "BD", "CD"}) a[p] = k2;
    for (const char* q : {"ABCD", "ACBD", "ADBC"}) a[q] = k4;
    return a;
}

}  // namespace

TEST_CASE("coupling key normalization") {
    CHECK(normalize_coupling_key("ba") == "AB");
    CHECK(normalize_coupling_key("K2[BA]") == "AB");
    CHECK(normalize_coupling_key("K4[CBDA]") == "ADBC");
    CHECK(normalize_coupling_key("DCBA") == "ABCD");
    CHECK_THROWS_AS(normalize_coupling_key("AZ"), std::domain_error);
    CHECK_THROWS_AS(normalize_coupling_key("AA"), std::domain_error);
    CHECK_THROWS_AS(normalize_coupling_key("ABA"), std::domain_error);
    CHECK_THROWS_AS(normalize_coupling_key("ABCA"), std::domain_error);
}

TEST_CASE("uniform couplings satisfy the UB constraints") {
    const auto rs = check_gate_constraints(uniform_abcd(1.3, 2.6), GateId::UB);
    REQUIRE(rs.size() == 3);
    for (const auto& r : rs) CHECK(r.status == ConstraintStatus::satisfied);
    CHECK(find(check_gate_constraints(uniform_abcd(1.3, 3.9), GateId::UB), 'e').status ==
          ConstraintStatus::violated);
    CHECK(find(check_gate_constraints(uniform_abcd(1.3, 5.2), GateId::U6), 'e').status ==
          ConstraintStatus::satisfied);
}

TEST_CASE("U3 ratio constraint") {
    CouplingAssignment a{{"AB", 1.0}, {"AC", 1.0}, {"BC", 1.0}, {"CD", 3.0},
                         {"ACBD", 0.2}, {"ADBC", 0.2}, {"ABCD", 0.2}};
    auto rs = check_gate_constraints(a, GateId::U3);
    CHECK(find(rs, 'k').status == ConstraintStatus::violated);
    CHECK(find(rs, 'j').status == ConstraintStatus::satisfied);
    CHECK(find(rs, 'm').status == ConstraintStatus::satisfied);
    a["CD"] = 4.5;
    CHECK(find(check_gate_constraints(a, GateId::U3), 'k').status == ConstraintStatus::satisfied);
}

TEST_CASE("U1 constraints and unverifiable entries") {
    CouplingAssignment a = uniform_abcd(1.0, 0.5);
    a["DE"] = 2.0;
    for (const char* q : {"ABCE", "ACBE", "AEBC", "ADBE", "AEBD", "ADCE", "AECD", "BDCE", "BECD"}) a[q] = 0.1;
    const auto rs = check_gate_constraints(a, GateId::U1);
    CHECK(find(rs, 'o').status == ConstraintStatus::satisfied);
    for (char c : {'n', 'p', 'q', 'r', 's', 't', 'u'}) CHECK(find(rs, c).status == ConstraintStatus::satisfied);
    for (char c : {'v', 'w', 'x'}) {
        CHECK(find(rs, c).status == ConstraintStatus::unverifiable);
        CHECK(find(rs, c).residual == 0.0);
    }
}

TEST_CASE("U5 constraints") {
    CouplingAssignment a{{"FG", 2.0}, {"GH", 1.0}, {"FH", 0.0}};
    auto rs = check_gate_constraints(a, GateId::U5);
    CHECK(find(rs, 'a').status == ConstraintStatus::satisfied);
    CHECK(find(rs, 'b').status == ConstraintStatus::satisfied);
    a["GH"] = 4.0;
    a["FH"] = 2.0 * tune_lambda_even(1, 1);
    rs = check_gate_constraints(a, GateId::U5);
    CHECK(find(rs, 'a').status == ConstraintStatus::violated);
    CHECK(find(rs, 'b').status == ConstraintStatus::satisfied);
    a["FH"] = 1.0;
    CHECK(find(check_gate_constraints(a, GateId::U5), 'b').status == ConstraintStatus::violated);
}

TEST_CASE("U2 eta rule") {
    CouplingAssignment a{{"FG", 1.0}, {"FH", 1.0}, {"GH", 1.0}, {"EF", 4.5},
                         {"EGFH", 0.3}, {"EHFG", 0.3}, {"EFGH", 0.3}};
    auto rs = check_gate_constraints(a, GateId::U2);
    for (const auto& r : rs) CHECK(r.status == ConstraintStatus::satisfied);
    a["EFGH"] = 0.9;
    CHECK(find(check_gate_constraints(a, GateId::U2), 'i').status == ConstraintStatus::violated);
}

TEST_CASE("missing keys are named") {
    try {
        check_gate_constraints({{"AB", 1.0}}, GateId::UB);
        FAIL("expected missing keys");
    } catch (const std::domain_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("missing coupling keys") != std::string::npos);
        CHECK(msg.find("AC") != std::string::npos);
        CHECK(msg.find("ADBC") != std::string::npos);
    }
    CHECK(check_gate_constraints({}, GateId::UA).empty());
    CHECK(to_string(ConstraintStatus::unverifiable) == "unverifiable");
}

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fewspin/cg_basis.hpp"
#include "fewspin/constraints.hpp"
#include "fewspin/gates.hpp"
#include "fewspin/heitler_london.hpp"
#include "fewspin/io.hpp"
#include "fewspin/monte_carlo.hpp"

namespace py = pybind11;
using namespace fewspin;

namespace {

py::array_t<cplx> to_numpy(const ComplexMatrix& m) {
    py::array_t<cplx> a({m.rows(), m.cols()});
    auto r = a.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return a;
}

py::dict coefficients_dict(const CouplingCoefficients& k) {
    py::dict d;
    d["K0"] = k.K0;
    d["K2_AB"] = k.K2_AB;
    d["K2_AC"] = k.K2_AC;
    if (k.K4_ABCD) d["K4_ABCD"] = *k.K4_ABCD;
    if (k.K4_ACBD) d["K4_ACBD"] = *k.K4_ACBD;
    return d;
}

py::dict result_dict(const CouplingResult& r) {
    py::dict d = coefficients_dict(r.K);
    d["relative_residual"] = r.relative_residual;
    d["displacement"] = r.displacement;
    d["bracket_failed"] = r.bracket_failed;
    py::dict energies;
    for (std::size_t i = 0; i < r.sectors.size(); ++i) energies[py::str(r.sectors[i].name())] = r.energies[i];
    d["energies"] = energies;
    return d;
}

FourBodyCouplings couplings_from_kwargs(const py::kwargs& kw) {
    FourBodyCouplings c;
    const std::pair<const char*, double FourBodyCouplings::*> fields[] = {
        {"Ja", &FourBodyCouplings::Ja},   {"Jb", &FourBodyCouplings::Jb},     {"Jc", &FourBodyCouplings::Jc},
        {"Jd", &FourBodyCouplings::Jd},   {"J2p", &FourBodyCouplings::J2p},   {"J2pp", &FourBodyCouplings::J2pp},
        {"J3p", &FourBodyCouplings::J3p}, {"J3pp", &FourBodyCouplings::J3pp}, {"J5", &FourBodyCouplings::J5},
        {"JB", &FourBodyCouplings::JB}};
    std::size_t used = 0;
    for (const auto& [name, member] : fields)
        if (kw.contains(name)) {
            c.*member = kw[name].cast<double>();
            ++used;
        }
    if (used != kw.size()) throw py::key_error("unknown coupling name");
    return c;
}

py::dict couplings_dict(const FourBodyCouplings& c) {
    py::dict d;
    d["Ja"] = c.Ja;
    d["Jb"] = c.Jb;
    d["Jc"] = c.Jc;
    d["Jd"] = c.Jd;
    d["J2p"] = c.J2p;
    d["J2pp"] = c.J2pp;
    d["J3p"] = c.J3p;
    d["J3pp"] = c.J3pp;
    d["J5"] = c.J5;
    d["JB"] = c.JB;
    return d;
}

}  // namespace

PYBIND11_MODULE(_fewspin, m) {
    m.doc() = "Few-body spin couplings for quantum-dot arrays and encoded exchange gates";

    py::register_exception<NoRootError>(m, "NoRootError", PyExc_RuntimeError);

    m.def(
        "compute_couplings",
        [](double x_b, double x_v, double x_c, const std::string& geometry, const std::string& potential) {
            return result_dict(
                compute_couplings({x_b, x_v, x_c}, parse_geometry(geometry), parse_potential(potential)));
        },
        py::arg("x_b"), py::arg("x_v"), py::arg("x_c") = 1.5, py::arg("geometry") = "linear3",
        py::arg("potential") = "gaussian");

    m.def(
        "sweep_csv",
        [](const std::vector<double>& x_b, const std::vector<double>& x_v, double x_c, const std::string& geometry,
           const std::string& potential, unsigned threads) {
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = sweep(x_b, x_v, x_c, parse_geometry(geometry), parse_potential(potential), threads);
            }
            std::ostringstream os;
            write_sweep_csv(os, rows);
            return os.str();
        },
        py::arg("x_b"), py::arg("x_v"), py::arg("x_c") = 1.5, py::arg("geometry") = "linear3",
        py::arg("potential") = "gaussian", py::arg("threads") = 1);

    m.def(
        "l_to_k",
        [](double L0, double L1, double L1p, double L2, double L2p, const std::string& geometry) {
            return coefficients_dict(L_to_K({L0, L1, L1p, L2, L2p}, parse_geometry(geometry)));
        },
        py::arg("L0"), py::arg("L1"), py::arg("L1p"), py::arg("L2") = 0.0, py::arg("L2p") = 0.0,
        py::arg("geometry") = "linear3");

    m.def("path_count", &path_count, py::arg("n_sites"), py::arg("two_total"));
    m.def("enumerate_paths", &enumerate_paths, py::arg("n_sites"), py::arg("two_total"));
    m.def(
        "path_basis",
        [](std::size_t n, int two_total) {
            const SpinPathBasis b = make_path_basis(n, two_total);
            return py::make_tuple(b.paths, to_numpy(b.as_matrix()));
        },
        py::arg("n_sites"), py::arg("two_total"), "Returns (paths, matrix whose columns are the basis vectors).");
    m.def(
        "exchange_matrix", [](char a, char b) { return to_numpy(E(a, b)); }, py::arg("a"), py::arg("b"),
        "E_ab in the 14-dim eight-spin singlet basis; dots 'A'..'H'.");

    m.def(
        "gate", [](const std::string& g, py::kwargs kw) { return to_numpy(gate(parse_gate(g), couplings_from_kwargs(kw))); },
        py::arg("gate"));
    m.def(
        "closed_form_gate",
        [](const std::string& g, py::kwargs kw) {
            return to_numpy(closed_form_gate(parse_gate(g), couplings_from_kwargs(kw)));
        },
        py::arg("gate"));
    m.def("assemble_cp", [](py::kwargs kw) {
        const FourBodyCouplings c = couplings_from_kwargs(kw);
        const CpResult r = assemble_cp(c);
        py::dict d;
        d["code_block"] = to_numpy(r.code_block);
        d["block_deviation"] = r.block_deviation;
        d["leakage"] = r.leakage;
        d["pass"] = r.pass;
        py::list conds;
        for (const auto& cr : cp_conditions(c)) conds.append(py::make_tuple(cr.id, cr.satisfied, cr.residual));
        d["conditions"] = conds;
        return d;
    });

    m.def("tune_lambda_even", &tune_lambda_even, py::arg("n"), py::arg("branch") = 1);
    m.def(
        "tune_eta_zero",
        [](const std::string& g, bool hold_primed, double value) {
            return tune_eta_zero(parse_gate(g), hold_primed ? FixedConstant::primed : FixedConstant::double_primed,
                                 value);
        },
        py::arg("gate"), py::arg("hold_primed") = true, py::arg("value") = 0.5);
    m.def(
        "tune_chi_plus_zero",
        [](double r) {
            const ChiTriple t = tune_chi_plus_zero(r);
            return py::make_tuple(t.Ja, t.Jb, t.Jd);
        },
        py::arg("ratio"));
    m.def(
        "tuned_couplings",
        [](double ratio, double JB, double Jc, unsigned n, double J2, double J3) {
            return couplings_dict(tuned_couplings(ratio, JB, Jc, n, J2, J3));
        },
        py::arg("ratio") = 2.0, py::arg("JB") = 1.0, py::arg("Jc") = 0.37, py::arg("lambda_n") = 1,
        py::arg("J2") = 0.5, py::arg("J3") = 0.5);

    m.def(
        "check_gate_constraints",
        [](const std::map<std::string, double>& assignment, const std::string& g) {
            py::list out;
            for (const auto& r : check_gate_constraints(assignment, parse_gate(g)))
                out.append(py::make_tuple(std::string(1, r.letter), to_string(r.status), r.residual));
            return out;
        },
        py::arg("assignment"), py::arg("gate"));
}

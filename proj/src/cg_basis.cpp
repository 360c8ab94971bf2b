#include "fewspin/cg_basis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fewspin/spin_ops.hpp"

namespace fewspin {

double clebsch_half(int two_j, int two_M, int two_ms, int two_J) {
    const int two_m = two_M - two_ms;
    if (two_j < 0 || std::abs(two_ms) != 1 || std::abs(two_m) > two_j || (two_j - two_m) % 2 != 0 ||
        std::abs(two_M) > two_J || (two_J != two_j + 1 && two_J != two_j - 1))
        throw std::domain_error("invalid angular momentum arguments");
    const double j = two_j / 2.0, M = two_M / 2.0;
    const double den = 2 * j + 1;
    const bool up = two_ms > 0;
    if (two_J == two_j + 1) return up ? std::sqrt((j + M + 0.5) / den) : std::sqrt((j - M + 0.5) / den);
    return up ? -std::sqrt((j - M + 0.5) / den) : std::sqrt((j + M + 0.5) / den);
}

bool valid_path(const BratteliPath& p) {
    if (p.empty() || p[0] != 1) return false;
    for (std::size_t k = 1; k < p.size(); ++k)
        if (std::abs(p[k] - p[k - 1]) != 1 || p[k] < 0) return false;
    return true;
}

namespace {

const std::vector<BratteliPath>& reference_order_8() {
    static const std::vector<BratteliPath> order{
        {1, 0, 1, 0, 1, 0, 1, 0}, {1, 0, 1, 0, 1, 2, 1, 0}, {1, 2, 1, 0, 1, 0, 1, 0},
        {1, 2, 1, 0, 1, 2, 1, 0}, {1, 0, 1, 2, 1, 0, 1, 0}, {1, 2, 1, 2, 1, 0, 1, 0},
        {1, 0, 1, 2, 1, 2, 1, 0}, {1, 2, 1, 2, 1, 2, 1, 0}, {1, 0, 1, 2, 3, 2, 1, 0},
        {1, 2, 3, 2, 1, 0, 1, 0}, {1, 2, 3, 2, 3, 2, 1, 0}, {1, 2, 3, 4, 3, 2, 1, 0},
        {1, 2, 1, 2, 3, 2, 1, 0}, {1, 2, 3, 2, 1, 2, 1, 0}};
    return order;
}

}  // namespace

std::vector<BratteliPath> enumerate_paths(std::size_t n_sites, int two_total) {
    if (n_sites == 0) throw std::invalid_argument("need at least one site");
    std::vector<BratteliPath> out;
    BratteliPath cur{1};
    std::function<void()> rec = [&] {
        if (cur.size() == n_sites) {
            if (cur.back() == two_total) out.push_back(cur);
            return;
        }
        const int remaining = static_cast<int>(n_sites - cur.size());
        for (int step : {-1, 1}) {
            const int next = cur.back() + step;
            if (next < 0 || std::abs(next - two_total) > remaining - 1) continue;
            cur.push_back(next);
            rec();
            cur.pop_back();
        }
    };
    if (two_total >= 0) rec();
    if (n_sites == 8 && two_total == 0) {
        std::vector<BratteliPath> ordered = reference_order_8();
        if (ordered.size() != out.size()) throw std::logic_error("reference order is incomplete");
        return ordered;
    }
    return out;
}

std::size_t path_count(std::size_t n_sites, int two_total) { return enumerate_paths(n_sites, two_total).size(); }

CVector path_to_vector(const BratteliPath& path, int two_sz) {
    if (!valid_path(path)) throw std::domain_error("invalid Bratteli path");
    const int two_s = path.back();
    if (std::abs(two_sz) > two_s || (two_s - two_sz) % 2 != 0) throw std::domain_error("invalid S_z for path");
    // states[M] for the current prefix, M stored as 2M.
    std::map<int, CVector> states{{1, CVector{1.0, 0.0}}, {-1, CVector{0.0, 1.0}}};
    for (std::size_t k = 1; k < path.size(); ++k) {
        const int two_j = path[k - 1], two_J = path[k];
        std::map<int, CVector> next;
        const std::size_t dim = std::size_t{1} << (k + 1);
        for (int two_M = -two_J; two_M <= two_J; two_M += 2) {
            CVector v(dim, 0.0);
            for (int two_ms : {1, -1}) {
                const int two_m = two_M - two_ms;
                if (std::abs(two_m) > two_j) continue;
                const double c = clebsch_half(two_j, two_M, two_ms, two_J);
                const CVector& prev = states.at(two_m);
                const std::size_t bit = two_ms > 0 ? 0 : 1;  // new site is the rightmost factor
                for (std::size_t a = 0; a < prev.size(); ++a) v[2 * a + bit] += c * prev[a];
            }
            next[two_M] = std::move(v);
        }
        states = std::move(next);
    }
    CVector v = states.at(two_sz);
    std::size_t best = 0;
    for (std::size_t a = 1; a < v.size(); ++a)
        if (std::abs(v[a]) > std::abs(v[best]) + 1e-12) best = a;
    if (v[best].real() < 0)
        for (auto& z : v) z = -z;
    return v;
}

ComplexMatrix SpinPathBasis::as_matrix() const {
    const std::size_t dim = std::size_t{1} << n_sites;
    ComplexMatrix m(dim, vectors.size());
    for (std::size_t c = 0; c < vectors.size(); ++c)
        for (std::size_t r = 0; r < dim; ++r) m(r, c) = vectors[c][r];
    return m;
}

SpinPathBasis make_path_basis(std::size_t n_sites, int two_total, int two_sz) {
    SpinPathBasis b{n_sites, two_total, two_sz, enumerate_paths(n_sites, two_total), {}};
    for (const auto& p : b.paths) b.vectors.push_back(path_to_vector(p, two_sz));
    return b;
}

SpinPathBasis make_path_basis(std::size_t n_sites, int two_total) {
    return make_path_basis(n_sites, two_total, std::abs(two_total) % 2);
}

const SpinPathBasis& singlet_basis_8() {
    static const SpinPathBasis b = make_path_basis(8, 0, 0);
    return b;
}

const CodeStates& code_states() {
    // |1_L> sign chosen so that E_AC -> (sqrt3/2) X + Z/2
    static const CodeStates c = [] {
        CodeStates s{path_to_vector({1, 0, 1, 0}, 0), path_to_vector({1, 2, 1, 0}, 0)};
        for (auto& z : s.one_L) z = -z;
        return s;
    }();
    return c;
}

CVector apply_exchange(const CVector& v, std::size_t n_sites, std::size_t i, std::size_t j) {
    if (i >= n_sites || j >= n_sites || i == j) throw std::invalid_argument("bad exchange sites");
    if (v.size() != (std::size_t{1} << n_sites)) throw std::invalid_argument("vector length mismatch");
    const std::size_t mi = std::size_t{1} << (n_sites - 1 - i);
    const std::size_t mj = std::size_t{1} << (n_sites - 1 - j);
    CVector out(v.size());
    for (std::size_t s = 0; s < v.size(); ++s) {
        const bool differ = ((s & mi) != 0) != ((s & mj) != 0);
        out[differ ? (s ^ mi ^ mj) : s] = v[s];
    }
    return out;
}

ComplexMatrix exchange_in_path_basis(const SpinPathBasis& b, std::size_t i, std::size_t j) {
    const std::size_t n = b.size();
    ComplexMatrix m(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const CVector ev = apply_exchange(b.vectors[c], b.n_sites, i, j);
        for (std::size_t r = 0; r < n; ++r) m(r, c) = inner(b.vectors[r], ev);
    }
    return m;
}

ComplexMatrix exchange_in_path_basis(std::size_t i, std::size_t j) {
    if (i >= 8 || j >= 8 || i == j) throw std::invalid_argument("exchange sites must be distinct and < 8");
    static const auto table = [] {
        std::vector<ComplexMatrix> t(64);
        for (std::size_t a = 0; a < 8; ++a)
            for (std::size_t c = 0; c < 8; ++c)
                if (a != c) t[a * 8 + c] = exchange_in_path_basis(singlet_basis_8(), a, c);
        return t;
    }();
    return table[i * 8 + j];
}

double code_leakage(const ComplexMatrix& op) {
    if (op.rows() != 16 || op.cols() != 16) throw std::invalid_argument("expected a 4-spin operator");
    const CodeStates& cs = code_states();
    double leak = 0.0;
    for (const CVector* v : {&cs.zero_L, &cs.one_L}) {
        CVector w = op * *v;
        const cplx a0 = inner(cs.zero_L, w), a1 = inner(cs.one_L, w);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= a0 * cs.zero_L[k] + a1 * cs.one_L[k];
        leak += std::pow(norm(w), 2);
    }
    return std::sqrt(leak);
}

ComplexMatrix encoded_operator_check(const ComplexMatrix& op, double leak_tol) {
    const double leak = code_leakage(op);
    if (leak > leak_tol) {
        std::ostringstream msg;
        msg << "operator leaks out of the code space (leakage norm " << leak << ")";
        throw std::domain_error(msg.str());
    }
    const CodeStates& cs = code_states();
    const CVector* basis[2] = {&cs.zero_L, &cs.one_L};
    ComplexMatrix m(2, 2);
    for (int c = 0; c < 2; ++c) {
        const CVector w = op * *basis[c];
        for (int r = 0; r < 2; ++r) m(r, c) = inner(*basis[r], w);
    }
    return m;
}

}  // namespace fewspin

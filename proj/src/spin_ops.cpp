#include "fewspin/spin_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace fewspin {

namespace {

void check_site(std::size_t n_sites, std::size_t site) {
    if (site >= n_sites) throw std::out_of_range("site index out of range");
}

void check_pair(std::size_t n_sites, std::size_t i, std::size_t j) {
    check_site(n_sites, i);
    check_site(n_sites, j);
    if (i == j) throw std::invalid_argument("coupling needs two distinct sites");
}

std::size_t dim_of(std::size_t n_sites) {
    if (n_sites == 0 || n_sites > 12) throw std::invalid_argument("site count out of range");
    return std::size_t{1} << n_sites;
}

// sigma_a |b> = phase |b ^ flip>
cplx pauli_phase(PauliAxis a, unsigned bit) {
    switch (a) {
        case PauliAxis::identity:
        case PauliAxis::x: return 1.0;
        case PauliAxis::y: return bit == 0 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
        case PauliAxis::z: return bit == 0 ? 1.0 : -1.0;
    }
    return 1.0;
}

bool flips(PauliAxis a) { return a == PauliAxis::x || a == PauliAxis::y; }

}  // namespace

char axis_char(PauliAxis a) {
    switch (a) {
        case PauliAxis::identity: return '0';
        case PauliAxis::x: return 'x';
        case PauliAxis::y: return 'y';
        case PauliAxis::z: return 'z';
    }
    return '?';
}

ComplexMatrix pauli(PauliAxis a) { return pauli_string({a}); }

ComplexMatrix pauli_string(const std::vector<PauliAxis>& axes) {
    const std::size_t n = axes.size();
    const std::size_t dim = dim_of(n);
    std::size_t flip = 0;
    for (std::size_t s = 0; s < n; ++s)
        if (flips(axes[s])) flip |= std::size_t{1} << (n - 1 - s);
    ComplexMatrix m(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        cplx ph = 1.0;
        for (std::size_t s = 0; s < n; ++s) ph *= pauli_phase(axes[s], site_bit(c, s, n));
        m(c ^ flip, c) = ph;
    }
    return m;
}

ComplexMatrix embed_pauli(std::size_t n_sites, std::size_t site, PauliAxis axis) {
    check_site(n_sites, site);
    std::vector<PauliAxis> axes(n_sites, PauliAxis::identity);
    axes[site] = axis;
    return pauli_string(axes);
}

ComplexMatrix dot_coupling(std::size_t n_sites, std::size_t i, std::size_t j) {
    check_pair(n_sites, i, j);
    ComplexMatrix m(dim_of(n_sites), dim_of(n_sites));
    for (PauliAxis a : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) {
        std::vector<PauliAxis> axes(n_sites, PauliAxis::identity);
        axes[i] = a;
        axes[j] = a;
        m += 0.25 * pauli_string(axes);
    }
    return m;
}

ComplexMatrix exchange(std::size_t n_sites, std::size_t i, std::size_t j) {
    check_pair(n_sites, i, j);
    const std::size_t dim = dim_of(n_sites);
    const std::size_t mi = std::size_t{1} << (n_sites - 1 - i);
    const std::size_t mj = std::size_t{1} << (n_sites - 1 - j);
    ComplexMatrix m(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        const bool differ = ((s & mi) != 0) != ((s & mj) != 0);
        m(differ ? (s ^ mi ^ mj) : s, s) = 1.0;
    }
    return m;
}

ComplexMatrix total_spin_squared(std::size_t n_sites, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw std::invalid_argument("empty site subset");
    for (std::size_t a = 0; a < subset.size(); ++a) {
        check_site(n_sites, subset[a]);
        for (std::size_t b = 0; b < a; ++b)
            if (subset[a] == subset[b]) throw std::invalid_argument("repeated site in subset");
    }
    const std::size_t dim = dim_of(n_sites);
    ComplexMatrix m = (0.75 * static_cast<double>(subset.size())) * ComplexMatrix::identity(dim);
    // 2 S_i.S_j = E_ij - 1/2
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            m += exchange(n_sites, subset[a], subset[b]) - 0.5 * ComplexMatrix::identity(dim);
    return m;
}

ComplexMatrix total_sz(std::size_t n_sites) {
    const std::size_t dim = dim_of(n_sites);
    ComplexMatrix m(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        double sz = 0.0;
        for (std::size_t s = 0; s < n_sites; ++s) sz += site_bit(c, s, n_sites) ? -0.5 : 0.5;
        m(c, c) = sz;
    }
    return m;
}

ComplexMatrix build_operator(const SpinOperatorSpec& spec) {
    const std::size_t dim = dim_of(spec.n_sites);
    ComplexMatrix m(dim, dim);
    for (const auto& term : spec.terms) {
        std::vector<PauliAxis> axes(spec.n_sites, PauliAxis::identity);
        double scale = term.coefficient;
        std::vector<bool> seen(spec.n_sites, false);
        for (const auto& [site, axis] : term.factors) {
            check_site(spec.n_sites, site);
            if (seen[site]) throw std::invalid_argument("repeated site within one term");
            seen[site] = true;
            axes[site] = axis;
            if (axis != PauliAxis::identity) scale *= 0.5;
        }
        m += scale * pauli_string(axes);
    }
    return m;
}

std::vector<PauliAxis> PauliDecomposition::axes(std::size_t index, std::size_t n_sites) {
    std::vector<PauliAxis> a(n_sites);
    for (std::size_t s = n_sites; s-- > 0;) {
        a[s] = static_cast<PauliAxis>(index % 4);
        index /= 4;
    }
    return a;
}

std::string PauliDecomposition::label(std::size_t index, std::size_t n_sites) {
    std::string out;
    for (PauliAxis a : axes(index, n_sites)) out.push_back(axis_char(a));
    return out;
}

cplx PauliDecomposition::coefficient(const std::vector<PauliAxis>& ax) const {
    if (ax.size() != n_sites) throw std::invalid_argument("axis tuple length mismatch");
    std::size_t idx = 0;
    for (PauliAxis a : ax) idx = idx * 4 + static_cast<std::size_t>(a);
    return coefficients[idx];
}

double PauliDecomposition::max_imaginary() const {
    double m = 0.0;
    for (const auto& c : coefficients) m = std::max(m, std::abs(c.imag()));
    return m;
}

PauliDecomposition pauli_decompose(const ComplexMatrix& m) {
    if (!m.square() || m.rows() < 2 || (m.rows() & (m.rows() - 1)) != 0)
        throw std::invalid_argument("dimension is not a power of two");
    std::size_t n = 0;
    while ((std::size_t{1} << n) < m.rows()) ++n;
    const std::size_t dim = m.rows();
    PauliDecomposition d{n, std::vector<cplx>(std::size_t{1} << (2 * n))};
    for (std::size_t idx = 0; idx < d.coefficients.size(); ++idx) {
        const auto ax = PauliDecomposition::axes(idx, n);
        std::size_t flip = 0;
        for (std::size_t s = 0; s < n; ++s)
            if (flips(ax[s])) flip |= std::size_t{1} << (n - 1 - s);
        // Tr(M P) = sum_c M[c, c^flip] P[c^flip, c]
        cplx tr = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            cplx ph = 1.0;
            for (std::size_t s = 0; s < n; ++s) ph *= pauli_phase(ax[s], site_bit(c, s, n));
            tr += m(c, c ^ flip) * ph;
        }
        d.coefficients[idx] = tr / static_cast<double>(dim);
    }
    return d;
}

ComplexMatrix reconstruct(const PauliDecomposition& d) {
    const std::size_t dim = dim_of(d.n_sites);
    ComplexMatrix m(dim, dim);
    for (std::size_t idx = 0; idx < d.coefficients.size(); ++idx) {
        const cplx coef = d.coefficients[idx];
        if (coef == cplx{0.0, 0.0}) continue;
        const auto ax = PauliDecomposition::axes(idx, d.n_sites);
        std::size_t flip = 0;
        for (std::size_t s = 0; s < d.n_sites; ++s)
            if (flips(ax[s])) flip |= std::size_t{1} << (d.n_sites - 1 - s);
        for (std::size_t c = 0; c < dim; ++c) {
            cplx ph = coef;
            for (std::size_t s = 0; s < d.n_sites; ++s) ph *= pauli_phase(ax[s], site_bit(c, s, d.n_sites));
            m(c ^ flip, c) += ph;
        }
    }
    return m;
}

}  // namespace fewspin

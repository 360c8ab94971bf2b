#include "fewspin/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fewspin {

double dist2(const Vec3& a, const Vec3& b) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return s;
}

Vec3 midpoint(const Vec3& a, const Vec3& b) {
    return {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2};
}

double boys_f0(double t) {
    if (t < 1e-6) return 1.0 - t / 3.0 + t * t / 10.0;
    const double r = std::sqrt(t);
    return 0.5 * std::sqrt(std::numbers::pi / t) * std::erf(r);
}

double overlap(const Vec3& c1, const Vec3& c2) { return std::exp(-dist2(c1, c2) / 4.0); }

double kinetic(const Vec3& c1, const Vec3& c2) {
    const double d2 = dist2(c1, c2);
    return (0.75 - d2 / 8.0) * std::exp(-d2 / 4.0);
}

double gaussian_well_element(const Vec3& c1, const Vec3& c2, const Vec3& well, double depth,
                             double alpha) {
    const Vec3 p = midpoint(c1, c2);
    const double g = 1.0 + alpha;
    return -depth * overlap(c1, c2) * std::pow(g, -1.5) * std::exp(-alpha * dist2(p, well) / g);
}

namespace {

// Moments of exp(-u^2) on [a, b]; bounds may be infinite.
struct Moments {
    double m0, m1, m2;
};

double u_exp(double u) { return std::isinf(u) ? 0.0 : u * std::exp(-u * u); }
double e_sq(double u) { return std::isinf(u) ? 0.0 : std::exp(-u * u); }

Moments moments(double a, double b) {
    const double m0 = 0.5 * std::sqrt(std::numbers::pi) * (std::erf(b) - std::erf(a));
    const double m1 = 0.5 * (e_sq(a) - e_sq(b));
    const double m2 = 0.5 * m0 + 0.5 * (u_exp(a) - u_exp(b));
    return {m0, m1, m2};
}

// Cell bounds along one axis for the well at coordinate x among sorted distinct values.
std::pair<double, double> cell_bounds(double x, const std::vector<double>& values) {
    auto it = std::lower_bound(values.begin(), values.end(), x - 1e-12);
    const std::size_t k = static_cast<std::size_t>(it - values.begin());
    const double lo = k == 0 ? -INFINITY : 0.5 * (values[k - 1] + values[k]);
    const double hi = k + 1 == values.size() ? INFINITY : 0.5 * (values[k] + values[k + 1]);
    return {lo, hi};
}

std::vector<double> distinct_coordinates(const std::vector<Vec3>& wells, int axis) {
    std::vector<double> v;
    for (const auto& w : wells) v.push_back(w[axis]);
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || std::abs(x - out.back()) > 1e-12) out.push_back(x);
    return out;
}

}  // namespace

double quadratic_wells_element(const Vec3& c1, const Vec3& c2, const std::vector<Vec3>& wells) {
    if (wells.empty()) throw std::invalid_argument("no wells");
    std::array<std::vector<double>, 3> grid;
    std::size_t cells = 1;
    for (int k = 0; k < 3; ++k) {
        grid[k] = distinct_coordinates(wells, k);
        cells *= grid[k].size();
    }
    if (cells != wells.size()) throw std::invalid_argument("wells do not form a rectangular grid");

    const Vec3 p = midpoint(c1, c2);
    double total = 0.0;
    for (const auto& w : wells) {
        std::array<Moments, 3> m;
        for (int k = 0; k < 3; ++k) {
            const auto [lo, hi] = cell_bounds(w[k], grid[k]);
            m[k] = moments(lo - p[k], hi - p[k]);
        }
        // (1/2) sum_k (u_k + d_k)^2 with d = P - R
        for (int k = 0; k < 3; ++k) {
            const double d = p[k] - w[k];
            double term = m[k].m2 + 2.0 * d * m[k].m1 + d * d * m[k].m0;
            for (int j = 0; j < 3; ++j)
                if (j != k) term *= m[j].m0;
            total += 0.5 * term;
        }
    }
    return std::pow(std::numbers::pi, -1.5) * overlap(c1, c2) * total;
}

double coulomb(const Vec3& c1, const Vec3& c2, const Vec3& c3, const Vec3& c4, double strength) {
    const Vec3 p = midpoint(c1, c2);
    const Vec3 q = midpoint(c3, c4);
    return strength * overlap(c1, c2) * overlap(c3, c4) * std::sqrt(2.0 / std::numbers::pi) *
           boys_f0(dist2(p, q) / 2.0);
}

}  // namespace fewspin

#pragma once

#include <array>
#include <vector>

namespace fewspin {

using Vec3 = std::array<double, 3>;

double dist2(const Vec3& a, const Vec3& b);
Vec3 midpoint(const Vec3& a, const Vec3& b);

// All integrals below use orbitals pi^{-3/4} exp(-|r-c|^2/2), i.e. natural units.

double boys_f0(double t);

double overlap(const Vec3& c1, const Vec3& c2);
double kinetic(const Vec3& c1, const Vec3& c2);
// <c1| -V0 exp(-alpha |r-R|^2) |c2>
double gaussian_well_element(const Vec3& c1, const Vec3& c2, const Vec3& well, double depth,
                             double alpha);
// <c1| (1/2) min_w |r-R_w|^2 |c2>. Wells must form a full rectangular grid so that
// every nearest-well cell is an axis-aligned box.
double quadratic_wells_element(const Vec3& c1, const Vec3& c2, const std::vector<Vec3>& wells);
// <c1 c3| strength / r12 |c2 c4>
double coulomb(const Vec3& c1, const Vec3& c2, const Vec3& c3, const Vec3& c4, double strength);

}  // namespace fewspin

#pragma once

// Sampled fields and descriptors used by the catalog, the CLI fixture writer
// and the tests.

#include <string>
#include <vector>

#include "qmd/field.hpp"
#include "qmd/morse.hpp"
#include "qmd/spectral.hpp"

namespace qmd::fixtures {

// 1D, [-1,1], 201 nodes.
ScalarField x_squared();
// 1D, [-1,1], 101 nodes: x^2 + x^4 and x^4.
ScalarField quadric_plus_quartic();
ScalarField quartic();

// [-1,1]^2, 41x41: x^2 - y^2, x^2 + y^4, and the zero field.
ScalarField saddle();
ScalarField saddle_tau();
ScalarField zero_like(const ScalarField& f);

/// sin(theta) on the doubly periodic square [0,2pi)^2, theta on axis 0.
ScalarField torus_height(std::size_t n = 64);

/// +x^2 y^2 (sign = 1) or -x^2 y^2 on [-1,1]^2, 21x21: the local model at the
/// minimal (E1) and maximal (E2) figure-eight.
ScalarField figure_eight(int sign);

/// (x*y)^2 on [-1,1]^2, 65x65.
ScalarField corner(std::size_t n = 65);

/// Disk with two holes, flattened: exp(-2/g) where g > 0, zero on the mask g <= 0.
ScalarField flattened_mask();

/// H1(s1) + H2(s2) on (s1, theta1, s2, theta2), theta periodic, with a
/// quadratic profile vanishing on a plateau [a,b] in each s.
ScalarField kunneth_field();

/// Annulus mask: `radial` open cells times `angular` periodic cells.
GridMask annulus_mask(std::size_t radial, std::size_t angular);

/// Pair of pants as a grid mask: a square with two square holes.
GridMask pants_mask();

/// Chart along axis 0 through the origin (the x-axis in 2D).
SubmanifoldChart x_axis();
/// Chart that is a single point at the origin.
SubmanifoldChart origin_point(std::size_t rank);
/// Circle theta = theta0 on the torus grid, free along axis 1.
SubmanifoldChart torus_circle(double theta0);

QMDDescriptor annulus_kunneth_descriptor();
QMDDescriptor cancellation_descriptor();
QMDDescriptor length_two_descriptor();
QMDDescriptor five_piece_descriptor();
QMDDescriptor log_corner_descriptor();
QMDDescriptor four_lines_descriptor();

}  // namespace qmd::fixtures

#pragma once

// Grid-wide numeric kernels. Each has a plain serial reference and an OpenMP
// version; results are required to agree bit for bit.

#include <span>
#include <vector>

#include "qmd/field.hpp"
#include "qmd/rho.hpp"

namespace qmd::kernels {

namespace serial {
/// |grad f| per node; NaN where the stencil leaves the grid.
std::vector<double> gradient_norms(const ScalarField& f);
void apply_rho(const Rho& rho, std::span<const double> in, std::span<double> out);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
/// Max over stencil-valid nodes of |grad f - grad g|.
double max_gradient_diff(const ScalarField& f, const ScalarField& g);
}  // namespace serial

namespace parallel {
std::vector<double> gradient_norms(const ScalarField& f);
void apply_rho(const Rho& rho, std::span<const double> in, std::span<double> out);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_gradient_diff(const ScalarField& f, const ScalarField& g);
}  // namespace parallel

}  // namespace qmd::kernels

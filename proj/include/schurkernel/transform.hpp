#pragma once

#include <vector>

#include "schurkernel/core.hpp"

namespace schur {

/// Schur algorithm on a truncated Taylor section. Maintains the series of
/// theta_j to order N - j, reading gamma_j = theta_j(0) and dividing
/// (theta_j - gamma_j) / (zeta (1 - conj(gamma_j) theta_j)) term by term.
/// Stops with a terminated sequence once |gamma_j| reaches 1 within
/// tol_unit; rejects sections with |gamma_j| > 1 + tol_unit.
SchurSequence taylor_to_schur(const TaylorCoefficients& c,
                              double tol_unit = default_tolerances().unit);

/// c_0 = gamma_0, c_n = G T^{n-1} F from the principal block of the model
/// matrix (exact finite model for terminated sequences). Requires
/// n_terms <= number of stored parameters.
TaylorCoefficients schur_to_taylor(const SchurSequence& seq, int n_terms);

/// s_1 = c_0, s_n = c_0 s_{n-1} + ... + c_{n-2} s_1 + c_{n-1}.
MomentSequence taylor_to_moments(const TaylorCoefficients& c);

/// (1, 2 s_1, 2 s_2, ...).
std::vector<Complex> caratheodory_coefficients(const MomentSequence& s);

}  // namespace schur

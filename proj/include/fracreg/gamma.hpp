#pragma once

#include "fracreg/errors.hpp"

namespace fracreg {

// Absolute tolerance used to flag z as a non-positive integer (Gamma pole).
inline constexpr double kPoleTolerance = 1e-12;

/// True when z sits on a pole of Gamma, i.e. z is 0, -1, -2, ... within
/// kPoleTolerance.
bool is_gamma_pole(double z);

/// Real Gamma function.
///
/// Lanczos approximation (g = 7, 9 coefficients) for z >= 0.5; smaller
/// arguments are lifted with the recurrence Gamma(z) = Gamma(z+1)/z, which
/// also tracks the sign for negative non-integer z.
///
/// Throws DomainError on non-finite input, PoleError on non-positive
/// integers.
double gamma(double z);

/// Natural log of Gamma(z) for z > 0. Throws DomainError if z <= 0.
double ln_gamma(double z);

/// Gamma(num) / Gamma(den) without overflowing intermediate Gammas.
///
/// Equal arguments short-circuit to exactly 1 so that identity operators
/// stay exact. Positive arguments go through exp(ln_gamma(num) -
/// ln_gamma(den)); negative non-integer arguments are lifted into the
/// positive half-line with a sign-tracked recurrence first.
///
/// Throws PoleError when either argument is a non-positive integer.
double gamma_ratio(double num, double den);

}  // namespace fracreg

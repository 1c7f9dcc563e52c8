#pragma once

#include <complex>

#include "besselrg/errors.hpp"

namespace besselrg {

// Gamma on the complex plane; PoleError at 0, -1, -2, ...
std::complex<double> gamma_complex(std::complex<double> z);
double gamma_real(double x);

// K_nu(x) for nu real or purely imaginary, x > 0.  DomainError otherwise.
double macdonald_k(std::complex<double> order, double x);

double euler_gamma();

// Upper incomplete gamma Gamma(a, z) by continued fraction.  Intended for
// |z| >= 1 away from the negative real axis.
std::complex<double> upper_incomplete_gamma(double a, std::complex<double> z);

}  // namespace besselrg

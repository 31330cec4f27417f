#pragma once

#include <complex>

namespace su3::specfun {

using cplx = std::complex<double>;

struct SpecialValue {
    cplx value{0.0, 0.0};
    double error = 0.0;  // estimated absolute error
};

// All functions throw std::domain_error within 1e-8 of a pole at a
// nonpositive integer. Evaluation lifts the argument by upward recurrence
// until |z| >= 10 and then applies the asymptotic series. Orders 0 and 1 use
// the reflection formula when Re z < -10.
SpecialValue log_gamma(cplx z);
SpecialValue digamma(cplx z);
SpecialValue polygamma(int order, cplx z);  // order 0..6
SpecialValue hurwitz_zeta(int s, cplx a);   // s >= 2, by Euler-Maclaurin summation

// ψ^(order)(z + a) − ψ^(order)(z + b) for order 0 or 1. For large |z| the
// asymptotic series in Bernoulli polynomials is used, which avoids the
// cancellation of the two logarithmically large terms.
cplx polygamma_difference(int order, cplx z, double a, double b);

// Bernoulli polynomial B_n(x), n <= 40.
double bernoulli_polynomial(int n, double x);

// Plain-value shorthands.
inline cplx psi(cplx z) { return digamma(z).value; }
inline cplx psi_n(int order, cplx z) { return polygamma(order, z).value; }

// Bernoulli number B_{2k} for k = 0..20.
double bernoulli_even(int k);

}  // namespace su3::specfun

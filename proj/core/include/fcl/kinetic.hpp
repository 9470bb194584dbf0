#pragma once

#include "fcl/nonlinearity.hpp"

namespace fcl {

// Kinetic function: 1 on (0, u), -1 on (u, 0), 0 elsewhere.
int chi(double xi, double u);
int sgn(double x);
// Indicator of the open interval between a and b, 1/2 at the endpoints.
double char_conv(double xi, double a, double b);
// Clamp to [-R, R].
double truncate(double u, double R);
// int |chi(xi;u) - chi(xi;v)| dxi, closed form.
double chi_l1_distance(double u, double v);

// int A'(xi) (chi(xi;a)-chi(xi;b)) (chi(xi;c)-chi(xi;d)) dxi, closed form.
double F_functional(const Nonlinearity& A, double a, double b, double c, double d);
// Same integral by adaptive quadrature of the definition (test oracle and CLI cross-check).
double F_functional_quadrature(const Nonlinearity& A, double a, double b, double c, double d);
double G_functional(const Nonlinearity& A, double a, double b, double c, double d);

bool truncation_inequality_check(const Nonlinearity& A, double a, double b, double xi, double R);

// |S'(a)(A(b)-A(a)) - [beta(b) - beta(a) - int S''(xi)|A(b)-A(xi)| Char(xi) dxi]|, all
// integrals by adaptive quadrature.
double taylor_identity_residual(const Entropy& S, const Nonlinearity& A, double a, double b);

}  // namespace fcl

#pragma once

#include <cstdint>

#include "hspin/half_integer.hpp"

namespace hspin::specfun {

// Physicists' Hermite polynomial H_k(z), evaluated by the three-term
// recurrence H_{k+1} = 2 z H_k - 2 k H_{k-1}.
double hermite(int k, double z);

// n! as an exact 64-bit integer. Throws std::overflow_error for n > 20,
// where the value no longer fits; use log_factorial beyond that.
std::uint64_t factorial(int n);

// ln(n!). Table-backed for the ranges this library exercises.
double log_factorial(int n);

// Jacobi polynomial P_n^{(a,b)}(x) by the forward recurrence. Intended for
// a, b > -1; the Wigner-d path below only ever requests a, b >= 0.
double jacobi(int n, double a, double b, double x);

// Wigner small-d matrix element d^{(j)}_{m1 m2}(beta) in the convention used
// throughout this library: it equals <j m1| exp(+i beta Jy) |j m2> in the
// m = +j..-j basis, and is computed from the Jacobi-polynomial closed form
// with log-space factorial prefactors.
double wigner_small_d(HalfInteger j, HalfInteger m1, HalfInteger m2, double beta);

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
// convention (Racah closed form, log-space factorials). Returns 0 when a
// selection rule fails; throws std::domain_error only for malformed
// half-integer combinations (e.g. m not on the lattice of j).
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2,
                      HalfInteger J, HalfInteger M);

// Closed form of the integral of exp(-z^2) H_p(z) H_n(z) H_k(z) over the
// real line: sqrt(pi) 2^s p! n! k! / ((s-p)! (s-n)! (s-k)!) when
// p + n + k = 2s with p, n, k <= s, and exactly 0 otherwise.
double triple_hermite_integral(int p, int n, int k);

}  // namespace hspin::specfun

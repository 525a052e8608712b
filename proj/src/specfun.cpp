#include "hspin/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hspin::specfun {

namespace {

bool valid_projection(HalfInteger j, HalfInteger m) {
  return (j - m).is_integer() && m.twice() >= -j.twice() && m.twice() <= j.twice();
}

}  // namespace

double hermite(int k, double z) {
  if (k < 0) throw std::domain_error("hermite: negative degree");
  double prev = 0.0;
  double cur = 1.0;
  for (int i = 0; i < k; ++i) {
    const double next = 2.0 * z * cur - 2.0 * i * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::uint64_t factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  if (n > 20) throw std::overflow_error("factorial: n! exceeds the exact 64-bit range for n > 20");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  static const std::vector<double> table = [] {
    std::vector<double> t(321);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    return t;
  }();
  if (static_cast<std::size_t>(n) < table.size()) return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double jacobi(int n, double a, double b, double x) {
  if (n < 0) throw std::domain_error("jacobi: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int k = 1; k < n; ++k) {
    const double c1 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * (2.0 * k + a + b);
    const double c2 = (2.0 * k + a + b + 1.0) * (a * a - b * b);
    const double c3 = (2.0 * k + a + b) * (2.0 * k + a + b + 1.0) * (2.0 * k + a + b + 2.0);
    const double c4 = 2.0 * (k + a) * (k + b) * (2.0 * k + a + b + 2.0);
    const double next = ((c2 + c3 * x) * cur - c4 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double wigner_small_d(HalfInteger j, HalfInteger m1, HalfInteger m2, double beta) {
  if (j.twice() < 0 || !valid_projection(j, m1) || !valid_projection(j, m2))
    throw std::domain_error("wigner_small_d: invalid (j, m1, m2) = (" + j.str() + ", " + m1.str() +
                            ", " + m2.str() + ")");
  // The symmetries d_{m1 m2} = d_{-m2 -m1} and d_{m1 m2} = (-1)^{m1-m2} d_{m2 m1}
  // move the arguments into the region m1 >= |m2| where every exponent and
  // Jacobi parameter below is a nonnegative integer.
  double sign = 1.0;
  if ((m1 + m2).twice() < 0) {
    const HalfInteger t = m1;
    m1 = -m2;
    m2 = -t;
  }
  if ((m1 - m2).twice() < 0) {
    sign = parity_sign(m2 - m1);
    const HalfInteger t = m1;
    m1 = m2;
    m2 = t;
  }
  const int a = (m1 - m2).as_int();
  const int b = (m1 + m2).as_int();
  const int n = (j - m1).as_int();
  const double log_pref = 0.5 * (log_factorial((j + m1).as_int()) + log_factorial((j - m1).as_int()) -
                                 log_factorial((j + m2).as_int()) - log_factorial((j - m2).as_int()));
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  return sign * std::exp(log_pref) * std::pow(c, b) * std::pow(s, a) * jacobi(n, a, b, std::cos(beta));
}

double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2,
                      HalfInteger J, HalfInteger M) {
  if (j1.twice() < 0 || j2.twice() < 0 || J.twice() < 0 || !(j1 - m1).is_integer() ||
      !(j2 - m2).is_integer() || !(J - M).is_integer())
    throw std::domain_error("clebsch_gordan: malformed half-integer arguments");
  if ((m1 + m2) != M) return 0.0;
  if (m1.twice() < -j1.twice() || m1.twice() > j1.twice()) return 0.0;
  if (m2.twice() < -j2.twice() || m2.twice() > j2.twice()) return 0.0;
  if (M.twice() < -J.twice() || M.twice() > J.twice()) return 0.0;
  if (!(j1 + j2 - J).is_integer()) return 0.0;
  if ((j1 + j2 - J).twice() < 0 || (j1 - j2 + J).twice() < 0 || (j2 - j1 + J).twice() < 0) return 0.0;

  const int a1 = (j1 + j2 - J).as_int();
  const int a2 = (j1 - j2 + J).as_int();
  const int a3 = (j2 - j1 + J).as_int();
  const double log_pref =
      0.5 * (std::log(static_cast<double>(J.twice() + 1)) + log_factorial(a1) + log_factorial(a2) +
             log_factorial(a3) - log_factorial(a1 + a2 + a3 + 1) + log_factorial((J + M).as_int()) +
             log_factorial((J - M).as_int()) + log_factorial((j1 - m1).as_int()) +
             log_factorial((j1 + m1).as_int()) + log_factorial((j2 - m2).as_int()) +
             log_factorial((j2 + m2).as_int()));

  const int b1 = (j2 - J - m1).as_int();  // k >= b1
  const int b2 = (j1 - J + m2).as_int();  // k >= b2
  const int c1 = (j1 - m1).as_int();      // k <= c1
  const int c2 = (j2 + m2).as_int();      // k <= c2
  const int k_min = std::max(0, std::max(b1, b2));
  const int k_max = std::min(a1, std::min(c1, c2));

  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double log_term = log_pref - log_factorial(k) - log_factorial(a1 - k) -
                            log_factorial(c1 - k) - log_factorial(c2 - k) -
                            log_factorial(k - b1) - log_factorial(k - b2);
    sum += (k % 2 == 0 ? 1.0 : -1.0) * std::exp(log_term);
  }
  return sum;
}

double triple_hermite_integral(int p, int n, int k) {
  if (p < 0 || n < 0 || k < 0) throw std::domain_error("triple_hermite_integral: negative index");
  // sorting leaves the value invariant and makes the symmetry bit-exact
  if (p > n) std::swap(p, n);
  if (n > k) std::swap(n, k);
  if (p > n) std::swap(p, n);
  const int total = p + n + k;
  if (total % 2 != 0) return 0.0;
  const int s = total / 2;
  if (k > s) return 0.0;
  const double log_value = 0.5 * std::log(std::numbers::pi) + s * std::numbers::ln2 +
                           log_factorial(p) + log_factorial(n) + log_factorial(k) -
                           log_factorial(s - p) - log_factorial(s - n) - log_factorial(s - k);
  return std::exp(log_value);
}

}  // namespace hspin::specfun

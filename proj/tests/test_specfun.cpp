#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hspin/quadrature.hpp"
#include "hspin/specfun.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hspin;
using specfun::clebsch_gordan;
using specfun::hermite;
using specfun::jacobi;
using specfun::triple_hermite_integral;
using specfun::wigner_small_d;

namespace {
HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }
HalfInteger whole(int v) { return HalfInteger::from_int(v); }
}  // namespace

TEST_CASE("hermite polynomial basics") {
  CHECK(hermite(0, 3.7) == 1.0);
  CHECK(hermite(1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hermite(2, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("hermite matches the direct series") {
  testutil::Sampler sampler(1);
  for (int k = 0; k <= 10; ++k)
    for (int rep = 0; rep < 5; ++rep) {
      const double z = sampler.uniform(-2.5, 2.5);
      const double expected = oracles::hermite_series(k, z);
      CHECK(hermite(k, z) ==
            doctest::Approx(expected).epsilon(1e-11).scale(std::max(1.0, std::abs(expected))));
    }
}

TEST_CASE("hermite orthogonality under Gauss-Hermite quadrature") {
  const quad::Rule1D rule = quad::gauss_hermite_rule(14);
  const auto norm = [](int n) {
    return std::exp2(n) * static_cast<double>(specfun::factorial(n)) * std::sqrt(std::numbers::pi);
  };
  for (int n = 0; n <= 12; ++n)
    for (int k = n; k <= 12; ++k) {
      double sum = 0.0;
      for (int i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * hermite(n, rule.nodes[i]) * hermite(k, rule.nodes[i]);
      const double scale = std::sqrt(norm(n) * norm(k));
      const double expected = n == k ? norm(n) : 0.0;
      CHECK(std::abs(sum - expected) / scale < 1e-9);
    }
}

TEST_CASE("factorials") {
  CHECK(specfun::factorial(0) == 1);
  CHECK(specfun::factorial(5) == 120);
  CHECK(specfun::factorial(20) == 2432902008176640000ULL);
  CHECK_THROWS_AS(specfun::factorial(21), std::overflow_error);
  CHECK_THROWS_AS(specfun::factorial(-1), std::domain_error);
  CHECK(specfun::log_factorial(10) == doctest::Approx(15.104412573075516).epsilon(1e-13));
  CHECK(specfun::log_factorial(0) == 0.0);
}

TEST_CASE("jacobi polynomial basics and series oracle") {
  CHECK(jacobi(0, 2.0, -0.5, 0.7) == 1.0);
  CHECK(jacobi(1, 0.0, 0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(jacobi(2, 1.0, 1.0, 0.3) ==
        doctest::Approx(oracles::jacobi_series(2, 1, 1, 0.3)).epsilon(1e-13));
  testutil::Sampler sampler(2);
  for (int n = 0; n <= 6; ++n)
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        const double x = sampler.uniform(-1.0, 1.0);
        const double expected = oracles::jacobi_series(n, a, b, x);
        CHECK(jacobi(n, a, b, x) ==
              doctest::Approx(expected).epsilon(1e-11).scale(std::max(1.0, std::abs(expected))));
      }
}

TEST_CASE("wigner small-d closed-form samples") {
  for (const double beta : {0.0, 0.4, 1.3, 2.8}) {
    CHECK(wigner_small_d(half(1), half(1), half(1), beta) ==
          doctest::Approx(std::cos(0.5 * beta)).epsilon(1e-14));
    CHECK(wigner_small_d(whole(1), whole(0), whole(0), beta) ==
          doctest::Approx(std::cos(beta)).epsilon(1e-14));
  }
  // identity rotation for a mix of spins and projections
  for (int tj = 0; tj <= 6; ++tj)
    for (int tm = -tj; tm <= tj; tm += 2)
      CHECK(wigner_small_d(half(tj), half(tm), half(tm), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(wigner_small_d(half(1), half(3), half(1), 0.5), std::domain_error);
  CHECK_THROWS_AS(wigner_small_d(half(2), half(1), half(0), 0.5), std::domain_error);
}

TEST_CASE("wigner small-d equals the exp(+i beta Jy) matrix") {
  for (const int tj : {1, 2, 3, 4, 6}) {
    const Spin spin(tj);
    for (const double beta : {0.2, 1.0, 1.9, 3.0}) {
      const ComplexMatrix expected = oracles::d_matrix_exponential(spin, beta);
      for (int i1 = 0; i1 < spin.dimension(); ++i1)
        for (int i2 = 0; i2 < spin.dimension(); ++i2) {
          const double d = wigner_small_d(spin.j_value(), spin.m_at(i1), spin.m_at(i2), beta);
          CHECK(std::abs(Complex(d, 0.0) - expected(i1, i2)) < 1e-12);
        }
    }
  }
}

TEST_CASE("wigner small-d matrices are orthogonal") {
  for (int tj = 1; tj <= 6; ++tj) {
    const Spin spin(tj);
    const int dim = spin.dimension();
    for (const double beta : {0.3, 1.25, 2.2, 3.1}) {
      Eigen::MatrixXd d(dim, dim);
      for (int i1 = 0; i1 < dim; ++i1)
        for (int i2 = 0; i2 < dim; ++i2)
          d(i1, i2) = wigner_small_d(spin.j_value(), spin.m_at(i1), spin.m_at(i2), beta);
      CHECK((d * d.transpose() - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() <
            1e-10);
    }
  }
}

TEST_CASE("clebsch-gordan reference values") {
  CHECK(clebsch_gordan(half(1), half(1), half(1), half(-1), whole(0), whole(0)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(whole(1), whole(1), whole(1), whole(-1), whole(0), whole(0)) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(half(1), half(1), half(1), half(1), whole(1), whole(1)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // selection failures return zero
  CHECK(clebsch_gordan(half(1), half(1), half(1), half(1), whole(0), whole(0)) == 0.0);
  CHECK(clebsch_gordan(half(1), half(1), half(1), half(-1), whole(2), whole(0)) == 0.0);
  CHECK_THROWS_AS(clebsch_gordan(half(1), whole(1), half(1), half(1), whole(1), whole(1)),
                  std::domain_error);
}

TEST_CASE("clebsch-gordan matches the ladder-operator oracle for all j <= 2") {
  for (int tj1 = 0; tj1 <= 4; ++tj1)
    for (int tj2 = 0; tj2 <= 4; ++tj2) {
      const oracles::CgLadder ladder(half(tj1), half(tj2));
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tM = -tJ; tM <= tJ; tM += 2)
          for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
            const int tm2 = tM - tm1;
            if (std::abs(tm2) > tj2) continue;
            const double expected =
                ladder.coefficient(half(tm1), half(tm2), half(tJ), half(tM));
            const double got =
                clebsch_gordan(half(tj1), half(tm1), half(tj2), half(tm2), half(tJ), half(tM));
            CHECK(std::abs(got - expected) < 1e-12);
          }
    }
}

TEST_CASE("clebsch-gordan unitarity") {
  for (int tj1 = 1; tj1 <= 4; ++tj1)
    for (int tj2 = 1; tj2 <= 4; ++tj2)
      for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
        for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2)
          for (int tm1p = -tj1; tm1p <= tj1; tm1p += 2) {
            const int tm2p = tm1 + tm2 - tm1p;
            if (std::abs(tm2p) > tj2) continue;
            double sum = 0.0;
            for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
              sum += clebsch_gordan(half(tj1), half(tm1), half(tj2), half(tm2), half(tJ),
                                    half(tm1 + tm2)) *
                     clebsch_gordan(half(tj1), half(tm1p), half(tj2), half(tm2p), half(tJ),
                                    half(tm1 + tm2));
            const double expected = (tm1 == tm1p && tm2 == tm2p) ? 1.0 : 0.0;
            CHECK(std::abs(sum - expected) < 1e-10);
          }
}

TEST_CASE("triple hermite integral closed form") {
  CHECK(triple_hermite_integral(1, 1, 1) == 0.0);
  CHECK(triple_hermite_integral(0, 0, 0) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(triple_hermite_integral(1, 1, 2) ==
        doctest::Approx(8.0 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(triple_hermite_integral(0, 1, 3) == 0.0);  // 3 > s = 2
}

TEST_CASE("triple hermite integral vs exact moment sums and quadrature, p,n,k <= 8") {
  const quad::Rule1D rule = quad::gauss_hermite_rule(16);
  for (int p = 0; p <= 8; ++p)
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= 8; ++k) {
        const double closed = triple_hermite_integral(p, n, k);

        // the moment-sum oracle is exact, so the comparison is sharp
        const double moments = oracles::triple_hermite_moments(p, n, k);
        CHECK(std::abs(closed - moments) <= 1e-12 * std::max(1.0, std::abs(moments)));

        // quadrature with symmetric node pairing; odd integrands cancel
        // exactly, and the residual of the cancelling even sums is measured
        // against the quadrature mass they cancel from
        double quadrature = 0.0;
        double mass = 0.0;
        for (int i = 0; i < rule.size() / 2; ++i) {
          const int mirror = rule.size() - 1 - i;
          const double left = rule.weights[i] * hermite(p, rule.nodes[i]) *
                              hermite(n, rule.nodes[i]) * hermite(k, rule.nodes[i]);
          const double right = rule.weights[mirror] * hermite(p, rule.nodes[mirror]) *
                               hermite(n, rule.nodes[mirror]) * hermite(k, rule.nodes[mirror]);
          quadrature += left + right;
          mass += std::abs(left) + std::abs(right);
        }
        CHECK(std::abs(closed - quadrature) / std::max(1.0, mass) < 1e-11);
        if (closed != 0.0) CHECK(std::abs(closed - quadrature) / std::abs(closed) < 1e-9);

        if ((p + n + k) % 2 == 1) {
          CHECK(closed == 0.0);
          CHECK(quadrature == 0.0);  // exact pairwise cancellation
        } else if (std::max({p, n, k}) > (p + n + k) / 2) {
          CHECK(closed == 0.0);
          CHECK(moments == 0.0);
        }
      }
}

TEST_CASE("triple hermite integral is permutation symmetric") {
  for (int p = 0; p <= 8; ++p)
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= 8; ++k) {
        const double base = triple_hermite_integral(p, n, k);
        CHECK(triple_hermite_integral(p, k, n) == base);
        CHECK(triple_hermite_integral(n, p, k) == base);
        CHECK(triple_hermite_integral(k, n, p) == base);
      }
}

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "quatsylv/quaternion.hpp"

using namespace quatsylv;

namespace {

Quaternion random_quat(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return {d(rng), d(rng), d(rng), d(rng)};
}

double dist(const Quaternion& a, const Quaternion& b) { return norm(a - b); }

// Reference route for the eta maps: the literal sandwich products.
Quaternion eta_conj_ref(const Quaternion& q, EtaAxis eta) {
  const Quaternion e = eta_unit(eta);
  return qmul(qmul(-e, qconj(q)), e);
}

Quaternion eta_similar_ref(const Quaternion& q, EtaAxis eta) {
  const Quaternion e = eta_unit(eta);
  return qmul(qmul(-e, q), e);
}

const Quaternion one{1, 0, 0, 0};
const Quaternion qi{0, 1, 0, 0};
const Quaternion qj{0, 0, 1, 0};
const Quaternion qk{0, 0, 0, 1};

}  // namespace

TEST_CASE("basis multiplication table", "[quaternion]") {
  const Quaternion basis[4] = {one, qi, qj, qk};
  // Row p, column q: basis[p] * basis[q].
  const Quaternion expect[4][4] = {
      {one, qi, qj, qk},
      {qi, -one, qk, -qj},
      {qj, -qk, -one, qi},
      {qk, qj, -qi, -one},
  };
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) REQUIRE(basis[p] * basis[q] == expect[p][q]);
}

TEST_CASE("product example", "[quaternion]") {
  const Quaternion a{1, 2, 0, 0};
  const Quaternion b{3, 0, 0, 4};
  REQUIRE(a * b == Quaternion{3, 6, -8, 4});
}

TEST_CASE("conjugate and norm", "[quaternion]") {
  REQUIRE(qconj(Quaternion{1, 1, 1, 1}) == Quaternion{1, -1, -1, -1});
  REQUIRE(norm(Quaternion{1, 1, 1, 1}) == 2.0);
  REQUIRE(norm_sq(Quaternion{0, 3, 0, 4}) == 25.0);
}

TEST_CASE("inverse", "[quaternion]") {
  REQUIRE(qinv(Quaternion{0, 2, 0, 0}) == Quaternion{0, -0.5, 0, 0});
  REQUIRE_THROWS_AS(qinv(Quaternion{}), ZeroDivision);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    Quaternion q = random_quat(rng);
    if (norm(q) < 1e-3) continue;
    REQUIRE(dist(q * qinv(q), one) < 1e-12);
    REQUIRE(dist(qinv(q) * q, one) < 1e-12);
  }
}

TEST_CASE("associativity", "[quaternion]") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 1000; ++t) {
    Quaternion p = random_quat(rng), q = random_quat(rng), r = random_quat(rng);
    double scale = 1.0 + norm(p) * norm(q) * norm(r);
    REQUIRE(dist((p * q) * r, p * (q * r)) < 1e-12 * scale);
  }
}

TEST_CASE("norm is multiplicative", "[quaternion]") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 1000; ++t) {
    Quaternion p = random_quat(rng), q = random_quat(rng);
    REQUIRE(norm(p * q) == Catch::Approx(norm(p) * norm(q)).margin(1e-12));
  }
}

TEST_CASE("conjugate reverses products", "[quaternion]") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    Quaternion p = random_quat(rng), q = random_quat(rng);
    REQUIRE(dist(qconj(p * q), qconj(q) * qconj(p)) < 1e-13);
  }
}

TEST_CASE("eta units", "[quaternion]") {
  REQUIRE(eta_unit(EtaAxis::I) == qi);
  REQUIRE(eta_unit(EtaAxis::J) == qj);
  REQUIRE(eta_unit(EtaAxis::K) == qk);
  REQUIRE(eta_name(EtaAxis::J) == 'j');
}

TEST_CASE("eta conjugate closed form matches sandwich product", "[quaternion]") {
  std::mt19937_64 rng(15);
  for (EtaAxis eta : {EtaAxis::I, EtaAxis::J, EtaAxis::K}) {
    for (int t = 0; t < 200; ++t) {
      Quaternion q = random_quat(rng, 2.0);
      REQUIRE(dist(eta_conj(q, eta), eta_conj_ref(q, eta)) < 1e-14);
      REQUIRE(dist(eta_similar(q, eta), eta_similar_ref(q, eta)) < 1e-14);
    }
  }
}

TEST_CASE("eta conjugate component pattern", "[quaternion]") {
  const Quaternion q{1, 2, 3, 4};
  REQUIRE(eta_conj(q, EtaAxis::I) == Quaternion{1, -2, 3, 4});
  REQUIRE(eta_conj(q, EtaAxis::J) == Quaternion{1, 2, -3, 4});
  REQUIRE(eta_conj(q, EtaAxis::K) == Quaternion{1, 2, 3, -4});
  REQUIRE(eta_conj(qj, EtaAxis::I) == qj);
  REQUIRE(eta_conj(qi, EtaAxis::I) == -qi);
}

TEST_CASE("eta conjugate is an involution", "[quaternion]") {
  std::mt19937_64 rng(16);
  for (EtaAxis eta : {EtaAxis::I, EtaAxis::J, EtaAxis::K}) {
    for (int t = 0; t < 100; ++t) {
      Quaternion q = random_quat(rng);
      REQUIRE(eta_conj(eta_conj(q, eta), eta) == q);
    }
  }
}

TEST_CASE("eta conjugate reverses products", "[quaternion]") {
  std::mt19937_64 rng(17);
  for (EtaAxis eta : {EtaAxis::I, EtaAxis::J, EtaAxis::K}) {
    for (int t = 0; t < 200; ++t) {
      Quaternion p = random_quat(rng), q = random_quat(rng);
      REQUIRE(dist(eta_conj(p * q, eta), eta_conj(q, eta) * eta_conj(p, eta)) <
              1e-13);
    }
  }
}

TEST_CASE("finiteness check", "[quaternion]") {
  REQUIRE(is_finite(Quaternion{1, 2, 3, 4}));
  REQUIRE_FALSE(is_finite(Quaternion{1, std::nan(""), 0, 0}));
}

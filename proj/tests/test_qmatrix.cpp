#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "quatsylv/qmatrix.hpp"
#include "test_helpers.hpp"

using namespace quatsylv;
using namespace qtest;

TEST_CASE("matrix product example", "[qmatrix]") {
  QMatrix a = QMatrix::from_rows({{qi, q0}, {q0, q0}});
  QMatrix x = QMatrix::from_rows({{q1, qi}, {q0, q0}});
  QMatrix expect = QMatrix::from_rows({{qi, -q1}, {q0, q0}});
  REQUIRE(a * x == expect);
}

TEST_CASE("identity is neutral", "[qmatrix]") {
  std::mt19937_64 rng(21);
  QMatrix a = random_matrix(rng, 3, 4);
  REQUIRE(a * QMatrix::identity(4) == a);
  REQUIRE(QMatrix::identity(3) * a == a);
}

TEST_CASE("matrix product is associative", "[qmatrix]") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 20; ++t) {
    QMatrix a = random_matrix(rng, 3, 4);
    QMatrix b = random_matrix(rng, 4, 2);
    QMatrix c = random_matrix(rng, 2, 5);
    double scale = 1.0 + maxabs(a) * maxabs(b) * maxabs(c);
    REQUIRE(mat_dist((a * b) * c, a * (b * c)) < 1e-11 * scale);
  }
}

TEST_CASE("matrix product shape errors", "[qmatrix]") {
  QMatrix a(2, 3), b(2, 3);
  REQUIRE_THROWS_AS(a * b, DimensionMismatch);
  REQUIRE_THROWS_AS(a + QMatrix(3, 3), DimensionMismatch);
}

TEST_CASE("empty matrices follow the block algebra", "[qmatrix]") {
  QMatrix a(3, 0), b(0, 4);
  QMatrix p = a * b;
  REQUIRE(p.rows() == 3);
  REQUIRE(p.cols() == 4);
  REQUIRE(p == QMatrix::zero(3, 4));
  REQUIRE(QMatrix::identity(0).rows() == 0);
  REQUIRE(hcat(QMatrix(3, 0), QMatrix(3, 2)) == QMatrix(3, 2));
  REQUIRE(conj_transpose(a).rows() == 0);
  REQUIRE(conj_transpose(a).cols() == 3);
}

TEST_CASE("conjugate transpose", "[qmatrix]") {
  QMatrix a = QMatrix::from_rows({{q1 + qi, qj}, {qk, Quaternion::real(2)}});
  QMatrix expect =
      QMatrix::from_rows({{q1 - qi, -qk}, {-qj, Quaternion::real(2)}});
  REQUIRE(conj_transpose(a) == expect);

  std::mt19937_64 rng(23);
  QMatrix p = random_matrix(rng, 3, 4), q = random_matrix(rng, 4, 2);
  REQUIRE(mat_dist(conj_transpose(p * q), conj_transpose(q) * conj_transpose(p)) <
          1e-13 * (1 + maxabs(p) * maxabs(q)));
}

TEST_CASE("eta conjugate transpose", "[qmatrix]") {
  std::mt19937_64 rng(24);
  QMatrix real_a(2, 3);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 3; ++c)
      real_a(r, c) = Quaternion::real(double(r * 3 + c));
  for (EtaAxis eta : {EtaAxis::I, EtaAxis::J, EtaAxis::K}) {
    QMatrix t = eta_conj_transpose(real_a, eta);
    REQUIRE(t.rows() == 3);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 3; ++c) REQUIRE(t(c, r) == real_a(r, c));
  }

  REQUIRE(eta_conj_transpose(QMatrix::from_rows({{qj}}), EtaAxis::I) ==
          QMatrix::from_rows({{qj}}));

  for (EtaAxis eta : {EtaAxis::I, EtaAxis::J, EtaAxis::K}) {
    QMatrix g = random_matrix(rng, 3, 5);
    REQUIRE(eta_conj_transpose(eta_conj_transpose(g, eta), eta) == g);
    QMatrix h = random_matrix(rng, 5, 2);
    REQUIRE(mat_dist(eta_conj_transpose(g * h, eta),
                     eta_conj_transpose(h, eta) * eta_conj_transpose(g, eta)) <
            1e-13 * (1 + maxabs(g) * maxabs(h)));
  }
}

TEST_CASE("eta hermitian test", "[qmatrix]") {
  for (EtaAxis eta : {EtaAxis::I, EtaAxis::J, EtaAxis::K})
    REQUIRE(is_eta_hermitian(QMatrix::identity(3), eta));

  // i is fixed by eta_conj for j and k but negated for i.
  QMatrix mi = QMatrix::from_rows({{qi}});
  REQUIRE_FALSE(is_eta_hermitian(mi, EtaAxis::I));
  REQUIRE(is_eta_hermitian(mi, EtaAxis::J));
  REQUIRE(is_eta_hermitian(mi, EtaAxis::K));

  std::mt19937_64 rng(25);
  for (EtaAxis eta : {EtaAxis::I, EtaAxis::J, EtaAxis::K}) {
    QMatrix g = random_matrix(rng, 4, 4);
    REQUIRE(is_eta_hermitian(g + eta_conj_transpose(g, eta), eta));
  }

  REQUIRE_THROWS_AS(is_eta_hermitian(QMatrix(2, 3), EtaAxis::I),
                    DimensionMismatch);
}

TEST_CASE("complex embedding pins the split convention", "[qmatrix]") {
  ComplexMatrix ei = embed_complex(QMatrix::from_rows({{qi}}));
  REQUIRE(ei(0, 0) == std::complex<double>(0, 1));
  REQUIRE(ei(0, 1) == std::complex<double>(0, 0));
  REQUIRE(ei(1, 0) == std::complex<double>(0, 0));
  REQUIRE(ei(1, 1) == std::complex<double>(0, -1));

  ComplexMatrix ej = embed_complex(QMatrix::from_rows({{qj}}));
  REQUIRE(ej(0, 0) == std::complex<double>(0, 0));
  REQUIRE(ej(0, 1) == std::complex<double>(1, 0));
  REQUIRE(ej(1, 0) == std::complex<double>(-1, 0));
  REQUIRE(ej(1, 1) == std::complex<double>(0, 0));
}

TEST_CASE("complex embedding is a homomorphism", "[qmatrix]") {
  std::mt19937_64 rng(26);
  QMatrix a = random_matrix(rng, 3, 4), b = random_matrix(rng, 4, 2);
  ComplexMatrix lhs = embed_complex(a * b);
  ComplexMatrix rhs = cmatmul(embed_complex(a), embed_complex(b));
  double dev = 0.0;
  for (int r = 0; r < lhs.rows(); ++r)
    for (int c = 0; c < lhs.cols(); ++c)
      dev = std::max(dev, std::abs(lhs(r, c) - rhs(r, c)));
  REQUIRE(dev < 1e-13 * (1 + maxabs(a) * maxabs(b)));

  ComplexMatrix sl = embed_complex(conj_transpose(a));
  ComplexMatrix sr = cconj_transpose(embed_complex(a));
  for (int r = 0; r < sl.rows(); ++r)
    for (int c = 0; c < sl.cols(); ++c) REQUIRE(sl(r, c) == sr(r, c));
}

TEST_CASE("extraction inverts the embedding", "[qmatrix]") {
  std::mt19937_64 rng(27);
  QMatrix a = random_matrix(rng, 4, 3, 2.0);
  REQUIRE(extract_from_complex(embed_complex(a)) == a);
}

TEST_CASE("extraction rejects unstructured matrices", "[qmatrix]") {
  std::mt19937_64 rng(28);
  QMatrix a = random_matrix(rng, 2, 2);
  ComplexMatrix m = embed_complex(a);
  m(3, 3) += 1.0;
  REQUIRE_THROWS_AS(extract_from_complex(m), StructureViolation);
  REQUIRE_THROWS_AS(extract_from_complex(ComplexMatrix(3, 4)),
                    DimensionMismatch);
}

TEST_CASE("concatenation and blocks", "[qmatrix]") {
  QMatrix a = QMatrix::from_rows({{q1, qi}});
  QMatrix b = QMatrix::from_rows({{qj}});
  REQUIRE(hcat(a, b) == QMatrix::from_rows({{q1, qi, qj}}));
  REQUIRE(vcat(a, QMatrix::from_rows({{qk, q0}})) ==
          QMatrix::from_rows({{q1, qi}, {qk, q0}}));
  REQUIRE_THROWS_AS(hcat(QMatrix(2, 2), QMatrix(3, 2)), DimensionMismatch);
  REQUIRE_THROWS_AS(vcat(QMatrix(2, 2), QMatrix(2, 3)), DimensionMismatch);

  QMatrix g = block({{a, std::nullopt}, {std::nullopt, b}});
  REQUIRE(g == QMatrix::from_rows({{q1, qi, q0}, {q0, q0, qj}}));

  REQUIRE(block({{std::nullopt, a}, {b, std::nullopt}}) ==
          QMatrix::from_rows({{q0, q1, qi}, {qj, q0, q0}}));
  REQUIRE_THROWS_AS(block({{std::optional<QMatrix>{}}}), DimensionMismatch);
  REQUIRE_THROWS_AS(block({{a}, {QMatrix(1, 3)}}), DimensionMismatch);
}

TEST_CASE("submatrix", "[qmatrix]") {
  QMatrix a = QMatrix::from_rows({{q1, qi, qj}, {qk, q0, q1}});
  REQUIRE(submatrix(a, 0, 1, 2, 2) ==
          QMatrix::from_rows({{qi, qj}, {q0, q1}}));
  REQUIRE_THROWS_AS(submatrix(a, 1, 0, 2, 2), DimensionMismatch);
}

TEST_CASE("norms", "[qmatrix]") {
  QMatrix a = QMatrix::from_rows({{q1 + qi + qj + qk, q1 + qi + qj + qk},
                                  {q1 + qi + qj + qk, q1 + qi + qj + qk}});
  REQUIRE(fnorm(a) == 4.0);
  REQUIRE(maxabs(a) == 2.0);
  REQUIRE(all_finite(a));
  a(1, 1).w = std::nan("");
  REQUIRE_FALSE(all_finite(a));
}

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "quatsylv/genval.hpp"
#include "quatsylv/solvers.hpp"
#include "test_helpers.hpp"

using namespace quatsylv;
using namespace qtest;

namespace {

// one pass/fail line per criterion
class CriterionLines : public Catch::EventListenerBase {
 public:
  using Catch::EventListenerBase::EventListenerBase;
  void testCaseEnded(const Catch::TestCaseStats& stats) override {
    std::printf("%s: %s\n", stats.testInfo->name.c_str(),
                stats.totals.assertions.allPassed() ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
};

using seconds_d = std::chrono::duration<double>;

double elapsed(std::chrono::steady_clock::time_point t0) {
  return seconds_d(std::chrono::steady_clock::now() - t0).count();
}

int draw(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

TEST_CASE("c01 example rank reproduction", "[c01][acceptance]") {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ConditionReport> reports =
      check_rank_conditions(golden_instance());
  REQUIRE(reports.size() == 9);
  const int expected[9] = {3, 4, 4, 3, 4, 3, 3, 3, 7};
  for (int i = 0; i < 9; ++i) {
    INFO(reports[i].name);
    CHECK(reports[i].lhs_rank == expected[i]);
    CHECK(reports[i].holds);
  }
  CHECK(elapsed(t0) < 1.0);
}

TEST_CASE("c02 example solution verification", "[c02][acceptance]") {
  CHECK(residual(golden_instance(), golden_solution()) <= 1e-13);
}

TEST_CASE("c03 solver self-consistency on the example", "[c03][acceptance]") {
  const MainInstance inst = golden_instance();
  const FreeParameterShapes shapes = free_parameter_shapes(inst);

  MainResult base = solve_main(inst, FreeParameters::zero(shapes));
  REQUIRE(base.report.consistent);
  CHECK(residual(inst, base.solution) <= 1e-10);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (Branch branch : {Branch::F1, Branch::F2}) {
      MainResult r =
          solve_main(inst, FreeParameters::random(shapes, seed), branch);
      REQUIRE(r.report.consistent);
      INFO("seed " << seed << " branch " << branch_name(branch));
      CHECK(residual(inst, r.solution) <= 1e-9);
    }
  }
}

TEST_CASE("c04 construct-by-solution closure", "[c04][acceptance]") {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 meta(777);
  for (int i = 0; i < 200; ++i) {
    GenSpec spec;
    spec.p = draw(meta, 1, 5);
    spec.q = draw(meta, 1, 5);
    spec.a = draw(meta, 1, 5);
    spec.b = draw(meta, 1, 5);
    spec.c = draw(meta, 1, 5);
    spec.d = draw(meta, 1, 5);
    spec.e = draw(meta, 1, 5);
    spec.f = draw(meta, 1, 5);
    spec.m = draw(meta, 1, 5);
    spec.n = draw(meta, 1, 5);
    spec.rank_deficit = i % 3;
    spec.seed = 10000 + static_cast<std::uint64_t>(i);
    const GenResult g = gen_consistent(spec);
    const FreeParameterShapes shapes = free_parameter_shapes(g.inst);
    const double gate = 1e-8 * (1.0 + fnorm(g.inst.B));
    for (int k = 0; k < 5; ++k) {
      MainResult r = solve_main(
          g.inst, FreeParameters::random(shapes, spec.seed + 100 + k),
          k % 2 == 0 ? Branch::F1 : Branch::F2);
      INFO("instance " << i << " draw " << k);
      REQUIRE(r.report.consistent);
      CHECK(residual(g.inst, r.solution) <= gate);
    }
  }
  CHECK(elapsed(t0) < 60.0);
}

TEST_CASE("c05 condition-form equivalence", "[c05][acceptance]") {
  std::mt19937_64 meta(555);
  int indeterminate = 0;
  for (int i = 0; i < 200; ++i) {
    MainInstance inst;
    if (i % 4 == 3) {
      GenSpec spec;
      spec.p = 3;
      spec.q = 3;
      spec.a = spec.b = spec.c = spec.d = spec.e = spec.f = spec.m = spec.n = 1;
      spec.seed = static_cast<std::uint64_t>(i);
      for (int tries = 0;; ++tries) {
        try {
          inst = gen_inconsistent(spec);
          break;
        } catch (const GenerationFailed&) {
          REQUIRE(tries < 5);
          spec.seed += 1000;
        }
      }
    } else {
      GenSpec spec;
      spec.p = draw(meta, 1, 4);
      spec.q = draw(meta, 1, 4);
      spec.a = draw(meta, 1, 4);
      spec.b = draw(meta, 1, 4);
      spec.c = draw(meta, 1, 4);
      spec.d = draw(meta, 1, 4);
      spec.e = draw(meta, 1, 4);
      spec.f = draw(meta, 1, 4);
      spec.m = draw(meta, 1, 4);
      spec.n = draw(meta, 1, 4);
      spec.rank_deficit = i % 3;
      spec.seed = 20000 + static_cast<std::uint64_t>(i);
      inst = gen_consistent(spec).inst;
    }
    const Verdict rank_v = aggregate(check_rank_conditions(inst));
    const MainDerived d = derive_main_quantities(inst);
    const Verdict proj_v = aggregate(
        check_projector_conditions(d, projector_tol(inst.input_scale())));
    if (rank_v == Verdict::Indeterminate || proj_v == Verdict::Indeterminate) {
      ++indeterminate;
      continue;
    }
    INFO("instance " << i);
    CHECK(rank_v == proj_v);
  }
  CHECK(indeterminate < 4);
}

TEST_CASE("c06 eta identity suite", "[c06][acceptance]") {
  std::mt19937_64 rng(606);
  for (EtaAxis eta : {EtaAxis::I, EtaAxis::J, EtaAxis::K}) {
    for (int t = 0; t < 100; ++t) {
      const int rows = draw(rng, 1, 6), cols = draw(rng, 1, 6);
      QMatrix a = (t % 3 == 2 && rows > 1 && cols > 1)
                      ? random_rank_matrix(rng, rows, cols,
                                           std::min(rows, cols) - 1)
                      : random_matrix(rng, rows, cols);
      const double tol = 1e-10 * (1.0 + maxabs(a));
      const QMatrix ap = pinv(a).pinv;
      INFO("eta " << eta_name(eta) << " draw " << t);

      CHECK(mat_dist(pinv(eta_similar(a, eta)).pinv, eta_similar(ap, eta)) <=
            tol);
      CHECK(mat_dist(pinv(eta_conj_transpose(a, eta)).pinv,
                     eta_conj_transpose(ap, eta)) <= tol);
      const int r = qrank(a);
      CHECK(qrank(eta_conj_transpose(a, eta)) == r);
      CHECK(qrank(eta_similar(a, eta)) == r);

      const Projectors pr = projectors_from(a, ap);
      const Projectors pr_star =
          projectors_from(eta_conj_transpose(a, eta),
                          pinv(eta_conj_transpose(a, eta)).pinv);
      CHECK(mat_dist(eta_conj_transpose(pr.L, eta), pr_star.R) <= tol);
      CHECK(mat_dist(eta_conj_transpose(pr.R, eta), pr_star.L) <= tol);
      CHECK(mat_dist(eta_conj_transpose(a * ap, eta),
                     eta_conj_transpose(ap, eta) * eta_conj_transpose(a, eta)) <=
            tol);
    }
  }
}

TEST_CASE("c07 rank identity oracle", "[c07][acceptance]") {
  std::mt19937_64 rng(707);
  for (int t = 0; t < 200; ++t) {
    const int m = draw(rng, 1, 4), n = draw(rng, 1, 4), k = draw(rng, 1, 4);
    const int l = draw(rng, 1, 4), i = draw(rng, 1, 4), j = draw(rng, 1, 4);
    const QMatrix A = random_int_matrix(rng, m, n);
    const QMatrix B = random_int_matrix(rng, m, k);
    const QMatrix C = random_int_matrix(rng, l, n);
    const QMatrix D = random_int_matrix(rng, j, k);
    const QMatrix E = random_int_matrix(rng, l, i);
    const auto [lhs, rhs] = ms_rank_identity(A, B, C, D, E);
    INFO("draw " << t);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("c08 Penrose conditions", "[c08][acceptance]") {
  std::mt19937_64 rng(808);
  for (int t = 0; t < 200; ++t) {
    int rows, cols;
    if (t == 0) {
      rows = 2, cols = 6;
    } else if (t == 1) {
      rows = 6, cols = 2;
    } else {
      rows = draw(rng, 1, 6);
      const int lo = std::max(1, (rows + 2) / 3);
      cols = draw(rng, lo, 3 * rows);
    }
    QMatrix a = (t % 3 == 2 && rows > 1 && cols > 1)
                    ? random_rank_matrix(rng, rows, cols,
                                         draw(rng, 1, std::min(rows, cols) - 1))
                    : random_matrix(rng, rows, cols);
    const QMatrix p = pinv(a).pinv;
    const double tol = 1e-10 * (1.0 + fnorm(a));
    INFO("draw " << t << " shape " << rows << "x" << cols);
    CHECK(fnorm(a * p * a - a) <= tol);
    CHECK(fnorm(p * a * p - p) <= tol);
    CHECK(fnorm(conj_transpose(a * p) - a * p) <= tol);
    CHECK(fnorm(conj_transpose(p * a) - p * a) <= tol);
  }
}

TEST_CASE("c09 eta-Hermitian application", "[c09][acceptance]") {
  std::mt19937_64 meta(909);
  for (EtaAxis eta : {EtaAxis::I, EtaAxis::J, EtaAxis::K}) {
    for (int i = 0; i < 100; ++i) {
      GenSpec spec;
      spec.eta = eta;
      spec.p = draw(meta, 1, 4);
      spec.a = draw(meta, 1, 4);
      spec.c = draw(meta, 1, 4);
      spec.e = draw(meta, 1, 4);
      spec.m = draw(meta, 1, 4);
      spec.seed = 30000 + static_cast<std::uint64_t>(i) +
                  1000 * static_cast<std::uint64_t>(eta);
      const EtaGenResult g = gen_eta_consistent(spec);
      const FreeParameterShapes shapes =
          free_parameter_shapes(make_eta_auxiliary(g.inst));
      EtaResult r = solve_eta(g.inst, FreeParameters::random(shapes, spec.seed),
                              i % 2 == 0 ? Branch::F1 : Branch::F2);
      INFO("eta " << eta_name(eta) << " instance " << i);
      REQUIRE(r.consistent);
      CHECK(mat_dist(r.solution.Y1,
                     eta_conj_transpose(r.solution.Y1, eta)) <= 1e-10);
      CHECK(mat_dist(r.solution.Y2,
                     eta_conj_transpose(r.solution.Y2, eta)) <= 1e-10);
      CHECK(mat_dist(r.solution.Y3,
                     eta_conj_transpose(r.solution.Y3, eta)) <= 1e-10);
      CHECK(r.residual <= 1e-8 * (1.0 + fnorm(g.inst.B)));
    }
  }
}

TEST_CASE("c10 reduction coherence", "[c10][acceptance]") {
  std::mt19937_64 rng(1010);

  for (int t = 0; t < 50; ++t) {
    const int p = draw(rng, 1, 4), q = draw(rng, 1, 4);
    const int c = draw(rng, 1, 4), d = draw(rng, 1, 4);
    const int e = draw(rng, 1, 4), f = draw(rng, 1, 4);
    const int m = draw(rng, 1, 4), n = draw(rng, 1, 4);
    const QMatrix A11 = random_matrix(rng, p, c), B11 = random_matrix(rng, d, q);
    const QMatrix A22 = random_matrix(rng, p, e), B22 = random_matrix(rng, f, q);
    const QMatrix A33 = random_matrix(rng, p, m), B33 = random_matrix(rng, n, q);
    const QMatrix T1 = A11 * random_matrix(rng, c, d) * B11 +
                       A22 * random_matrix(rng, e, f) * B22 +
                       A33 * random_matrix(rng, m, n) * B33;
    const MainInstance padded =
        make_three_term_instance(A11, B11, A22, B22, A33, B33, T1);
    const FreeParameters params = FreeParameters::random(
        free_parameter_shapes(padded), 40000 + static_cast<std::uint64_t>(t));
    const Branch branch = t % 2 == 0 ? Branch::F1 : Branch::F2;
    const ThreeTermSolution r3 =
        solve_three_term(A11, B11, A22, B22, A33, B33, T1, params, branch);
    const MainResult rm = solve_main(padded, params, branch);
    INFO("three-term draw " << t);
    REQUIRE(r3.consistent == rm.report.consistent);
    CHECK(mat_dist(r3.Y1, rm.solution.Y1) == 0.0);
    CHECK(mat_dist(r3.Y2, rm.solution.Y2) == 0.0);
    CHECK(mat_dist(r3.Y3, rm.solution.Y3) == 0.0);
  }

  int skipped = 0;
  for (int t = 0; t < 50; ++t) {
    const int p = draw(rng, 2, 4), q = draw(rng, 2, 4);
    const int a = draw(rng, 1, 3), b = draw(rng, 1, 3);
    MainInstance inst;
    inst.A1 = random_matrix(rng, p, a);
    inst.B1 = random_matrix(rng, b, q);
    inst.A2 = QMatrix(p, 0);
    inst.B2 = QMatrix(0, q);
    inst.A3 = QMatrix(p, 0);
    inst.B3 = QMatrix(0, q);
    inst.A4 = QMatrix(p, 0);
    inst.B4 = QMatrix(0, q);
    inst.B = t % 2 == 0 ? inst.A1 * random_matrix(rng, a, q) +
                              random_matrix(rng, p, b) * inst.B1
                        : random_matrix(rng, p, q);
    const MainResult rm = solve_main(
        inst, FreeParameters::zero(free_parameter_shapes(inst)));
    const AxybSolution ra = solve_axyb(inst.A1, inst.B1, inst.B);
    if (rm.report.verdict == Verdict::Indeterminate) {
      ++skipped;
      continue;
    }
    INFO("two-term draw " << t);
    REQUIRE(rm.report.consistent == ra.consistent);
    if (ra.consistent) {
      const double gate = 1e-8 * (1.0 + fnorm(inst.B));
      CHECK(residual(inst, rm.solution) <= gate);
      CHECK(fnorm(inst.A1 * ra.X + ra.Y * inst.B1 - inst.B) <= gate);
    }
  }
  CHECK(skipped <= 2);
}

CATCH_REGISTER_LISTENER(CriterionLines)

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quatsylv/decomp.hpp"
#include "quatsylv/errors.hpp"
#include "quatsylv/qmatrix.hpp"
#include "quatsylv/rng.hpp"

namespace quatsylv {

// Five-term equation  A1 X1 + X2 B1 + A2 Y1 B2 + A3 Y2 B3 + A4 Y3 B4 = B.
// Unknown shapes: X1 a x q, X2 p x b, Y1 c x d, Y2 e x f, Y3 m x n.
struct MainInstance {
  QMatrix A1, B1, A2, B2, A3, B3, A4, B4, B;

  int p() const { return B.rows(); }
  int q() const { return B.cols(); }
  int a() const { return A1.cols(); }
  int b() const { return B1.rows(); }
  int c() const { return A2.cols(); }
  int d() const { return B2.rows(); }
  int e() const { return A3.cols(); }
  int f() const { return B3.rows(); }
  int m() const { return A4.cols(); }
  int n() const { return B4.rows(); }

  void validate() const {
    if (A1.rows() != p() || A2.rows() != p() || A3.rows() != p() ||
        A4.rows() != p())
      throw DimensionMismatch("MainInstance: left coefficient row counts must match B");
    if (B1.cols() != q() || B2.cols() != q() || B3.cols() != q() ||
        B4.cols() != q())
      throw DimensionMismatch("MainInstance: right coefficient column counts must match B");
  }

  double input_scale() const {
    double s = maxabs(B);
    for (const QMatrix* m :
         {&A1, &B1, &A2, &B2, &A3, &B3, &A4, &B4})
      s = std::max(s, maxabs(*m));
    return s;
  }
};

enum class Branch { F1, F2 };

inline const char* branch_name(Branch b) { return b == Branch::F1 ? "f1" : "f2"; }

struct MainSolution {
  QMatrix X1, X2, Y1, Y2, Y3;
  Branch branch = Branch::F1;
};

// Pair system  A11 X B11 = C1,  A22 X B22 = C2  under the side conditions
// A11 L_{A22} = 0 and R_{B11} B22 = 0.
struct PairSystem {
  QMatrix A11, B11, C1, A22, B22, C2;

  void validate() const {
    if (A11.cols() != A22.cols() || B11.rows() != B22.rows())
      throw DimensionMismatch("PairSystem: shared unknown shape disagrees");
    if (C1.rows() != A11.rows() || C1.cols() != B11.cols() ||
        C2.rows() != A22.rows() || C2.cols() != B22.cols())
      throw DimensionMismatch("PairSystem: right-hand side shapes disagree");
  }

  double input_scale() const {
    double s = 0.0;
    for (const QMatrix* m : {&A11, &B11, &C1, &A22, &B22, &C2})
      s = std::max(s, maxabs(*m));
    return s;
  }
};

// A1 X1 + (A1 X1)^{eta*} + A2 Y1 A2^{eta*} + A3 Y2 A3^{eta*} + A4 Y3 A4^{eta*} = B
// with B eta-Hermitian; Y1, Y2, Y3 are sought eta-Hermitian.
struct EtaInstance {
  QMatrix A1, A2, A3, A4, B;
  EtaAxis eta = EtaAxis::I;

  void validate() const {
    if (B.rows() != B.cols())
      throw DimensionMismatch("EtaInstance: B must be square");
    if (A1.rows() != B.rows() || A2.rows() != B.rows() ||
        A3.rows() != B.rows() || A4.rows() != B.rows())
      throw DimensionMismatch("EtaInstance: coefficient row counts must match B");
  }

  double input_scale() const {
    double s = maxabs(B);
    for (const QMatrix* m : {&A1, &A2, &A3, &A4}) s = std::max(s, maxabs(*m));
    return s;
  }
};

struct EtaSolution {
  QMatrix X1, Y1, Y2, Y3;
};

inline QMatrix main_lhs(const MainInstance& inst, const MainSolution& sol) {
  return inst.A1 * sol.X1 + sol.X2 * inst.B1 + inst.A2 * sol.Y1 * inst.B2 +
         inst.A3 * sol.Y2 * inst.B3 + inst.A4 * sol.Y3 * inst.B4;
}

inline double residual(const MainInstance& inst, const MainSolution& sol) {
  return fnorm(main_lhs(inst, sol) - inst.B);
}

inline QMatrix eta_lhs(const EtaInstance& inst, const EtaSolution& sol) {
  const QMatrix head = inst.A1 * sol.X1;
  return head + eta_conj_transpose(head, inst.eta) +
         inst.A2 * sol.Y1 * eta_conj_transpose(inst.A2, inst.eta) +
         inst.A3 * sol.Y2 * eta_conj_transpose(inst.A3, inst.eta) +
         inst.A4 * sol.Y3 * eta_conj_transpose(inst.A4, inst.eta);
}

inline double eta_residual(const EtaInstance& inst, const EtaSolution& sol) {
  return fnorm(eta_lhs(inst, sol) - inst.B);
}

// Every derived quantity of the main reduction chain, factored where a
// pseudoinverse or projector of it is consumed downstream.
struct MainDerived {
  Factored A1, B1;
  Factored A11, B11, A22, B22;
  QMatrix A33, B33;
  Factored M1, N1, S1;
  QMatrix T1;

  QMatrix C, D;
  Factored C1, C2, C3, C4, D1, D2, D3, D4;
  QMatrix E1, E2, E3, E4;

  Factored C11, D11;
  QMatrix C22, D22, C33, D33;
  Factored E11, E22, E33, E44, M, N, S;
  QMatrix F, E;

  QMatrix F11, G1, F22, G2, F1, F2;

  double input_scale = 0.0;
};

inline MainDerived derive_main_quantities(const MainInstance& inst,
                                          double tol = -1.0) {
  inst.validate();
  MainDerived d;
  d.input_scale = inst.input_scale();

  // derived products that vanish in exact arithmetic come out as rounding
  // dust; flushed so their rank is 0 and their pinv does not explode
  const double floor = 1.0 + d.input_scale;
  auto clean = [floor](QMatrix m) { return flush_small(std::move(m), floor); };
  // products also pick up spectral dust: singular values at the rounding
  // level of the chain, far above the per-matrix cutoff, whose reciprocals
  // would blow up every downstream pinv. factor derived quantities against a
  // noise floor tied to the chain scale instead of their own largest value.
  auto dfactor = [&](QMatrix m) {
    m = flush_small(std::move(m), floor);
    const double t = tol >= 0 ? tol : 1e-12 * std::max(floor, maxabs(m));
    return factor(std::move(m), t);
  };

  d.A1 = factor(inst.A1, tol);
  d.B1 = factor(inst.B1, tol);

  d.A11 = dfactor(d.A1.R * inst.A2);
  d.A22 = dfactor(d.A1.R * inst.A3);
  d.A33 = clean(d.A1.R * inst.A4);
  d.B11 = dfactor(inst.B2 * d.B1.L);
  d.B22 = dfactor(inst.B3 * d.B1.L);
  d.B33 = clean(inst.B4 * d.B1.L);
  d.M1 = dfactor(d.A11.R * d.A22.mat);
  d.S1 = dfactor(d.A22.mat * d.M1.L);
  d.N1 = dfactor(d.B22.mat * d.B11.L);
  d.T1 = clean(d.A1.R * inst.B * d.B1.L);

  d.C = clean(d.M1.R * d.A11.R);
  d.D = clean(d.B11.L * d.N1.L);
  d.C1 = dfactor(d.C * d.A33);
  d.C2 = dfactor(d.A11.R * d.A33);
  d.C3 = dfactor(d.A22.R * d.A33);
  d.C4 = dfactor(d.A33);
  d.D1 = dfactor(d.B33);
  d.D2 = dfactor(d.B33 * d.B22.L);
  d.D3 = dfactor(d.B33 * d.B11.L);
  d.D4 = dfactor(d.B33 * d.D);
  d.E1 = clean(d.C * d.T1);
  d.E2 = clean(d.A11.R * d.T1 * d.B22.L);
  d.E3 = clean(d.A22.R * d.T1 * d.B11.L);
  d.E4 = clean(d.T1 * d.D);

  d.C11 = dfactor(hcat(d.C2.L, d.C4.L));
  d.D11 = dfactor(vcat(d.D1.R, d.D3.R));
  d.C22 = d.C1.L;
  d.D22 = d.D2.R;
  d.C33 = d.C3.L;
  d.D33 = d.D4.R;
  d.E11 = dfactor(d.C11.R * d.C22);
  d.E22 = dfactor(d.C11.R * d.C33);
  d.E33 = dfactor(d.D22 * d.D11.L);
  d.E44 = dfactor(d.D33 * d.D11.L);
  d.M = dfactor(d.E11.R * d.E22.mat);
  d.N = dfactor(d.E44.mat * d.E33.L);
  d.S = dfactor(d.E22.mat * d.M.L);

  d.F1 = clean(d.C1.pinv * d.E1 * d.D1.pinv +
               d.C1.L * d.C2.pinv * d.E2 * d.D2.pinv);
  d.F2 = clean(d.C3.pinv * d.E3 * d.D3.pinv +
               d.C3.L * d.C4.pinv * d.E4 * d.D4.pinv);
  d.F = d.F2 - d.F1;
  d.E = clean(d.C11.R * d.F * d.D11.L);

  d.F11 = clean(d.C2.mat * d.C1.L);
  d.G1 = clean(d.E2 - d.C2.mat * d.C1.pinv * d.E1 * d.D1.pinv * d.D2.mat);
  d.F22 = clean(d.C4.mat * d.C3.L);
  d.G2 = clean(d.E4 - d.C4.mat * d.C3.pinv * d.E3 * d.D3.pinv * d.D4.mat);

  return d;
}

struct MatShape {
  int rows = 0;
  int cols = 0;
};

// Shapes forced on the free parameters by the slots they occupy.
struct FreeParameterShapes {
  MatShape U1, U2, U3, U4, U5, U6, U7, U8;
  MatShape U11, U12, U21, U31, U32, U33, U41, U42;
};

inline FreeParameterShapes free_parameter_shapes(const MainInstance& inst) {
  inst.validate();
  FreeParameterShapes s;
  const int p = inst.p(), q = inst.q();
  const int m = inst.m(), n = inst.n();
  s.U1 = {p, inst.b()};
  s.U2 = {inst.a(), q};
  s.U3 = {p, inst.b()};
  s.U4 = {inst.e(), inst.f()};
  s.U5 = {inst.c(), inst.d()};
  s.U6 = {inst.c(), inst.d()};
  s.U7 = {inst.e(), inst.f()};
  s.U8 = {inst.e(), inst.f()};
  s.U11 = {m, 2 * n};
  s.U12 = {2 * m, n};
  s.U21 = {m, 2 * n};
  s.U31 = {m, n};
  s.U32 = {m, n};
  s.U33 = {m, n};
  s.U41 = {m, n};
  s.U42 = {m, n};
  return s;
}

// The sixteen arbitrary matrices of the solution family. U4 feeds both Y1 and
// Y2; U31 feeds both V3 and W3; U11, U12, U21 feed the stacked pair layer.
struct FreeParameters {
  QMatrix U1, U2, U3, U4, U5, U6, U7, U8;
  QMatrix U11, U12, U21, U31, U32, U33, U41, U42;

  static FreeParameters zero(const FreeParameterShapes& s) {
    FreeParameters u;
    u.U1 = QMatrix(s.U1.rows, s.U1.cols);
    u.U2 = QMatrix(s.U2.rows, s.U2.cols);
    u.U3 = QMatrix(s.U3.rows, s.U3.cols);
    u.U4 = QMatrix(s.U4.rows, s.U4.cols);
    u.U5 = QMatrix(s.U5.rows, s.U5.cols);
    u.U6 = QMatrix(s.U6.rows, s.U6.cols);
    u.U7 = QMatrix(s.U7.rows, s.U7.cols);
    u.U8 = QMatrix(s.U8.rows, s.U8.cols);
    u.U11 = QMatrix(s.U11.rows, s.U11.cols);
    u.U12 = QMatrix(s.U12.rows, s.U12.cols);
    u.U21 = QMatrix(s.U21.rows, s.U21.cols);
    u.U31 = QMatrix(s.U31.rows, s.U31.cols);
    u.U32 = QMatrix(s.U32.rows, s.U32.cols);
    u.U33 = QMatrix(s.U33.rows, s.U33.cols);
    u.U41 = QMatrix(s.U41.rows, s.U41.cols);
    u.U42 = QMatrix(s.U42.rows, s.U42.cols);
    return u;
  }

  // Parameter slot k draws from split_stream(seed, 20 + k) with the slots
  // ordered U1..U8, U11, U12, U21, U31, U32, U33, U41, U42.
  static FreeParameters random(const FreeParameterShapes& s, std::uint64_t seed,
                               double scale = 1.0) {
    FreeParameters u;
    int slot = 20;
    auto draw = [&](const MatShape& sh) {
      SplitMix64 g = split_stream(seed, slot++);
      return random_matrix(sh.rows, sh.cols, g, scale);
    };
    u.U1 = draw(s.U1);
    u.U2 = draw(s.U2);
    u.U3 = draw(s.U3);
    u.U4 = draw(s.U4);
    u.U5 = draw(s.U5);
    u.U6 = draw(s.U6);
    u.U7 = draw(s.U7);
    u.U8 = draw(s.U8);
    u.U11 = draw(s.U11);
    u.U12 = draw(s.U12);
    u.U21 = draw(s.U21);
    u.U31 = draw(s.U31);
    u.U32 = draw(s.U32);
    u.U33 = draw(s.U33);
    u.U41 = draw(s.U41);
    u.U42 = draw(s.U42);
    return u;
  }
};

}  // namespace quatsylv

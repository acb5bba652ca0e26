#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "quatsylv/conditions.hpp"
#include "quatsylv/equation.hpp"

namespace quatsylv {

// Two-term equation  A1 X + Y B1 = C1.
struct AxybSolution {
  bool consistent = false;
  QMatrix X, Y;
  double gate = 0.0;  // max entry norm of R_{A1} C1 L_{B1}
  double tol = 0.0;
};

inline AxybSolution solve_axyb(const QMatrix& A1, const QMatrix& B1,
                               const QMatrix& C1, const QMatrix& U1,
                               const QMatrix& U2, const QMatrix& U3,
                               double tol = -1.0) {
  if (C1.rows() != A1.rows() || C1.cols() != B1.cols())
    throw DimensionMismatch("solve_axyb: C1 must be A1.rows x B1.cols");
  Factored a = factor(A1);
  Factored b = factor(B1);
  const double scale =
      std::max(maxabs(A1), std::max(maxabs(B1), maxabs(C1)));
  AxybSolution out;
  out.tol = tol < 0 ? projector_tol(scale) : tol;
  out.gate = maxabs(a.R * C1 * b.L);
  out.consistent = out.gate <= out.tol;
  out.X = a.pinv * C1 - a.pinv * U1 * B1 + a.L * U2;
  out.Y = a.R * C1 * b.pinv + a.mat * a.pinv * U1 + U3 * b.R;
  return out;
}

inline AxybSolution solve_axyb(const QMatrix& A1, const QMatrix& B1,
                               const QMatrix& C1, double tol = -1.0) {
  return solve_axyb(A1, B1, C1, QMatrix(A1.rows(), B1.rows()),
                    QMatrix(A1.cols(), C1.cols()),
                    QMatrix(A1.rows(), B1.rows()), tol);
}

// Constrained pair system  A11 X B11 = C1,  A22 X B22 = C2. Consistency is
// decided by the projector group of check_pair_conditions; the other two
// groups ride along as diagnostics.
struct PairSolution {
  bool consistent = false;
  Verdict verdict = Verdict::Indeterminate;
  QMatrix X;
  std::vector<ConditionReport> conditions;
};

inline PairSolution solve_pair_system(const PairSystem& sys, const QMatrix& V1,
                                      const QMatrix& V2, const QMatrix& V3,
                                      double tol = -1.0) {
  PairSolution out;
  out.conditions = check_pair_conditions(sys, tol);
  out.verdict = aggregate(out.conditions, "2-");
  out.consistent = out.verdict != Verdict::Inconsistent;
  Factored a11 = factor(sys.A11);
  Factored b11 = factor(sys.B11);
  Factored a22 = factor(sys.A22);
  Factored b22 = factor(sys.B22);
  out.X = a11.pinv * sys.C1 * b11.pinv +
          a11.L * a22.pinv * sys.C2 * b22.pinv + a22.L * V1 + V2 * b11.R +
          a11.L * V3 * b22.R;
  return out;
}

inline PairSolution solve_pair_system(const PairSystem& sys,
                                      double tol = -1.0) {
  const QMatrix z(sys.A11.cols(), sys.B11.rows());
  return solve_pair_system(sys, z, z, z, tol);
}

// Four-term equation  A1 X1 + X2 B1 + C3 X3 D3 + C4 X4 D4 = E1.
struct FourTermShapes {
  MatShape T1, T2, T3, T4, T5, T6, T7, T8;
};

inline FourTermShapes four_term_shapes(const QMatrix& A1, const QMatrix& B1,
                                       const QMatrix& C3, const QMatrix& D3,
                                       const QMatrix& C4, const QMatrix& D4) {
  FourTermShapes s;
  s.T1 = {C4.cols(), D4.rows()};
  s.T2 = s.T1;
  s.T3 = s.T1;
  s.T4 = {C3.cols(), D3.rows()};
  s.T5 = s.T4;
  s.T6 = {A1.cols(), B1.cols()};
  s.T7 = {A1.rows(), B1.rows()};
  s.T8 = s.T7;
  return s;
}

// T2 feeds both X3 and X4.
struct FourTermParams {
  QMatrix T1, T2, T3, T4, T5, T6, T7, T8;

  static FourTermParams zero(const FourTermShapes& s) {
    FourTermParams t;
    t.T1 = QMatrix(s.T1.rows, s.T1.cols);
    t.T2 = QMatrix(s.T2.rows, s.T2.cols);
    t.T3 = QMatrix(s.T3.rows, s.T3.cols);
    t.T4 = QMatrix(s.T4.rows, s.T4.cols);
    t.T5 = QMatrix(s.T5.rows, s.T5.cols);
    t.T6 = QMatrix(s.T6.rows, s.T6.cols);
    t.T7 = QMatrix(s.T7.rows, s.T7.cols);
    t.T8 = QMatrix(s.T8.rows, s.T8.cols);
    return t;
  }

  // Slot k draws from split_stream(seed, 40 + k), k = 0 for T1 .. 7 for T8.
  static FourTermParams random(const FourTermShapes& s, std::uint64_t seed,
                               double scale = 1.0) {
    FourTermParams t;
    int slot = 40;
    auto draw = [&](const MatShape& sh) {
      SplitMix64 g = split_stream(seed, slot++);
      return random_matrix(sh.rows, sh.cols, g, scale);
    };
    t.T1 = draw(s.T1);
    t.T2 = draw(s.T2);
    t.T3 = draw(s.T3);
    t.T4 = draw(s.T4);
    t.T5 = draw(s.T5);
    t.T6 = draw(s.T6);
    t.T7 = draw(s.T7);
    t.T8 = draw(s.T8);
    return t;
  }
};

struct FourTermSolution {
  bool consistent = false;
  Verdict verdict = Verdict::Indeterminate;
  QMatrix X1, X2, X3, X4;
  std::vector<ConditionReport> conditions;
};

inline FourTermSolution solve_four_term(const QMatrix& A1, const QMatrix& B1,
                                        const QMatrix& C3, const QMatrix& D3,
                                        const QMatrix& C4, const QMatrix& D4,
                                        const QMatrix& E1,
                                        const FourTermParams& t,
                                        double tol = -1.0) {
  if (E1.rows() != A1.rows() || E1.cols() != B1.cols() ||
      C3.rows() != E1.rows() || C4.rows() != E1.rows() ||
      D3.cols() != E1.cols() || D4.cols() != E1.cols())
    throw DimensionMismatch("solve_four_term: coefficients must frame E1");

  double scale = 0.0;
  for (const QMatrix* g : {&A1, &B1, &C3, &D3, &C4, &D4, &E1})
    scale = std::max(scale, maxabs(*g));
  const double floor = 1.0 + scale;
  auto clean = [floor](QMatrix g) { return flush_small(std::move(g), floor); };

  const std::optional<QMatrix> O;
  FourTermSolution out;
  out.conditions.push_back(rank_report(
      "ft-a", block({{E1, C4, C3, A1}, {B1, O, O, O}}),
      {B1, block({{C4, C3, A1}})}, tol));
  out.conditions.push_back(rank_report(
      "ft-b", block({{E1, A1}, {D3, O}, {D4, O}, {B1, O}}),
      {block({{D3}, {D4}, {B1}}), A1}, tol));
  out.conditions.push_back(rank_report(
      "ft-c", block({{E1, C3, A1}, {D4, O, O}, {B1, O, O}}),
      {block({{A1, C3}}), block({{D4}, {B1}})}, tol));
  out.conditions.push_back(rank_report(
      "ft-d", block({{E1, C4, A1}, {D3, O, O}, {B1, O, O}}),
      {block({{A1, C4}}), block({{D3}, {B1}})}, tol));
  out.verdict = aggregate(out.conditions);
  out.consistent = out.verdict != Verdict::Inconsistent;

  // derived products carry spectral dust above the per-matrix cutoff; see
  // derive_main_quantities
  auto dfactor = [&](QMatrix g) {
    g = flush_small(std::move(g), floor);
    const double ft = tol >= 0 ? tol : 1e-12 * std::max(floor, maxabs(g));
    return factor(std::move(g), ft);
  };

  Factored a1 = factor(A1);
  Factored b1 = factor(B1);
  Factored A = dfactor(a1.R * C3);
  Factored B = dfactor(D3 * b1.L);
  Factored C = dfactor(a1.R * C4);
  Factored D = dfactor(D4 * b1.L);
  const QMatrix E = clean(a1.R * E1 * b1.L);
  Factored M = dfactor(A.R * C.mat);
  Factored N = dfactor(D.mat * B.L);
  Factored S = dfactor(C.mat * M.L);

  out.X3 = A.pinv * E * B.pinv - A.pinv * C.mat * M.pinv * E * B.pinv -
           A.pinv * S.mat * C.pinv * E * N.pinv * D.mat * B.pinv -
           A.pinv * S.mat * t.T2 * N.R * D.mat * B.pinv + A.L * t.T4 +
           t.T5 * B.R;
  out.X4 = M.pinv * E * D.pinv + S.pinv * S.mat * C.pinv * E * N.pinv +
           M.L * S.L * t.T1 + M.L * t.T2 * N.R + t.T3 * D.R;
  const QMatrix rem = E1 - C3 * out.X3 * D3 - C4 * out.X4 * D4;
  out.X1 = a1.pinv * rem - a1.pinv * t.T7 * B1 + a1.L * t.T6;
  out.X2 = a1.R * rem * b1.pinv + a1.mat * a1.pinv * t.T7 + t.T8 * b1.R;
  return out;
}

inline FourTermSolution solve_four_term(const QMatrix& A1, const QMatrix& B1,
                                        const QMatrix& C3, const QMatrix& D3,
                                        const QMatrix& C4, const QMatrix& D4,
                                        const QMatrix& E1, double tol = -1.0) {
  return solve_four_term(
      A1, B1, C3, D3, C4, D4, E1,
      FourTermParams::zero(four_term_shapes(A1, B1, C3, D3, C4, D4)), tol);
}

// Both condition families for the five-term equation plus the residual of the
// assembled solution. The verdict reconciles the two families.
struct SolveReport {
  std::vector<ConditionReport> rank_conditions;
  std::vector<ConditionReport> projector_conditions;
  Verdict rank_verdict = Verdict::Indeterminate;
  Verdict projector_verdict = Verdict::Indeterminate;
  Verdict verdict = Verdict::Indeterminate;
  bool consistent = false;
  double residual = 0.0;
  double tol = 0.0;
};

namespace detail {

// Solution family of the main equation, evaluated at one parameter draw.
// Dependency order: the inner pair layer gives V3/W3, the stacked layer gives
// V1/V2/W1/W2, then Y3, then Y1/Y2 against T = T1 - A33 Y3 B33, then X1/X2.
inline MainSolution assemble_main_solution(const MainInstance& inst,
                                           const MainDerived& d,
                                           const FreeParameters& u,
                                           Branch branch) {
  const int m = inst.m(), n = inst.n();

  const QMatrix V3 =
      d.E11.pinv * d.F * d.E33.pinv -
      d.E11.pinv * d.E22.mat * d.M.pinv * d.F * d.E33.pinv -
      d.E11.pinv * d.S.mat * d.E22.pinv * d.F * d.N.pinv * d.E44.mat *
          d.E33.pinv -
      d.E11.pinv * d.S.mat * u.U31 * d.N.R * d.E44.mat * d.E33.pinv +
      d.E11.L * u.U32 + u.U33 * d.E33.R;
  const QMatrix W3 = d.M.pinv * d.F * d.E44.pinv +
                     d.S.pinv * d.S.mat * d.E22.pinv * d.F * d.N.pinv +
                     d.M.L * d.S.L * u.U41 + d.M.L * u.U31 * d.N.R -
                     u.U42 * d.E44.R;
  const QMatrix K = d.F - d.C22 * V3 * d.D22 - d.C33 * W3 * d.D33;
  const QMatrix stack1 =
      d.C11.pinv * K - d.C11.pinv * u.U11 * d.D11.mat + d.C11.L * u.U12;
  const QMatrix stack2 = d.C11.R * K * d.D11.pinv +
                         d.C11.mat * d.C11.pinv * u.U11 + u.U21 * d.D11.R;
  const QMatrix V1 = submatrix(stack1, 0, 0, m, n);
  const QMatrix W1 = submatrix(stack1, m, 0, m, n);
  const QMatrix V2 = submatrix(stack2, 0, 0, m, n);
  const QMatrix W2 = submatrix(stack2, 0, n, m, n);

  MainSolution s;
  s.branch = branch;
  s.Y3 = branch == Branch::F1
             ? d.F1 + d.C2.L * V1 + V2 * d.D1.R + d.C1.L * V3 * d.D2.R
             : d.F2 - d.C4.L * W1 - W2 * d.D3.R - d.C3.L * W3 * d.D4.R;

  const QMatrix T = d.T1 - d.A33 * s.Y3 * d.B33;
  s.Y1 = d.A11.pinv * T * d.B11.pinv -
         d.A11.pinv * d.A22.mat * d.M1.pinv * T * d.B11.pinv -
         d.A11.pinv * d.S1.mat * d.A22.pinv * T * d.N1.pinv * d.B22.mat *
             d.B11.pinv -
         d.A11.pinv * d.S1.mat * u.U4 * d.N1.R * d.B22.mat * d.B11.pinv +
         d.A11.L * u.U5 + u.U6 * d.B11.R;
  s.Y2 = d.M1.pinv * T * d.B22.pinv +
         d.S1.pinv * d.S1.mat * d.A22.pinv * T * d.N1.pinv +
         d.M1.L * d.S1.L * u.U7 + u.U8 * d.B22.R + d.M1.L * u.U4 * d.N1.R;

  const QMatrix G = inst.B - inst.A2 * s.Y1 * inst.B2 -
                    inst.A3 * s.Y2 * inst.B3 - inst.A4 * s.Y3 * inst.B4;
  s.X1 = d.A1.pinv * G - d.A1.pinv * u.U1 * inst.B1 + d.A1.L * u.U2;
  s.X2 = d.A1.R * G * d.B1.pinv + d.A1.mat * d.A1.pinv * u.U1 + u.U3 * d.B1.R;
  return s;
}

}  // namespace detail

struct MainResult {
  SolveReport report;
  MainSolution solution;
};

// Decides the five-term equation and evaluates its solution family at one
// parameter draw. The formal solution is assembled even when the verdict is
// negative so the residual can witness the failure.
inline MainResult solve_main(const MainInstance& inst,
                             const FreeParameters& params,
                             Branch branch = Branch::F1, double tol = -1.0) {
  inst.validate();
  const MainDerived d = derive_main_quantities(inst);
  MainResult out;
  SolveReport& rep = out.report;
  rep.tol = tol < 0 ? projector_tol(d.input_scale) : tol;
  rep.rank_conditions = check_rank_conditions(inst);
  rep.projector_conditions = check_projector_conditions(d, rep.tol);
  rep.rank_verdict = aggregate(rep.rank_conditions);
  rep.projector_verdict = aggregate(rep.projector_conditions);
  rep.verdict = combine_verdicts(rep.rank_verdict, rep.projector_verdict);
  rep.consistent = rep.verdict != Verdict::Inconsistent;
  out.solution = detail::assemble_main_solution(inst, d, params, branch);
  rep.residual = residual(inst, out.solution);
  return out;
}

inline MainResult solve_main(const MainInstance& inst,
                             Branch branch = Branch::F1, double tol = -1.0) {
  return solve_main(inst, FreeParameters::zero(free_parameter_shapes(inst)),
                    branch, tol);
}

// Three-term equation  A11 Y1 B11 + A22 Y2 B22 + A33 Y3 B33 = T1, handled as
// the five-term equation with the two-sided-unknown pair absent.
inline MainInstance make_three_term_instance(
    const QMatrix& A11, const QMatrix& B11, const QMatrix& A22,
    const QMatrix& B22, const QMatrix& A33, const QMatrix& B33,
    const QMatrix& T1) {
  MainInstance inst;
  inst.A1 = QMatrix(T1.rows(), 0);
  inst.B1 = QMatrix(0, T1.cols());
  inst.A2 = A11;
  inst.B2 = B11;
  inst.A3 = A22;
  inst.B3 = B22;
  inst.A4 = A33;
  inst.B4 = B33;
  inst.B = T1;
  return inst;
}

struct ThreeTermSolution {
  bool consistent = false;
  SolveReport report;
  QMatrix Y1, Y2, Y3;
};

inline ThreeTermSolution solve_three_term(
    const QMatrix& A11, const QMatrix& B11, const QMatrix& A22,
    const QMatrix& B22, const QMatrix& A33, const QMatrix& B33,
    const QMatrix& T1, const FreeParameters& params,
    Branch branch = Branch::F1, double tol = -1.0) {
  const MainInstance inst =
      make_three_term_instance(A11, B11, A22, B22, A33, B33, T1);
  MainResult r = solve_main(inst, params, branch, tol);
  ThreeTermSolution out;
  out.consistent = r.report.consistent;
  out.report = std::move(r.report);
  out.Y1 = std::move(r.solution.Y1);
  out.Y2 = std::move(r.solution.Y2);
  out.Y3 = std::move(r.solution.Y3);
  return out;
}

inline ThreeTermSolution solve_three_term(
    const QMatrix& A11, const QMatrix& B11, const QMatrix& A22,
    const QMatrix& B22, const QMatrix& A33, const QMatrix& B33,
    const QMatrix& T1, Branch branch = Branch::F1, double tol = -1.0) {
  const MainInstance inst =
      make_three_term_instance(A11, B11, A22, B22, A33, B33, T1);
  return solve_three_term(A11, B11, A22, B22, A33, B33, T1,
                          FreeParameters::zero(free_parameter_shapes(inst)),
                          branch, tol);
}

// Auxiliary five-term instance whose right coefficients mirror the left ones.
inline MainInstance make_eta_auxiliary(const EtaInstance& inst) {
  MainInstance aux;
  aux.A1 = inst.A1;
  aux.B1 = eta_conj_transpose(inst.A1, inst.eta);
  aux.A2 = inst.A2;
  aux.B2 = eta_conj_transpose(inst.A2, inst.eta);
  aux.A3 = inst.A3;
  aux.B3 = eta_conj_transpose(inst.A3, inst.eta);
  aux.A4 = inst.A4;
  aux.B4 = eta_conj_transpose(inst.A4, inst.eta);
  aux.B = inst.B;
  return aux;
}

struct EtaResult {
  bool consistent = false;
  Verdict verdict = Verdict::Indeterminate;
  SolveReport report;  // diagnostics of the auxiliary equation
  std::vector<ConditionReport> eta_conditions;
  EtaSolution solution;
  double residual = 0.0;
};

// Solves the eta-Hermitian equation by symmetrizing a solution of the
// auxiliary equation: X1 = (X1^ + (X2^)^{eta*})/2, Yi = (Yi^ + Yi^{eta*})/2.
inline EtaResult solve_eta(const EtaInstance& inst,
                           const FreeParameters& params,
                           Branch branch = Branch::F1, double tol = -1.0) {
  inst.validate();
  const double herm_tol =
      tol < 0 ? projector_tol(inst.input_scale()) : tol;
  if (!is_eta_hermitian(inst.B, inst.eta, herm_tol))
    throw NotEtaHermitian("solve_eta: B is not eta-Hermitian");

  MainResult aux = solve_main(make_eta_auxiliary(inst), params, branch, tol);
  EtaResult out;
  out.report = std::move(aux.report);
  out.eta_conditions = check_eta_rank_conditions(inst);
  out.verdict =
      combine_verdicts(out.report.verdict, aggregate(out.eta_conditions));
  out.consistent = out.verdict != Verdict::Inconsistent;
  const EtaAxis eta = inst.eta;
  const MainSolution& s = aux.solution;
  out.solution.X1 = (s.X1 + eta_conj_transpose(s.X2, eta)) * 0.5;
  out.solution.Y1 = (s.Y1 + eta_conj_transpose(s.Y1, eta)) * 0.5;
  out.solution.Y2 = (s.Y2 + eta_conj_transpose(s.Y2, eta)) * 0.5;
  out.solution.Y3 = (s.Y3 + eta_conj_transpose(s.Y3, eta)) * 0.5;
  out.residual = eta_residual(inst, out.solution);
  return out;
}

inline EtaResult solve_eta(const EtaInstance& inst,
                           Branch branch = Branch::F1, double tol = -1.0) {
  return solve_eta(
      inst,
      FreeParameters::zero(free_parameter_shapes(make_eta_auxiliary(inst))),
      branch, tol);
}

}  // namespace quatsylv

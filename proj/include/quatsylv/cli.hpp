#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quatsylv/genval.hpp"
#include "quatsylv/solvers.hpp"

namespace quatsylv::cli {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

inline constexpr int kExitConsistent = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInconsistent = 2;
inline constexpr int kExitIndeterminate = 3;
inline constexpr int kExitGenerationFailed = 4;

inline EtaAxis parse_eta(const std::string& s) {
  if (s == "i") return EtaAxis::I;
  if (s == "j") return EtaAxis::J;
  if (s == "k") return EtaAxis::K;
  throw ParseError("eta axis must be i, j or k, got \"" + s + "\"");
}

inline Branch parse_branch(const std::string& s) {
  if (s == "f1") return Branch::F1;
  if (s == "f2") return Branch::F2;
  throw ParseError("branch must be f1 or f2, got \"" + s + "\"");
}

inline json matrix_to_json(const QMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      const Quaternion& e = m(r, c);
      row.push_back(json::array({e.w, e.x, e.y, e.z}));
    }
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline QMatrix matrix_from_json(const json& j, const std::string& locus) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw ParseError(locus + ": expected object with rows, cols, entries");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ParseError(locus + ": rows and cols must be integers");
  const int rows = j["rows"].get<int>(), cols = j["cols"].get<int>();
  if (rows < 0 || cols < 0)
    throw ParseError(locus + ": negative dimension");
  const json& entries = j["entries"];
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
    throw ParseError(locus + ": entries must hold " + std::to_string(rows) +
                     " rows");
  QMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = entries[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ParseError(locus + ": row " + std::to_string(r) + ": expected " +
                       std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 4)
        throw ParseError(locus + ": row " + std::to_string(r) + ": entry " +
                         std::to_string(c) + ": expected 4 components");
      for (const json& comp : e)
        if (!comp.is_number())
          throw ParseError(locus + ": row " + std::to_string(r) + ": entry " +
                           std::to_string(c) + ": non-numeric component");
      m(r, c) = Quaternion{e[0].get<double>(), e[1].get<double>(),
                           e[2].get<double>(), e[3].get<double>()};
    }
  }
  return m;
}

struct ProblemFile {
  std::string kind;
  std::map<std::string, QMatrix> matrices;
  std::optional<EtaAxis> eta;
  std::optional<double> tol;

  const QMatrix& at(const std::string& name) const {
    auto it = matrices.find(name);
    if (it == matrices.end())
      throw ValidationError("kind " + kind + " requires matrix " + name);
    return it->second;
  }
};

inline const std::vector<std::string>& matrix_names(const std::string& kind) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"main", {"A1", "B1", "A2", "B2", "A3", "B3", "A4", "B4", "B"}},
      {"four-term", {"A1", "B1", "C3", "D3", "C4", "D4", "E1"}},
      {"three-term", {"A1", "B1", "A2", "B2", "A3", "B3", "B"}},
      {"pair", {"A11", "B11", "C1", "A22", "B22", "C2"}},
      {"axyb", {"A1", "B1", "C1"}},
      {"eta", {"A1", "A2", "A3", "A4", "B"}},
  };
  auto it = table.find(kind);
  if (it == table.end())
    throw ParseError("unknown equation kind \"" + kind + "\"");
  return it->second;
}

inline const std::vector<std::string>& unknown_names(const std::string& kind) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"main", {"X1", "X2", "Y1", "Y2", "Y3"}},
      {"four-term", {"X1", "X2", "X3", "X4"}},
      {"three-term", {"Y1", "Y2", "Y3"}},
      {"pair", {"X"}},
      {"axyb", {"X", "Y"}},
      {"eta", {"X1", "Y1", "Y2", "Y3"}},
  };
  return table.at(kind);
}

inline MainInstance to_main_instance(const ProblemFile& p) {
  MainInstance inst;
  inst.A1 = p.at("A1");
  inst.B1 = p.at("B1");
  inst.A2 = p.at("A2");
  inst.B2 = p.at("B2");
  inst.A3 = p.at("A3");
  inst.B3 = p.at("B3");
  inst.A4 = p.at("A4");
  inst.B4 = p.at("B4");
  inst.B = p.at("B");
  return inst;
}

// Three-term files name their coefficients A1..B3; padding widens them to the
// five-term layout with an empty leading pair.
inline MainInstance to_padded_three_term(const ProblemFile& p) {
  return make_three_term_instance(p.at("A1"), p.at("B1"), p.at("A2"),
                                  p.at("B2"), p.at("A3"), p.at("B3"),
                                  p.at("B"));
}

inline EtaInstance to_eta_instance(const ProblemFile& p) {
  EtaInstance inst;
  inst.A1 = p.at("A1");
  inst.A2 = p.at("A2");
  inst.A3 = p.at("A3");
  inst.A4 = p.at("A4");
  inst.B = p.at("B");
  if (!p.eta) throw ValidationError("kind eta requires an eta axis");
  inst.eta = *p.eta;
  return inst;
}

inline PairSystem to_pair_system(const ProblemFile& p) {
  PairSystem sys;
  sys.A11 = p.at("A11");
  sys.B11 = p.at("B11");
  sys.C1 = p.at("C1");
  sys.A22 = p.at("A22");
  sys.B22 = p.at("B22");
  sys.C2 = p.at("C2");
  return sys;
}

inline void validate_problem(const ProblemFile& p) {
  for (const std::string& name : matrix_names(p.kind)) p.at(name);
  try {
    if (p.kind == "main") {
      to_main_instance(p).validate();
    } else if (p.kind == "three-term") {
      to_padded_three_term(p).validate();
    } else if (p.kind == "eta") {
      to_eta_instance(p).validate();
    } else if (p.kind == "pair") {
      to_pair_system(p).validate();
    } else if (p.kind == "four-term") {
      const QMatrix &E1 = p.at("E1"), &A1 = p.at("A1"), &B1 = p.at("B1");
      if (A1.rows() != E1.rows() || B1.cols() != E1.cols() ||
          p.at("C3").rows() != E1.rows() || p.at("C4").rows() != E1.rows() ||
          p.at("D3").cols() != E1.cols() || p.at("D4").cols() != E1.cols())
        throw DimensionMismatch("coefficients must frame E1");
    } else if (p.kind == "axyb") {
      const QMatrix& C1 = p.at("C1");
      if (p.at("A1").rows() != C1.rows() || p.at("B1").cols() != C1.cols())
        throw DimensionMismatch("C1 must be A1.rows x B1.cols");
    }
  } catch (const DimensionMismatch& e) {
    throw ValidationError(std::string("kind ") + p.kind + ": " + e.what());
  }
}

inline ProblemFile problem_from_json(const json& j, const std::string& locus) {
  if (!j.is_object()) throw ParseError(locus + ": expected an object");
  if (!j.contains("format") || !j["format"].is_number_integer() ||
      j["format"].get<int>() != kFormatVersion)
    throw ParseError(locus + ": format must be the integer " +
                     std::to_string(kFormatVersion));
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError(locus + ": missing kind");
  ProblemFile p;
  p.kind = j["kind"].get<std::string>();
  try {
    matrix_names(p.kind);  // rejects unknown kinds
  } catch (const ParseError& e) {
    throw ParseError(locus + ": " + e.what());
  }
  if (!j.contains("matrices") || !j["matrices"].is_object())
    throw ParseError(locus + ": missing matrices object");
  for (const auto& [name, jm] : j["matrices"].items())
    p.matrices.emplace(name,
                       matrix_from_json(jm, locus + ": matrix " + name));
  if (j.contains("eta")) {
    if (!j["eta"].is_string()) throw ParseError(locus + ": eta must be a string");
    p.eta = parse_eta(j["eta"].get<std::string>());
  }
  if (j.contains("tol")) {
    if (!j["tol"].is_number()) throw ParseError(locus + ": tol must be a number");
    p.tol = j["tol"].get<double>();
  }
  try {
    validate_problem(p);
  } catch (const ValidationError& e) {
    throw ValidationError(locus + ": " + e.what());
  }
  return p;
}

inline json slurp_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline ProblemFile parse_problem(const std::string& path) {
  return problem_from_json(slurp_json(path), path);
}

inline json problem_to_json(const ProblemFile& p) {
  json j{{"format", kFormatVersion}, {"kind", p.kind}};
  json mats = json::object();
  for (const auto& [name, m] : p.matrices) mats[name] = matrix_to_json(m);
  j["matrices"] = std::move(mats);
  if (p.eta) j["eta"] = std::string(1, eta_name(*p.eta));
  if (p.tol) j["tol"] = *p.tol;
  return j;
}

inline void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError(path + ": cannot write");
  out << j.dump(2) << "\n";
}

inline void write_problem(const ProblemFile& p, const std::string& path) {
  write_json(problem_to_json(p), path);
}

struct SolutionFile {
  std::string problem_kind;
  std::string branch = "f1";
  std::string params = "zero";
  std::uint64_t seed = 0;
  double residual = 0.0;
  std::map<std::string, QMatrix> matrices;
};

inline json solution_to_json(const SolutionFile& s) {
  json j{{"format", kFormatVersion}, {"kind", "solution"},
         {"problem_kind", s.problem_kind}, {"branch", s.branch},
         {"params", s.params}, {"seed", s.seed}, {"residual", s.residual}};
  json mats = json::object();
  for (const auto& [name, m] : s.matrices) mats[name] = matrix_to_json(m);
  j["matrices"] = std::move(mats);
  return j;
}

inline SolutionFile solution_from_json(const json& j,
                                       const std::string& locus) {
  if (!j.is_object() || !j.contains("kind") || j["kind"] != "solution")
    throw ParseError(locus + ": expected a solution file");
  if (!j.contains("format") || j["format"] != kFormatVersion)
    throw ParseError(locus + ": format must be the integer " +
                     std::to_string(kFormatVersion));
  SolutionFile s;
  if (!j.contains("problem_kind") || !j["problem_kind"].is_string())
    throw ParseError(locus + ": missing problem_kind");
  s.problem_kind = j["problem_kind"].get<std::string>();
  matrix_names(s.problem_kind);
  if (j.contains("branch")) s.branch = j["branch"].get<std::string>();
  if (j.contains("params")) s.params = j["params"].get<std::string>();
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("residual")) s.residual = j["residual"].get<double>();
  if (!j.contains("matrices") || !j["matrices"].is_object())
    throw ParseError(locus + ": missing matrices object");
  for (const auto& [name, jm] : j["matrices"].items())
    s.matrices.emplace(name,
                       matrix_from_json(jm, locus + ": matrix " + name));
  for (const std::string& name : unknown_names(s.problem_kind))
    if (!s.matrices.count(name))
      throw ValidationError(locus + ": solution for " + s.problem_kind +
                            " requires matrix " + name);
  return s;
}

inline SolutionFile parse_solution(const std::string& path) {
  return solution_from_json(slurp_json(path), path);
}

inline void write_solution(const SolutionFile& s, const std::string& path) {
  write_json(solution_to_json(s), path);
}

inline std::string witness_path(const std::string& output_path) {
  const std::string suffix = ".json";
  if (output_path.size() > suffix.size() &&
      output_path.compare(output_path.size() - suffix.size(), suffix.size(),
                          suffix) == 0)
    return output_path.substr(0, output_path.size() - suffix.size()) +
           ".witness.json";
  return output_path + ".witness.json";
}

inline const char* report_status(const ConditionReport& r) {
  if (r.indeterminate) return "indeterminate";
  return r.holds ? "holds" : "fails";
}

inline void print_condition_table(std::ostream& os,
                                  const std::vector<ConditionReport>& reports) {
  for (const ConditionReport& r : reports) {
    os << std::left << std::setw(8) << r.name;
    if (r.rank_form) {
      os << " rank      lhs=" << r.lhs_rank << " rhs=" << r.rhs_rank;
    } else {
      std::ostringstream num;
      num << std::scientific << std::setprecision(6) << r.residual;
      std::ostringstream tol;
      tol << std::scientific << std::setprecision(1) << r.tol;
      os << " projector residual=" << num.str() << " tol=" << tol.str();
    }
    os << "  " << report_status(r) << "\n";
  }
}

inline int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return kExitConsistent;
    case Verdict::Inconsistent: return kExitInconsistent;
    default: return kExitIndeterminate;
  }
}

inline double effective_tol(const ProblemFile& p, double tol_flag) {
  if (tol_flag >= 0) return tol_flag;
  return p.tol ? *p.tol : -1.0;
}

inline int run_check(const ProblemFile& p, std::ostream& os,
                     double tol_flag = -1.0) {
  const double tol = effective_tol(p, tol_flag);
  Verdict verdict = Verdict::Indeterminate;
  if (p.kind == "main" || p.kind == "three-term") {
    const MainInstance inst = p.kind == "main" ? to_main_instance(p)
                                               : to_padded_three_term(p);
    const std::vector<ConditionReport> ranks = check_rank_conditions(inst);
    const MainDerived d = derive_main_quantities(inst);
    const std::vector<ConditionReport> projs = check_projector_conditions(
        d, tol < 0 ? projector_tol(inst.input_scale()) : tol);
    print_condition_table(os, ranks);
    print_condition_table(os, projs);
    verdict = combine_verdicts(aggregate(ranks), aggregate(projs));
  } else if (p.kind == "eta") {
    const EtaInstance inst = to_eta_instance(p);
    try {
      const std::vector<ConditionReport> reports =
          check_eta_rank_conditions(inst, tol);
      print_condition_table(os, reports);
      verdict = aggregate(reports);
    } catch (const NotEtaHermitian&) {
      os << "right-hand side is not eta-Hermitian\n";
      verdict = Verdict::Inconsistent;
    }
  } else if (p.kind == "pair") {
    const std::vector<ConditionReport> reports =
        check_pair_conditions(to_pair_system(p), tol);
    print_condition_table(os, reports);
    verdict = aggregate(reports, "2-");
  } else if (p.kind == "four-term") {
    FourTermSolution s =
        solve_four_term(p.at("A1"), p.at("B1"), p.at("C3"), p.at("D3"),
                        p.at("C4"), p.at("D4"), p.at("E1"), tol);
    print_condition_table(os, s.conditions);
    verdict = s.verdict;
  } else {
    AxybSolution s = solve_axyb(p.at("A1"), p.at("B1"), p.at("C1"), tol);
    ConditionReport gate;
    gate.name = "gate";
    gate.residual = s.gate;
    gate.tol = s.tol;
    gate.holds = s.consistent;
    print_condition_table(os, {gate});
    verdict = s.consistent ? Verdict::Consistent : Verdict::Inconsistent;
  }
  os << "verdict: " << verdict_name(verdict) << "\n";
  return verdict_exit(verdict);
}

namespace detail {

inline QMatrix draw_free(std::uint64_t seed, int slot, int rows, int cols) {
  SplitMix64 g = split_stream(seed, static_cast<std::uint64_t>(slot));
  return random_matrix(rows, cols, g, 1.0);
}

}  // namespace detail

// Solves the problem and, unless it is inconsistent, writes the solution file.
inline int run_solve(const ProblemFile& p, const std::string& params_mode,
                     std::uint64_t seed, Branch branch,
                     const std::string& out_path, std::ostream& os,
                     double tol_flag = -1.0) {
  if (params_mode != "zero" && params_mode != "random")
    throw ParseError("params mode must be zero or random, got \"" +
                     params_mode + "\"");
  const bool random = params_mode == "random";
  const double tol = effective_tol(p, tol_flag);

  SolutionFile sol;
  sol.problem_kind = p.kind;
  sol.branch = branch_name(branch);
  sol.params = params_mode;
  sol.seed = seed;
  Verdict verdict = Verdict::Indeterminate;

  if (p.kind == "main") {
    const MainInstance inst = to_main_instance(p);
    const FreeParameterShapes shapes = free_parameter_shapes(inst);
    const FreeParameters u = random ? FreeParameters::random(shapes, seed)
                                    : FreeParameters::zero(shapes);
    MainResult r = solve_main(inst, u, branch, tol);
    verdict = r.report.verdict;
    sol.residual = r.report.residual;
    sol.matrices = {{"X1", r.solution.X1}, {"X2", r.solution.X2},
                    {"Y1", r.solution.Y1}, {"Y2", r.solution.Y2},
                    {"Y3", r.solution.Y3}};
  } else if (p.kind == "three-term") {
    const MainInstance inst = to_padded_three_term(p);
    const FreeParameterShapes shapes = free_parameter_shapes(inst);
    const FreeParameters u = random ? FreeParameters::random(shapes, seed)
                                    : FreeParameters::zero(shapes);
    ThreeTermSolution r =
        solve_three_term(p.at("A1"), p.at("B1"), p.at("A2"), p.at("B2"),
                         p.at("A3"), p.at("B3"), p.at("B"), u, branch, tol);
    verdict = r.report.verdict;
    sol.residual = r.report.residual;
    sol.matrices = {{"Y1", r.Y1}, {"Y2", r.Y2}, {"Y3", r.Y3}};
  } else if (p.kind == "eta") {
    const EtaInstance inst = to_eta_instance(p);
    const FreeParameterShapes shapes =
        free_parameter_shapes(make_eta_auxiliary(inst));
    const FreeParameters u = random ? FreeParameters::random(shapes, seed)
                                    : FreeParameters::zero(shapes);
    try {
      EtaResult r = solve_eta(inst, u, branch, tol);
      verdict = r.verdict;
      sol.residual = r.residual;
      sol.matrices = {{"X1", r.solution.X1}, {"Y1", r.solution.Y1},
                      {"Y2", r.solution.Y2}, {"Y3", r.solution.Y3}};
    } catch (const NotEtaHermitian&) {
      os << "right-hand side is not eta-Hermitian\n";
      os << "verdict: inconsistent\n";
      return kExitInconsistent;
    }
  } else if (p.kind == "four-term") {
    const FourTermShapes shapes =
        four_term_shapes(p.at("A1"), p.at("B1"), p.at("C3"), p.at("D3"),
                         p.at("C4"), p.at("D4"));
    const FourTermParams t = random ? FourTermParams::random(shapes, seed)
                                    : FourTermParams::zero(shapes);
    FourTermSolution r =
        solve_four_term(p.at("A1"), p.at("B1"), p.at("C3"), p.at("D3"),
                        p.at("C4"), p.at("D4"), p.at("E1"), t, tol);
    verdict = r.verdict;
    sol.residual = fnorm(p.at("A1") * r.X1 + r.X2 * p.at("B1") +
                         p.at("C3") * r.X3 * p.at("D3") +
                         p.at("C4") * r.X4 * p.at("D4") - p.at("E1"));
    sol.matrices = {{"X1", r.X1}, {"X2", r.X2}, {"X3", r.X3}, {"X4", r.X4}};
  } else if (p.kind == "pair") {
    const PairSystem sys = to_pair_system(p);
    const int m = sys.A11.cols(), n = sys.B11.rows();
    const QMatrix z(m, n);
    PairSolution r = random
                         ? solve_pair_system(sys, detail::draw_free(seed, 20, m, n),
                                             detail::draw_free(seed, 21, m, n),
                                             detail::draw_free(seed, 22, m, n), tol)
                         : solve_pair_system(sys, z, z, z, tol);
    verdict = r.verdict;
    const double r1 = fnorm(sys.A11 * r.X * sys.B11 - sys.C1);
    const double r2 = fnorm(sys.A22 * r.X * sys.B22 - sys.C2);
    sol.residual = std::hypot(r1, r2);
    sol.matrices = {{"X", r.X}};
  } else {
    const QMatrix &A1 = p.at("A1"), &B1 = p.at("B1"), &C1 = p.at("C1");
    AxybSolution r =
        random ? solve_axyb(A1, B1, C1,
                            detail::draw_free(seed, 20, A1.rows(), B1.rows()),
                            detail::draw_free(seed, 21, A1.cols(), C1.cols()),
                            detail::draw_free(seed, 22, A1.rows(), B1.rows()),
                            tol)
               : solve_axyb(A1, B1, C1, tol);
    verdict = r.consistent ? Verdict::Consistent : Verdict::Inconsistent;
    sol.residual = fnorm(A1 * r.X + r.Y * B1 - C1);
    sol.matrices = {{"X", r.X}, {"Y", r.Y}};
  }

  os << "verdict: " << verdict_name(verdict) << "\n";
  if (verdict == Verdict::Inconsistent) return kExitInconsistent;
  std::ostringstream num;
  num << std::scientific << std::setprecision(6) << sol.residual;
  os << "residual: " << num.str() << "\n";
  write_solution(sol, out_path);
  os << "solution written: " << out_path << "\n";
  return verdict_exit(verdict);
}

// Recomputes the residual of a stored solution against the problem.
inline int run_verify(const ProblemFile& p, const SolutionFile& s,
                      std::ostream& os, double tol_flag = -1.0) {
  if (s.problem_kind != p.kind)
    throw ValidationError("solution is for kind " + s.problem_kind +
                          ", problem is kind " + p.kind);
  auto sat = [&](const std::string& name) -> const QMatrix& {
    auto it = s.matrices.find(name);
    if (it == s.matrices.end())
      throw ValidationError("solution requires matrix " + name);
    return it->second;
  };
  double res = 0.0;
  double rhs_scale = 0.0;
  try {
    if (p.kind == "main") {
      MainInstance inst = to_main_instance(p);
      MainSolution sol;
      sol.X1 = sat("X1");
      sol.X2 = sat("X2");
      sol.Y1 = sat("Y1");
      sol.Y2 = sat("Y2");
      sol.Y3 = sat("Y3");
      res = residual(inst, sol);
      rhs_scale = fnorm(inst.B);
    } else if (p.kind == "three-term") {
      res = fnorm(p.at("A1") * sat("Y1") * p.at("B1") +
                  p.at("A2") * sat("Y2") * p.at("B2") +
                  p.at("A3") * sat("Y3") * p.at("B3") - p.at("B"));
      rhs_scale = fnorm(p.at("B"));
    } else if (p.kind == "eta") {
      EtaInstance inst = to_eta_instance(p);
      EtaSolution sol;
      sol.X1 = sat("X1");
      sol.Y1 = sat("Y1");
      sol.Y2 = sat("Y2");
      sol.Y3 = sat("Y3");
      res = eta_residual(inst, sol);
      rhs_scale = fnorm(inst.B);
    } else if (p.kind == "four-term") {
      res = fnorm(p.at("A1") * sat("X1") + sat("X2") * p.at("B1") +
                  p.at("C3") * sat("X3") * p.at("D3") +
                  p.at("C4") * sat("X4") * p.at("D4") - p.at("E1"));
      rhs_scale = fnorm(p.at("E1"));
    } else if (p.kind == "pair") {
      const PairSystem sys = to_pair_system(p);
      const QMatrix& X = sat("X");
      res = std::hypot(fnorm(sys.A11 * X * sys.B11 - sys.C1),
                       fnorm(sys.A22 * X * sys.B22 - sys.C2));
      rhs_scale = std::max(fnorm(sys.C1), fnorm(sys.C2));
    } else {
      res = fnorm(p.at("A1") * sat("X") + sat("Y") * p.at("B1") - p.at("C1"));
      rhs_scale = fnorm(p.at("C1"));
    }
  } catch (const DimensionMismatch& e) {
    throw ValidationError(std::string("solution shapes do not fit: ") +
                          e.what());
  }
  const double tol = tol_flag >= 0
                         ? tol_flag
                         : (p.tol ? *p.tol : 1e-8 * (1.0 + rhs_scale));
  std::ostringstream num;
  num << std::scientific << std::setprecision(6) << res;
  os << "residual: " << num.str() << "\n";
  if (res <= tol) {
    os << "verified\n";
    return kExitConsistent;
  }
  std::ostringstream lim;
  lim << std::scientific << std::setprecision(1) << tol;
  os << "verification failed: residual above tol " << lim.str() << "\n";
  return kExitInconsistent;
}

inline int run_verify(const ProblemFile& p, const std::string& solution_path,
                      std::ostream& os, double tol_flag = -1.0) {
  return run_verify(p, parse_solution(solution_path), os, tol_flag);
}

struct GenOptions {
  std::string kind = "consistent";  // consistent | inconsistent | eta
  GenSpec spec;
  std::string output;
};

inline int run_gen(const GenOptions& opt, std::ostream& os) {
  if (opt.kind == "consistent") {
    GenResult g = gen_consistent(opt.spec);
    ProblemFile p;
    p.kind = "main";
    p.matrices = {{"A1", g.inst.A1}, {"B1", g.inst.B1}, {"A2", g.inst.A2},
                  {"B2", g.inst.B2}, {"A3", g.inst.A3}, {"B3", g.inst.B3},
                  {"A4", g.inst.A4}, {"B4", g.inst.B4}, {"B", g.inst.B}};
    write_problem(p, opt.output);
    os << "problem written: " << opt.output << "\n";
    SolutionFile w;
    w.problem_kind = "main";
    w.params = "witness";
    w.seed = opt.spec.seed;
    w.residual = residual(g.inst, g.witness);
    w.matrices = {{"X1", g.witness.X1}, {"X2", g.witness.X2},
                  {"Y1", g.witness.Y1}, {"Y2", g.witness.Y2},
                  {"Y3", g.witness.Y3}};
    const std::string wp = witness_path(opt.output);
    write_solution(w, wp);
    os << "witness written: " << wp << "\n";
    return kExitConsistent;
  }
  if (opt.kind == "eta") {
    EtaGenResult g = gen_eta_consistent(opt.spec);
    ProblemFile p;
    p.kind = "eta";
    p.eta = opt.spec.eta;
    p.matrices = {{"A1", g.inst.A1}, {"A2", g.inst.A2}, {"A3", g.inst.A3},
                  {"A4", g.inst.A4}, {"B", g.inst.B}};
    write_problem(p, opt.output);
    os << "problem written: " << opt.output << "\n";
    SolutionFile w;
    w.problem_kind = "eta";
    w.params = "witness";
    w.seed = opt.spec.seed;
    w.residual = eta_residual(g.inst, g.witness);
    w.matrices = {{"X1", g.witness.X1}, {"Y1", g.witness.Y1},
                  {"Y2", g.witness.Y2}, {"Y3", g.witness.Y3}};
    const std::string wp = witness_path(opt.output);
    write_solution(w, wp);
    os << "witness written: " << wp << "\n";
    return kExitConsistent;
  }
  if (opt.kind != "inconsistent")
    throw ParseError("gen kind must be consistent, inconsistent or eta, got \"" +
                     opt.kind + "\"");
  try {
    MainInstance inst = gen_inconsistent(opt.spec);
    ProblemFile p;
    p.kind = "main";
    p.matrices = {{"A1", inst.A1}, {"B1", inst.B1}, {"A2", inst.A2},
                  {"B2", inst.B2}, {"A3", inst.A3}, {"B3", inst.B3},
                  {"A4", inst.A4}, {"B4", inst.B4}, {"B", inst.B}};
    write_problem(p, opt.output);
    os << "problem written: " << opt.output << "\n";
    return kExitConsistent;
  } catch (const GenerationFailed& e) {
    os << e.what() << "\n";
    return kExitGenerationFailed;
  }
}

}  // namespace quatsylv::cli

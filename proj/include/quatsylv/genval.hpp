#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "quatsylv/equation.hpp"

namespace quatsylv {

// Shape and sampling plan for one generated instance. Coefficient matrices
// draw from split_stream(seed, slot) with slots A1=0, B1=1, A2=2, B2=3, A3=4,
// B3=5, A4=6, B4=7; witness unknowns use X1=8, X2=9, Y1=10, Y2=11, Y3=12.
// rank_deficit > 0 drops every coefficient's rank that far below full.
struct GenSpec {
  int p = 2, q = 2;
  int a = 2, b = 2, c = 2, d = 2, e = 2, f = 2, m = 2, n = 2;
  std::uint64_t seed = 0;
  double entry_scale = 1.0;
  int rank_deficit = 0;
  EtaAxis eta = EtaAxis::I;
};

namespace detail {

inline QMatrix draw_coefficient(const GenSpec& spec, int slot, int rows,
                                int cols) {
  SplitMix64 g = split_stream(spec.seed, static_cast<std::uint64_t>(slot));
  if (spec.rank_deficit > 0) {
    int r = std::max(0, std::min(rows, cols) - spec.rank_deficit);
    return random_rank_matrix(rows, cols, r, g, spec.entry_scale);
  }
  return random_matrix(rows, cols, g, spec.entry_scale);
}

inline QMatrix draw_unknown(const GenSpec& spec, int slot, int rows, int cols) {
  SplitMix64 g = split_stream(spec.seed, static_cast<std::uint64_t>(slot));
  return random_matrix(rows, cols, g, spec.entry_scale);
}

}  // namespace detail

struct GenResult {
  MainInstance inst;
  MainSolution witness;
};

inline GenResult gen_consistent(const GenSpec& spec) {
  GenResult out;
  MainInstance& inst = out.inst;
  inst.A1 = detail::draw_coefficient(spec, 0, spec.p, spec.a);
  inst.B1 = detail::draw_coefficient(spec, 1, spec.b, spec.q);
  inst.A2 = detail::draw_coefficient(spec, 2, spec.p, spec.c);
  inst.B2 = detail::draw_coefficient(spec, 3, spec.d, spec.q);
  inst.A3 = detail::draw_coefficient(spec, 4, spec.p, spec.e);
  inst.B3 = detail::draw_coefficient(spec, 5, spec.f, spec.q);
  inst.A4 = detail::draw_coefficient(spec, 6, spec.p, spec.m);
  inst.B4 = detail::draw_coefficient(spec, 7, spec.n, spec.q);
  MainSolution& w = out.witness;
  w.X1 = detail::draw_unknown(spec, 8, spec.a, spec.q);
  w.X2 = detail::draw_unknown(spec, 9, spec.p, spec.b);
  w.Y1 = detail::draw_unknown(spec, 10, spec.c, spec.d);
  w.Y2 = detail::draw_unknown(spec, 11, spec.e, spec.f);
  w.Y3 = detail::draw_unknown(spec, 12, spec.m, spec.n);
  inst.B = main_lhs(inst, w);
  return out;
}

struct EtaGenResult {
  EtaInstance inst;
  EtaSolution witness;
};

inline EtaGenResult gen_eta_consistent(const GenSpec& spec) {
  EtaGenResult out;
  EtaInstance& inst = out.inst;
  inst.eta = spec.eta;
  inst.A1 = detail::draw_coefficient(spec, 0, spec.p, spec.a);
  inst.A2 = detail::draw_coefficient(spec, 2, spec.p, spec.c);
  inst.A3 = detail::draw_coefficient(spec, 4, spec.p, spec.e);
  inst.A4 = detail::draw_coefficient(spec, 6, spec.p, spec.m);
  EtaSolution& w = out.witness;
  w.X1 = detail::draw_unknown(spec, 8, spec.a, spec.p);
  auto hermitian_draw = [&](int slot, int dim) {
    QMatrix z = detail::draw_unknown(spec, slot, dim, dim);
    return (z + eta_conj_transpose(z, spec.eta)) * 0.5;
  };
  w.Y1 = hermitian_draw(10, spec.c);
  w.Y2 = hermitian_draw(11, spec.e);
  w.Y3 = hermitian_draw(12, spec.m);
  inst.B = eta_lhs(inst, w);
  return out;
}

namespace detail {

// Real coordinates of a quaternion matrix: row-major entries, w,x,y,z each.
inline std::vector<double> vec4(const QMatrix& a) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(a.rows()) * a.cols() * 4);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Quaternion& e = a(i, j);
      v.push_back(e.w);
      v.push_back(e.x);
      v.push_back(e.y);
      v.push_back(e.z);
    }
  return v;
}

inline QMatrix unvec4(const std::vector<double>& v, int rows, int cols) {
  QMatrix a(rows, cols);
  std::size_t t = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      a(i, j) = Quaternion(v[t], v[t + 1], v[t + 2], v[t + 3]);
      t += 4;
    }
  return a;
}

// Columns are the vec4 images of every real basis direction of every unknown.
inline ComplexMatrix range_map(const MainInstance& inst) {
  const int p = inst.p(), q = inst.q();
  const int rows = 4 * p * q;
  std::vector<std::vector<double>> cols;
  auto push_images = [&](int ur, int uc, auto&& image) {
    static const Quaternion units[4] = {{1, 0, 0, 0}, {0, 1, 0, 0},
                                        {0, 0, 1, 0}, {0, 0, 0, 1}};
    QMatrix basis(ur, uc);
    for (int i = 0; i < ur; ++i)
      for (int j = 0; j < uc; ++j)
        for (const Quaternion& u : units) {
          basis(i, j) = u;
          cols.push_back(vec4(image(basis)));
          basis(i, j) = Quaternion{};
        }
  };
  push_images(inst.a(), q, [&](const QMatrix& x) { return inst.A1 * x; });
  push_images(p, inst.b(), [&](const QMatrix& x) { return x * inst.B1; });
  push_images(inst.c(), inst.d(),
              [&](const QMatrix& x) { return inst.A2 * x * inst.B2; });
  push_images(inst.e(), inst.f(),
              [&](const QMatrix& x) { return inst.A3 * x * inst.B3; });
  push_images(inst.m(), inst.n(),
              [&](const QMatrix& x) { return inst.A4 * x * inst.B4; });
  ComplexMatrix phi(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < phi.cols(); ++j)
    for (int i = 0; i < rows; ++i) phi(i, j) = cols[j][i];
  return phi;
}

}  // namespace detail

// Consistent draw plus a right-hand side component outside the attainable
// range. Perturbation directions come from split_stream(seed, 16 + attempt).
inline MainInstance gen_inconsistent(const GenSpec& spec) {
  GenResult base = gen_consistent(spec);
  MainInstance inst = base.inst;

  const ComplexMatrix phi = detail::range_map(inst);
  SvdResult svd = complex_svd(phi);
  const double smax = svd.S.empty() ? 0.0 : svd.S[0];
  const double cutoff = 2.0 * std::max(phi.rows(), phi.cols()) *
                        std::numeric_limits<double>::epsilon() * smax;
  int rank = 0;
  for (double s : svd.S)
    if (s > cutoff) ++rank;

  const int dim = 4 * spec.p * spec.q;
  for (int attempt = 0; attempt < 16; ++attempt) {
    SplitMix64 g = split_stream(spec.seed, 16 + attempt);
    QMatrix dir = random_matrix(spec.p, spec.q, g, 1.0);
    std::vector<double> v = detail::vec4(dir);

    // v - U_r (U_r^H v)
    std::vector<std::complex<double>> coef(rank);
    for (int k = 0; k < rank; ++k) {
      std::complex<double> s{};
      for (int i = 0; i < dim; ++i) s += std::conj(svd.U(i, k)) * v[i];
      coef[k] = s;
    }
    std::vector<double> perp(dim);
    double norm_perp = 0.0, norm_v = 0.0;
    for (int i = 0; i < dim; ++i) {
      std::complex<double> proj{};
      for (int k = 0; k < rank; ++k) proj += svd.U(i, k) * coef[k];
      perp[i] = v[i] - proj.real();
      norm_perp += perp[i] * perp[i];
      norm_v += v[i] * v[i];
    }
    norm_perp = std::sqrt(norm_perp);
    norm_v = std::sqrt(norm_v);
    if (norm_perp <= 1e-8 * std::max(1.0, norm_v)) continue;

    QMatrix bump = detail::unvec4(perp, spec.p, spec.q);
    inst.B = inst.B + bump * (spec.entry_scale / maxabs(bump));
    return inst;
  }
  throw GenerationFailed(
      "gen_inconsistent: every right-hand side is attainable for these shapes");
}

}  // namespace quatsylv

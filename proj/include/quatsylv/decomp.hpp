#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "quatsylv/qmatrix.hpp"

namespace quatsylv {

struct SvdResult {
  ComplexMatrix U;        // m x min(m,n), orthonormal columns
  std::vector<double> S;  // min(m,n) values, descending
  ComplexMatrix V;        // n x min(m,n), orthonormal columns
};

namespace detail {

using CVec = std::vector<std::complex<double>>;

inline std::complex<double> cdot(const CVec& a, const CVec& b) {
  std::complex<double> s{};
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double csq(const CVec& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

inline void rotate_pair(CVec& u, CVec& v, double c, double s,
                        std::complex<double> phase) {
  const std::complex<double> pc = std::conj(phase);
  for (size_t i = 0; i < u.size(); ++i) {
    const std::complex<double> ui = u[i], vi = v[i];
    u[i] = c * ui - s * pc * vi;
    v[i] = s * phase * ui + c * vi;
  }
}

// One-sided Jacobi orthogonalization of the columns. Rotations optionally
// accumulate into vcols. Returns false when the sweep cap runs out before a
// clean pass.
inline bool jacobi_sweeps(std::vector<CVec>& cols, std::vector<CVec>* vcols,
                          long max_sweeps) {
  const int n = static_cast<int>(cols.size());
  if (n <= 1) return true;
  const double off_tol = 1e-13;
  for (long sweep = 0; sweep < max_sweeps; ++sweep) {
    // columns whose squared norm underflows are rotation dust; flush them so
    // the skip test can retire their pairs
    for (auto& col : cols) {
      if (csq(col) < std::numeric_limits<double>::min())
        std::fill(col.begin(), col.end(), std::complex<double>(0.0));
    }
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double alpha = csq(cols[p]);
        const double beta = csq(cols[q]);
        const std::complex<double> gamma = cdot(cols[p], cols[q]);
        const double ag = std::abs(gamma);
        if (ag <= off_tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const std::complex<double> phase = gamma / ag;
        const double tau = (beta - alpha) / (2.0 * ag);
        // hypot keeps t nonzero for huge tau; sqrt(1 + tau * tau) would
        // overflow and stall the sweep on a no-op rotation
        const double t =
            (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1 + t * t);
        const double s = c * t;
        rotate_pair(cols[p], cols[q], c, s, phase);
        if (vcols) rotate_pair((*vcols)[p], (*vcols)[q], c, s, phase);
      }
    }
    if (!rotated) return true;
  }
  return false;
}

inline std::vector<CVec> matrix_columns(const ComplexMatrix& m) {
  std::vector<CVec> cols(m.cols(), CVec(m.rows()));
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows(); ++r) cols[c][r] = m(r, c);
  return cols;
}

inline std::vector<int> descending_order(const std::vector<double>& s) {
  std::vector<int> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return s[a] > s[b]; });
  return order;
}

}  // namespace detail

// Thin SVD of a complex matrix by one-sided Jacobi. The sweep cap defaults to
// 100 * max(rows, cols); exceeding it raises ConvergenceFailure.
inline SvdResult complex_svd(const ComplexMatrix& m, long max_sweeps = -1) {
  if (m.cols() > m.rows()) {
    SvdResult r = complex_svd(cconj_transpose(m), max_sweeps);
    return {std::move(r.V), std::move(r.S), std::move(r.U)};
  }
  const int rows = m.rows(), n = m.cols();
  if (max_sweeps < 0) max_sweeps = 100L * std::max(rows, std::max(n, 1));

  std::vector<detail::CVec> cols = detail::matrix_columns(m);
  std::vector<detail::CVec> vcols(n, detail::CVec(n));
  for (int j = 0; j < n; ++j) vcols[j][j] = 1.0;

  if (!detail::jacobi_sweeps(cols, &vcols, max_sweeps))
    throw ConvergenceFailure("complex_svd: sweep cap exceeded");

  std::vector<double> sig(n);
  for (int j = 0; j < n; ++j) sig[j] = std::sqrt(detail::csq(cols[j]));
  const std::vector<int> order = detail::descending_order(sig);

  SvdResult out;
  out.U = ComplexMatrix(rows, n);
  out.V = ComplexMatrix(n, n);
  out.S.resize(n);
  std::vector<detail::CVec> placed;
  placed.reserve(n);
  for (int jj = 0; jj < n; ++jj) {
    const int j = order[jj];
    out.S[jj] = sig[j];
    for (int r = 0; r < n; ++r) out.V(r, jj) = vcols[j][r];
    detail::CVec u;
    if (sig[j] > 0.0) {
      u = cols[j];
      for (auto& v : u) v /= sig[j];
    } else {
      // Orthonormal completion for an exactly zero column.
      for (int t = 0; t < rows; ++t) {
        detail::CVec cand(rows);
        cand[t] = 1.0;
        for (const auto& p : placed) {
          const std::complex<double> proj = detail::cdot(p, cand);
          for (int r = 0; r < rows; ++r) cand[r] -= proj * p[r];
        }
        const double rem = detail::csq(cand);
        if (rem > 0.25) {
          const double inv = 1.0 / std::sqrt(rem);
          for (auto& v : cand) v *= inv;
          u = std::move(cand);
          break;
        }
      }
    }
    for (int r = 0; r < rows; ++r) out.U(r, jj) = u[r];
    placed.push_back(std::move(u));
  }
  return out;
}

// Singular values only, skipping vector accumulation.
inline std::vector<double> complex_singular_values(const ComplexMatrix& m,
                                                   long max_sweeps = -1) {
  const bool wide = m.cols() > m.rows();
  ComplexMatrix tall = wide ? cconj_transpose(m) : m;
  if (max_sweeps < 0)
    max_sweeps = 100L * std::max(m.rows(), std::max(m.cols(), 1));
  std::vector<detail::CVec> cols = detail::matrix_columns(tall);
  if (!detail::jacobi_sweeps(cols, nullptr, max_sweeps))
    throw ConvergenceFailure("complex_singular_values: sweep cap exceeded");
  std::vector<double> sig(cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    sig[j] = std::sqrt(detail::csq(cols[j]));
  std::sort(sig.begin(), sig.end(), std::greater<>());
  return sig;
}

// Collapses the doubled spectrum of an embedded matrix into quaternion
// singular values. Adjacent sorted values must agree within 1e-6 * sigma_max,
// otherwise the input did not carry the embedding structure.
inline std::vector<double> pair_singular_values(const std::vector<double>& s) {
  if (s.size() % 2 != 0)
    throw StructureViolation("pair_singular_values: odd count");
  std::vector<double> out(s.size() / 2);
  const double smax = s.empty() ? 0.0 : s[0];
  for (size_t i = 0; i < out.size(); ++i) {
    const double a = s[2 * i], b = s[2 * i + 1];
    if (a - b > 1e-6 * smax)
      throw StructureViolation(
          "pair_singular_values: unpaired value in embedded spectrum");
    out[i] = 0.5 * (a + b);
  }
  return out;
}

inline std::vector<double> quaternion_singular_values(const QMatrix& a) {
  return pair_singular_values(complex_singular_values(embed_complex(a)));
}

inline double rank_cutoff(const QMatrix& a, double smax) {
  return 2.0 * std::max(a.rows(), a.cols()) *
         std::numeric_limits<double>::epsilon() * smax;
}

struct RankInfo {
  int rank = 0;
  // True when some singular value lands in [tol_used, 10 * tol_used): the
  // count clears the cutoff by less than a decade.
  bool fragile = false;
  double tol_used = 0.0;
  std::vector<double> singular_values;
};

inline RankInfo rank_with_margin(const QMatrix& a, double tol = -1.0) {
  RankInfo info;
  info.singular_values = quaternion_singular_values(a);
  const double smax =
      info.singular_values.empty() ? 0.0 : info.singular_values[0];
  info.tol_used = tol >= 0 ? tol : rank_cutoff(a, smax);
  for (double s : info.singular_values) {
    if (s > info.tol_used) {
      ++info.rank;
      if (s < 10.0 * info.tol_used) info.fragile = true;
    }
  }
  return info;
}

inline int qrank(const QMatrix& a, double tol = -1.0) {
  return rank_with_margin(a, tol).rank;
}

struct PseudoinverseResult {
  QMatrix pinv;
  int rank = 0;
  std::vector<double> singular_values;
  double tol_used = 0.0;
};

// Moore-Penrose pseudoinverse through the complex embedding. Negative tol
// selects the spectral cutoff max(2m, 2n) * eps * sigma_max.
inline PseudoinverseResult pinv(const QMatrix& a, double tol = -1.0) {
  const SvdResult svd = complex_svd(embed_complex(a));
  PseudoinverseResult out;
  out.singular_values = pair_singular_values(svd.S);
  const double smax =
      out.singular_values.empty() ? 0.0 : out.singular_values[0];
  out.tol_used = tol >= 0 ? tol : rank_cutoff(a, smax);
  for (double s : out.singular_values)
    if (s > out.tol_used) ++out.rank;

  const int er = svd.U.rows(), ec = svd.V.rows();
  ComplexMatrix mp(ec, er);
  for (int t = 0; t < 2 * out.rank; ++t) {
    const double inv = 1.0 / svd.S[t];
    for (int r = 0; r < ec; ++r) {
      const std::complex<double> vr = svd.V(r, t) * inv;
      if (vr == std::complex<double>{}) continue;
      for (int c = 0; c < er; ++c) mp(r, c) += vr * std::conj(svd.U(c, t));
    }
  }
  // Average the two embedded copies instead of extract_from_complex: the
  // averaging is an exact projection onto the block-conjugate pattern, and
  // conjugating by [[0,I],[-I,0]] commutes with the embedded matrix, so the
  // Penrose residuals survive it. A strict pattern check would reject kept
  // singular values near the noise floor, whose doubled copies carry
  // unrelated rounding-level vectors.
  const int pr = ec / 2, pc = er / 2;
  out.pinv = QMatrix(pr, pc);
  for (int r = 0; r < pr; ++r) {
    for (int c = 0; c < pc; ++c) {
      const std::complex<double> a1 =
          0.5 * (mp(r, c) + std::conj(mp(pr + r, pc + c)));
      const std::complex<double> a2 =
          0.5 * (mp(r, pc + c) - std::conj(mp(pr + r, c)));
      out.pinv(r, c) = Quaternion{a1.real(), a1.imag(), a2.real(), a2.imag()};
    }
  }
  return out;
}

struct Projectors {
  QMatrix L;  // I - pinv(A) * A
  QMatrix R;  // I - A * pinv(A)
};

// Flushes rounding dust so exact-zero projectors compare clean.
inline QMatrix flush_small(QMatrix p, double floor_scale = 1.0) {
  const double thr = 1e-13 * std::max(floor_scale, maxabs(p));
  for (int r = 0; r < p.rows(); ++r)
    for (int c = 0; c < p.cols(); ++c)
      if (norm(p(r, c)) < thr) p(r, c) = Quaternion{};
  return p;
}

inline Projectors projectors_from(const QMatrix& a, const QMatrix& ap) {
  return {flush_small(QMatrix::identity(a.cols()) - ap * a),
          flush_small(QMatrix::identity(a.rows()) - a * ap)};
}

inline Projectors projectors(const QMatrix& a, double tol = -1.0) {
  return projectors_from(a, pinv(a, tol).pinv);
}

// Pseudoinverse and both projectors of one matrix, bundled for reuse.
struct Factored {
  QMatrix mat;
  QMatrix pinv;
  QMatrix L;
  QMatrix R;
  int rank = 0;
};

inline Factored factor(QMatrix a, double tol = -1.0) {
  PseudoinverseResult p = pinv(a, tol);
  Projectors pr = projectors_from(a, p.pinv);
  return {std::move(a), std::move(p.pinv), std::move(pr.L), std::move(pr.R),
          p.rank};
}

}  // namespace quatsylv

#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "quatsylv/quaternion.hpp"

namespace quatsylv {

// Dense quaternion matrix, row-major. Zero rows or columns are legal and all
// operations follow the block algebra on such shapes.
class QMatrix {
 public:
  QMatrix() = default;

  QMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
      throw DimensionMismatch("QMatrix: negative dimension");
    data_.assign(static_cast<size_t>(rows) * cols, Quaternion{});
  }

  static QMatrix zero(int rows, int cols) { return QMatrix(rows, cols); }

  static QMatrix identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Quaternion::real(1.0);
    return m;
  }

  static QMatrix from_rows(
      std::initializer_list<std::initializer_list<Quaternion>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    QMatrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c)
        throw DimensionMismatch("from_rows: ragged rows");
      int j = 0;
      for (const auto& q : row) m(i, j++) = q;
      ++i;
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Quaternion& operator()(int r, int c) {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  const Quaternion& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  bool operator==(const QMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Quaternion> data_;
};

inline void require_same_shape(const QMatrix& a, const QMatrix& b,
                               const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(who) + ": shape mismatch");
}

inline QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b, "operator+");
  QMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

inline QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b, "operator-");
  QMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

inline QMatrix operator-(const QMatrix& a) {
  QMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = -a(r, c);
  return out;
}

inline QMatrix operator*(const QMatrix& a, double s) {
  QMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) * s;
  return out;
}

inline QMatrix operator*(double s, const QMatrix& a) { return a * s; }

inline QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner mismatch");
  QMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = 0; k < a.cols(); ++k) {
      const Quaternion& arc = a(r, k);
      if (arc == Quaternion{}) continue;
      for (int c = 0; c < b.cols(); ++c) out(r, c) += arc * b(k, c);
    }
  }
  return out;
}

inline QMatrix matmul(const QMatrix& a, const QMatrix& b) { return a * b; }

inline QMatrix conj_transpose(const QMatrix& a) {
  QMatrix out(a.cols(), a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(c, r) = qconj(a(r, c));
  return out;
}

// A^{eta*}: entrywise eta conjugation combined with transposition.
inline QMatrix eta_conj_transpose(const QMatrix& a, EtaAxis eta) {
  QMatrix out(a.cols(), a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(c, r) = eta_conj(a(r, c), eta);
  return out;
}

// A^{eta}: entrywise -eta * entry * eta, no transposition.
inline QMatrix eta_similar(const QMatrix& a, EtaAxis eta) {
  QMatrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = eta_similar(a(r, c), eta);
  return out;
}

inline double maxabs(const QMatrix& a) {
  double m = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m = std::max(m, norm(a(r, c)));
  return m;
}

inline double fnorm(const QMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) s += norm_sq(a(r, c));
  return std::sqrt(s);
}

inline bool all_finite(const QMatrix& a) {
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (!is_finite(a(r, c))) return false;
  return true;
}

inline bool is_eta_hermitian(const QMatrix& a, EtaAxis eta, double tol = 0.0) {
  if (a.rows() != a.cols())
    throw DimensionMismatch("is_eta_hermitian: matrix not square");
  double dev = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      dev = std::max(dev, norm(a(r, c) - eta_conj(a(c, r), eta)));
  return dev <= tol;
}

inline QMatrix hcat(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hcat: row mismatch");
  QMatrix out(a.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (int c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

inline QMatrix vcat(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vcat: column mismatch");
  QMatrix out(a.rows() + b.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

// Assembles a block matrix. Absent cells stand for zero blocks; their shapes
// are inferred from present blocks in the same row and column, so every row
// needs at least one present block and so does every column.
inline QMatrix block(
    const std::vector<std::vector<std::optional<QMatrix>>>& grid) {
  const int br = static_cast<int>(grid.size());
  if (br == 0) return QMatrix();
  const int bc = static_cast<int>(grid[0].size());
  for (const auto& row : grid)
    if (static_cast<int>(row.size()) != bc)
      throw DimensionMismatch("block: ragged grid");

  std::vector<int> heights(br, -1), widths(bc, -1);
  for (int i = 0; i < br; ++i) {
    for (int j = 0; j < bc; ++j) {
      if (!grid[i][j]) continue;
      const QMatrix& m = *grid[i][j];
      if (heights[i] < 0) heights[i] = m.rows();
      else if (heights[i] != m.rows())
        throw DimensionMismatch("block: inconsistent row heights");
      if (widths[j] < 0) widths[j] = m.cols();
      else if (widths[j] != m.cols())
        throw DimensionMismatch("block: inconsistent column widths");
    }
  }
  for (int i = 0; i < br; ++i)
    if (heights[i] < 0) throw DimensionMismatch("block: row of only zeros");
  for (int j = 0; j < bc; ++j)
    if (widths[j] < 0) throw DimensionMismatch("block: column of only zeros");

  int total_r = 0, total_c = 0;
  for (int h : heights) total_r += h;
  for (int w : widths) total_c += w;
  QMatrix out(total_r, total_c);
  int r0 = 0;
  for (int i = 0; i < br; ++i) {
    int c0 = 0;
    for (int j = 0; j < bc; ++j) {
      if (grid[i][j]) {
        const QMatrix& m = *grid[i][j];
        for (int r = 0; r < m.rows(); ++r)
          for (int c = 0; c < m.cols(); ++c) out(r0 + r, c0 + c) = m(r, c);
      }
      c0 += widths[j];
    }
    r0 += heights[i];
  }
  return out;
}

inline QMatrix submatrix(const QMatrix& a, int r0, int c0, int nr, int nc) {
  if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > a.rows() ||
      c0 + nc > a.cols())
    throw DimensionMismatch("submatrix: range out of bounds");
  QMatrix out(nr, nc);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) out(r, c) = a(r0 + r, c0 + c);
  return out;
}

// Dense complex matrix, row-major; the embedding target for QMatrix.
class ComplexMatrix {
 public:
  using value_type = std::complex<double>;

  ComplexMatrix() = default;

  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
      throw DimensionMismatch("ComplexMatrix: negative dimension");
    data_.assign(static_cast<size_t>(rows) * cols, value_type{});
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  value_type& operator()(int r, int c) {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  const value_type& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<value_type> data_;
};

inline ComplexMatrix cmatmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("cmatmul: inner mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      const std::complex<double> ark = a(r, k);
      if (ark == std::complex<double>{}) continue;
      for (int c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

inline ComplexMatrix cconj_transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

inline double cmaxabs(const ComplexMatrix& a) {
  double m = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

// Writes A = A1 + A2*j with complex A1, A2 into the 2m x 2n block matrix
// [[A1, A2], [-conj(A2), conj(A1)]]. The map is an injective ring
// homomorphism and sends conjugate transposition to Hermitian transposition.
inline ComplexMatrix embed_complex(const QMatrix& a) {
  const int m = a.rows(), n = a.cols();
  ComplexMatrix out(2 * m, 2 * n);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      const Quaternion& q = a(r, c);
      const std::complex<double> a1(q.w, q.x);
      const std::complex<double> a2(q.y, q.z);
      out(r, c) = a1;
      out(r, n + c) = a2;
      out(m + r, c) = -std::conj(a2);
      out(m + r, n + c) = std::conj(a1);
    }
  }
  return out;
}

// Inverse of embed_complex up to rounding: averages the two copies of each
// block and rejects input whose halves disagree beyond tol_rel * scale.
// Callers with a known operator norm pass it as scale; otherwise the largest
// entry modulus is used.
inline QMatrix extract_from_complex(const ComplexMatrix& m,
                                    double tol_rel = 1e-8,
                                    double scale = -1.0) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0)
    throw DimensionMismatch("extract_from_complex: odd dimensions");
  const int mr = m.rows() / 2, mc = m.cols() / 2;
  if (scale < 0) scale = cmaxabs(m);
  double dev = 0.0;
  QMatrix out(mr, mc);
  for (int r = 0; r < mr; ++r) {
    for (int c = 0; c < mc; ++c) {
      const std::complex<double> p = m(r, c);
      const std::complex<double> q = m(r, mc + c);
      const std::complex<double> rr = m(mr + r, c);
      const std::complex<double> s = m(mr + r, mc + c);
      dev = std::max(dev, std::abs(p - std::conj(s)));
      dev = std::max(dev, std::abs(q + std::conj(rr)));
      const std::complex<double> a1 = 0.5 * (p + std::conj(s));
      const std::complex<double> a2 = 0.5 * (q - std::conj(rr));
      out(r, c) = Quaternion{a1.real(), a1.imag(), a2.real(), a2.imag()};
    }
  }
  if (dev > tol_rel * scale)
    throw StructureViolation(
        "extract_from_complex: block-conjugate pattern violated, deviation " +
        std::to_string(dev));
  return out;
}

}  // namespace quatsylv

#pragma once

#include <cstdint>

#include "quatsylv/qmatrix.hpp"

namespace quatsylv {

// SplitMix64: portable, stateless-seedable 64-bit generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-scale, scale]
  double next_symmetric(double scale) { return (2.0 * next_double() - 1.0) * scale; }

 private:
  std::uint64_t state_;
};

// Stream k over a master seed is seeded with the (k+1)-th output of a
// SplitMix64 run on the master seed. Streams for distinct k never share state.
inline SplitMix64 split_stream(std::uint64_t seed, std::uint64_t slot) {
  SplitMix64 master(seed);
  std::uint64_t s = master.next();
  for (std::uint64_t k = 0; k < slot; ++k) s = master.next();
  return SplitMix64(s);
}

// Entries are drawn row-major, components in w, x, y, z order.
inline QMatrix random_matrix(std::size_t rows, std::size_t cols, SplitMix64& gen,
                             double scale = 1.0) {
  QMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      double w = gen.next_symmetric(scale);
      double x = gen.next_symmetric(scale);
      double y = gen.next_symmetric(scale);
      double z = gen.next_symmetric(scale);
      a(i, j) = Quaternion(w, x, y, z);
    }
  return a;
}

// Matrix with rank at most `rank`, built as a product of two full draws.
inline QMatrix random_rank_matrix(std::size_t rows, std::size_t cols, std::size_t rank,
                                  SplitMix64& gen, double scale = 1.0) {
  if (rank >= rows || rank >= cols) return random_matrix(rows, cols, gen, scale);
  QMatrix left = random_matrix(rows, rank, gen, scale);
  QMatrix right = random_matrix(rank, cols, gen, scale);
  return left * right;
}

}  // namespace quatsylv

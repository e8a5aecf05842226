#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zapmmv/dense_matrix.hpp"

namespace zapmmv {

/// A generated instance. snr_db is absent for noiseless problems.
struct MmvProblem {
  DenseMatrix a;       // M x N sensing matrix
  DenseMatrix y;       // M x L measurements
  DenseMatrix x_true;  // N x L ground truth, exactly K nonzero rows
  std::vector<std::size_t> support_true;  // sorted row indices, size K
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
};

/// Deterministic stream: std::mt19937_64 under the hood. uniform01 takes the
/// top 53 bits; normal pairs come from the Box-Muller transform with the
/// second variate cached. The algorithm is fixed so seeds reproduce across
/// platforms and releases.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Draw order is fixed: A entries row-major, then the support (partial
/// Fisher-Yates), then nonzero X rows in ascending support order, then the
/// noise block when snr_db is present. Noise is scaled so the realized SNR
/// hits snr_db exactly for the drawn sample.
MmvProblem generate(std::size_t n, std::size_t m, std::size_t l, std::size_t k,
                    std::optional<double> snr_db, std::uint64_t seed);

/// Writes <stem>_a.txt, <stem>_y.txt, <stem>_x.txt in the matrix file format
/// plus <stem>_meta.txt with key=value lines for n,m,l,k,snr,seed.
void export_problem(const MmvProblem& problem, const std::filesystem::path& directory,
                    const std::string& stem);

}  // namespace zapmmv

#include "zapmmv/problem_gen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "zapmmv/errors.hpp"
#include "zapmmv/matrix_io.hpp"

namespace zapmmv {

double SeededRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // u1 is shifted into (0, 1] so the logarithm stays finite.
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

MmvProblem generate(std::size_t n, std::size_t m, std::size_t l, std::size_t k,
                    std::optional<double> snr_db, std::uint64_t seed) {
  if (n == 0 || m == 0 || l == 0) {
    throw ValueError("generate: n, m, l must be positive");
  }
  if (m >= n) {
    throw ValueError("generate: need m < n, got m=" + std::to_string(m) +
                     " n=" + std::to_string(n));
  }
  if (k > n) {
    throw ValueError("generate: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  }
  if (snr_db) {
    if (!std::isfinite(*snr_db)) {
      throw ValueError("generate: snr_db must be finite");
    }
    if (k == 0) {
      throw ValueError("generate: SNR undefined for zero signal (k=0 with snr_db)");
    }
  }

  SeededRng rng(seed);

  DenseMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = rng.normal();
    }
  }

  // Partial Fisher-Yates: the first k slots are a uniform size-k subset.
  std::vector<std::size_t> indices(n);
  for (std::size_t i = 0; i < n; ++i) indices[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng.uniform01() * static_cast<double>(n - i));
    std::swap(indices[i], indices[j]);
  }
  std::vector<std::size_t> support(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(support.begin(), support.end());

  DenseMatrix x(n, l);
  for (const std::size_t row : support) {
    for (std::size_t j = 0; j < l; ++j) {
      x(row, j) = rng.normal();
    }
  }

  DenseMatrix y = matmul(a, x);
  if (snr_db) {
    DenseMatrix noise(m, l);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < l; ++j) {
        noise(i, j) = rng.normal();
      }
    }
    const double signal_norm = y.frobenius_norm();
    const double noise_norm = noise.frobenius_norm();
    if (signal_norm == 0.0 || noise_norm == 0.0) {
      throw ValueError("generate: degenerate signal or noise draw, SNR scaling impossible");
    }
    // ||AX||_F / ||cV||_F = 10^(snr/20) exactly for this draw.
    const double factor = signal_norm / (noise_norm * std::pow(10.0, *snr_db / 20.0));
    y = add(y, scale(noise, factor));
  }

  return MmvProblem{std::move(a), std::move(y), std::move(x),
                    std::move(support), snr_db, seed};
}

void export_problem(const MmvProblem& problem, const std::filesystem::path& directory,
                    const std::string& stem) {
  write_matrix(problem.a, directory / (stem + "_a.txt"));
  write_matrix(problem.y, directory / (stem + "_y.txt"));
  write_matrix(problem.x_true, directory / (stem + "_x.txt"));

  std::ofstream meta(directory / (stem + "_meta.txt"), std::ios::binary);
  if (!meta) {
    throw IoError("cannot open metadata file for writing in " + directory.string());
  }
  meta << "n=" << problem.a.cols() << '\n';
  meta << "m=" << problem.a.rows() << '\n';
  meta << "l=" << problem.y.cols() << '\n';
  meta << "k=" << problem.support_true.size() << '\n';
  meta << "snr=" << (problem.snr_db ? format_full(*problem.snr_db) : "noiseless") << '\n';
  meta << "seed=" << problem.seed << '\n';
  if (!meta) {
    throw IoError("metadata write failed in " + directory.string());
  }
}

}  // namespace zapmmv

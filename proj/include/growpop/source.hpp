#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace growpop {

using Rng = std::mt19937_64;

enum class SourceKind { IsotropicGaussian, UniformBox, TwoPoint };

/// Distribution of incoming opinions X_k: mean m, and variance sigma2 taken
/// as the trace of the covariance, E|X - m|^2.
///
///  - IsotropicGaussian: covariance (sigma2 / d) I
///  - UniformBox: independent uniform coordinates on m_i +- sqrt(3 sigma2 / d)
///  - TwoPoint: m +- u with equal probability, u = sqrt(sigma2 / d) (1, ..., 1)
class OpinionSource {
 public:
  OpinionSource(SourceKind kind, std::vector<double> mean, double sigma2);

  SourceKind kind() const noexcept { return kind_; }
  const std::vector<double>& mean() const noexcept { return mean_; }
  double sigma2() const noexcept { return sigma2_; }
  std::size_t dim() const noexcept { return mean_.size(); }

  std::vector<double> sample(Rng& rng) const;

 private:
  SourceKind kind_;
  std::vector<double> mean_;
  double sigma2_;
};

std::vector<double> sample_incoming(const OpinionSource& source, Rng& rng);

/// Seed for replica `run_index` of an ensemble. Built from two applications of
/// the SplitMix64 finalizer, a bijection on 64-bit words, so distinct run
/// indices (fixed master) and distinct masters (fixed index) never collide.
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept;

}  // namespace growpop

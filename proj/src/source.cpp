#include "growpop/source.hpp"

#include <cmath>

#include "growpop/error.hpp"

namespace growpop {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

OpinionSource::OpinionSource(SourceKind kind, std::vector<double> mean, double sigma2)
    : kind_(kind), mean_(std::move(mean)), sigma2_(sigma2) {
  if (mean_.empty()) throw DomainError("source mean must have dimension >= 1");
  for (double v : mean_) {
    if (!std::isfinite(v)) throw DomainError("source mean must be finite");
  }
  if (!(sigma2_ >= 0.0) || !std::isfinite(sigma2_)) throw DomainError("source variance must be finite and >= 0");
}

std::vector<double> OpinionSource::sample(Rng& rng) const {
  const std::size_t d = mean_.size();
  const double per_coord = sigma2_ / static_cast<double>(d);
  std::vector<double> x(mean_);
  if (per_coord == 0.0) return x;
  switch (kind_) {
    case SourceKind::IsotropicGaussian: {
      std::normal_distribution<double> normal(0.0, std::sqrt(per_coord));
      for (auto& v : x) v += normal(rng);
      break;
    }
    case SourceKind::UniformBox: {
      const double half = std::sqrt(3.0 * per_coord);
      std::uniform_real_distribution<double> uniform(-half, half);
      for (auto& v : x) v += uniform(rng);
      break;
    }
    case SourceKind::TwoPoint: {
      const double sign = (rng() >> 63) ? 1.0 : -1.0;
      const double step = sign * std::sqrt(per_coord);
      for (auto& v : x) v += step;
      break;
    }
  }
  return x;
}

std::vector<double> sample_incoming(const OpinionSource& source, Rng& rng) { return source.sample(rng); }

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept {
  return splitmix_finalize(splitmix_finalize(master_seed) + (run_index + 1) * kGolden);
}

}  // namespace growpop

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "growpop/dynamics.hpp"
#include "growpop/kernel.hpp"

namespace growpop {

/// Population averages at one instant.
///  m1: mean opinion, m2: mean squared norm,
///  v:  variance about m1 (the variance functional),
///  w:  mean square distance to the target m,
///  dissipation: -(1/N^2) sum_ij psi(|x_j - x_i|) |x_j - x_i|^2 = dm2/dt.
struct MomentRecord {
  double t = 0.0;
  std::int64_t n = 0;
  std::vector<double> m1;
  double m2 = 0.0;
  double v = 0.0;
  double w = 0.0;
  double dissipation = 0.0;
};

enum class Event { Record, PreJump, PostJump };

const char* event_name(Event e) noexcept;

struct SeriesEntry {
  Event event;
  std::int64_t k;  // injections applied when the sample was taken
  MomentRecord record;
};

struct InjectionPair {
  std::int64_t k;
  std::vector<double> x_new;
  MomentRecord before;
  MomentRecord after;
};

/// Chronological samples of one trajectory. Grid samples (Event::Record) have
/// strictly increasing times; every injection contributes a PreJump/PostJump
/// pair at t_k together with the sampled X_k.
class MomentSeries {
 public:
  explicit MomentSeries(std::size_t dim = 1) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<SeriesEntry>& entries() const noexcept { return entries_; }
  std::int64_t injections() const noexcept { return static_cast<std::int64_t>(injected_.size()); }

  /// Grid samples only.
  std::vector<MomentRecord> records() const;

  /// k in 1..injections()
  InjectionPair injection(std::int64_t k) const;

  void add_record(MomentRecord r);
  void add_injection(MomentRecord before, std::vector<double> x_new, MomentRecord after);

  /// Appends an already-built entry (CSV reader); does not track injections.
  void add_entry(SeriesEntry e) { entries_.push_back(std::move(e)); }

 private:
  std::size_t dim_;
  std::vector<SeriesEntry> entries_;
  std::vector<std::vector<double>> injected_;
  std::vector<std::size_t> pre_index_;
};

/// Moments of `state` against the target mean m. Constant kernels take the
/// dissipation from the identity D = -2 c V; other kernels sum all pairs.
MomentRecord compute_moments(const SimState& state, const Kernel& kernel, std::span<const double> m);

/// O(N^2) dissipation for any kernel.
double dissipation_pairwise(const SimState& state, const Kernel& kernel);

/// v = m2 - |m1|^2 and w = v + |m1 - m|^2, each to `tol` relative to the
/// natural scale of the record.
bool check_record_identities(const MomentRecord& r, std::span<const double> m, double tol = 1e-10);

struct JumpPrediction {
  std::vector<double> dm1;
  double dm2;
  double dv;
};

/// Exact jumps of m1, m2 and V when X_k = x_new enters a population of
/// n0 + k - 1 agents described by `record_minus`.
JumpPrediction predict_jumps(const MomentRecord& record_minus, std::span<const double> x_new, std::int64_t k,
                             std::int64_t n0);

/// m1 on [t_k, t_{k+1}): (sum x0 + sum X_j) / (N0 + k).
std::vector<double> m1_closed_form(const std::vector<std::vector<double>>& x0,
                                   const std::vector<std::vector<double>>& xs);

struct M1Expectations {
  double e_dev;    // E|m1 - m|^2 = (A + k sigma2) / (N0 + k)^2
  double e_norm2;  // E|m1|^2 = (B + k sigma2 + 2kC + k^2 |m|^2) / (N0 + k)^2
  double a;        // |sum (x0_j - m)|^2
  double b;        // |sum x0_j|^2
  double c;        // sum x0_j . m
};

M1Expectations expected_m1_deviation(std::int64_t n0, std::int64_t k, const std::vector<std::vector<double>>& x0,
                                     std::span<const double> m, double sigma2);

/// c_k = (k + 2 N0)(k - 1) / (N0 + k)^2, the coefficient of sigma2 in the
/// expected variance jump.
double jump_coefficient(std::int64_t k, std::int64_t n0);

}  // namespace growpop

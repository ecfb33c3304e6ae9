#include "growpop/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "growpop/error.hpp"
#include "growpop/numeric.hpp"

namespace growpop {

const char* event_name(Event e) noexcept {
  switch (e) {
    case Event::Record:
      return "record";
    case Event::PreJump:
      return "pre_jump";
    case Event::PostJump:
      return "post_jump";
  }
  return "record";
}

std::vector<MomentRecord> MomentSeries::records() const {
  std::vector<MomentRecord> out;
  for (const auto& e : entries_) {
    if (e.event == Event::Record) out.push_back(e.record);
  }
  return out;
}

InjectionPair MomentSeries::injection(std::int64_t k) const {
  if (k < 1 || k > injections()) throw RangeError("injection index " + std::to_string(k) + " out of range");
  const auto idx = pre_index_[static_cast<std::size_t>(k - 1)];
  return InjectionPair{k, injected_[static_cast<std::size_t>(k - 1)], entries_[idx].record,
                       entries_[idx + 1].record};
}

void MomentSeries::add_record(MomentRecord r) {
  const std::int64_t k = injections();
  entries_.push_back(SeriesEntry{Event::Record, k, std::move(r)});
}

void MomentSeries::add_injection(MomentRecord before, std::vector<double> x_new, MomentRecord after) {
  const std::int64_t k = injections() + 1;
  pre_index_.push_back(entries_.size());
  entries_.push_back(SeriesEntry{Event::PreJump, k - 1, std::move(before)});
  entries_.push_back(SeriesEntry{Event::PostJump, k, std::move(after)});
  injected_.push_back(std::move(x_new));
}

double dissipation_pairwise(const SimState& state, const Kernel& kernel) {
  const std::size_t n = state.population();
  CompensatedSum total;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double r2 = squared_distance(state.opinion(i), state.opinion(j));
      row += kernel.from_squared(r2) * r2;
    }
    total += row;
  }
  const double nn = static_cast<double>(n);
  return -total.value() / (nn * nn);
}

MomentRecord compute_moments(const SimState& state, const Kernel& kernel, std::span<const double> m) {
  const std::size_t n = state.population();
  const std::size_t d = state.dim;
  if (n == 0) throw DomainError("moments of an empty population");
  if (m.size() != d) throw DomainError("target mean has the wrong dimension");
  const double nn = static_cast<double>(n);

  MomentRecord r;
  r.t = state.t;
  r.n = static_cast<std::int64_t>(n);
  r.m1.assign(d, 0.0);

  // Mean of the offsets from agent 0: identical opinions give m1 = x_0 and
  // V = 0 exactly, and clustered opinions lose less to cancellation.
  const auto x0 = state.opinion(0);
  std::vector<CompensatedSum> first(d);
  CompensatedSum second;
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = state.opinion(i);
    for (std::size_t c = 0; c < d; ++c) first[c] += xi[c] - x0[c];
    second += squared_norm(xi);
  }
  for (std::size_t c = 0; c < d; ++c) r.m1[c] = x0[c] + first[c].value() / nn;
  r.m2 = second.value() / nn;

  CompensatedSum var, msq;
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = state.opinion(i);
    var += squared_distance(xi, r.m1);
    msq += squared_distance(xi, m);
  }
  r.v = var.value() / nn;
  r.w = msq.value() / nn;
  r.dissipation = kernel.is_constant() ? -2.0 * kernel.psi_star() * r.v : dissipation_pairwise(state, kernel);
  return r;
}

bool check_record_identities(const MomentRecord& r, std::span<const double> m, double tol) {
  const double m1sq = squared_norm(r.m1);
  const double bias = squared_distance(r.m1, m);
  const double scale = std::max({1.0, r.m2, squared_norm(m)});
  const bool variance_ok = std::abs(r.v - (r.m2 - m1sq)) <= tol * scale;
  const bool decomposition_ok = std::abs(r.w - (r.v + bias)) <= tol * scale;
  return variance_ok && decomposition_ok && r.v >= 0.0 && r.w >= 0.0 && r.dissipation <= 0.0;
}

JumpPrediction predict_jumps(const MomentRecord& record_minus, std::span<const double> x_new, std::int64_t k,
                             std::int64_t n0) {
  if (k < 1) throw DomainError("jump index k must be >= 1");
  if (x_new.size() != record_minus.m1.size()) throw DomainError("injected opinion has the wrong dimension");
  const double n = static_cast<double>(n0 + k);
  const std::size_t d = x_new.size();

  JumpPrediction out;
  out.dm1.resize(d);
  std::vector<double> m1_plus(d);
  for (std::size_t c = 0; c < d; ++c) {
    out.dm1[c] = (x_new[c] - record_minus.m1[c]) / n;
    m1_plus[c] = record_minus.m1[c] + out.dm1[c];
  }
  out.dm2 = (squared_norm(x_new) - record_minus.m2) / n;
  out.dv = squared_distance(x_new, m1_plus) / n + (n - 1.0) * squared_distance(x_new, record_minus.m1) / (n * n * n) -
           record_minus.v / n;
  return out;
}

std::vector<double> m1_closed_form(const std::vector<std::vector<double>>& x0,
                                   const std::vector<std::vector<double>>& xs) {
  if (x0.empty()) throw DomainError("closed-form mean needs at least one initial opinion");
  const std::size_t d = x0.front().size();
  std::vector<CompensatedSum> sum(d);
  auto accumulate = [&](const std::vector<std::vector<double>>& pts) {
    for (const auto& p : pts) {
      if (p.size() != d) throw DomainError("opinion vectors have inconsistent dimensions");
      for (std::size_t c = 0; c < d; ++c) sum[c] += p[c];
    }
  };
  accumulate(x0);
  accumulate(xs);
  const double n = static_cast<double>(x0.size() + xs.size());
  std::vector<double> out(d);
  for (std::size_t c = 0; c < d; ++c) out[c] = sum[c].value() / n;
  return out;
}

M1Expectations expected_m1_deviation(std::int64_t n0, std::int64_t k, const std::vector<std::vector<double>>& x0,
                                     std::span<const double> m, double sigma2) {
  if (static_cast<std::int64_t>(x0.size()) != n0) throw DomainError("n0 does not match the number of initial opinions");
  if (k < 0) throw DomainError("k must be >= 0");
  if (!(sigma2 >= 0.0)) throw DomainError("sigma2 must be >= 0");
  const std::size_t d = m.size();
  std::vector<double> total(d, 0.0);
  for (const auto& p : x0) {
    if (p.size() != d) throw DomainError("initial opinion has the wrong dimension");
    for (std::size_t c = 0; c < d; ++c) total[c] += p[c];
  }
  std::vector<double> centered(d);
  for (std::size_t c = 0; c < d; ++c) centered[c] = total[c] - static_cast<double>(n0) * m[c];

  M1Expectations e{};
  e.a = squared_norm(centered);
  e.b = squared_norm(total);
  e.c = dot(total, m);
  const double kk = static_cast<double>(k);
  const double denom = static_cast<double>(n0 + k) * static_cast<double>(n0 + k);
  e.e_dev = (e.a + kk * sigma2) / denom;
  e.e_norm2 = (e.b + kk * sigma2 + 2.0 * kk * e.c + kk * kk * squared_norm(m)) / denom;
  return e;
}

double jump_coefficient(std::int64_t k, std::int64_t n0) {
  if (k < 1) throw DomainError("jump index k must be >= 1");
  if (n0 < 1) throw DomainError("n0 must be >= 1");
  const double kk = static_cast<double>(k);
  const double n = static_cast<double>(n0);
  return (kk + 2.0 * n) * (kk - 1.0) / ((n + kk) * (n + kk));
}

}  // namespace growpop

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ucw/errors.hpp"
#include "ucw/rng.hpp"

namespace ucw {

using Index = std::uint64_t;

/// Hard cap on sequence indices a campaign will touch; bounds that exceed it
/// are reported as capped and searches that would pass it come back
/// inconclusive instead of failing.
inline constexpr Index kIndexCap = Index{1} << 24;

/// A counter function g: N -> N, total on the tested domain.
struct CounterFn {
  std::string name;
  std::function<Index(Index)> g;
  Index operator()(Index n) const { return g(n); }
};

/// n -> n + g(n), saturating at `cap`.
template <class G>
inline Index tilde_apply(G&& g, Index n, Index cap = std::numeric_limits<Index>::max()) {
  const Index gn = g(n);
  return (gn > cap - n) ? cap : n + gn;
}

/// Incremental running maximum g^M(n) = max_{i <= n} g(i). Nondecreasing
/// query sequences are O(delta); a backwards query rescans from zero.
class RunningMax {
 public:
  explicit RunningMax(std::function<Index(Index)> g) : g_(std::move(g)) {}

  Index operator()(Index n) const {
    if (!started_ || n < scanned_to_) {
      cur_ = g_(0);
      scanned_to_ = 0;
      started_ = true;
    }
    while (scanned_to_ < n) {
      ++scanned_to_;
      cur_ = std::max(cur_, g_(scanned_to_));
    }
    return cur_;
  }

 private:
  std::function<Index(Index)> g_;
  mutable bool started_ = false;
  mutable Index scanned_to_ = 0;
  mutable Index cur_ = 0;
};

struct BoundValue {
  Index value = 0;
  bool capped = false;
};

/// `count`-fold application of n -> n + g(n) starting from n0, with early
/// exit at fixed points (g(n) = 0 keeps n forever) and saturation at
/// value_cap. `count` may be astronomically large; the loop is bounded by
/// value_cap - n0 because every non-exiting step advances by at least 1.
template <class G>
inline BoundValue iterate_tilde(G&& g, double count, Index n0, Index value_cap = kIndexCap) {
  if (!(count >= 0.0)) throw UsageError("iterate_tilde: negative iteration count");
  BoundValue b{n0, false};
  for (double i = 0.0; i < count; i += 1.0) {
    const Index gn = g(b.value);
    if (gn == 0) return b;
    if (gn > value_cap - b.value) {
      b.value = value_cap;
      b.capped = true;
      return b;
    }
    b.value += gn;
    if (b.value >= value_cap) {
      b.value = value_cap;
      b.capped = true;
      return b;
    }
  }
  return b;
}

/// A lazily memoized real sequence in [0, bound], optionally carrying an
/// error sequence (delta_n) with its partial-sum tail modulus gamma_tail and
/// total bound B (the quasi-monotone data of the summable-error results).
class RealSeq {
 public:
  RealSeq(std::string descriptor, double bound, std::function<double(Index)> eval)
      : descriptor_(std::move(descriptor)), bound_(bound), eval_(std::move(eval)) {
    if (!(bound_ >= 0.0)) throw UsageError("RealSeq: bound must be nonnegative");
  }

  void set_error_seq(std::function<double(Index)> delta, std::function<Index(double)> gamma_tail,
                     double B) {
    delta_ = std::move(delta);
    gamma_tail_ = std::move(gamma_tail);
    B_ = B;
  }

  const std::string& descriptor() const { return descriptor_; }
  double bound() const { return bound_; }
  bool has_error_seq() const { return static_cast<bool>(delta_); }
  double delta(Index n) const { return delta_(n); }
  Index gamma_tail(double eps) const { return gamma_tail_(eps); }
  double total_error_bound() const { return B_; }

  double at(Index n) const {
    if (n >= kIndexCap) throw SolverError("RealSeq: index cap exceeded", static_cast<double>(n));
    while (cache_.size() <= n) cache_.push_back(eval_(cache_.size()));
    return cache_[n];
  }

  Index visited() const { return cache_.size(); }

  /// Checks 0 <= a_n <= b and a_{n+1} <= a_n (+ delta_n) on the visited
  /// prefix; returns an error description or empty string.
  std::string validate_prefix(double slack = 1e-12) const {
    for (Index n = 0; n < cache_.size(); ++n) {
      if (cache_[n] < -slack || cache_[n] > bound_ + slack)
        return "a_" + std::to_string(n) + " outside [0, b]";
      if (n + 1 < cache_.size()) {
        const double allowed = has_error_seq() ? delta_(n) : 0.0;
        if (cache_[n + 1] > cache_[n] + allowed + slack)
          return "a_" + std::to_string(n + 1) + " > a_" + std::to_string(n) +
                 (has_error_seq() ? " + delta" : "") + " (monotonicity violation)";
      }
    }
    return {};
  }

  /// Empirical check of the tail modulus: sum_{i in [gamma(eps), m)} delta_i
  /// <= eps for all m up to `horizon`.
  std::string validate_gamma_tail(double eps, Index horizon) const {
    const Index start = gamma_tail_(eps);
    double sum = 0.0;
    for (Index i = start; i < horizon; ++i) {
      sum += delta_(i);
      if (sum > eps + 1e-12)
        return "gamma_tail(" + std::to_string(eps) + ") fails at m=" + std::to_string(i + 1);
    }
    return {};
  }

 private:
  std::string descriptor_;
  double bound_;
  std::function<double(Index)> eval_;
  std::function<double(Index)> delta_;
  std::function<Index(double)> gamma_tail_;
  double B_ = 0.0;
  mutable std::vector<double> cache_;
};

enum class MetaStatus { pass, violation, inconclusive_at_cap, input_error };

inline const char* to_string(MetaStatus s) {
  switch (s) {
    case MetaStatus::pass: return "pass";
    case MetaStatus::violation: return "violation";
    case MetaStatus::inconclusive_at_cap: return "inconclusive_at_cap";
    case MetaStatus::input_error: return "input_error";
  }
  return "?";
}

/// Result of a metastability search: the theoretical index bound, the least
/// admissible N whose window [N, N+g(N)] oscillates by at most eps, and the
/// verdict. pass requires found_N <= bound and window oscillation <= eps.
struct MetastabilityReport {
  double eps = 0.0;
  std::string g_name;
  std::string seq_descriptor;
  Index theoretical_bound = 0;
  bool bound_capped = false;
  bool found = false;
  Index found_N = 0;
  Index window_end = 0;
  double max_oscillation = 0.0;
  MetaStatus status = MetaStatus::violation;
  std::string message;

  bool pass() const { return status == MetaStatus::pass; }
};

namespace detail {

/// Max - min of the sequence over [lo, hi]; exact, O(window), with an early
/// exit once the oscillation provably exceeds `break_above` (the partial
/// max - min only grows as the scan extends).
inline double window_oscillation(const RealSeq& seq, Index lo, Index hi,
                                 double break_above = std::numeric_limits<double>::infinity()) {
  double mx = -std::numeric_limits<double>::infinity();
  double mn = std::numeric_limits<double>::infinity();
  for (Index n = lo; n <= hi; ++n) {
    const double v = seq.at(n);
    mx = std::max(mx, v);
    mn = std::min(mn, v);
    if (mx - mn > break_above) return mx - mn;
  }
  return mx - mn;
}

inline constexpr Index kSearchCap = 200000;

template <class G>
inline void metastability_search(MetastabilityReport& rep, const RealSeq& seq, double eps,
                                 G&& g, Index n_lo, const BoundValue& bound) {
  const Index n_hi = std::min(bound.value, n_lo + kSearchCap);
  for (Index N = n_lo; N <= n_hi; ++N) {
    const Index end = tilde_apply(g, N, kIndexCap - 1);
    if (end >= kIndexCap - 1) {
      rep.status = MetaStatus::inconclusive_at_cap;
      rep.message = "window at N=" + std::to_string(N) + " exceeds the index cap";
      return;
    }
    const double osc = window_oscillation(seq, N, end, eps + 1e-12);
    if (osc <= eps + 1e-12) {
      rep.found = true;
      rep.found_N = N;
      rep.window_end = end;
      rep.max_oscillation = osc;
      rep.status = MetaStatus::pass;
      return;
    }
  }
  if (bound.capped || bound.value > n_hi) {
    rep.status = MetaStatus::inconclusive_at_cap;
    rep.message = "no admissible N within the search cap; bound exceeds cap";
  } else {
    rep.status = MetaStatus::violation;
    rep.message = "no N <= theoretical bound satisfies the window condition";
  }
}

}  // namespace detail

/// Monotone metastability: for nonincreasing (a_n) in [0, b], some
/// N <= (n -> n + g(n))^(ceil(b/eps))(0) has window oscillation <= eps.
inline MetastabilityReport mono_metastability(const RealSeq& seq, double eps,
                                              const CounterFn& g) {
  if (!(eps > 0.0)) throw UsageError("mono_metastability: eps must be positive");
  MetastabilityReport rep;
  rep.eps = eps;
  rep.g_name = g.name;
  rep.seq_descriptor = seq.descriptor();
  const double count = std::ceil(seq.bound() / eps);
  const BoundValue bound = iterate_tilde(g.g, count, 0);
  rep.theoretical_bound = bound.value;
  rep.bound_capped = bound.capped;
  detail::metastability_search(rep, seq, eps, g.g, 0, bound);
  if (auto err = seq.validate_prefix(); !err.empty()) {
    rep.status = MetaStatus::input_error;
    rep.message = err;
  }
  return rep;
}

/// Quasi-monotone (summable-error) metastability: for (a_n) in [0, b] with
/// a_{n+1} <= a_n + delta_n and tail modulus gamma, some
/// N in [gamma(eps/4), (n -> n + g^M(n))^(ceil(2b/eps))(gamma(eps/4))]
/// has window oscillation <= eps.
inline MetastabilityReport summable_metastability(const RealSeq& seq, double eps,
                                                  const CounterFn& g) {
  if (!(eps > 0.0)) throw UsageError("summable_metastability: eps must be positive");
  if (!seq.has_error_seq())
    throw UsageError("summable_metastability: sequence carries no error data");
  MetastabilityReport rep;
  rep.eps = eps;
  rep.g_name = g.name;
  rep.seq_descriptor = seq.descriptor();
  const Index n_lo = seq.gamma_tail(eps / 4.0);
  RunningMax gmax(g.g);
  const double count = std::ceil(2.0 * seq.bound() / eps);
  const BoundValue bound = iterate_tilde(gmax, count, n_lo);
  rep.theoretical_bound = bound.value;
  rep.bound_capped = bound.capped;
  detail::metastability_search(rep, seq, eps, g.g, n_lo, bound);
  if (auto err = seq.validate_prefix(); !err.empty()) {
    rep.status = MetaStatus::input_error;
    rep.message = err;
  } else if (auto gerr = seq.validate_gamma_tail(eps / 4.0, std::max<Index>(seq.visited(), 64));
             !gerr.empty()) {
    rep.status = MetaStatus::input_error;
    rep.message = gerr;
  }
  return rep;
}

/// The counter-function family every rates campaign runs against: constants,
/// the identity, a capped exponential, and a seeded random g <= 100.
inline std::vector<CounterFn> standard_g_family(std::uint64_t seed) {
  std::vector<CounterFn> fam;
  fam.push_back({"const1", [](Index) { return Index{1}; }});
  fam.push_back({"const10", [](Index) { return Index{10}; }});
  fam.push_back({"linear", [](Index n) { return n; }});
  fam.push_back({"exp2_capped", [](Index n) {
                   return n >= 20 ? (Index{1} << 20) : (Index{1} << n);
                 }});
  fam.push_back({"random100", [seed](Index n) {
                   return Rng::derive(seed, 901, n).below(101);
                 }});
  return fam;
}

}  // namespace ucw

#pragma once

#include "sweep.hpp"
#include "tropws/weierstrass.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace tropws::detail {

// Minimum slopes at a point, aligned with g.directions(p); memoized.
class SlopeCache {
 public:
  using Fn = std::function<std::vector<long long>(const Point&)>;
  SlopeCache(const MetricGraph& g, Fn fn) : g_(g), fn_(std::move(fn)) {}

  long long at(const Direction& d);
  const std::vector<long long>& at(const Point& p);

 private:
  const MetricGraph& g_;
  Fn fn_;
  std::map<Point, std::vector<long long>> cache_;
  std::mutex mu_;
};

SlopeCache::Fn complete_slopes_fn(const MetricGraph& g, const Divisor& d);
SlopeCache complete_slopes(const MetricGraph& g, const Divisor& d);

// Points whose profile value passes `member`; throws CertificateFailure if
// the result is not closed.
ClosedSubset threshold_set(const MetricGraph& g, const Profile& prof,
                           const std::function<bool(long long, const Point&)>& member);

// deg D|_C + (genus(C) - c(C)) r - sum over outgoing directions of s_0.
// genus(C) includes vertex genera when `augmented` is set.
long long closed_form(const MetricGraph& g, const Divisor& d, const ClosedSubset& c, long long r, bool augmented,
                      SlopeCache& slopes);

long long profile_min(const Profile& prof);

}  // namespace tropws::detail

#pragma once

#include "tropws/chipfire.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tropws {

struct WComponent {
  ClosedSubset region;
  long long weight = 0;
};

enum class LocusMode { Standard, BModified, Generic, Canonical };

std::string to_string(LocusMode m);

struct WLocus {
  std::vector<WComponent> components;
  LocusMode mode = LocusMode::Standard;
  long long degree = 0;
  long long rank = 0;
  long long genus = 0;
  long long total = 0;
  long long b = 0;       // threshold used in place of the rank in b-modified mode
  long long events = 0;  // burning runs performed by the sweep

  ClosedSubset support(const MetricGraph& g) const;
};

bool is_weierstrass(const MetricGraph& g, const Divisor& d, const Point& x, long long r);

// Exact locus and weights of the complete linear series |D|. Throws
// CertificateFailure when the weights do not add up to d - r + rg.
WLocus locus(const MetricGraph& g, const Divisor& d, int jobs = 1);

// Same with r replaced by b = min_x D_x(x).
WLocus b_modified_locus(const MetricGraph& g, const Divisor& d, int jobs = 1);

// deg D|_C + (g(C) - 1) r - sum of minimum slopes leaving C. When a locus is
// supplied, rejects C whose outgoing directions run into the locus.
long long weight(const MetricGraph& g, const Divisor& d, const ClosedSubset& c, long long r,
                 const WLocus* within = nullptr);

// Weierstrass measure of A (closed) or of its interior (open_mode). For the
// generic and canonical modes `d` is the divisor of the series (D or K).
long long measure(const MetricGraph& g, const Divisor& d, const ClosedSubset& a, bool open_mode, const WLocus& l);

struct IdentityReport {
  long long total = 0;
  long long expected = 0;
  bool total_ok = false;
  bool forest_ok = true;  // complete series with r >= 1 only
  bool positive_ok = false;
  bool lower_bound_ok = true;
  int samples = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

IdentityReport verify_identities(const MetricGraph& g, const Divisor& d, const WLocus& l, std::uint64_t seed = 1,
                                 int samples = 16);

// True iff a short initial segment along the direction lies in the set.
bool germ_in(const MetricGraph& g, const ClosedSubset& s, const Direction& d);

}  // namespace tropws

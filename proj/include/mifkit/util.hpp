#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace mifkit {

// FNV-1a, used for manifests and cache keys.
uint64_t fnv1a(std::string_view data);
uint64_t fnv1a_file(const std::string& path);  // throws Parse if unreadable

// Locale-independent "%.12g" with "-0" normalized away.
std::string fmt_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
};
LinFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};
WilsonInterval wilson95(uint64_t hits, uint64_t trials);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Exceptions are
// rethrown on the caller thread; callers write results into slot i so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace mifkit

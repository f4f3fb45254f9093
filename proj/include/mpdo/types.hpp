#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpdo {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown for malformed inputs / violated preconditions (CLI exit code 2).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a computation fails numerically (CLI exit code 3).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool all_finite(std::span<const cplx> v) {
  for (cplx z : v)
    if (!is_finite(z)) return false;
  return true;
}

inline bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

// Row-major odometer over the integer box [lo_i, hi_i] per axis.
// Enumeration is lexicographic with the first axis slowest; this is the
// documented deterministic order used everywhere (boxes, grids, tables).
struct Indexer {
  std::vector<int> lo, hi;
  std::vector<long> stride;
  long total = 1;

  Indexer() = default;
  Indexer(std::vector<int> lo_, std::vector<int> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    require(lo.size() == hi.size(), "Indexer: lo/hi size mismatch");
    stride.assign(lo.size(), 1);
    total = 1;
    for (int ax = int(lo.size()) - 1; ax >= 0; --ax) {
      require(hi[ax] >= lo[ax], "Indexer: empty axis range");
      stride[ax] = total;
      total *= hi[ax] - lo[ax] + 1;
    }
  }

  static Indexer cube(int axes, int radius) {
    return Indexer(std::vector<int>(axes, -radius), std::vector<int>(axes, radius));
  }
  static Indexer grid(int axes, int m) {
    return Indexer(std::vector<int>(axes, 0), std::vector<int>(axes, m - 1));
  }

  int axes() const { return int(lo.size()); }
  long size() const { return total; }

  bool contains(std::span<const int> p) const {
    for (int ax = 0; ax < axes(); ++ax)
      if (p[ax] < lo[ax] || p[ax] > hi[ax]) return false;
    return true;
  }

  long flatten(std::span<const int> p) const {
    long f = 0;
    for (int ax = 0; ax < axes(); ++ax) f += (p[ax] - lo[ax]) * stride[ax];
    return f;
  }

  void unflatten(long f, int* out) const {
    for (int ax = 0; ax < axes(); ++ax) {
      out[ax] = lo[ax] + int(f / stride[ax]);
      f %= stride[ax];
    }
  }

  std::vector<int> point(long f) const {
    std::vector<int> p(axes());
    unflatten(f, p.data());
    return p;
  }

  bool operator==(const Indexer& o) const { return lo == o.lo && hi == o.hi; }
};

// splitmix64: small, portable, and good enough for seeding test families.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  // Derives an independent stream for (seed, index) so trial scheduling
  // cannot change results.
  static Rng for_trial(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ull + index * 0xbf58476d1ce4e5b9ull));
    r.next_u64();
    return r;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double gaussian() {
    // Box-Muller; avoids log(0) by flooring the uniform at 2^-53.
    double u1 = uniform01();
    if (u1 <= 0) u1 = 0x1.0p-53;
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  cplx cgauss() {
    double u1 = uniform01();
    if (u1 <= 0) u1 = 0x1.0p-53;
    double u2 = uniform01();
    double rad = std::sqrt(-2.0 * std::log(u1));
    return {rad * std::cos(kTwoPi * u2), rad * std::sin(kTwoPi * u2)};
  }

  int uniform_int(int lo, int hi) {  // inclusive
    return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
  }
};

// FNV-1a over raw double bits; used for input digests in probe reports.
std::string digest_hex(std::span<const cplx> data);

}  // namespace mpdo

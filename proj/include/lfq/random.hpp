#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace lfq {

/// Independent random stream. Streams are addressed by (master seed, stream
/// index), so replication i of a run always draws the same numbers no matter
/// which worker executes it.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exponential with the given rate; +inf when the rate is zero.
  double exponential(double rate) {
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(uniform()) / rate;
  }

  /// Uniform index in [0, n).
  std::uint64_t index(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

 private:
  std::mt19937_64 engine_;
};

/// Counter-based seeding: a master seed plus a base offset. `stream(i)` yields
/// the i-th replication stream; `child(label)` derives a disjoint family for a
/// named sub-task.
class StreamSeeds {
 public:
  explicit StreamSeeds(std::uint64_t master, std::uint64_t base = 0)
      : master_(master), base_(base) {}

  std::uint64_t master() const { return master_; }
  std::uint64_t base() const { return base_; }

  RandomStream stream(std::uint64_t index) const {
    return RandomStream(master_, base_ + index);
  }
  StreamSeeds child(std::string_view label) const;

 private:
  std::uint64_t master_;
  std::uint64_t base_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace lfq

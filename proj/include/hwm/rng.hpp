#pragma once
// xoshiro256++ with jump-ahead, so parallel path blocks draw from
// reproducible independent streams regardless of thread count.

#include <cstdint>

namespace hwm {

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);

  std::uint64_t next();

  /// Advances the state by 2^128 draws; consecutive jumps give
  /// non-overlapping streams.
  void jump();

  /// Uniform draw in (0, 1].
  double uniform01();

 private:
  std::uint64_t s_[4];
};

/// Standard normal sampler (Marsaglia polar, caches the spare deviate).
class NormalSampler {
 public:
  explicit NormalSampler(Xoshiro256pp rng) : rng_(rng) {}
  double operator()();

 private:
  Xoshiro256pp rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hwm

#pragma once

#include <cstdint>
#include <random>

namespace beetle {

/// Seeded source of uniform variates shared by every optimizer in a run.
///
/// The engine is MT19937-64 (std::mt19937_64), whose output sequence is fixed
/// by the C++ standard. Uniform doubles are built from the top 53 bits of
/// each 64-bit word, so the stream is bit-identical across compilers and
/// platforms. The std:: distributions are deliberately not used here; their
/// algorithms are implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform draw in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform draw in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Raw 64-bit word.
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace beetle

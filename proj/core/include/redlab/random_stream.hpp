#pragma once

#include <cstdint>

namespace redlab {

/// Which component a draw belongs to. Layer 0 is the original component
/// vector X; layer i >= 1 is the redundancy set Y_i. Positions are 0-based.
struct ComponentTag {
  std::uint32_t layer = 0;
  std::uint32_t position = 0;

  friend bool operator==(const ComponentTag&, const ComponentTag&) = default;
};

/// Counter-based uniform source: the draw is a pure function of
/// (seed, trial, tag). There is no internal state to advance, so trials can
/// be evaluated in any order or on any thread with identical results.
class RandomStream {
 public:
  constexpr RandomStream(std::uint64_t seed, std::uint64_t trial, ComponentTag tag) noexcept
      : seed_(seed), trial_(trial), tag_(tag) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t trial() const noexcept { return trial_; }
  ComponentTag tag() const noexcept { return tag_; }

  /// 64 well-mixed bits.
  std::uint64_t bits() const noexcept;

  /// Uniform on the open interval (0,1), 53-bit resolution.
  double uniform() const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
  ComponentTag tag_;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace redlab

#include "redlab/random_stream.hpp"

namespace redlab {

std::uint64_t RandomStream::bits() const noexcept {
  const std::uint64_t tag =
      (static_cast<std::uint64_t>(tag_.layer) << 32) | static_cast<std::uint64_t>(tag_.position);
  std::uint64_t h = mix64(seed_ ^ 0x6a09e667f3bcc908ULL);
  h = mix64(h ^ trial_);
  h = mix64(h ^ tag);
  return h;
}

double RandomStream::uniform() const noexcept {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(bits() >> 11) + 0.5) * kScale;
}

}  // namespace redlab

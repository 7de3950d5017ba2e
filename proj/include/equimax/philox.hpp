#ifndef EQUIMAX_PHILOX_HPP
#define EQUIMAX_PHILOX_HPP

#include <array>
#include <cstdint>

namespace equimax::detail {

// Philox-4x32-10 block cipher (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3"). Pure function of (counter, key): the same pair yields
// the same block on every platform, which is what makes the Monte Carlo
// draws reproducible without any generator state.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t prod0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t prod1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(prod0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(prod0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(prod1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(prod1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

// Uniform double in the open interval (0, 1) from the first two output
// words: 53 mantissa bits, offset half a step so 0 and 1 are unreachable.
inline double philox_u01(std::uint64_t draw_index, std::uint32_t coordinate,
                         std::uint64_t seed) {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(draw_index),
      static_cast<std::uint32_t>(draw_index >> 32), coordinate, 0u};
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto out = philox4x32(ctr, key);
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  return ((bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace equimax::detail

#endif  // EQUIMAX_PHILOX_HPP

#include "levytype/random.hpp"

#include <cmath>

#include <boost/math/special_functions/erf.hpp>

namespace levytype {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

} // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

RandomSource::Block RandomSource::philox(Block ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t RandomSource::mix(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over a combined word
  std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void RandomSource::refill() {
  Block ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  out_ = philox(ctr, {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  ++block_;
}

std::uint64_t RandomSource::next_u64() {
  if (have_second_) {
    have_second_ = false;
    return (static_cast<std::uint64_t>(out_[3]) << 32) | out_[2];
  }
  refill();
  have_second_ = true;
  return (static_cast<std::uint64_t>(out_[1]) << 32) | out_[0];
}

double RandomSource::uniform() {
  // (k + 1/2) 2^-53 never hits 0 or 1
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomSource::exponential(double rate) { return -std::log(uniform()) / rate; }

double RandomSource::normal() {
  return -1.4142135623730950488 * boost::math::erfc_inv(2.0 * uniform());
}

RandomSource RandomSource::derive(std::uint64_t tag) const { return {seed_, mix(stream_, tag)}; }

} // namespace levytype

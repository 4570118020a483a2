#pragma once

#include <array>
#include <cstdint>

namespace levytype {

//! Counter-based random stream (Philox4x32-10).
//!
//! The key is the 64-bit seed, the upper half of the counter holds the stream
//! id, so any (seed, stream) pair addresses its own sequence without shared
//! state. All variates are produced by inversion so that sequences are
//! reproducible independently of the standard library.
class RandomSource {
public:
  using Block = std::array<std::uint32_t, 4>;

  RandomSource(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  //! Number of 64-bit words consumed so far.
  std::uint64_t position() const { return 2 * block_ + (have_second_ ? 1 : 0); }

  std::uint64_t next_u64();
  //! Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  //! Exp(rate) by inversion: -log(U) / rate.
  double exponential(double rate = 1.0);
  //! Standard normal by inversion of the CDF.
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  //! A fresh source on the same seed whose stream id mixes in `tag`;
  //! used for nested Monte Carlo loops.
  RandomSource derive(std::uint64_t tag) const;

  //! One Philox4x32-10 block; exposed for known-answer tests.
  static Block philox(Block counter, std::array<std::uint32_t, 2> key);

  //! Stateless 64-bit mixing used to derive stream ids.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block out_{};
  bool have_second_ = false;
};

} // namespace levytype

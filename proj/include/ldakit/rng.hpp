#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ldakit {

// Seedable generator with a platform-independent stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Every derived quantity is computed here rather than through
// <random> distributions, which are implementation-defined:
//   uniform()        = (next() >> 11) * 2^-53, in [0, 1)
//   uniform_index(n) = floor(uniform() * n)
//   normal()         = Marsaglia polar method
//   gamma(a)         = Marsaglia-Tsang, with the a < 1 boost a -> a + 1
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint32_t uniform_index(std::uint32_t n);
  double normal();

  // log of a Gamma(shape, 1) draw; stays finite for tiny shapes.
  double log_gamma_variate(double shape);

  // Fills `out` with a Dirichlet(alpha) draw.
  void dirichlet(std::span<const double> alpha, std::span<double> out);

  // Index drawn with probability proportional to `weights` (one uniform).
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finaliser over (base, stream); used for every sub-seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace ldakit

#pragma once

#include <cstdint>
#include <vector>

#include "frep/representation.hpp"
#include "frep/types.hpp"

namespace frep {

constexpr double kMinProbeNorm = 1e-9;
constexpr int kDefaultProbeCount = 32;

/// Fixed pseudorandom sequence x_1, x_2, ... of nonzero vectors standing in for
/// a dense sequence. Probe n depends only on (seed, dim, n).
struct ProbeSequence {
  std::uint64_t seed = 0;
  int dim = 0;
  std::vector<Vec> vectors;

  std::size_t size() const { return vectors.size(); }
  const Vec& operator[](std::size_t i) const { return vectors[i]; }
};

/// Standard complex Gaussian probes; draws with norm below kMinProbeNorm are redrawn.
ProbeSequence make_probes(std::uint64_t seed, int dim, int count);

/// Probes in C^outer (x) C^total whose mass sits in C^outer (x) C^block (the
/// first `block` coordinates of the second factor), plus a complement
/// component of relative size `leak`.
ProbeSequence make_block_probes(std::uint64_t seed, int outer, int total, int block, double leak,
                                int count);

/// Strong-operator-topology surrogate metric:
///   sum_s sum_n 2^-n min(1, |(A_s - B_s) x_n| + |(A_s^-1 - B_s^-1) x_n|)
/// over normalized probes x_n (n = 1..N).
double rep_distance(const Representation& a, const Representation& b, const ProbeSequence& probes);

}  // namespace frep

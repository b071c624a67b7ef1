#include "frep/probes.hpp"

#include <cmath>

#include "frep/random.hpp"

namespace frep {

namespace {

Vec draw_nonzero(Rng& rng, int dim) {
  for (;;) {
    Vec v = ginibre(dim, 1, rng);
    if (v.norm() >= kMinProbeNorm) return v;
  }
}

}  // namespace

ProbeSequence make_probes(std::uint64_t seed, int dim, int count) {
  if (dim < 1) throw InputError("probe dimension must be >= 1");
  if (count < 0) throw InputError("probe count must be nonnegative");
  ProbeSequence p{seed, dim, {}};
  p.vectors.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
    p.vectors.push_back(draw_nonzero(rng, dim));
  }
  return p;
}

ProbeSequence make_block_probes(std::uint64_t seed, int outer, int total, int block, double leak,
                                int count) {
  if (block < 1 || block > total || outer < 1)
    throw InputError("block probes need 1 <= block <= total and outer >= 1");
  if (!(leak >= 0.0)) throw InputError("leak must be nonnegative");
  ProbeSequence p{seed, outer * total, {}};
  for (int n = 0; n < count; ++n) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
    const Vec inner = draw_nonzero(rng, outer * block);
    Vec x = Vec::Zero(outer * total);
    for (int a = 0; a < outer; ++a) x.segment(a * total, block) = inner.segment(a * block, block);
    if (total > block && leak > 0.0) {
      Vec rest = ginibre(outer * (total - block), 1, rng);
      rest *= leak * inner.norm() / rest.norm();
      for (int a = 0; a < outer; ++a)
        x.segment(a * total + block, total - block) = rest.segment(a * (total - block), total - block);
    }
    p.vectors.push_back(std::move(x));
  }
  return p;
}

double rep_distance(const Representation& a, const Representation& b, const ProbeSequence& probes) {
  if (a.k() != b.k()) throw InputError("generator count mismatch in rep_distance");
  if (a.dim() != b.dim() || probes.dim != a.dim())
    throw InputError("dimension mismatch in rep_distance");
  double total = 0.0;
  for (int s = 0; s < a.k(); ++s) {
    const Mat diff = a.generator(s) - b.generator(s);
    const Mat diff_inv = a.generator(s).adjoint() - b.generator(s).adjoint();
    double weight = 0.5;
    for (const Vec& x : probes.vectors) {
      const Vec xh = x / x.norm();
      const double term = (diff * xh).norm() + (diff_inv * xh).norm();
      total += weight * std::min(1.0, term);
      weight *= 0.5;
    }
  }
  return total;
}

}  // namespace frep

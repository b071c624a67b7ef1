#include "frep/lambda_norm.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "frep/random.hpp"

namespace frep {

namespace {

// Every reported Rayleigh quotient is shrunk by this relative amount before
// the square root so accumulated rounding cannot push it above the true norm.
constexpr double kRoundingGuard = 1e-12;
constexpr std::uint64_t kBlock = 1u << 16;

Letter rel_code(Letter c, Letter next) { return c < inverse_letter(next) ? c : static_cast<Letter>(c - 1); }
Letter unrel_code(Letter r, Letter next) { return r < inverse_letter(next) ? r : static_cast<Letter>(r + 1); }

template <typename Body>
void parallel_blocks(std::uint64_t n, unsigned threads, Body body) {
  const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(blocks, 1)));
  auto run = [&](unsigned t) {
    for (std::uint64_t b = t; b < blocks; b += threads)
      body(b, b * kBlock, std::min(n, (b + 1) * kBlock));
  };
  if (threads <= 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
  for (auto& th : pool) th.join();
}

// Fixed-shape pairwise reduction so sums do not depend on the thread count.
double pairwise_sum(std::vector<double> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    std::vector<double> next((v.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = v[2 * i] + (2 * i + 1 < v.size() ? v[2 * i + 1] : 0.0);
    v = std::move(next);
  }
  return v[0];
}

struct InverseTerm {
  std::vector<Letter> letters;  // letters of w^-1
  Complex coeff;
};

// Power iteration on a positive semidefinite operator given by `apply`.
// Vectors are plain std::vector<Complex>; `dot` and `norm2` are block reduced.
template <typename Apply, typename Dot>
BallEstimate power_iterate(std::vector<Complex> v, int iters, Apply apply, Dot dot) {
  BallEstimate est;
  double nv = std::sqrt(dot(v, v).real());
  if (!(nv > 0.0)) return est;
  for (auto& x : v) x /= nv;
  std::vector<Complex> w(v.size());
  double prev = -1.0;
  for (int it = 0; it < iters; ++it) {
    apply(v, w);
    const double rq = dot(v, w).real();
    if (rq < prev - 1e-10 * std::abs(prev)) est.monotone = false;
    prev = rq;
    est.last_rayleigh = rq;
    est.iterations = it + 1;
    const double nw = std::sqrt(dot(w, w).real());
    if (!(nw > 0.0)) break;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] / nw;
  }
  est.lower = std::sqrt(std::max(0.0, est.last_rayleigh)) * (1.0 - kRoundingGuard);
  return est;
}

BallEstimate full_ball(const GroupAlgebraElement& h, const BallOptions& opt) {
  const BallIndex ball(h.k(), opt.radius);
  const std::uint64_t n = ball.size();

  std::vector<InverseTerm> terms;
  for (const auto& [w, c] : h.terms()) {
    const Word inv = invert_word(w);
    terms.push_back({std::vector<Letter>(inv.letters().begin(), inv.letters().end()), c});
  }
  std::vector<std::uint8_t> length(n);
  for (int len = 0; len <= opt.radius; ++len)
    std::fill(length.begin() + static_cast<std::ptrdiff_t>(ball.level_begin(len)),
              length.begin() + static_cast<std::ptrdiff_t>(ball.level_begin(len + 1)),
              static_cast<std::uint8_t>(len));

  // (lambda(h) xi)(x) = sum_w h(w) xi(w^-1 x), dropping w^-1 x outside the ball.
  auto apply = [&](const std::vector<Complex>& in, std::vector<Complex>& out) {
    parallel_blocks(n, opt.threads, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t x = lo; x < hi; ++x) {
        Complex acc{};
        for (const auto& t : terms) {
          const auto y = ball.left_multiply(t.letters, x, length[x]);
          if (y) acc += t.coeff * in[*y];
        }
        out[x] = acc;
      }
    });
  };
  auto dot = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> re(blocks), im(blocks);
    parallel_blocks(n, opt.threads, [&](std::uint64_t blk, std::uint64_t lo, std::uint64_t hi) {
      Complex s{};
      for (std::uint64_t i = lo; i < hi; ++i) s += std::conj(a[i]) * b[i];
      re[blk] = s.real();
      im[blk] = s.imag();
    });
    return Complex(pairwise_sum(std::move(re)), pairwise_sum(std::move(im)));
  };

  Rng rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Complex> start(n);
  for (auto& x : start) x = unif(rng);

  BallEstimate est = power_iterate(std::move(start), opt.iters, apply, dot);
  est.method = BallMethod::full;
  est.ball_words = n;
  est.radius = opt.radius;
  return est;
}

// Number of words y of length m whose longest common suffix with a fixed
// word x of length n is exactly j.
double suffix_overlap_count(int k, int n, int m, int j) {
  const double q = 2.0 * k - 1.0;
  if (n == 0 || m == 0) return j == 0 ? static_cast<double>(sphere_size(k, m)) : 0.0;
  const int jmax = std::min(n, m);
  if (j > jmax) return 0.0;
  if (j < jmax) return j == 0 ? std::pow(q, m) : (q - 1.0) * std::pow(q, m - j - 1);
  return m <= n ? 1.0 : std::pow(q, m - n);
}

BallEstimate radial_ball(const GroupAlgebraElement& h, const std::vector<Complex>& profile,
                         const BallOptions& opt) {
  const int k = h.k();
  const int size = opt.radius + 1;
  auto a = [&](int len) -> Complex {
    return len < static_cast<int>(profile.size()) ? profile[static_cast<std::size_t>(len)] : Complex{};
  };
  Mat m = Mat::Zero(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) {
      Complex s{};
      for (int j = 0; j <= std::min(r, c); ++j) s += suffix_overlap_count(k, r, c, j) * a(r + c - 2 * j);
      m(r, c) = s * std::sqrt(static_cast<double>(sphere_size(k, r)) / static_cast<double>(sphere_size(k, c)));
    }

  // Coordinates are in the orthonormal basis 1_n / sqrt(|S_n|); a radial
  // function with value u_n on the sphere S_n has coordinate sqrt(|S_n|) u_n.
  Rng rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Complex> start(static_cast<std::size_t>(size));
  for (int r = 0; r < size; ++r) start[static_cast<std::size_t>(r)] = std::sqrt(static_cast<double>(sphere_size(k, r))) * unif(rng);

  auto apply = [&](const std::vector<Complex>& in, std::vector<Complex>& out) {
    Eigen::Map<const Vec> vi(in.data(), size);
    Eigen::Map<Vec> vo(out.data(), size);
    vo = m * vi;
  };
  auto dot = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
  };
  BallEstimate est = power_iterate(std::move(start), opt.iters, apply, dot);
  est.method = BallMethod::radial;
  est.ball_words = ball_size(k, opt.radius);
  est.radius = opt.radius;
  return est;
}

}  // namespace

const char* to_string(BallMethod m) {
  switch (m) {
    case BallMethod::automatic: return "auto";
    case BallMethod::full: return "full";
    case BallMethod::radial: return "radial";
  }
  return "?";
}

BallMethod ball_method_from_string(std::string_view s) {
  if (s == "auto") return BallMethod::automatic;
  if (s == "full") return BallMethod::full;
  if (s == "radial") return BallMethod::radial;
  throw InputError("unknown ball method \"" + std::string(s) + "\" (expected auto, full or radial)");
}

BallIndex::BallIndex(int k, int radius) : k_(k), radius_(radius), q_(2 * static_cast<std::uint64_t>(k) - 1) {
  if (radius < 0) throw InputError("ball radius must be nonnegative");
  if (radius > 255) throw InputError("ball radius too large");
  offsets_.push_back(0);
  for (int len = 0; len <= radius; ++len) offsets_.push_back(offsets_.back() + sphere_size(k, len));
  first_.assign(size(), 0);
  for (int len = 1; len <= radius; ++len) {
    for (std::uint64_t idx = offsets_[len]; idx < offsets_[len + 1]; ++idx) {
      const std::uint64_t local = idx - offsets_[len];
      if (len == 1) {
        first_[idx] = static_cast<Letter>(local);
      } else {
        const std::uint64_t parent = offsets_[len - 1] + local / q_;
        first_[idx] = unrel_code(static_cast<Letter>(local % q_), first_[parent]);
      }
    }
  }
}

std::uint64_t BallIndex::index_of(const Word& w) const {
  const std::size_t n = w.size();
  if (static_cast<int>(n) > radius_) throw InputError("word longer than ball radius");
  if (w.min_generators() > k_) throw InputError("word uses generators beyond k");
  if (n == 0) return 0;
  // Digits: the first letter is least significant; the last letter carries a
  // full 2k-ary digit.
  std::uint64_t local = w[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) local = local * q_ + rel_code(w[i], w[i + 1]);
  return offsets_[n] + local;
}

std::optional<std::uint64_t> BallIndex::left_multiply(std::span<const Letter> u, std::uint64_t idx,
                                                      int len) const {
  std::uint64_t cur = idx;
  std::size_t j = u.size();
  while (j > 0 && len > 0 && u[j - 1] == inverse_letter(first_[cur])) {
    cur = len == 1 ? 0 : offsets_[len - 1] + (cur - offsets_[len]) / q_;
    --len;
    --j;
  }
  if (len + static_cast<int>(j) > radius_) return std::nullopt;
  Letter front = len > 0 ? first_[cur] : 0;
  for (; j > 0; --j) {
    const Letter c = u[j - 1];
    cur = len == 0 ? offsets_[1] + c : offsets_[len + 1] + (cur - offsets_[len]) * q_ + rel_code(c, front);
    ++len;
    front = c;
  }
  return cur;
}

std::optional<std::vector<Complex>> radial_profile(const GroupAlgebraElement& f, double rel_tol) {
  std::vector<Complex> sum, first;
  std::vector<std::uint64_t> count;
  double scale = 0.0;
  for (const auto& [w, c] : f.terms()) {
    const std::size_t n = w.size();
    if (sum.size() <= n) {
      sum.resize(n + 1);
      first.resize(n + 1);
      count.resize(n + 1);
    }
    if (count[n] == 0) first[n] = c;
    sum[n] += c;
    ++count[n];
    scale = std::max(scale, std::abs(c));
  }
  for (std::size_t n = 0; n < count.size(); ++n)
    if (count[n] != 0 && count[n] != sphere_size(f.k(), static_cast<int>(n))) return std::nullopt;
  for (const auto& [w, c] : f.terms())
    if (std::abs(c - first[w.size()]) > rel_tol * scale) return std::nullopt;
  std::vector<Complex> profile(sum.size());
  for (std::size_t n = 0; n < sum.size(); ++n)
    if (count[n] != 0) profile[n] = rel_tol == 0.0 ? first[n] : sum[n] / static_cast<double>(count[n]);
  return profile;
}

BallEstimate ball_lower_estimate(const GroupAlgebraElement& f, const BallOptions& opt) {
  if (opt.iters < 1) throw InputError("iters must be >= 1");
  if (opt.radius < 0) throw InputError("ball radius must be nonnegative");
  BallEstimate zero;
  zero.radius = opt.radius;
  zero.ball_words = ball_size(f.k(), opt.radius);
  if (f.is_zero()) return zero;

  const GroupAlgebraElement h = convolve(involution(f), f);
  BallMethod method = opt.method;
  std::optional<std::vector<Complex>> profile;
  if (method != BallMethod::full) {
    // f radial implies f^* f radial; rounding in the convolution is averaged out.
    if (radial_profile(f, 0.0)) profile = radial_profile(h, 1e-12);
    if (method == BallMethod::radial && !profile)
      throw InputError("radial ball method needs an element whose coefficients depend only on word length");
    method = profile ? BallMethod::radial : BallMethod::full;
  }
  return method == BallMethod::radial ? radial_ball(h, *profile, opt) : full_ball(h, opt);
}

double ball_lower(const GroupAlgebraElement& f, int radius, int iters, std::uint64_t seed) {
  BallOptions opt;
  opt.radius = radius;
  opt.iters = iters;
  opt.seed = seed;
  opt.method = BallMethod::full;
  return ball_lower_estimate(f, opt).lower;
}

double haagerup_upper(const GroupAlgebraElement& f) {
  std::vector<double> sq;
  for (const auto& [w, c] : f.terms()) {
    if (sq.size() <= w.size()) sq.resize(w.size() + 1, 0.0);
    sq[w.size()] += std::norm(c);
  }
  double total = 0.0;
  for (std::size_t n = 0; n < sq.size(); ++n) total += static_cast<double>(n + 1) * std::sqrt(sq[n]);
  return total;
}

NormInterval lambda_norm_interval(const GroupAlgebraElement& f, const BallOptions& opt) {
  NormInterval out;
  out.estimate = ball_lower_estimate(f, opt);
  out.haagerup = haagerup_upper(f);
  out.l1 = norms(f).l1;
  out.lower = out.estimate.lower;
  if (const GroupAlgebraElement adj = involution(f); adj != f) {
    out.adjoint_estimate = ball_lower_estimate(adj, opt);
    out.lower = std::max(out.lower, out.adjoint_estimate->lower);
  }
  out.upper = std::min(out.haagerup, out.l1);
  out.ball_radius = opt.radius;
  out.iterations = out.estimate.iterations;
  if (out.lower > out.upper)
    throw AssertionFailure("norm sandwich violated: lower " + std::to_string(out.lower) + " > upper " +
                           std::to_string(out.upper));
  return out;
}

NormInterval lambda_norm_interval(const GroupAlgebraElement& f, int radius, int iters, std::uint64_t seed) {
  BallOptions opt;
  opt.radius = radius;
  opt.iters = iters;
  opt.seed = seed;
  return lambda_norm_interval(f, opt);
}

DeficitReport weak_containment_deficit(const Representation& rep, const std::vector<GroupAlgebraElement>& fs,
                                       const BallOptions& opt) {
  if (fs.empty()) throw InputError("weak containment deficit needs a nonempty sample");
  DeficitReport report;
  report.deficit = -std::numeric_limits<double>::infinity();
  for (const auto& f : fs) {
    const NormInterval iv = lambda_norm_interval(f, opt);
    DeficitRow row;
    row.rep_norm = operator_norm(evaluate(rep, f));
    row.lambda_lower = iv.lower;
    row.lambda_upper = iv.upper;
    row.deficit = row.rep_norm - iv.upper;
    row.excess_over_lower = row.rep_norm - iv.lower;
    report.deficit = std::max(report.deficit, row.deficit);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace frep

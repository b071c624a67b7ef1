#include "frep/representation.hpp"

#include <bit>
#include <cstdio>
#include <cstring>

#include "frep/random.hpp"

namespace frep {

Representation::Representation(int k, std::vector<Mat> gens)
    : k_(k), d_(static_cast<int>(gens.front().rows())), gens_(std::move(gens)) {
  inverses_.reserve(gens_.size());
  for (const auto& g : gens_) inverses_.push_back(g.adjoint());
}

Representation Representation::make(int k, std::vector<Mat> gens, double tol) {
  if (k < 2 || k > kMaxGenerators) throw InputError("generator count k must be >= 2");
  if (static_cast<int>(gens.size()) != k)
    throw InputError("expected " + std::to_string(k) + " generator matrices, got " +
                     std::to_string(gens.size()));
  const Eigen::Index d = gens.front().rows();
  if (d < 1) throw InputError("representation dimension must be >= 1");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].rows() != d || gens[i].cols() != d)
      throw InputError("generator " + std::to_string(i) + " is not " + std::to_string(d) + "x" +
                       std::to_string(d));
    const double defect = unitarity_defect(gens[i]);
    if (!(defect <= tol * static_cast<double>(d)))
      throw InputError("generator " + std::to_string(i) +
                       " is not unitary: ||U*U - I||_F = " + std::to_string(defect));
  }
  return Representation(k, std::move(gens));
}

Representation make_representation(int k, std::vector<Mat> gens, double tol) {
  return Representation::make(k, std::move(gens), tol);
}

Representation trivial_rep(int k, int d) {
  return Representation::make(k, std::vector<Mat>(static_cast<std::size_t>(k), Mat::Identity(d, d)));
}

Representation pauli_rep(int k) {
  Mat x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  std::vector<Mat> gens{x, z};
  for (int i = 2; i < k; ++i) gens.push_back(Mat::Identity(2, 2));
  return Representation::make(k, std::move(gens));
}

Mat evaluate_word(const Representation& rep, const Word& w) {
  if (w.min_generators() > rep.k())
    throw InputError("word \"" + w.to_string() + "\" uses generators beyond k");
  Mat out = Mat::Identity(rep.dim(), rep.dim());
  for (Letter c : w.letters()) out = out * rep.letter_image(c);
  return out;
}

Mat evaluate(const Representation& rep, const GroupAlgebraElement& f) {
  if (f.k() != rep.k()) throw InputError("generator count mismatch between element and representation");
  Mat out = Mat::Zero(rep.dim(), rep.dim());
  for (const auto& [w, c] : f.terms()) out += c * evaluate_word(rep, w);
  return out;
}

Representation tensor(const Representation& a, const Representation& b) {
  if (a.k() != b.k()) throw InputError("generator count mismatch in tensor product");
  std::vector<Mat> gens;
  gens.reserve(static_cast<std::size_t>(a.k()));
  for (int i = 0; i < a.k(); ++i) gens.push_back(kron(a.generator(i), b.generator(i)));
  return Representation::make(a.k(), std::move(gens), 1e-9);
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (a.k() != b.k()) throw InputError("generator count mismatch in direct sum");
  std::vector<Mat> gens;
  gens.reserve(static_cast<std::size_t>(a.k()));
  for (int i = 0; i < a.k(); ++i) gens.push_back(block_diag(a.generator(i), b.generator(i)));
  return Representation::make(a.k(), std::move(gens), 1e-9);
}

Representation extend_with_identity(const Representation& rep, int total_dim) {
  if (total_dim < rep.dim())
    throw InputError("total_dim " + std::to_string(total_dim) + " is smaller than dimension " +
                     std::to_string(rep.dim()));
  if (total_dim == rep.dim()) return rep;
  return direct_sum(rep, trivial_rep(rep.k(), total_dim - rep.dim()));
}

Representation random_haar_rep(int k, int d, std::uint64_t seed) {
  if (d < 1) throw InputError("dimension must be >= 1");
  Rng rng(seed);
  std::vector<Mat> gens;
  gens.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) gens.push_back(haar_unitary(d, rng));
  return Representation::make(k, std::move(gens));
}

std::vector<Mat> word_images(const Representation& rep, int max_len) {
  const std::vector<Word> words = enumerate_words(rep.k(), max_len);
  std::vector<Mat> images;
  images.reserve(words.size());
  images.push_back(Mat::Identity(rep.dim(), rep.dim()));
  // Each word's prefix (drop the last letter) was enumerated earlier; a
  // per-level map from prefix to position keeps this linear.
  std::size_t level_begin = 0, level_end = 1;
  for (int n = 1; n <= max_len; ++n) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const auto prefix = words[i].letters();
      for (Letter c = 0; c < 2 * rep.k(); ++c) {
        if (!prefix.empty() && prefix.back() == inverse_letter(c)) continue;
        images.push_back(images[i] * rep.letter_image(c));
      }
    }
    level_begin = level_end;
    level_end = images.size();
  }
  return images;
}

std::uint64_t digest(const Representation& rep) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t k = rep.k(), d = rep.dim();
  mix(&k, sizeof k);
  mix(&d, sizeof d);
  for (const auto& g : rep.generators())
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) {
        const double re = g(i, j).real(), im = g(i, j).imag();
        mix(&re, sizeof re);
        mix(&im, sizeof im);
      }
  return h;
}

std::string digest_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace frep

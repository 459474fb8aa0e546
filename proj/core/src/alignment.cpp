#include "malign/alignment.hpp"

#include <algorithm>
#include <sstream>

namespace malign {

Alignment::Alignment(std::vector<Permutation> perms) : perms_(std::move(perms)) {
  if (perms_.size() < 2) throw std::invalid_argument("Alignment: p must be >= 2");
  const std::size_t n = perms_.front().size();
  for (const auto& perm : perms_) {
    if (perm.size() != n) throw std::invalid_argument("Alignment: permutations act on different n");
  }
  if (!perms_.front().is_identity()) {
    throw std::invalid_argument("Alignment: first permutation must be the identity");
  }
}

Alignment Alignment::identity(std::size_t n, std::size_t p) {
  return Alignment(std::vector<Permutation>(p, Permutation::identity(n)));
}

std::string Alignment::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < perms_.size(); ++i) {
    if (i) out += ';';
    out += perms_[i].to_string();
  }
  return out;
}

Alignment Alignment::parse(std::string_view text) {
  std::vector<Permutation> perms;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t stop = std::min(text.find(';', start), text.size());
    std::istringstream in{std::string(text.substr(start, stop - start))};
    std::vector<int> images;
    for (int v; in >> v;) images.push_back(v);
    if (!in.eof()) throw std::invalid_argument("Alignment::parse: malformed permutation");
    perms.push_back(Permutation::from_one_based(images));
    start = stop + 1;
  }
  return Alignment(std::move(perms));
}

void require_same_shape(const Alignment& a, const Alignment& b, const char* what) {
  if (a.n() != b.n() || a.p() != b.p()) {
    throw std::invalid_argument(std::string(what) + ": alignment dimension mismatch");
  }
}

Alignment left_compose_tail(const Permutation& sigma, const Alignment& pi) {
  if (sigma.size() != pi.n()) throw std::invalid_argument("left_compose_tail: mismatched n");
  std::vector<Permutation> perms{pi[0]};
  for (std::size_t i = 1; i < pi.p(); ++i) perms.push_back(compose(sigma, pi[i]));
  return Alignment(std::move(perms));
}

std::optional<std::uint64_t> alignment_count(std::size_t n, std::size_t p, std::uint64_t cap) {
  if (p < 2) throw std::invalid_argument("alignment_count: p must be >= 2");
  if (n > 20) return std::nullopt;
  const std::uint64_t per = factorial(n);
  std::uint64_t total = 1;
  for (std::size_t i = 1; i < p; ++i) {
    if (total > cap / per) return std::nullopt;
    total *= per;
  }
  if (total > cap) return std::nullopt;
  return total;
}

std::uint64_t alignment_rank(const Alignment& a) {
  const std::uint64_t base = factorial(a.n());
  std::uint64_t rank = 0;
  for (std::size_t i = 1; i < a.p(); ++i) rank = rank * base + permutation_rank(a[i]);
  return rank;
}

Alignment alignment_unrank(std::size_t n, std::size_t p, std::uint64_t rank) {
  const std::uint64_t base = factorial(n);
  std::vector<Permutation> perms(p, Permutation::identity(n));
  for (std::size_t i = p; i-- > 1;) {
    perms[i] = permutation_unrank(n, rank % base);
    rank /= base;
  }
  if (rank != 0) throw std::out_of_range("alignment_unrank: rank out of range");
  return Alignment(std::move(perms));
}

AlignmentRange::AlignmentRange(std::size_t n, std::size_t p, std::uint64_t cap) : n_(n), p_(p) {
  const auto count = alignment_count(n, p, cap);
  if (!count) {
    throw StateSpaceTooLarge("state space too large: (" + std::to_string(n) + "!)^" +
                             std::to_string(p - 1) + " alignments exceed the enumeration cap of " +
                             std::to_string(cap));
  }
  count_ = *count;
}

AlignmentRange::iterator::iterator(std::size_t n, std::size_t p) : images_(p, std::vector<Vertex>(n)) {
  for (auto& img : images_) {
    for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Vertex>(x);
  }
  rebuild();
}

void AlignmentRange::iterator::rebuild() {
  std::vector<Permutation> perms;
  perms.reserve(images_.size());
  for (const auto& img : images_) perms.emplace_back(img);
  current_ = Alignment(std::move(perms));
}

AlignmentRange::iterator& AlignmentRange::iterator::operator++() {
  // Odometer: last coordinate fastest, which matches alignment_rank ordering.
  for (std::size_t i = images_.size(); i-- > 1;) {
    if (std::next_permutation(images_[i].begin(), images_[i].end())) {
      rebuild();
      return *this;
    }
    // next_permutation wrapped this digit back to the identity; carry.
  }
  done_ = true;
  return *this;
}

}  // namespace malign

#include "epitrace/diagnostics/sampling.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>

namespace epitrace {

namespace {

/// Uniform integer in [0, bound) by rejection; unlike
/// std::uniform_int_distribution this is specified bit-for-bit.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

}  // namespace

std::vector<std::size_t> stratified_sample(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
  const std::size_t total = corpus.traces.size();
  if (n >= total) {
    std::vector<std::size_t> all(total);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }

  // Correctness key: 0 = false, 1 = true, 2 = unknown.
  using Key = std::pair<std::string, int>;
  std::map<Key, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < total; ++i) {
    const auto& t = corpus.traces[i];
    strata[{t.model_id, t.correctness ? static_cast<int>(*t.correctness) : 2}].push_back(i);
  }

  struct Quota {
    std::vector<std::size_t>* members;
    std::size_t take;
    std::uint64_t remainder;  // numerator of the fractional part, over `total`
  };
  std::vector<Quota> quotas;
  std::size_t assigned = 0;
  for (auto& [key, members] : strata) {
    const std::uint64_t scaled = static_cast<std::uint64_t>(members.size()) * n;
    quotas.push_back({&members, static_cast<std::size_t>(scaled / total), scaled % total});
    assigned += quotas.back().take;
  }
  std::vector<std::size_t> order(quotas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return quotas[a].remainder > quotas[b].remainder;
  });
  for (std::size_t k = 0; assigned < n; ++k) {
    ++quotas[order[k % order.size()]].take;
    ++assigned;
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> picked;
  picked.reserve(n);
  for (auto& q : quotas) {
    auto& v = *q.members;
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[bounded(rng, i)]);
    }
    picked.insert(picked.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(q.take));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace epitrace

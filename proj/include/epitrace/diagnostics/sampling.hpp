#pragma once

#include <cstdint>
#include <vector>

#include "epitrace/corpus/trace.hpp"

namespace epitrace {

/// Picks `n` traces with strata (model_id, correctness) represented in
/// proportion to their size (largest-remainder rounding, ties to the
/// smaller stratum key). Within a stratum, traces are drawn by a seeded
/// Fisher-Yates shuffle on mt19937_64, so the result is the same on every
/// platform. Returns indices into corpus.traces in ascending order; all
/// indices when n >= corpus size.
std::vector<std::size_t> stratified_sample(const Corpus& corpus, std::size_t n, std::uint64_t seed);

}  // namespace epitrace

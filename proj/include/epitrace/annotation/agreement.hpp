/**
 * @file agreement.hpp
 * @brief Accuracy and Cohen's kappa between predicted and gold labelings.
 */

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>

#include "epitrace/corpus/episode.hpp"
#include "epitrace/corpus/trace.hpp"
#include "epitrace/error.hpp"

namespace epitrace {

/// confusion[gold][pred], indexed by index_of(Episode).
using ConfusionMatrix = std::array<std::array<std::uint64_t, kEpisodeCount>, kEpisodeCount>;

struct AgreementStats {
  std::uint64_t n = 0;
  double accuracy = 0.0;
  double expected_agreement = 0.0;
  /// 0 when undefined.
  double kappa = 0.0;
  /// False when expected agreement is 1 (or n is 0).
  bool kappa_defined = false;
  ConfusionMatrix confusion{};
};

/// Unweighted Cohen's kappa over a confusion matrix.
AgreementStats agreement_from_confusion(const ConfusionMatrix& confusion);

/// Paired labels of equal length.
AgreementStats agreement_from_labels(std::span<const Episode> gold, std::span<const Episode> pred);

struct AgreementReport {
  AgreementStats overall;
  /// Sentences pooled per model class; only classes present in gold.
  std::map<ModelClass, AgreementStats> by_class;
};

/// The corpora do not line up (trace set, sentence counts, missing labels).
class AlignmentError : public InputError {
 public:
  using InputError::InputError;
};

/// Gold labels come from gold_episode, or from episode where a gold
/// sentence has none. Predicted labels come from episode. Sentences are
/// pooled across traces.
AgreementReport evaluate_agreement(const Corpus& predicted, const Corpus& gold);

}  // namespace epitrace

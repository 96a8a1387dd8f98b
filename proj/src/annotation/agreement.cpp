#include "epitrace/annotation/agreement.hpp"

#include <fmt/format.h>

#include <unordered_map>

namespace epitrace {

AgreementStats agreement_from_confusion(const ConfusionMatrix& confusion) {
  AgreementStats s;
  s.confusion = confusion;
  std::array<std::uint64_t, kEpisodeCount> row{}, col{};
  std::uint64_t diag = 0;
  for (std::size_t g = 0; g < kEpisodeCount; ++g) {
    for (std::size_t p = 0; p < kEpisodeCount; ++p) {
      row[g] += confusion[g][p];
      col[p] += confusion[g][p];
      s.n += confusion[g][p];
    }
    diag += confusion[g][g];
  }
  if (s.n == 0) return s;
  const double n = static_cast<double>(s.n);
  s.accuracy = static_cast<double>(diag) / n;
  double pe = 0.0;
  for (std::size_t k = 0; k < kEpisodeCount; ++k) {
    pe += (static_cast<double>(row[k]) / n) * (static_cast<double>(col[k]) / n);
  }
  s.expected_agreement = pe;
  if (1.0 - pe > 1e-12) {
    s.kappa = (s.accuracy - pe) / (1.0 - pe);
    s.kappa_defined = true;
  }
  return s;
}

AgreementStats agreement_from_labels(std::span<const Episode> gold, std::span<const Episode> pred) {
  if (gold.size() != pred.size()) {
    throw AlignmentError(
        fmt::format("label sequences differ in length: {} vs {}", gold.size(), pred.size()));
  }
  ConfusionMatrix c{};
  for (std::size_t i = 0; i < gold.size(); ++i) ++c[index_of(gold[i])][index_of(pred[i])];
  return agreement_from_confusion(c);
}

AgreementReport evaluate_agreement(const Corpus& predicted, const Corpus& gold) {
  if (predicted.traces.size() != gold.traces.size()) {
    throw AlignmentError(fmt::format("predicted corpus has {} traces, gold has {}",
                                     predicted.traces.size(), gold.traces.size()));
  }
  std::unordered_map<std::string_view, const Trace*> by_id;
  for (const auto& t : predicted.traces) by_id.emplace(t.trace_id, &t);

  ConfusionMatrix all{};
  std::map<ModelClass, ConfusionMatrix> per_class;
  for (const auto& g : gold.traces) {
    auto it = by_id.find(g.trace_id);
    if (it == by_id.end()) {
      throw AlignmentError(fmt::format("trace {} is in gold but not in predicted", g.trace_id));
    }
    const Trace& p = *it->second;
    if (p.sentences.size() != g.sentences.size()) {
      throw AlignmentError(fmt::format("trace {}: predicted has {} sentences, gold has {}",
                                       g.trace_id, p.sentences.size(), g.sentences.size()));
    }
    ConfusionMatrix& cls = per_class[g.model_class];
    for (std::size_t i = 0; i < g.sentences.size(); ++i) {
      const auto& gs = g.sentences[i];
      const auto gold_label = gs.gold_episode ? gs.gold_episode : gs.episode;
      if (!gold_label) {
        throw AlignmentError(fmt::format("trace {} sentence {}: no gold label", g.trace_id, i));
      }
      const auto& pred_label = p.sentences[i].episode;
      if (!pred_label) {
        throw AlignmentError(
            fmt::format("trace {} sentence {}: no predicted label", g.trace_id, i));
      }
      ++all[index_of(*gold_label)][index_of(*pred_label)];
      ++cls[index_of(*gold_label)][index_of(*pred_label)];
    }
  }

  AgreementReport report;
  report.overall = agreement_from_confusion(all);
  for (const auto& [cls, c] : per_class) report.by_class.emplace(cls, agreement_from_confusion(c));
  return report;
}

}  // namespace epitrace

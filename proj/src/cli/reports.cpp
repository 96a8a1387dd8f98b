#include "epitrace/cli/reports.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace epitrace::cli {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string fixed(double v, int decimals) {
  std::string s = fmt::format("{:.{}f}", v, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string allocation_csv(std::span<const ModelAllocation> rows) {
  std::string out = "model_id,model_class,traces";
  for (Episode e : kAllEpisodes) out += fmt::format(",pct_{}", episode_slug(e));
  for (Episode e : kAllEpisodes) out += fmt::format(",tokens_{}", episode_slug(e));
  out += ",avg_tokens\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{}", csv_field(r.model_id), csv_field(r.model_class),
                       r.profile.trace_count);
    for (double p : r.profile.percentage) out += "," + fixed(p, 2);
    for (double t : r.profile.mean_tokens) out += "," + fixed(t, 2);
    out += "," + fixed(r.profile.mean_total_tokens, 2) + "\n";
  }
  return out;
}

std::string temporal_csv(std::span<const std::pair<std::string, TemporalSummary>> rows) {
  std::string out = "model_id,episode,bin,value,traces\n";
  for (const auto& [model, s] : rows) {
    for (Episode e : kAllEpisodes) {
      const std::size_t k = index_of(e);
      for (std::size_t b = 0; b < s.bins; ++b) {
        out += fmt::format("{},{},{},{},{}\n", csv_field(model), episode_name(e), b,
                           fixed(s.mean[k][b], 6), s.traces_with_episode[k]);
      }
    }
  }
  return out;
}

std::string lexical_csv(const std::map<Episode, std::vector<TokenCount>>& by_episode) {
  std::string out = "episode,rank,token,count\n";
  for (const auto& [e, tokens] : by_episode) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      out += fmt::format("{},{},{},{}\n", episode_name(e), i + 1, csv_field(tokens[i].token),
                         tokens[i].count);
    }
  }
  return out;
}

std::string mi_csv(std::span<const MIEntry> entries, std::string_view label_a,
                   std::string_view label_b) {
  std::string out = "rank,score,pattern,attribution,p_given_present\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    out += fmt::format("{},{},{},{},{}\n", i + 1, fixed(e.mi, 4), e.pattern_text,
                       csv_field(e.attribution == Group::A ? label_a : label_b),
                       fixed(e.p_group_given_present, 4));
  }
  return out;
}

std::string allocation_delta_csv(const AllocationProfile& a, const AllocationProfile& b) {
  std::string out = "episode,pct_a,pct_b,delta_b_minus_a\n";
  for (Episode e : kAllEpisodes) {
    const std::size_t k = index_of(e);
    out += fmt::format("{},{},{},{}\n", episode_name(e), fixed(a.percentage[k], 2),
                       fixed(b.percentage[k], 2), fixed(b.percentage[k] - a.percentage[k], 2));
  }
  return out;
}

std::string agreement_csv(std::span<const AgreementRun> runs) {
  std::string out = "run,group,sentences,accuracy,kappa\n";
  auto row = [&](const std::string& run, std::string_view group, const AgreementStats& s) {
    out += fmt::format("{},{},{},{},{}\n", csv_field(run), group, s.n, fixed(100.0 * s.accuracy, 2),
                       s.kappa_defined ? fixed(100.0 * s.kappa, 2) : std::string("NA"));
  };
  for (const auto& r : runs) {
    for (const auto& [cls, stats] : r.report.by_class) row(r.run, model_class_name(cls), stats);
    row(r.run, "overall", r.report.overall);
  }
  return out;
}

std::string coefficients_csv(const CoefficientReport& report) {
  std::string out = "rank,positive_feature,positive_beta,negative_feature,negative_beta\n";
  const std::size_t n = std::max(report.positive.size(), report.negative.size());
  for (std::size_t i = 0; i < n; ++i) {
    out += fmt::format("{}", i + 1);
    for (const auto* side : {&report.positive, &report.negative}) {
      if (i < side->size()) {
        const double beta = (*side)[i].beta;
        out += fmt::format(",{},{}{}", (*side)[i].feature, beta > 0 ? "+" : "", fixed(beta, 4));
      } else {
        out += ",,";
      }
    }
    out += "\n";
  }
  return out;
}

std::string features_csv(const FeatureMatrix& fm) {
  std::string out = "trace_id,correct";
  for (const auto& name : feature_names()) out += "," + name;
  out += "\n";
  for (std::size_t i = 0; i < fm.trace_ids.size(); ++i) {
    out += csv_field(fm.trace_ids[i]);
    out += fm.labels[i] ? (*fm.labels[i] ? ",1" : ",0") : ",";
    for (Eigen::Index j = 0; j < fm.X.cols(); ++j) {
      out += fmt::format(",{}", fm.X(static_cast<Eigen::Index>(i), j));
    }
    out += "\n";
  }
  return out;
}

}  // namespace epitrace::cli

/**
 * @file reports.hpp
 * @brief CSV layouts written by the command-line tool.
 *
 * Percentages use two decimals, MI scores, probabilities and
 * coefficients four. Every table ends with a newline.
 */

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epitrace/analytics/allocation.hpp"
#include "epitrace/analytics/lexical.hpp"
#include "epitrace/analytics/mutual_information.hpp"
#include "epitrace/analytics/temporal.hpp"
#include "epitrace/annotation/agreement.hpp"
#include "epitrace/diagnostics/features.hpp"
#include "epitrace/diagnostics/lasso.hpp"

namespace epitrace::cli {

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

/// Fixed-point text with the sign dropped when every digit is zero.
std::string fixed(double v, int decimals);

struct ModelAllocation {
  std::string model_id;
  std::string model_class;
  AllocationProfile profile;
};

/// model_id,model_class,traces,pct_<episode>x8,tokens_<episode>x8,avg_tokens
std::string allocation_csv(std::span<const ModelAllocation> rows);

/// model_id,episode,bin,value,traces
std::string temporal_csv(std::span<const std::pair<std::string, TemporalSummary>> rows);

/// episode,rank,token,count
std::string lexical_csv(const std::map<Episode, std::vector<TokenCount>>& by_episode);

/// rank,score,pattern,attribution,p_given_present
std::string mi_csv(std::span<const MIEntry> entries, std::string_view label_a,
                   std::string_view label_b);

/// episode,pct_a,pct_b,delta_b_minus_a
std::string allocation_delta_csv(const AllocationProfile& a, const AllocationProfile& b);

struct AgreementRun {
  std::string run;
  AgreementReport report;
};

/// run,group,sentences,accuracy,kappa (percent scale; kappa NA when
/// undefined)
std::string agreement_csv(std::span<const AgreementRun> runs);

/// rank,positive_feature,positive_beta,negative_feature,negative_beta
std::string coefficients_csv(const CoefficientReport& report);

/// trace_id,correct,<75 feature names>
std::string features_csv(const FeatureMatrix& fm);

}  // namespace epitrace::cli

#pragma once

// Crowd stance judgments: majority-vote aggregation, Fleiss' kappa, and the
// stance -> ideological leaning / relevance mappings.

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "serpaudit/corpus.hpp"
#include "serpaudit/types.hpp"

namespace serpaudit {

// Worker judgments use the first four values; `unresolved` only appears on
// aggregated labels.
enum class Stance { pro, against, neutral, not_relevant, unresolved };

inline constexpr std::size_t kJudgedStances = 4;
inline constexpr std::array<Stance, kJudgedStances> kJudgedStanceValues = {
    Stance::pro, Stance::against, Stance::neutral, Stance::not_relevant};

std::string_view to_string(Stance s);
std::optional<Stance> parse_stance(std::string_view s);

struct WorkerJudgment {
  std::string doc_id;
  std::string worker_id;
  Stance stance = Stance::neutral;

  bool operator==(const WorkerJudgment&) const = default;
};

struct AggregatedLabel {
  std::string doc_id;
  Stance stance = Stance::unresolved;
  int support = 0;  // workers agreeing with `stance` (largest category count if unresolved)
  int workers = 0;

  bool operator==(const AggregatedLabel&) const = default;
};

struct Aggregation {
  std::vector<AggregatedLabel> labels;  // sorted by doc_id
  std::vector<std::string> warnings;    // docs whose worker count differs from 3
};

inline constexpr int kExpectedWorkers = 3;

// Strict-majority vote per document; a document without a category held by
// more than half of its workers is `unresolved`. Throws on empty input, on a
// judgment with stance `unresolved`, and on a repeated (doc_id, worker_id).
Aggregation aggregate(std::span<const WorkerJudgment> judgments);

// doc_id -> aggregated label for one location's annotation campaign.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<AggregatedLabel> labels);

  const AggregatedLabel* find(std::string_view doc_id) const;
  std::size_t size() const { return labels_.size(); }
  const std::map<std::string, AggregatedLabel, std::less<>>& labels() const { return labels_; }

 private:
  std::map<std::string, AggregatedLabel, std::less<>> labels_;
};

// UK workers judged UK SERPs and US workers US SERPs, so labels are keyed by
// location. A location without an entry has no labels at all.
using LabelBook = std::map<Location, LabelSet>;

const LabelSet& labels_for(const LabelBook& book, Location location);

struct AgreementReport {
  double kappa = 0.0;
  double observed_agreement = 0.0;  // P-bar
  double chance_agreement = 0.0;    // P-bar_e
  std::size_t n_items = 0;
  int n_raters_per_item = 0;
  std::array<double, kJudgedStances> category_proportions{};  // indexed like kJudgedStanceValues
  std::vector<std::string> excluded_items;  // rater count differs from n_raters_per_item
};

// Fleiss' kappa over the four judged stance categories. Items are included
// when their rater count equals the most common rater count (ties go to the
// larger count); the rest are listed in excluded_items.
AgreementReport fleiss_kappa(std::span<const WorkerJudgment> judgments);

// pro -> topic.pro_leaning, against -> the opposite, anything else -> none.
std::optional<Leaning> leaning_of(Stance stance, const Topic& topic);

// 1 for on-topic stances (pro, against, neutral), 0 otherwise.
int relevance_of(const AggregatedLabel& label);
int relevance_of(Stance stance);

std::vector<WorkerJudgment> parse_judgments(std::istream& in, std::string source);
std::vector<WorkerJudgment> load_judgments(const std::filesystem::path& file);

}  // namespace serpaudit

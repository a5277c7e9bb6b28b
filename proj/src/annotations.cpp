#include "serpaudit/annotations.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "tsv.hpp"

namespace serpaudit {

namespace {

constexpr std::string_view kJudgmentColumns[] = {"doc_id", "worker_id", "stance"};

std::size_t category_index(Stance s) {
  switch (s) {
    case Stance::pro: return 0;
    case Stance::against: return 1;
    case Stance::neutral: return 2;
    case Stance::not_relevant: return 3;
    case Stance::unresolved: break;
  }
  throw ValidationError("worker judgment cannot be 'unresolved'");
}

using Counts = std::array<int, kJudgedStances>;

// doc_id -> per-category vote counts, rejecting repeated (doc, worker) pairs.
std::map<std::string, Counts, std::less<>> tally(std::span<const WorkerJudgment> judgments) {
  std::map<std::string, Counts, std::less<>> counts;
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const auto& j : judgments) {
    if (!seen.emplace(j.doc_id, j.worker_id).second) {
      throw ValidationError("duplicate judgment for doc '" + j.doc_id + "' by worker '" +
                            j.worker_id + "'");
    }
    counts[j.doc_id][category_index(j.stance)] += 1;
  }
  return counts;
}

}  // namespace

std::string_view to_string(Stance s) {
  switch (s) {
    case Stance::pro: return "pro";
    case Stance::against: return "against";
    case Stance::neutral: return "neutral";
    case Stance::not_relevant: return "not_relevant";
    case Stance::unresolved: return "unresolved";
  }
  return "?";
}

std::optional<Stance> parse_stance(std::string_view s) {
  for (Stance v : {Stance::pro, Stance::against, Stance::neutral, Stance::not_relevant,
                   Stance::unresolved}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

Aggregation aggregate(std::span<const WorkerJudgment> judgments) {
  if (judgments.empty()) throw ValidationError("no judgments to aggregate");
  Aggregation out;
  for (const auto& [doc, counts] : tally(judgments)) {
    int workers = 0;
    for (int c : counts) workers += c;
    if (workers != kExpectedWorkers) {
      out.warnings.push_back("doc '" + doc + "' has " + std::to_string(workers) +
                             " judgments, expected " + std::to_string(kExpectedWorkers));
    }
    AggregatedLabel label{doc, Stance::unresolved, 0, workers};
    for (std::size_t k = 0; k < kJudgedStances; ++k) {
      if (2 * counts[k] > workers) {
        label.stance = kJudgedStanceValues[k];
        label.support = counts[k];
      }
      if (label.stance == Stance::unresolved) label.support = std::max(label.support, counts[k]);
    }
    out.labels.push_back(std::move(label));
  }
  return out;
}

LabelSet::LabelSet(std::vector<AggregatedLabel> labels) {
  for (auto& l : labels) {
    std::string key = l.doc_id;
    if (labels_.contains(key)) {
      throw ValidationError("duplicate aggregated label for doc '" + key + "'");
    }
    labels_.emplace(std::move(key), std::move(l));
  }
}

const AggregatedLabel* LabelSet::find(std::string_view doc_id) const {
  auto it = labels_.find(doc_id);
  return it == labels_.end() ? nullptr : &it->second;
}

const LabelSet& labels_for(const LabelBook& book, Location location) {
  static const LabelSet kEmpty;
  auto it = book.find(location);
  return it == book.end() ? kEmpty : it->second;
}

AgreementReport fleiss_kappa(std::span<const WorkerJudgment> judgments) {
  const auto counts = tally(judgments);
  if (counts.empty()) throw ValidationError("no judgments for agreement");

  std::map<int, std::size_t> raters_histogram;
  for (const auto& [doc, c] : counts) {
    int n = 0;
    for (int v : c) n += v;
    raters_histogram[n] += 1;
  }
  int raters = 0;
  std::size_t best = 0;
  for (const auto& [n, freq] : raters_histogram) {
    if (freq >= best) {
      best = freq;
      raters = n;
    }
  }

  AgreementReport report;
  report.n_raters_per_item = raters;
  std::array<double, kJudgedStances> column_totals{};
  double sum_item_agreement = 0.0;
  for (const auto& [doc, c] : counts) {
    int n = 0;
    for (int v : c) n += v;
    if (n != raters) {
      report.excluded_items.push_back(doc);
      continue;
    }
    ++report.n_items;
    if (raters < 2) continue;
    double squares = 0.0;
    for (std::size_t k = 0; k < kJudgedStances; ++k) {
      squares += static_cast<double>(c[k]) * c[k];
      column_totals[k] += c[k];
    }
    sum_item_agreement += (squares - raters) / (static_cast<double>(raters) * (raters - 1));
  }
  if (report.n_items == 0) throw ValidationError("all items excluded from agreement");
  if (raters < 2) throw ValidationError("agreement needs at least 2 raters per item");

  const double total = static_cast<double>(report.n_items) * raters;
  for (std::size_t k = 0; k < kJudgedStances; ++k) {
    report.category_proportions[k] = column_totals[k] / total;
    report.chance_agreement += report.category_proportions[k] * report.category_proportions[k];
  }
  report.observed_agreement = sum_item_agreement / static_cast<double>(report.n_items);
  if (report.chance_agreement >= 1.0) throw ValidationError("degenerate agreement");
  report.kappa = (report.observed_agreement - report.chance_agreement) /
                 (1.0 - report.chance_agreement);
  return report;
}

std::optional<Leaning> leaning_of(Stance stance, const Topic& topic) {
  if (stance == Stance::pro) return topic.pro_leaning;
  if (stance == Stance::against) return opposite(topic.pro_leaning);
  return std::nullopt;
}

int relevance_of(Stance stance) {
  return stance == Stance::pro || stance == Stance::against || stance == Stance::neutral ? 1 : 0;
}

int relevance_of(const AggregatedLabel& label) { return relevance_of(label.stance); }

std::vector<WorkerJudgment> parse_judgments(std::istream& in, std::string source) {
  detail::TsvReader reader(in, std::move(source), kJudgmentColumns);
  std::vector<WorkerJudgment> out;
  while (reader.next()) {
    if (reader.field(0).empty()) reader.fail("empty doc_id");
    if (reader.field(1).empty()) reader.fail("empty worker_id");
    auto stance = parse_stance(reader.field(2));
    if (!stance || *stance == Stance::unresolved) {
      reader.fail("stance must be one of pro, against, neutral, not_relevant; got '" +
                  std::string(reader.field(2)) + "'");
    }
    out.push_back({std::string(reader.field(0)), std::string(reader.field(1)), *stance});
  }
  return out;
}

std::vector<WorkerJudgment> load_judgments(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  return parse_judgments(in, file.filename().string());
}

}  // namespace serpaudit

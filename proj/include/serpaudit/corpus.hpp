#pragma once

// Data model for pre-collected search result pages and the loaders for the
// topics / SERPs record files.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "serpaudit/types.hpp"

namespace serpaudit {

inline constexpr int kMaxRank = 10;

struct Topic {
  std::string topic_id;
  std::string title;
  std::string query;
  Leaning pro_leaning = Leaning::conservative;  // ideological side of the "pro" stance

  bool operator==(const Topic&) const = default;
};

struct SerpResult {
  int rank = 0;  // 1-based
  std::string doc_id;
  std::string url;

  bool operator==(const SerpResult&) const = default;
};

struct SerpRecord {
  Engine engine = Engine::engine1;
  Location location = Location::UK;
  std::string topic_id;
  std::vector<SerpResult> results;  // ordered by rank, ranks exactly 1..n

  Cell cell() const { return {engine, location}; }
  // "engine1/UK/t01"
  std::string key() const;

  bool operator==(const SerpRecord&) const = default;
};

// Free-form metadata about how the SERPs were collected.
using Provenance = std::map<std::string, std::string>;

// Per-cell completeness: how many topics have a SERP, and how many of those
// returned fewer than kMaxRank results.
struct CellCompleteness {
  Cell cell;
  std::size_t serps = 0;
  std::size_t short_serps = 0;
  std::size_t missing_topics = 0;

  bool operator==(const CellCompleteness&) const = default;
};

// Immutable, validated collection of topics and SERPs. All invariants are
// checked on construction; a Dataset that exists is valid.
class Dataset {
 public:
  Dataset(std::vector<Topic> topics, std::vector<SerpRecord> serps, Provenance provenance = {});

  const std::vector<Topic>& topics() const { return topics_; }
  const std::vector<SerpRecord>& serps() const { return serps_; }
  const Provenance& provenance() const { return provenance_; }

  // nullptr when absent.
  const Topic* find_topic(std::string_view topic_id) const;
  const SerpRecord* find_serp(Cell cell, std::string_view topic_id) const;

  // Throws ValidationError when absent.
  const Topic& topic(std::string_view topic_id) const;

  bool has_cell(Cell cell) const;
  // Cells that have at least one SERP, in (engine, location) order.
  std::vector<Cell> cells() const;
  // Sorted topic ids that have a SERP in the cell.
  std::vector<std::string> topic_ids(Cell cell) const;

  std::vector<CellCompleteness> completeness() const;
  // "8 SERPs, 2 topics"
  std::string summary() const;

  bool operator==(const Dataset& other) const;

 private:
  std::vector<Topic> topics_;  // sorted by topic_id
  std::vector<SerpRecord> serps_;  // sorted by (engine, location, topic_id)
  Provenance provenance_;
  std::map<std::string, std::size_t, std::less<>> topic_index_;
};

std::vector<Topic> parse_topics(std::istream& in, std::string source);
std::vector<SerpRecord> parse_serps(std::istream& in, std::string source);
Provenance parse_provenance(std::istream& in, std::string source);

// Loads <dir>/topics.tsv, <dir>/serps.tsv and, when present, <dir>/provenance.txt.
Dataset load_dataset(const std::filesystem::path& dir);
Dataset load_dataset(const std::filesystem::path& topics_file,
                     const std::filesystem::path& serps_file);

// Topics with a SERP in both cells, sorted by topic_id. This is the pairing
// axis of every paired test. Throws ValidationError("no matched topics") when
// the intersection is empty.
std::vector<std::string> matched_topics(const Dataset& d, Cell a, Cell b);

// Copy of the dataset with engine1 and engine2 swapped on every SERP.
Dataset swap_engines(const Dataset& d);

}  // namespace serpaudit

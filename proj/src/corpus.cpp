#include "serpaudit/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <tuple>

#include "tsv.hpp"

namespace serpaudit {

namespace {

constexpr std::string_view kTopicColumns[] = {"topic_id", "title", "query", "pro_leaning"};
constexpr std::string_view kSerpColumns[] = {"engine", "location", "topic_id",
                                             "rank",   "doc_id",   "url"};

std::string serp_key(Engine e, Location l, std::string_view topic_id) {
  std::string k(to_string(e));
  k += '/';
  k += to_string(l);
  k += '/';
  k += topic_id;
  return k;
}

auto order_key(const SerpRecord& s) {
  return std::tie(s.engine, s.location, s.topic_id);
}

// Sorts results by rank and checks ranks are exactly 1..n and doc ids unique.
void check_serp(SerpRecord& s) {
  if (s.results.size() > static_cast<std::size_t>(kMaxRank)) {
    throw ValidationError("SERP " + s.key() + " has more than " + std::to_string(kMaxRank) +
                          " results");
  }
  std::sort(s.results.begin(), s.results.end(),
            [](const SerpResult& a, const SerpResult& b) { return a.rank < b.rank; });
  std::set<std::string_view> docs;
  for (std::size_t i = 0; i < s.results.size(); ++i) {
    const auto& r = s.results[i];
    if (r.rank < 1 || r.rank > kMaxRank) {
      throw ValidationError("rank out of range: " + std::to_string(r.rank) + " in SERP " +
                            s.key());
    }
    if (i > 0 && s.results[i - 1].rank == r.rank) {
      throw ValidationError("duplicate rank " + std::to_string(r.rank) + " in SERP " + s.key());
    }
    if (r.rank != static_cast<int>(i) + 1) {
      throw ValidationError("rank gap in SERP " + s.key() + ": missing rank " +
                            std::to_string(i + 1));
    }
    if (r.doc_id.empty()) throw ValidationError("empty doc_id in SERP " + s.key());
    if (!docs.insert(r.doc_id).second) {
      throw ValidationError("duplicate doc_id '" + r.doc_id + "' in SERP " + s.key());
    }
  }
}

std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  return in;
}

}  // namespace

std::string SerpRecord::key() const { return serp_key(engine, location, topic_id); }

Dataset::Dataset(std::vector<Topic> topics, std::vector<SerpRecord> serps, Provenance provenance)
    : topics_(std::move(topics)), serps_(std::move(serps)), provenance_(std::move(provenance)) {
  std::sort(topics_.begin(), topics_.end(),
            [](const Topic& a, const Topic& b) { return a.topic_id < b.topic_id; });
  for (std::size_t i = 0; i < topics_.size(); ++i) {
    if (topics_[i].topic_id.empty()) throw ValidationError("empty topic_id");
    if (!topic_index_.emplace(topics_[i].topic_id, i).second) {
      throw ValidationError("duplicate topic_id '" + topics_[i].topic_id + "'");
    }
  }

  std::sort(serps_.begin(), serps_.end(),
            [](const SerpRecord& a, const SerpRecord& b) { return order_key(a) < order_key(b); });
  for (std::size_t i = 0; i < serps_.size(); ++i) {
    auto& s = serps_[i];
    if (i > 0 && order_key(serps_[i - 1]) == order_key(s)) {
      throw ValidationError("duplicate SERP key " + s.key());
    }
    if (!topic_index_.contains(s.topic_id)) {
      throw ValidationError("SERP " + s.key() + " references unknown topic '" + s.topic_id + "'");
    }
    check_serp(s);
  }
}

const Topic* Dataset::find_topic(std::string_view topic_id) const {
  auto it = topic_index_.find(topic_id);
  return it == topic_index_.end() ? nullptr : &topics_[it->second];
}

const Topic& Dataset::topic(std::string_view topic_id) const {
  if (const Topic* t = find_topic(topic_id)) return *t;
  throw ValidationError("unknown topic '" + std::string(topic_id) + "'");
}

const SerpRecord* Dataset::find_serp(Cell cell, std::string_view topic_id) const {
  const auto target = std::make_tuple(cell.engine, cell.location, topic_id);
  auto it = std::lower_bound(serps_.begin(), serps_.end(), target,
                             [](const SerpRecord& s, const auto& t) {
                               return std::make_tuple(s.engine, s.location,
                                                      std::string_view(s.topic_id)) < t;
                             });
  if (it == serps_.end() || it->cell() != cell || it->topic_id != topic_id) return nullptr;
  return &*it;
}

bool Dataset::has_cell(Cell cell) const {
  return std::any_of(serps_.begin(), serps_.end(),
                     [&](const SerpRecord& s) { return s.cell() == cell; });
}

std::vector<Cell> Dataset::cells() const {
  std::vector<Cell> out;
  for (const auto& s : serps_) {
    if (out.empty() || out.back() != s.cell()) out.push_back(s.cell());
  }
  return out;
}

std::vector<std::string> Dataset::topic_ids(Cell cell) const {
  std::vector<std::string> out;
  for (const auto& s : serps_) {
    if (s.cell() == cell) out.push_back(s.topic_id);
  }
  return out;  // serps_ is sorted, so already in topic order
}

std::vector<CellCompleteness> Dataset::completeness() const {
  std::vector<CellCompleteness> out;
  for (Cell c : cells()) {
    CellCompleteness cc{c};
    for (const auto& s : serps_) {
      if (s.cell() != c) continue;
      ++cc.serps;
      if (s.results.size() < static_cast<std::size_t>(kMaxRank)) ++cc.short_serps;
    }
    cc.missing_topics = topics_.size() - cc.serps;
    out.push_back(cc);
  }
  return out;
}

std::string Dataset::summary() const {
  return std::to_string(serps_.size()) + " SERPs, " + std::to_string(topics_.size()) + " topics";
}

bool Dataset::operator==(const Dataset& other) const {
  return topics_ == other.topics_ && serps_ == other.serps_ && provenance_ == other.provenance_;
}

std::vector<Topic> parse_topics(std::istream& in, std::string source) {
  detail::TsvReader reader(in, std::move(source), kTopicColumns);
  std::vector<Topic> topics;
  std::map<std::string, std::size_t, std::less<>> seen;
  while (reader.next()) {
    Topic t;
    t.topic_id = reader.field(0);
    t.title = reader.field(1);
    t.query = reader.field(2);
    if (t.topic_id.empty()) reader.fail("empty topic_id");
    auto leaning = parse_leaning(reader.field(3));
    if (!leaning) {
      reader.fail("pro_leaning must be 'conservative' or 'liberal', got '" +
                  std::string(reader.field(3)) + "'");
    }
    t.pro_leaning = *leaning;
    if (auto [it, fresh] = seen.emplace(t.topic_id, reader.line()); !fresh) {
      reader.fail("duplicate topic_id '" + t.topic_id + "' (first seen at line " +
                  std::to_string(it->second) + ")");
    }
    topics.push_back(std::move(t));
  }
  return topics;
}

std::vector<SerpRecord> parse_serps(std::istream& in, std::string source) {
  detail::TsvReader reader(in, std::move(source), kSerpColumns);
  std::vector<SerpRecord> serps;
  std::map<std::string, std::size_t> first_line;  // key -> line where its block started
  std::size_t block_line = 0;

  // Rank gaps are only detectable once a block is complete.
  auto close_block = [&] {
    if (serps.empty()) return;
    auto& s = serps.back();
    std::sort(s.results.begin(), s.results.end(),
              [](const SerpResult& a, const SerpResult& b) { return a.rank < b.rank; });
    for (std::size_t i = 0; i < s.results.size(); ++i) {
      if (s.results[i].rank != static_cast<int>(i) + 1) {
        throw ParseError(reader.source(), block_line,
                         "rank gap in SERP " + s.key() + ": missing rank " +
                             std::to_string(i + 1));
      }
    }
  };

  while (reader.next()) {
    auto engine = parse_engine(reader.field(0));
    if (!engine) reader.fail("unknown engine '" + std::string(reader.field(0)) + "'");
    auto location = parse_location(reader.field(1));
    if (!location) reader.fail("unknown location '" + std::string(reader.field(1)) + "'");
    const auto topic_id = reader.field(2);
    if (topic_id.empty()) reader.fail("empty topic_id");

    const auto rank_text = reader.field(3);
    int rank = 0;
    auto [end, ec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
    if (ec != std::errc() || end != rank_text.data() + rank_text.size()) {
      reader.fail("rank is not an integer: '" + std::string(rank_text) + "'");
    }
    if (rank < 1 || rank > kMaxRank) reader.fail("rank out of range: " + std::to_string(rank));
    if (reader.field(4).empty()) reader.fail("empty doc_id");

    const std::string key = serp_key(*engine, *location, topic_id);
    if (serps.empty() || serps.back().key() != key) {
      close_block();
      if (auto [it, fresh] = first_line.emplace(key, reader.line()); !fresh) {
        reader.fail("duplicate SERP key " + key + " (first seen at line " +
                    std::to_string(it->second) + ")");
      }
      block_line = reader.line();
      serps.push_back(SerpRecord{*engine, *location, std::string(topic_id), {}});
    }

    auto& s = serps.back();
    for (const auto& r : s.results) {
      if (r.rank == rank) reader.fail("duplicate rank " + std::to_string(rank) + " in SERP " + key);
      if (r.doc_id == reader.field(4)) {
        reader.fail("duplicate doc_id '" + r.doc_id + "' in SERP " + key);
      }
    }
    s.results.push_back(SerpResult{rank, std::string(reader.field(4)), std::string(reader.field(5))});
  }
  close_block();
  return serps;
}

Provenance parse_provenance(std::istream& in, std::string source) {
  Provenance p;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(source, n, "expected key=value");
    p[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return p;
}

Dataset load_dataset(const std::filesystem::path& topics_file,
                     const std::filesystem::path& serps_file) {
  auto topics_in = open_input(topics_file);
  auto topics = parse_topics(topics_in, topics_file.filename().string());
  auto serps_in = open_input(serps_file);
  auto serps = parse_serps(serps_in, serps_file.filename().string());
  return Dataset(std::move(topics), std::move(serps));
}

Dataset load_dataset(const std::filesystem::path& dir) {
  auto topics_in = open_input(dir / "topics.tsv");
  auto topics = parse_topics(topics_in, "topics.tsv");
  auto serps_in = open_input(dir / "serps.tsv");
  auto serps = parse_serps(serps_in, "serps.tsv");
  Provenance provenance;
  if (std::filesystem::exists(dir / "provenance.txt")) {
    auto in = open_input(dir / "provenance.txt");
    provenance = parse_provenance(in, "provenance.txt");
  }
  return Dataset(std::move(topics), std::move(serps), std::move(provenance));
}

std::vector<std::string> matched_topics(const Dataset& d, Cell a, Cell b) {
  const auto ta = d.topic_ids(a);
  const auto tb = d.topic_ids(b);
  std::vector<std::string> out;
  std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(out));
  if (out.empty()) {
    throw ValidationError("no matched topics between " + to_string(a) + " and " + to_string(b));
  }
  return out;
}

Dataset swap_engines(const Dataset& d) {
  auto serps = d.serps();
  for (auto& s : serps) s.engine = other(s.engine);
  return Dataset(d.topics(), std::move(serps), d.provenance());
}

}  // namespace serpaudit

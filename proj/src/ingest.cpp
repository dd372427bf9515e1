#include "tweetlab/ingest.hpp"

#include <zlib.h>

#include <array>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "tweetlab/csv.hpp"
#include "tweetlab/geospatial.hpp"
#include "tweetlab/util.hpp"

namespace tweetlab {

using nlohmann::json;

// --- keyword filter -------------------------------------------------------

KeywordFilter::KeywordFilter(std::vector<Keyword> keywords)
    : keywords_(std::move(keywords)) {
  for (auto& k : keywords_) k.text = to_lower_ascii(k.text);
}

KeywordFilter KeywordFilter::load(const std::string& path) {
  std::vector<Keyword> keywords;
  for (const auto& row : csv_read_file(path)) {
    if (row.empty() || row[0].empty()) continue;
    Keyword k;
    k.text = row[0];
    if (row.size() > 1 && !row[1].empty()) {
      auto d = parse_date(row[1]);
      if (!d) throw std::runtime_error("bad effective date in " + path + ": " + row[1]);
      k.effective = *d;
    }
    keywords.push_back(std::move(k));
  }
  if (keywords.empty()) throw std::runtime_error("empty keyword file: " + path);
  return KeywordFilter(std::move(keywords));
}

bool KeywordFilter::matches(std::string_view text, Date tweet_date) const {
  const std::string lower = to_lower_ascii(text);
  for (const auto& k : keywords_) {
    if (k.effective && tweet_date < *k.effective) continue;
    if (lower.find(k.text) != std::string::npos) return true;
  }
  return false;
}

// --- state name resolution ------------------------------------------------

StateNameTable StateNameTable::load(const std::string& path) {
  StateNameTable t;
  for (const auto& row : csv_read_file(path)) {
    if (row.size() < 2) continue;
    const auto st = state_from_abbrev(row[0]);
    if (!st) throw std::runtime_error("unknown state abbrev in " + path + ": " + row[0]);
    t.name_to_state_[to_lower_ascii(trim(row[1]))] = *st;
  }
  if (t.name_to_state_.empty()) throw std::runtime_error("empty state table: " + path);
  return t;
}

std::optional<State> StateNameTable::from_name(std::string_view name) const {
  const auto it = name_to_state_.find(to_lower_ascii(trim(name)));
  if (it == name_to_state_.end()) return std::nullopt;
  return it->second;
}

std::optional<State> StateNameTable::resolve_place_full_name(
    std::string_view full_name) const {
  const std::string s = trim(full_name);
  const size_t comma = s.rfind(", ");
  if (comma != std::string::npos) {
    const std::string_view suffix = std::string_view(s).substr(comma + 2);
    if (suffix.size() == 2) {
      if (auto st = state_from_abbrev(suffix)) return st;
    }
    if (iequals_ascii(suffix, "USA")) {
      if (auto st = from_name(std::string_view(s).substr(0, comma))) return st;
    }
  }
  return from_name(s);
}

// --- per-line parsing -------------------------------------------------------

namespace {

std::optional<GeoPoint> point_from_json(const json& coords) {
  const json* arr = &coords;
  if (coords.is_object()) {
    const auto it = coords.find("coordinates");
    if (it == coords.end()) return std::nullopt;
    arr = &*it;
  }
  if (!arr->is_array() || arr->size() != 2) return std::nullopt;
  if (!(*arr)[0].is_number() || !(*arr)[1].is_number()) return std::nullopt;
  // GeoJSON order: [lon, lat]
  GeoPoint p{(*arr)[1].get<double>(), (*arr)[0].get<double>()};
  if (p.lat < -90.0 || p.lat > 90.0 || p.lon < -180.0 || p.lon > 180.0)
    return std::nullopt;
  return p;
}

std::string string_or_empty(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) return {};
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
  return {};
}

}  // namespace

ParseOutcome parse_tweet_json(std::string_view line, SourceCorpus source,
                              const StateNameTable& states) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) return {std::nullopt, "malformed"};

  TweetRecord rec;
  rec.source_corpus = source;
  rec.tweet_id = string_or_empty(obj, "tweet_id");
  if (rec.tweet_id.empty()) return {std::nullopt, "malformed"};

  const auto created = parse_timestamp(string_or_empty(obj, "created_at"));
  if (!created) return {std::nullopt, "malformed"};
  rec.created_at_utc = *created;

  rec.user_id = string_or_empty(obj, "user_id");
  rec.text = string_or_empty(obj, "text");

  rec.is_retweet =
      obj.contains("retweeted_status") || rec.text.rfind("RT @", 0) == 0;

  if (const auto pit = obj.find("place"); pit != obj.end() && pit->is_object()) {
    std::string cc = string_or_empty(*pit, "country_code");
    rec.geo.country_code = to_lower_ascii(cc) == "us" ? "US" : cc;
    const std::string full_name = string_or_empty(*pit, "full_name");
    if (!full_name.empty()) {
      rec.geo.state = states.resolve_place_full_name(full_name);
      rec.geo.precision = GeoPrecision::bounding_place;
    }
  }
  if (const auto cit = obj.find("coordinates"); cit != obj.end() && !cit->is_null()) {
    if (auto p = point_from_json(*cit)) {
      rec.geo.point = p;
      rec.geo.precision = GeoPrecision::exact_gps;
    }
  }
  return {std::move(rec), nullptr};
}

bool accept_us_geotag(TweetRecord& record, const CountyIndex* gps_index) {
  if (record.geo.country_code != "US") return false;
  if (record.geo.state) return true;
  if (gps_index && record.geo.point) {
    if (const CountyShape* shape = gps_index->locate(*record.geo.point)) {
      record.geo.state = shape->state;
      return true;
    }
  }
  return false;
}

// --- merge / dedup ----------------------------------------------------------

MergeResult merge_corpora(std::vector<TweetRecord> primary,
                          std::vector<TweetRecord> compensation) {
  MergeResult result;
  result.records.reserve(primary.size() + compensation.size());
  std::unordered_set<std::string> seen;
  seen.reserve(primary.size() + compensation.size());

  const auto consume = [&](std::vector<TweetRecord>& stream) {
    for (auto& rec : stream) {
      if (!seen.insert(rec.tweet_id).second) {
        ++result.duplicates;
        continue;
      }
      const size_t src = static_cast<size_t>(rec.source_corpus);
      result.per_day_by_source[utc_date(rec.created_at_utc)][src] += 1;
      result.records.push_back(std::move(rec));
    }
  };
  consume(primary);
  consume(compensation);
  return result;
}

// --- ingest pipeline ----------------------------------------------------------

bool IngestCounters::reconciles() const {
  return accepted == lines_read - skips() - keyword_rejected - geo_rejected -
                         retweets_removed - duplicates_removed;
}

IngestResult ingest_files(const std::vector<std::string>& primary_paths,
                          const std::vector<std::string>& compensation_paths,
                          const KeywordFilter& keywords, const StateNameTable& states,
                          const IngestOptions& options) {
  IngestResult out;
  std::vector<TweetRecord> primary, compensation;

  const auto consume_file = [&](const std::string& path, SourceCorpus source) {
    LineReader reader(path);
    std::string line;
    auto& bucket = source == SourceCorpus::primary ? primary : compensation;
    while (reader.next(line)) {
      if (trim(line).empty()) continue;
      ++out.counters.lines_read;
      auto parsed = parse_tweet_json(line, source, states);
      if (!parsed.record) {
        ++out.counters.skipped_malformed;
        continue;
      }
      TweetRecord rec = std::move(*parsed.record);
      const Date d = utc_date(rec.created_at_utc);
      if (d < options.window_from || d > options.window_to) {
        ++out.counters.skipped_out_of_window;
        continue;
      }
      if (!keywords.matches(rec.text, d)) {
        ++out.counters.keyword_rejected;
        continue;
      }
      // Bot detection consumes the keyword-filtered stream before the geo
      // and retweet gates.
      out.activity.push_back({rec.user_id, rec.created_at_utc});
      if (!accept_us_geotag(rec, options.gps_state_index)) {
        ++out.counters.geo_rejected;
        continue;
      }
      if (rec.is_retweet) {
        ++out.counters.retweets_removed;
        continue;
      }
      bucket.push_back(std::move(rec));
    }
  };

  for (const auto& p : primary_paths) consume_file(p, SourceCorpus::primary);
  for (const auto& p : compensation_paths) consume_file(p, SourceCorpus::compensation);

  MergeResult merged = merge_corpora(std::move(primary), std::move(compensation));
  out.counters.duplicates_removed = merged.duplicates;
  out.counters.accepted = merged.records.size();
  out.records = std::move(merged.records);
  out.per_day_by_source = std::move(merged.per_day_by_source);

  if (!out.counters.reconciles())
    throw std::logic_error("ingest counters do not reconcile");
  return out;
}

// --- canonical record file ---------------------------------------------------

std::string_view source_corpus_name(SourceCorpus s) {
  return s == SourceCorpus::primary ? "primary" : "compensation";
}

static std::string_view precision_name(GeoPrecision p) {
  switch (p) {
    case GeoPrecision::exact_gps: return "exact_gps";
    case GeoPrecision::bounding_place: return "bounding_place";
    default: return "none";
  }
}

static std::optional<GeoPrecision> precision_from_name(std::string_view n) {
  if (n == "exact_gps") return GeoPrecision::exact_gps;
  if (n == "bounding_place") return GeoPrecision::bounding_place;
  if (n == "none") return GeoPrecision::none;
  return std::nullopt;
}

std::string record_to_json(const TweetRecord& r) {
  json geo;
  geo["country_code"] = r.geo.country_code;
  if (r.geo.state) geo["state"] = std::string(state_abbrev(*r.geo.state));
  if (r.geo.county) geo["county"] = *r.geo.county;
  if (r.geo.point) geo["point"] = {r.geo.point->lat, r.geo.point->lon};
  geo["precision"] = std::string(precision_name(r.geo.precision));

  json obj;
  obj["tweet_id"] = r.tweet_id;
  obj["user_id"] = r.user_id;
  obj["created_at"] = format_timestamp(r.created_at_utc);
  obj["text"] = r.text;
  obj["geo"] = std::move(geo);
  obj["is_retweet"] = r.is_retweet;
  obj["source_corpus"] = std::string(source_corpus_name(r.source_corpus));
  return obj.dump();
}

std::optional<TweetRecord> record_from_json(std::string_view line) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) return std::nullopt;
  TweetRecord r;
  r.tweet_id = string_or_empty(obj, "tweet_id");
  r.user_id = string_or_empty(obj, "user_id");
  const auto t = parse_timestamp(string_or_empty(obj, "created_at"));
  if (r.tweet_id.empty() || !t) return std::nullopt;
  r.created_at_utc = *t;
  r.text = string_or_empty(obj, "text");
  r.is_retweet = obj.value("is_retweet", false);
  r.source_corpus = string_or_empty(obj, "source_corpus") == "compensation"
                        ? SourceCorpus::compensation
                        : SourceCorpus::primary;
  const auto git = obj.find("geo");
  if (git == obj.end() || !git->is_object()) return std::nullopt;
  r.geo.country_code = string_or_empty(*git, "country_code");
  if (git->contains("state")) {
    r.geo.state = state_from_abbrev(string_or_empty(*git, "state"));
    if (!r.geo.state) return std::nullopt;
  }
  if (git->contains("county")) r.geo.county = string_or_empty(*git, "county");
  if (const auto pit = git->find("point"); pit != git->end() && pit->is_array() &&
                                           pit->size() == 2) {
    r.geo.point = GeoPoint{(*pit)[0].get<double>(), (*pit)[1].get<double>()};
  }
  const auto prec = precision_from_name(string_or_empty(*git, "precision"));
  if (!prec) return std::nullopt;
  r.geo.precision = *prec;
  return r;
}

void write_canonical(const std::string& path, const std::vector<TweetRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& r : records) out << record_to_json(r) << '\n';
  out.close();
  if (out.fail()) throw std::runtime_error("write failed: " + path);
}

std::vector<TweetRecord> read_canonical(const std::string& path) {
  LineReader reader(path);
  std::vector<TweetRecord> records;
  std::string line;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    auto r = record_from_json(line);
    if (!r) throw std::runtime_error("bad canonical record in " + path);
    records.push_back(std::move(*r));
  }
  return records;
}

// --- gzip/plain line reader ----------------------------------------------------

struct LineReader::Impl {
  gzFile file = nullptr;
  std::string pending;
  bool eof = false;
};

LineReader::LineReader(const std::string& path) : impl_(std::make_unique<Impl>()) {
  impl_->file = gzopen(path.c_str(), "rb");
  if (!impl_->file) throw std::runtime_error("cannot open: " + path);
}

LineReader::~LineReader() {
  if (impl_ && impl_->file) gzclose(impl_->file);
}

bool LineReader::next(std::string& line) {
  line.clear();
  auto& im = *impl_;
  for (;;) {
    const size_t nl = im.pending.find('\n');
    if (nl != std::string::npos) {
      line.assign(im.pending, 0, nl);
      im.pending.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    if (im.eof) {
      if (im.pending.empty()) return false;
      line = std::move(im.pending);
      im.pending.clear();
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    char buf[1 << 16];
    const int n = gzread(im.file, buf, sizeof(buf));
    if (n < 0) throw std::runtime_error("gzread failed");
    if (n == 0)
      im.eof = true;
    else
      im.pending.append(buf, static_cast<size_t>(n));
  }
}

}  // namespace tweetlab

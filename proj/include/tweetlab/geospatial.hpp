#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetlab/record.hpp"
#include "tweetlab/states.hpp"

namespace tweetlab {

class StateNameTable;  // ingest.hpp

// --- state-level tables -----------------------------------------------------

struct StateStats {
  double population = 0.0;
  double cum_cases = 0.0;
  double cum_deaths = 0.0;
};

class StateStatsTable {
 public:
  // population CSV: state,population
  // case series CSV: date,state,cases,deaths (cumulative); the snapshot date
  // picks which row feeds the per-case / per-death denominators.
  static StateStatsTable load(const std::string& population_path,
                              const std::string& case_series_path, Date snapshot);

  void set(State s, StateStats stats) { stats_[s] = stats; }
  std::optional<StateStats> get(State s) const;
  const std::map<State, StateStats>& all() const { return stats_; }

 private:
  std::map<State, StateStats> stats_;
};

// Per-state cumulative case/death series, used both for normalization
// snapshots and for event-date derivation.
struct CaseSeries {
  struct Point {
    Date date;
    std::uint64_t cases = 0;
    std::uint64_t deaths = 0;
  };
  std::map<State, std::vector<Point>> by_state;  // each vector date-ascending

  static CaseSeries load(const std::string& path);  // throws on decreasing series
};

// Percentage of records per state; percentages sum to 100. Throws on an
// empty corpus.
std::map<State, double> state_share_table(std::span<const TweetRecord> records);

enum class NormalizeBasis { per_1000_residents, per_case, per_death };

struct NormalizedRates {
  std::map<State, double> rates;
  std::vector<State> excluded;  // zero denominator
};

NormalizedRates normalize(const std::map<State, std::uint64_t>& tweet_counts,
                          const StateStatsTable& stats, NormalizeBasis basis);

// --- geometry ----------------------------------------------------------------

struct PolygonRing {
  std::vector<GeoPoint> pts;  // implicit closure: last connects to first
};

// Crossing-number test; points exactly on an edge count as inside.
bool point_in_ring(GeoPoint p, const PolygonRing& ring);
bool point_on_ring_edge(GeoPoint p, const PolygonRing& ring);

struct CountyShape {
  std::string county;
  State state = State::AL;
  // Each part: outer ring + holes. MultiPolygon flattens into several parts.
  struct Part {
    PolygonRing outer;
    std::vector<PolygonRing> holes;
  };
  std::vector<Part> parts;
  double min_lat = 0, max_lat = 0, min_lon = 0, max_lon = 0;  // bbox

  bool contains(GeoPoint p) const;
};

class CountyIndex {
 public:
  // GeoJSON FeatureCollection of Polygon/MultiPolygon features with
  // "county" and "state" properties (state as postal abbreviation or name).
  static CountyIndex load_geojson(const std::string& path);

  // First containing shape in file order, or nullptr.
  const CountyShape* locate(GeoPoint p) const;
  size_t size() const { return shapes_.size(); }
  const std::vector<CountyShape>& shapes() const { return shapes_; }

 private:
  std::vector<CountyShape> shapes_;
};

// --- county resolution ---------------------------------------------------------

enum class GeocodeMethod { remote_geocoder, polygon_lookup, cache };

struct CountyResolution {
  GeoPoint point;
  std::optional<std::string> county;
  std::optional<State> state;
  GeocodeMethod method = GeocodeMethod::polygon_lookup;
};

// Keyed by coordinates rounded to 4 decimals. Negative lookups are cached
// too so re-runs stay byte-identical.
class GeocodeCache {
 public:
  struct Entry {
    std::optional<std::string> county;
    std::optional<State> state;
  };

  std::optional<Entry> find(GeoPoint p) const;
  void put(GeoPoint p, Entry e);
  size_t size() const { return map_.size(); }

  void load(const std::string& path);  // no-op when the file does not exist
  void save(const std::string& path) const;

  static std::pair<std::int64_t, std::int64_t> key(GeoPoint p);

 private:
  std::map<std::pair<std::int64_t, std::int64_t>, Entry> map_;
};

struct GeocoderConfig {
  enum class Mode { polygon, remote };
  Mode mode = Mode::polygon;
  std::string endpoint;       // e.g. "http://127.0.0.1:8080"
  std::string contact;        // sent in the User-Agent header
  double pace_seconds = 1.0;  // min spacing between remote requests
  int max_retries = 1;        // retries before falling back to polygons
};

// Cache -> remote (when configured, with retry) -> polygon fallback.
class CountyResolver {
 public:
  CountyResolver(const CountyIndex* index, GeocodeCache* cache, GeocoderConfig config,
                 const StateNameTable* state_names = nullptr);
  ~CountyResolver();

  CountyResolution resolve(GeoPoint p);

  std::uint64_t remote_requests() const { return remote_requests_; }
  std::uint64_t remote_failures() const { return remote_failures_; }

 private:
  std::optional<GeocodeCache::Entry> resolve_remote(GeoPoint p);
  GeocodeCache::Entry resolve_polygon(GeoPoint p) const;

  const CountyIndex* index_;
  GeocodeCache* cache_;
  GeocoderConfig config_;
  const StateNameTable* state_names_;
  std::int64_t last_request_ms_ = 0;
  std::uint64_t remote_requests_ = 0;
  std::uint64_t remote_failures_ = 0;
};

// --- county density --------------------------------------------------------------

struct CountyDensity {
  std::map<std::pair<State, std::string>, std::uint64_t> counts;
  std::uint64_t unresolved = 0;
  std::uint64_t gps_records = 0;
};

CountyDensity county_density_table(std::span<const TweetRecord> records,
                                   CountyResolver& resolver);

}  // namespace tweetlab

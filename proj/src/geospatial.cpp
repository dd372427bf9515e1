#include "tweetlab/geospatial.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "tweetlab/csv.hpp"
#include "tweetlab/ingest.hpp"
#include "tweetlab/util.hpp"

namespace tweetlab {

using nlohmann::json;

// --- state-level tables -----------------------------------------------------

CaseSeries CaseSeries::load(const std::string& path) {
  CaseSeries series;
  for (const auto& row : csv_read_file(path)) {
    if (row.size() < 4) throw std::runtime_error("bad case-series row in " + path);
    const auto date = parse_date(row[0]);
    const auto state = state_from_abbrev(row[1]);
    if (!date || !state)
      throw std::runtime_error("bad case-series row in " + path + ": " + row[0]);
    Point p;
    p.date = *date;
    p.cases = std::stoull(row[2]);
    p.deaths = std::stoull(row[3]);
    series.by_state[*state].push_back(p);
  }
  for (auto& [state, pts] : series.by_state) {
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.date < b.date; });
    for (size_t i = 1; i < pts.size(); ++i) {
      if (pts[i].cases < pts[i - 1].cases || pts[i].deaths < pts[i - 1].deaths)
        throw std::runtime_error("decreasing cumulative series for " +
                                 std::string(state_abbrev(state)));
    }
  }
  return series;
}

StateStatsTable StateStatsTable::load(const std::string& population_path,
                                      const std::string& case_series_path,
                                      Date snapshot) {
  StateStatsTable table;
  for (const auto& row : csv_read_file(population_path)) {
    if (row.size() < 2) continue;
    const auto state = state_from_abbrev(row[0]);
    if (!state)
      throw std::runtime_error("unknown state in " + population_path + ": " + row[0]);
    StateStats s;
    s.population = std::stod(row[1]);
    if (s.population <= 0)
      throw std::runtime_error("non-positive population for " + row[0]);
    table.stats_[*state] = s;
  }
  if (table.stats_.empty())
    throw std::runtime_error("empty population table: " + population_path);

  const CaseSeries series = CaseSeries::load(case_series_path);
  for (const auto& [state, pts] : series.by_state) {
    // last point on or before the snapshot date
    const CaseSeries::Point* chosen = nullptr;
    for (const auto& p : pts) {
      if (p.date <= snapshot) chosen = &p;
    }
    if (!chosen) continue;
    auto it = table.stats_.find(state);
    if (it == table.stats_.end()) continue;
    it->second.cum_cases = static_cast<double>(chosen->cases);
    it->second.cum_deaths = static_cast<double>(chosen->deaths);
  }
  return table;
}

std::optional<StateStats> StateStatsTable::get(State s) const {
  const auto it = stats_.find(s);
  if (it == stats_.end()) return std::nullopt;
  return it->second;
}

std::map<State, double> state_share_table(std::span<const TweetRecord> records) {
  std::map<State, std::uint64_t> counts;
  std::uint64_t total = 0;
  for (const auto& r : records) {
    if (!r.geo.state) continue;
    ++counts[*r.geo.state];
    ++total;
  }
  if (total == 0) throw std::runtime_error("empty corpus");
  std::map<State, double> shares;
  for (const auto& [state, n] : counts)
    shares[state] = 100.0 * static_cast<double>(n) / static_cast<double>(total);
  return shares;
}

NormalizedRates normalize(const std::map<State, std::uint64_t>& tweet_counts,
                          const StateStatsTable& stats, NormalizeBasis basis) {
  NormalizedRates out;
  for (const auto& [state, count] : tweet_counts) {
    const auto s = stats.get(state);
    double denom = 0.0, scale = 1.0;
    if (s) {
      switch (basis) {
        case NormalizeBasis::per_1000_residents:
          denom = s->population;
          scale = 1000.0;
          break;
        case NormalizeBasis::per_case: denom = s->cum_cases; break;
        case NormalizeBasis::per_death: denom = s->cum_deaths; break;
      }
    }
    if (denom <= 0.0) {
      out.excluded.push_back(state);
      continue;
    }
    out.rates[state] = static_cast<double>(count) * scale / denom;
  }
  if (out.rates.empty()) throw std::runtime_error("all normalization denominators are zero");
  return out;
}

// --- geometry ----------------------------------------------------------------

bool point_on_ring_edge(GeoPoint p, const PolygonRing& ring) {
  const auto& pts = ring.pts;
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i) {
    const GeoPoint a = pts[i];
    const GeoPoint b = pts[(i + 1) % n];
    const double cross =
        (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
    if (cross != 0.0) continue;
    if (p.lon < std::min(a.lon, b.lon) || p.lon > std::max(a.lon, b.lon)) continue;
    if (p.lat < std::min(a.lat, b.lat) || p.lat > std::max(a.lat, b.lat)) continue;
    return true;
  }
  return false;
}

bool point_in_ring(GeoPoint p, const PolygonRing& ring) {
  if (point_on_ring_edge(p, ring)) return true;
  const auto& pts = ring.pts;
  const size_t n = pts.size();
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const GeoPoint a = pts[i];
    const GeoPoint b = pts[j];
    const bool straddles = (a.lat > p.lat) != (b.lat > p.lat);
    if (!straddles) continue;
    const double x_at =
        a.lon + (p.lat - a.lat) / (b.lat - a.lat) * (b.lon - a.lon);
    if (p.lon < x_at) inside = !inside;
  }
  return inside;
}

bool CountyShape::contains(GeoPoint p) const {
  if (p.lat < min_lat || p.lat > max_lat || p.lon < min_lon || p.lon > max_lon)
    return false;
  for (const auto& part : parts) {
    if (!point_in_ring(p, part.outer)) continue;
    bool in_hole = false;
    for (const auto& hole : part.holes) {
      // A point on a hole boundary still belongs to the county.
      if (point_in_ring(p, hole) && !point_on_ring_edge(p, hole)) {
        in_hole = true;
        break;
      }
    }
    if (!in_hole) return true;
  }
  return false;
}

namespace {

PolygonRing ring_from_json(const json& coords) {
  PolygonRing ring;
  for (const auto& pt : coords) {
    if (!pt.is_array() || pt.size() < 2)
      throw std::runtime_error("bad ring coordinate");
    ring.pts.push_back(GeoPoint{pt[1].get<double>(), pt[0].get<double>()});
  }
  // GeoJSON rings repeat the first point at the end; drop the duplicate.
  if (ring.pts.size() > 1) {
    const auto& f = ring.pts.front();
    const auto& l = ring.pts.back();
    if (f.lat == l.lat && f.lon == l.lon) ring.pts.pop_back();
  }
  if (ring.pts.size() < 3) throw std::runtime_error("ring with fewer than 3 points");
  return ring;
}

CountyShape::Part part_from_json(const json& rings) {
  CountyShape::Part part;
  if (!rings.is_array() || rings.empty()) throw std::runtime_error("bad polygon");
  part.outer = ring_from_json(rings[0]);
  for (size_t i = 1; i < rings.size(); ++i)
    part.holes.push_back(ring_from_json(rings[i]));
  return part;
}

}  // namespace

CountyIndex CountyIndex::load_geojson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw std::runtime_error("bad GeoJSON: " + path);
  const auto features = doc.find("features");
  if (features == doc.end() || !features->is_array())
    throw std::runtime_error("not a FeatureCollection: " + path);

  CountyIndex index;
  for (const auto& feature : *features) {
    const auto props = feature.find("properties");
    const auto geom = feature.find("geometry");
    if (props == feature.end() || geom == feature.end()) continue;

    CountyShape shape;
    shape.county = props->value("county", props->value("NAME", std::string{}));
    std::string state_str = props->value("state", std::string{});
    auto st = state_from_abbrev(state_str);
    if (!st) throw std::runtime_error("bad state in county feature: " + state_str);
    shape.state = *st;

    const std::string type = geom->value("type", std::string{});
    const auto& coords = (*geom)["coordinates"];
    if (type == "Polygon") {
      shape.parts.push_back(part_from_json(coords));
    } else if (type == "MultiPolygon") {
      for (const auto& poly : coords) shape.parts.push_back(part_from_json(poly));
    } else {
      throw std::runtime_error("unsupported geometry type: " + type);
    }

    shape.min_lat = shape.min_lon = 1e18;
    shape.max_lat = shape.max_lon = -1e18;
    for (const auto& part : shape.parts) {
      for (const auto& p : part.outer.pts) {
        shape.min_lat = std::min(shape.min_lat, p.lat);
        shape.max_lat = std::max(shape.max_lat, p.lat);
        shape.min_lon = std::min(shape.min_lon, p.lon);
        shape.max_lon = std::max(shape.max_lon, p.lon);
      }
    }
    index.shapes_.push_back(std::move(shape));
  }
  if (index.shapes_.empty()) throw std::runtime_error("no county features in " + path);
  return index;
}

const CountyShape* CountyIndex::locate(GeoPoint p) const {
  for (const auto& shape : shapes_) {
    if (shape.contains(p)) return &shape;
  }
  return nullptr;
}

// --- geocode cache ---------------------------------------------------------------

std::pair<std::int64_t, std::int64_t> GeocodeCache::key(GeoPoint p) {
  return {std::llround(p.lat * 10000.0), std::llround(p.lon * 10000.0)};
}

std::optional<GeocodeCache::Entry> GeocodeCache::find(GeoPoint p) const {
  const auto it = map_.find(key(p));
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void GeocodeCache::put(GeoPoint p, Entry e) { map_[key(p)] = std::move(e); }

void GeocodeCache::load(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) return;
  probe.close();
  for (const auto& row : csv_read_file(path)) {
    if (row.size() < 4) continue;
    Entry e;
    if (!row[2].empty()) e.county = row[2];
    if (!row[3].empty()) e.state = state_from_abbrev(row[3]);
    map_[{std::stoll(row[0]), std::stoll(row[1])}] = std::move(e);
  }
}

void GeocodeCache::save(const std::string& path) const {
  CsvWriter w(path);
  w.row({"lat_e4", "lon_e4", "county", "state"});
  for (const auto& [k, e] : map_) {
    w.row({std::to_string(k.first), std::to_string(k.second),
           e.county.value_or(""),
           e.state ? std::string(state_abbrev(*e.state)) : std::string{}});
  }
  w.close();
}

// --- county resolver ---------------------------------------------------------------

CountyResolver::CountyResolver(const CountyIndex* index, GeocodeCache* cache,
                               GeocoderConfig config, const StateNameTable* state_names)
    : index_(index), cache_(cache), config_(std::move(config)),
      state_names_(state_names) {}

CountyResolver::~CountyResolver() = default;

GeocodeCache::Entry CountyResolver::resolve_polygon(GeoPoint p) const {
  GeocodeCache::Entry e;
  if (index_) {
    if (const CountyShape* shape = index_->locate(p)) {
      e.county = shape->county;
      e.state = shape->state;
    }
  }
  return e;
}

CountyResolution CountyResolver::resolve(GeoPoint p) {
  if (cache_) {
    if (auto hit = cache_->find(p)) {
      return {p, hit->county, hit->state, GeocodeMethod::cache};
    }
  }

  GeocodeCache::Entry entry;
  GeocodeMethod method = GeocodeMethod::polygon_lookup;
  if (config_.mode == GeocoderConfig::Mode::remote) {
    if (auto remote = resolve_remote(p)) {
      entry = std::move(*remote);
      method = GeocodeMethod::remote_geocoder;
    } else {
      entry = resolve_polygon(p);
    }
  } else {
    entry = resolve_polygon(p);
  }

  if (cache_) cache_->put(p, entry);
  return {p, entry.county, entry.state, method};
}

CountyDensity county_density_table(std::span<const TweetRecord> records,
                                   CountyResolver& resolver) {
  CountyDensity out;
  for (const auto& r : records) {
    if (r.geo.precision != GeoPrecision::exact_gps || !r.geo.point) continue;
    ++out.gps_records;
    const CountyResolution res = resolver.resolve(*r.geo.point);
    if (res.county && res.state) {
      ++out.counts[{*res.state, *res.county}];
    } else {
      ++out.unresolved;
    }
  }
  return out;
}

}  // namespace tweetlab

// Remote reverse-geocoding client, kept in its own TU because of httplib.

#include <chrono>
#include <cstdio>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "tweetlab/geospatial.hpp"
#include "tweetlab/ingest.hpp"

namespace tweetlab {

using nlohmann::json;

static std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::optional<GeocodeCache::Entry> CountyResolver::resolve_remote(GeoPoint p) {
  if (config_.endpoint.empty()) return std::nullopt;

  char path[128];
  std::snprintf(path, sizeof(path), "/reverse?lat=%.6f&lon=%.6f&format=jsonv2", p.lat,
                p.lon);

  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    // Public geocoders require pacing; default is one request per second.
    const std::int64_t pace_ms =
        static_cast<std::int64_t>(config_.pace_seconds * 1000.0);
    const std::int64_t wait = last_request_ms_ + pace_ms - now_ms();
    if (wait > 0) std::this_thread::sleep_for(std::chrono::milliseconds(wait));
    last_request_ms_ = now_ms();

    ++remote_requests_;
    httplib::Client client(config_.endpoint);
    client.set_connection_timeout(5);
    client.set_read_timeout(10);
    httplib::Headers headers;
    if (!config_.contact.empty())
      headers.emplace("User-Agent", "tweetlab/1.0 (" + config_.contact + ")");

    auto res = client.Get(path, headers);
    if (!res || res->status != 200) {
      ++remote_failures_;
      continue;
    }
    json doc = json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      ++remote_failures_;
      continue;
    }
    GeocodeCache::Entry entry;
    if (const auto addr = doc.find("address"); addr != doc.end() && addr->is_object()) {
      if (addr->contains("county") && (*addr)["county"].is_string())
        entry.county = (*addr)["county"].get<std::string>();
      if (addr->contains("state") && (*addr)["state"].is_string()) {
        const std::string s = (*addr)["state"].get<std::string>();
        entry.state = state_from_abbrev(s);
        if (!entry.state && state_names_) entry.state = state_names_->from_name(s);
      }
    }
    // A well-formed response without a county is a miss, not a failure.
    return entry;
  }
  return std::nullopt;
}

}  // namespace tweetlab

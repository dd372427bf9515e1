#pragma once

#include <optional>
#include <string>

#include "tweetlab/states.hpp"
#include "tweetlab/time.hpp"

namespace tweetlab {

enum class GeoPrecision { exact_gps, bounding_place, none };

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

struct GeoTag {
  std::string country_code;  // uppercased 2-letter code, empty when absent
  std::optional<State> state;
  std::optional<std::string> county;
  std::optional<GeoPoint> point;
  GeoPrecision precision = GeoPrecision::none;
};

enum class SourceCorpus { primary, compensation };

std::string_view source_corpus_name(SourceCorpus s);

// One normalized tweet. Everything downstream consumes this shape.
struct TweetRecord {
  std::string tweet_id;
  std::string user_id;
  UtcTime created_at_utc;
  std::string text;
  GeoTag geo;
  bool is_retweet = false;
  SourceCorpus source_corpus = SourceCorpus::primary;
};

}  // namespace tweetlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tweetlab/clean.hpp"
#include "tweetlab/geospatial.hpp"
#include "tweetlab/lda.hpp"
#include "tweetlab/states.hpp"
#include "tweetlab/time.hpp"

namespace tweetlab {

struct ResourcePaths {
  std::string state_table;
  std::string clock_rules;
  std::string keywords;
  std::string event_calendar;
  std::string emoji_table;
  std::string lexicon;
  std::string stopwords;
  std::string county_boundaries;
  std::string population_table;
  std::string case_series;
};

struct TopicsConfig {
  std::vector<int> candidates{10};
  int repeats = 10;
  int passes = 500;
  LdaWeighting weighting = LdaWeighting::tfidf_scaled;
  double beta = 0.01;
  double alpha = 0.0;  // <= 0 -> 50/K
  int top_n = 10;      // coherence top words
  int coherence_window = 110;
  double elbow_threshold = 0.05;
  size_t min_token_len = 2;
  bool dedup_by_text = false;
  int top_words_per_topic = 40;
};

struct SentimentConfig {
  std::vector<double> subj_thresholds{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> pol_thresholds{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int window_days = 7;
  bool daily_by_state = true;
  std::vector<State> case_event_states{State::CA, State::TX, State::FL, State::NY,
                                       State::GA, State::PA, State::IL, State::MD,
                                       State::VA, State::AZ};
  std::vector<State> reopen_event_states{State::TX, State::GA, State::TN,
                                         State::CO, State::AL, State::MS,
                                         State::ID, State::AK, State::MT};
};

struct EngagementConfig {
  int weeks_before = 5;
  int weeks_after = 3;
  int top_states = 10;
};

struct GeocoderRunConfig {
  GeocoderConfig::Mode mode = GeocoderConfig::Mode::polygon;
  std::string endpoint;
  double pace_seconds = 1.0;
  int max_retries = 1;
  std::string cache_file;
};

struct CorrelationConfig {
  double r_threshold = 0.8;
  double p_threshold = 0.001;
};

struct VariantConfig {
  std::string canonical = "covid19";
  std::vector<std::string> variants{"covid_19", "covid-19", "covid2019",
                                    "coronavid19", "covid"};
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> compensation_inputs;
  std::string out_dir = "out";
  Date window_from{2020, 1, 25};
  Date window_to{2020, 5, 10};
  std::uint64_t seed = 1;
  int workers = 1;
  std::vector<State> states;  // empty = all
  std::vector<Date> exclude_dates;
  std::optional<Date> normalization_snapshot;  // default: window_to

  ResourcePaths resources;
  BotThresholds bots;
  EngagementConfig engagement;
  TopicsConfig topics;
  SentimentConfig sentiment;
  GeocoderRunConfig geocoder;
  CorrelationConfig correlations;
  VariantConfig variants;

  static RunConfig from_json_file(const std::string& path);
  void apply_json_file(const std::string& path);

  // Canonical JSON rendering (sorted keys); config_hash is its FNV-1a.
  std::string canonical_json() const;
  std::uint64_t config_hash() const;
};

}  // namespace tweetlab

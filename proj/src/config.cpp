#include "tweetlab/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "tweetlab/util.hpp"

namespace tweetlab {

using nlohmann::json;

namespace {

Date require_date(const json& j, const char* what) {
  const auto d = parse_date(j.get<std::string>());
  if (!d) throw std::runtime_error(std::string("bad date for ") + what);
  return *d;
}

std::vector<State> parse_states(const json& arr, const char* what) {
  std::vector<State> out;
  for (const auto& s : arr) {
    const auto st = state_from_abbrev(s.get<std::string>());
    if (!st)
      throw std::runtime_error(std::string("unknown state in ") + what + ": " +
                               s.get<std::string>());
    out.push_back(*st);
  }
  return out;
}

void apply_resources(ResourcePaths& r, const json& j) {
  if (j.contains("state_table")) r.state_table = j["state_table"].get<std::string>();
  if (j.contains("clock_rules")) r.clock_rules = j["clock_rules"].get<std::string>();
  if (j.contains("keywords")) r.keywords = j["keywords"].get<std::string>();
  if (j.contains("event_calendar"))
    r.event_calendar = j["event_calendar"].get<std::string>();
  if (j.contains("emoji_table")) r.emoji_table = j["emoji_table"].get<std::string>();
  if (j.contains("lexicon")) r.lexicon = j["lexicon"].get<std::string>();
  if (j.contains("stopwords")) r.stopwords = j["stopwords"].get<std::string>();
  if (j.contains("county_boundaries"))
    r.county_boundaries = j["county_boundaries"].get<std::string>();
  if (j.contains("population_table"))
    r.population_table = j["population_table"].get<std::string>();
  if (j.contains("case_series")) r.case_series = j["case_series"].get<std::string>();
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::string& path) {
  RunConfig cfg;
  cfg.apply_json_file(path);
  return cfg;
}

void RunConfig::apply_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw std::runtime_error("config is not a JSON object: " + path);

  if (j.contains("inputs")) inputs = j["inputs"].get<std::vector<std::string>>();
  if (j.contains("compensation_inputs"))
    compensation_inputs = j["compensation_inputs"].get<std::vector<std::string>>();
  if (j.contains("out_dir")) out_dir = j["out_dir"].get<std::string>();
  if (j.contains("window")) {
    const auto& w = j["window"];
    if (w.contains("from")) window_from = require_date(w["from"], "window.from");
    if (w.contains("to")) window_to = require_date(w["to"], "window.to");
  }
  if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
  if (j.contains("workers")) workers = j["workers"].get<int>();
  if (j.contains("states")) states = parse_states(j["states"], "states");
  if (j.contains("exclude_dates")) {
    exclude_dates.clear();
    for (const auto& d : j["exclude_dates"])
      exclude_dates.push_back(require_date(d, "exclude_dates"));
  }
  if (j.contains("normalization_snapshot"))
    normalization_snapshot = require_date(j["normalization_snapshot"],
                                          "normalization_snapshot");

  if (j.contains("resources")) apply_resources(resources, j["resources"]);

  if (j.contains("bots")) {
    const auto& b = j["bots"];
    if (b.contains("cap")) bots.cap = b["cap"].get<std::uint64_t>();
    if (b.contains("floor")) bots.floor = b["floor"].get<std::uint64_t>();
    if (b.contains("coverage")) bots.coverage = b["coverage"].get<double>();
  }
  if (j.contains("engagement")) {
    const auto& e = j["engagement"];
    if (e.contains("weeks_before")) engagement.weeks_before = e["weeks_before"].get<int>();
    if (e.contains("weeks_after")) engagement.weeks_after = e["weeks_after"].get<int>();
    if (e.contains("top_states")) engagement.top_states = e["top_states"].get<int>();
  }
  if (j.contains("topics")) {
    const auto& t = j["topics"];
    if (t.contains("candidates")) topics.candidates = t["candidates"].get<std::vector<int>>();
    if (t.contains("repeats")) topics.repeats = t["repeats"].get<int>();
    if (t.contains("passes")) topics.passes = t["passes"].get<int>();
    if (t.contains("weighting")) {
      const std::string w = t["weighting"].get<std::string>();
      if (w == "bow")
        topics.weighting = LdaWeighting::bow;
      else if (w == "tfidf_scaled")
        topics.weighting = LdaWeighting::tfidf_scaled;
      else
        throw std::runtime_error("unknown topics.weighting: " + w);
    }
    if (t.contains("beta")) topics.beta = t["beta"].get<double>();
    if (t.contains("alpha")) topics.alpha = t["alpha"].get<double>();
    if (t.contains("top_n")) topics.top_n = t["top_n"].get<int>();
    if (t.contains("coherence_window"))
      topics.coherence_window = t["coherence_window"].get<int>();
    if (t.contains("elbow_threshold"))
      topics.elbow_threshold = t["elbow_threshold"].get<double>();
    if (t.contains("min_token_len"))
      topics.min_token_len = t["min_token_len"].get<size_t>();
    if (t.contains("dedup_by_text")) topics.dedup_by_text = t["dedup_by_text"].get<bool>();
    if (t.contains("top_words_per_topic"))
      topics.top_words_per_topic = t["top_words_per_topic"].get<int>();
  }
  if (j.contains("sentiment")) {
    const auto& s = j["sentiment"];
    if (s.contains("subj_thresholds"))
      sentiment.subj_thresholds = s["subj_thresholds"].get<std::vector<double>>();
    if (s.contains("pol_thresholds"))
      sentiment.pol_thresholds = s["pol_thresholds"].get<std::vector<double>>();
    if (s.contains("window_days")) sentiment.window_days = s["window_days"].get<int>();
    if (s.contains("daily_by_state"))
      sentiment.daily_by_state = s["daily_by_state"].get<bool>();
    if (s.contains("case_event_states"))
      sentiment.case_event_states = parse_states(s["case_event_states"],
                                                 "case_event_states");
    if (s.contains("reopen_event_states"))
      sentiment.reopen_event_states = parse_states(s["reopen_event_states"],
                                                   "reopen_event_states");
  }
  if (j.contains("geocoder")) {
    const auto& g = j["geocoder"];
    if (g.contains("mode")) {
      const std::string m = g["mode"].get<std::string>();
      if (m == "polygon")
        geocoder.mode = GeocoderConfig::Mode::polygon;
      else if (m == "remote")
        geocoder.mode = GeocoderConfig::Mode::remote;
      else
        throw std::runtime_error("unknown geocoder.mode: " + m);
    }
    if (g.contains("endpoint")) geocoder.endpoint = g["endpoint"].get<std::string>();
    if (g.contains("pace_seconds")) geocoder.pace_seconds = g["pace_seconds"].get<double>();
    if (g.contains("max_retries")) geocoder.max_retries = g["max_retries"].get<int>();
    if (g.contains("cache_file")) geocoder.cache_file = g["cache_file"].get<std::string>();
  }
  if (j.contains("correlations")) {
    const auto& c = j["correlations"];
    if (c.contains("r_threshold")) correlations.r_threshold = c["r_threshold"].get<double>();
    if (c.contains("p_threshold")) correlations.p_threshold = c["p_threshold"].get<double>();
  }
  if (j.contains("variants")) {
    const auto& v = j["variants"];
    if (v.contains("canonical")) variants.canonical = v["canonical"].get<std::string>();
    if (v.contains("list")) variants.variants = v["list"].get<std::vector<std::string>>();
  }
}

std::string RunConfig::canonical_json() const {
  json j;
  j["inputs"] = inputs;
  j["compensation_inputs"] = compensation_inputs;
  j["out_dir"] = out_dir;
  j["window"] = {{"from", format_date(window_from)}, {"to", format_date(window_to)}};
  j["seed"] = seed;
  j["workers"] = workers;
  {
    std::vector<std::string> abbrevs;
    for (const State s : states) abbrevs.emplace_back(state_abbrev(s));
    j["states"] = abbrevs;
  }
  {
    std::vector<std::string> dates;
    for (const Date d : exclude_dates) dates.push_back(format_date(d));
    j["exclude_dates"] = dates;
  }
  if (normalization_snapshot)
    j["normalization_snapshot"] = format_date(*normalization_snapshot);

  j["resources"] = {
      {"state_table", resources.state_table},
      {"clock_rules", resources.clock_rules},
      {"keywords", resources.keywords},
      {"event_calendar", resources.event_calendar},
      {"emoji_table", resources.emoji_table},
      {"lexicon", resources.lexicon},
      {"stopwords", resources.stopwords},
      {"county_boundaries", resources.county_boundaries},
      {"population_table", resources.population_table},
      {"case_series", resources.case_series},
  };
  j["bots"] = {{"cap", bots.cap}, {"floor", bots.floor}, {"coverage", bots.coverage}};
  j["engagement"] = {{"weeks_before", engagement.weeks_before},
                     {"weeks_after", engagement.weeks_after},
                     {"top_states", engagement.top_states}};
  j["topics"] = {
      {"candidates", topics.candidates},
      {"repeats", topics.repeats},
      {"passes", topics.passes},
      {"weighting", topics.weighting == LdaWeighting::bow ? "bow" : "tfidf_scaled"},
      {"beta", topics.beta},
      {"alpha", topics.alpha},
      {"top_n", topics.top_n},
      {"coherence_window", topics.coherence_window},
      {"elbow_threshold", topics.elbow_threshold},
      {"min_token_len", topics.min_token_len},
      {"dedup_by_text", topics.dedup_by_text},
      {"top_words_per_topic", topics.top_words_per_topic},
  };
  {
    std::vector<std::string> case_states, reopen_states;
    for (const State s : sentiment.case_event_states)
      case_states.emplace_back(state_abbrev(s));
    for (const State s : sentiment.reopen_event_states)
      reopen_states.emplace_back(state_abbrev(s));
    j["sentiment"] = {
        {"subj_thresholds", sentiment.subj_thresholds},
        {"pol_thresholds", sentiment.pol_thresholds},
        {"window_days", sentiment.window_days},
        {"daily_by_state", sentiment.daily_by_state},
        {"case_event_states", case_states},
        {"reopen_event_states", reopen_states},
    };
  }
  j["geocoder"] = {
      {"mode", geocoder.mode == GeocoderConfig::Mode::polygon ? "polygon" : "remote"},
      {"endpoint", geocoder.endpoint},
      {"pace_seconds", geocoder.pace_seconds},
      {"max_retries", geocoder.max_retries},
      {"cache_file", geocoder.cache_file},
  };
  j["correlations"] = {{"r_threshold", correlations.r_threshold},
                       {"p_threshold", correlations.p_threshold}};
  j["variants"] = {{"canonical", variants.canonical}, {"list", variants.variants}};
  return j.dump();
}

std::uint64_t RunConfig::config_hash() const { return fnv1a64(canonical_json()); }

}  // namespace tweetlab

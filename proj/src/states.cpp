#include "tweetlab/states.hpp"

#include "tweetlab/util.hpp"

namespace tweetlab {

namespace {
constexpr std::array<std::string_view, kStateCount> kAbbrevs = {
    "AL", "AK", "AZ", "AR", "CA", "CO", "CT", "DC", "DE", "FL", "GA", "HI", "ID",
    "IL", "IN", "IA", "KS", "KY", "LA", "ME", "MD", "MA", "MI", "MN", "MS", "MO",
    "MT", "NE", "NV", "NH", "NJ", "NM", "NY", "NC", "ND", "OH", "OK", "OR", "PA",
    "RI", "SC", "SD", "TN", "TX", "UT", "VT", "VA", "WA", "WV", "WI", "WY"};
}  // namespace

std::string_view state_abbrev(State s) { return kAbbrevs[static_cast<size_t>(s)]; }

std::optional<State> state_from_abbrev(std::string_view a) {
  if (a.size() != 2) return std::nullopt;
  for (size_t i = 0; i < kAbbrevs.size(); ++i) {
    if (iequals_ascii(a, kAbbrevs[i])) return static_cast<State>(i);
  }
  return std::nullopt;
}

const std::array<State, kStateCount>& all_states() {
  static const std::array<State, kStateCount> states = [] {
    std::array<State, kStateCount> a{};
    for (int i = 0; i < kStateCount; ++i) a[static_cast<size_t>(i)] = static_cast<State>(i);
    return a;
  }();
  return states;
}

}  // namespace tweetlab

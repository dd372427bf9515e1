#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tweetlab {

// The 50 U.S. states plus Washington D.C., ordered by postal abbreviation.
enum class State : std::uint8_t {
  AL, AK, AZ, AR, CA, CO, CT, DC, DE, FL, GA, HI, ID, IL, IN, IA, KS, KY,
  LA, ME, MD, MA, MI, MN, MS, MO, MT, NE, NV, NH, NJ, NM, NY, NC, ND, OH,
  OK, OR, PA, RI, SC, SD, TN, TX, UT, VT, VA, WA, WV, WI, WY,
};

inline constexpr int kStateCount = 51;

std::string_view state_abbrev(State s);
std::optional<State> state_from_abbrev(std::string_view a);  // case-insensitive
const std::array<State, kStateCount>& all_states();

}  // namespace tweetlab

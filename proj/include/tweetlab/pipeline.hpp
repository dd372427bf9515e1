#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tweetlab/config.hpp"

namespace tweetlab {

inline constexpr const char* kSubcommands[] = {
    "ingest", "clean", "volumes", "engagement", "geo",
    "topics", "sentiment", "events", "stats", "all",
};

bool is_subcommand(std::string_view name);

// Runs one subcommand end to end. Returns 0 on success; on failure logs the
// module error, removes the artifacts written during this run, and returns 1.
int run_pipeline(const std::string& subcommand, const RunConfig& config,
                 std::ostream& log);

}  // namespace tweetlab

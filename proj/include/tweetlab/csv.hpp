#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace tweetlab {

// RFC 4180 style quoting: fields containing comma, quote, or newline are
// wrapped in double quotes with inner quotes doubled.
std::string csv_escape(std::string_view field);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void row(const std::vector<std::string>& fields);
  void close();
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

// Splits one CSV line honoring quoted fields. No multi-line fields.
std::vector<std::string> csv_parse_line(std::string_view line);

// Reads a whole CSV file; skip_header drops the first row.
std::vector<std::vector<std::string>> csv_read_file(const std::string& path,
                                                    bool skip_header = true);

}  // namespace tweetlab

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace pmm::cli {

// Shortest round-trip decimal form, '.' separator, independent of locale.
std::string format_number(double x);
// Empty cell for a missing value.
std::string format_number(std::optional<double> x);

// Quotes the cell when it contains a comma, quote, CR or LF.
std::string csv_escape(const std::string& cell);
std::string csv_line(const std::vector<std::string>& cells);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Streams rows as they arrive. Every row must match the header width.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  void write_row(const std::vector<std::string>& cells);
  void flush();

 private:
  std::filesystem::path path_;
  std::size_t width_;
  std::ofstream out_;
};

}  // namespace pmm::cli

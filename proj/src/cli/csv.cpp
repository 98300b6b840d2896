#include "pmm/cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "pmm/error.hpp"

namespace pmm::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(std::optional<double> x) {
  return x ? format_number(*x) : std::string();
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line.push_back(',');
    line += csv_escape(cells[i]);
  }
  line += "\r\n";
  return line;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  CsvWriter w(path, header);
  for (const auto& r : rows) w.write_row(r);
  w.flush();
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : path_(path), width_(header.size()), out_(path, std::ios::binary) {
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  if (header.empty()) throw InvalidArgument("CsvWriter: empty header");
  out_ << csv_line(header);
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) {
    throw InvalidArgument("CsvWriter: row has " + std::to_string(cells.size()) +
                          " cells, header has " + std::to_string(width_));
  }
  out_ << csv_line(cells);
  if (!out_) throw IoError("write failed for " + path_.string());
}

void CsvWriter::flush() {
  out_.flush();
  if (!out_) throw IoError("write failed for " + path_.string());
}

}  // namespace pmm::cli

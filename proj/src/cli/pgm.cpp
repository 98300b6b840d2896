#include "pmm/cli/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

#include "pmm/error.hpp"

namespace pmm::cli {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw IoError("PGM: " + what + " at byte offset " + std::to_string(pos_));
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = static_cast<unsigned char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::size_t read_uint(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) fail(std::string("unexpected end of header reading ") + what);
    if (!std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      fail(std::string("expected ") + what);
    }
    std::size_t value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      const auto digit = static_cast<std::size_t>(bytes_[pos_] - '0');
      if (value > (std::numeric_limits<std::size_t>::max() - digit) / 10) {
        fail(std::string(what) + " overflows");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  void expect_magic() {
    if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != '5') {
      fail("missing P5 magic number");
    }
    pos_ = 2;
  }

  void expect_single_space() {
    if (pos_ >= bytes_.size()) fail("missing whitespace after maxval");
    if (!std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      fail("expected whitespace after maxval");
    }
    ++pos_;
  }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

DenseField parse_pgm(const std::string& bytes) {
  HeaderReader reader(bytes);
  reader.expect_magic();
  const std::size_t width = reader.read_uint("width");
  const std::size_t height = reader.read_uint("height");
  const std::size_t maxval = reader.read_uint("maxval");
  if (width == 0 || height == 0) reader.fail("zero image dimension");
  if (maxval != 255 && maxval != 65535) {
    reader.fail("unsupported maxval " + std::to_string(maxval) + " (need 255 or 65535)");
  }
  reader.expect_single_space();

  const std::size_t bytes_per_sample = maxval == 255 ? 1 : 2;
  const std::size_t start = reader.offset();
  const std::size_t expected = width * height * bytes_per_sample;
  const std::size_t actual = bytes.size() - start;
  if (actual < expected) {
    throw IoError("PGM: truncated payload at byte offset " + std::to_string(start) +
                  ": expected " + std::to_string(expected) + " bytes, found " +
                  std::to_string(actual));
  }

  DenseField out(height, width);
  const double scale = 1.0 / static_cast<double>(maxval);
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + start);
  for (std::size_t k = 0; k < out.size(); ++k) {
    unsigned sample = 0;
    if (bytes_per_sample == 1) {
      sample = data[k];
    } else {
      sample = (static_cast<unsigned>(data[2 * k]) << 8) | data[2 * k + 1];
    }
    if (sample > maxval) {
      throw IoError("PGM: sample exceeds maxval at byte offset " +
                    std::to_string(start + k * bytes_per_sample));
    }
    out[k] = static_cast<double>(sample) * scale;
  }
  return out;
}

DenseField read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_pgm(bytes);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string encode_pgm(const DenseField& image, int maxval) {
  if (maxval != 255 && maxval != 65535) {
    throw InvalidArgument("write_pgm: maxval must be 255 or 65535");
  }
  if (image.empty()) throw InvalidArgument("write_pgm: empty image");
  if (!image.all_finite()) throw InvalidArgument("write_pgm: non-finite intensities");
  std::string out = "P5\n" + std::to_string(image.cols()) + " " + std::to_string(image.rows()) +
                    "\n" + std::to_string(maxval) + "\n";
  const double mv = static_cast<double>(maxval);
  for (double x : image.span()) {
    const auto q = static_cast<unsigned>(std::lround(std::clamp(x, 0.0, 1.0) * mv));
    if (maxval == 255) {
      out.push_back(static_cast<char>(q));
    } else {
      out.push_back(static_cast<char>(q >> 8));
      out.push_back(static_cast<char>(q & 0xFFu));
    }
  }
  return out;
}

void write_pgm(const std::filesystem::path& path, const DenseField& image, int maxval) {
  const std::string bytes = encode_pgm(image, maxval);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace pmm::cli

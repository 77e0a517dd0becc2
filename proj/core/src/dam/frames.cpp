#include "irfit/dam/frames.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "irfit/errors.hpp"

namespace irfit::dam {

std::size_t BinaryFrame::index(int row, int col) {
  if (row < 1 || row > kRows || col < 1 || col > kCols) throw std::out_of_range("frame cell out of range");
  return static_cast<std::size_t>((row - 1) * kCols + (col - 1));
}

namespace {

// 1-based cell index for a coordinate in [0, extent], or 0 when outside.
int cell_index(double v, int extent) {
  if (!(v >= 0.0) || v > static_cast<double>(extent)) return 0;
  const int c = static_cast<int>(std::floor(v)) + 1;
  return c > extent ? extent : c;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

BinaryFrame rasterize(std::span<const double> centers) {
  BinaryFrame frame;
  for (std::size_t j = 0; j + 1 < centers.size(); j += 2) {
    const int col = cell_index(centers[j], kCols);
    const int row = cell_index(centers[j + 1], kRows);
    if (col != 0 && row != 0) frame.set(row, col);
  }
  return frame;
}

int fitness(const BinaryFrame& a, const BinaryFrame& b) {
  return kCells - static_cast<int>((a.bits() ^ b.bits()).count());
}

ExperimentFrames parse_frames(std::istream& in, const std::string& source) {
  ExperimentFrames result;
  std::string line;
  int line_no = 0;
  int block = -1;
  int rows_read = kRows;  // no block open yet

  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;

    if (text.rfind("t=", 0) == 0) {
      if (rows_read != kRows) throw ParseError(source, line_no, "block " + std::to_string(block + 1) + " has only " + std::to_string(rows_read) + " rows");
      if (++block >= kFrameCount) throw ParseError(source, line_no, "more than 4 frame blocks");
      try {
        std::size_t used = 0;
        result.times[block] = std::stod(text.substr(2), &used);
        if (used != text.size() - 2) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "invalid time header '" + text + "'");
      }
      rows_read = 0;
      continue;
    }

    if (block < 0 || rows_read >= kRows) throw ParseError(source, line_no, "unexpected row outside a t= block");
    std::istringstream row_stream(text);
    std::string token;
    int col = 0;
    const int row = kRows - rows_read;  // listed top-down
    while (row_stream >> token) {
      if (token != "0" && token != "1") throw ParseError(source, line_no, "row " + std::to_string(row) + ": entry '" + token + "' is not 0 or 1");
      if (++col > kCols) break;
      result.frames[block].set(row, col, token == "1");
    }
    if (col != kCols) {
      throw ParseError(source, line_no, "row " + std::to_string(row) + " of block " + std::to_string(block + 1) + " has " + std::to_string(col) + " columns, expected 20");
    }
    ++rows_read;
  }
  if (block != kFrameCount - 1) throw ParseError(source, line_no, "expected 4 frame blocks, found " + std::to_string(block + 1));
  if (rows_read != kRows) throw ParseError(source, line_no, "last block is incomplete");
  for (int k = 1; k < kFrameCount; ++k) {
    if (!(result.times[k] > result.times[k - 1])) throw ParseError(source, line_no, "frame times must be strictly increasing");
  }
  if (!(result.times[0] > 0.0)) throw ParseError(source, line_no, "frame times must be positive");
  return result;
}

ExperimentFrames load_frames(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open frames file");
  return parse_frames(in, path);
}

void write_frames(std::ostream& out, const ExperimentFrames& frames) {
  for (int k = 0; k < kFrameCount; ++k) {
    if (k > 0) out << '\n';
    out << "t=" << frames.times[k] << '\n';
    for (int row = kRows; row >= 1; --row) {
      for (int col = 1; col <= kCols; ++col) out << (col > 1 ? " " : "") << (frames.frames[k].at(row, col) ? '1' : '0');
      out << '\n';
    }
  }
}

std::string render_ascii(const BinaryFrame& frame) {
  std::string out;
  for (int row = kRows; row >= 1; --row) {
    for (int col = 1; col <= kCols; ++col) out += frame.at(row, col) ? '#' : '.';
    out += '\n';
  }
  return out;
}

std::string render_pgm(const BinaryFrame& frame) {
  std::string out = "P5\n" + std::to_string(kCols) + " " + std::to_string(kRows) + "\n255\n";
  for (int row = kRows; row >= 1; --row) {
    for (int col = 1; col <= kCols; ++col) out += static_cast<char>(frame.at(row, col) ? 255 : 0);
  }
  return out;
}

}  // namespace irfit::dam

#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace irfit::dam {

inline constexpr int kRows = 8;
inline constexpr int kCols = 20;
inline constexpr int kCells = kRows * kCols;
inline constexpr int kFrameCount = 4;

/// 8x20 occupancy grid over [0,20]x[0,8] with 1 cm cells. Row 1 is the
/// bottom row, column 1 touches the closed wall at x = 0. Indices here are
/// 1-based to match that convention.
class BinaryFrame {
 public:
  bool at(int row, int col) const { return bits_[index(row, col)]; }
  void set(int row, int col, bool value = true) { bits_[index(row, col)] = value; }
  int count() const { return static_cast<int>(bits_.count()); }
  const std::bitset<kCells>& bits() const noexcept { return bits_; }

  friend bool operator==(const BinaryFrame&, const BinaryFrame&) = default;

 private:
  static std::size_t index(int row, int col);
  std::bitset<kCells> bits_;
};

/// Marks every cell that contains at least one center. Cells are half-open
/// [c-1, c) x [r-1, r) except the last column/row, which also include their
/// right/top edge. Centers outside the grid are ignored.
BinaryFrame rasterize(std::span<const double> centers);

/// Number of cells on which the two frames agree (160 minus Hamming distance).
int fitness(const BinaryFrame& a, const BinaryFrame& b);

struct ExperimentFrames {
  std::array<BinaryFrame, kFrameCount> frames;
  std::array<double, kFrameCount> times{0.44, 1.10, 2.20, 5.0};
};

/// Frames file: four blocks separated by blank lines. Each block has a header
/// `t=<value>` and 8 rows of 20 space-separated 0/1 digits, top row first.
/// Lines starting with '#' are comments. Throws ParseError with the line number.
ExperimentFrames parse_frames(std::istream& in, const std::string& source = "<frames>");
ExperimentFrames load_frames(const std::string& path);
void write_frames(std::ostream& out, const ExperimentFrames& frames);

/// '#' for occupied cells, '.' for empty ones, top row first.
std::string render_ascii(const BinaryFrame& frame);
/// Binary PGM (P5), 20x8, occupied = 255.
std::string render_pgm(const BinaryFrame& frame);

}  // namespace irfit::dam

#include "cli/render.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "tilekit/error.hpp"

namespace tilekit::cli {

namespace {

constexpr char kGlyphs[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
constexpr long kUncovered = -1;
constexpr long kOverlap = -2;

}  // namespace

std::string render_tiling(const Tile& f, const PeriodicSet& a, long n, RenderFormat format) {
  const std::size_t d = f.dim();
  if (d != a.dim()) throw Error(ErrorCode::kDimensionMismatch, "tile and co-tile differ in dimension");
  if (d > 2) throw Error(ErrorCode::kInvalidArgument, "rendering supports dimensions 1 and 2");
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "window radius must be non-negative");

  const long rows = d == 2 ? 2 * n + 1 : 1;
  const long cols = 2 * n + 1;
  std::map<Vec, long> label;
  std::vector<std::vector<long>> grid(rows, std::vector<long>(cols, kUncovered));
  // top row is the largest second coordinate
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      Vec x = d == 2 ? make_vec({c - n, n - r}) : make_vec({c - n});
      long hit = kUncovered;
      for (const auto& p : f.points()) {
        const Vec t = x - p;
        if (!a.contains(t)) continue;
        if (hit != kUncovered) {
          hit = kOverlap;
          break;
        }
        hit = label.try_emplace(t, static_cast<long>(label.size())).first->second;
      }
      grid[r][c] = hit;
    }
  }

  std::ostringstream out;
  if (format == RenderFormat::kAscii) {
    const long glyphs = static_cast<long>(sizeof(kGlyphs) - 1);
    for (const auto& row : grid) {
      for (long cell : row) out << (cell == kUncovered ? '.' : cell == kOverlap ? '#' : kGlyphs[cell % glyphs]);
      out << '\n';
    }
    return out.str();
  }

  constexpr int kCell = 16;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * kCell << "\" height=\"" << rows * kCell
      << "\">\n";
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      const long cell = grid[r][c];
      std::string fill = cell == kUncovered ? "#ffffff" : cell == kOverlap ? "#000000" : "";
      if (fill.empty()) fill = "hsl(" + std::to_string((cell * 137) % 360) + ",65%,60%)";
      out << "  <rect x=\"" << c * kCell << "\" y=\"" << r * kCell << "\" width=\"" << kCell << "\" height=\"" << kCell
          << "\" fill=\"" << fill << "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tilekit::cli

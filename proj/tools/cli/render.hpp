#pragma once

#include <string>

#include "tilekit/lattice.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit::cli {

enum class RenderFormat { kAscii, kSvg };

// Draws the window [-n, n]^d of the tiling F + A (d = 1 or 2), one symbol or
// colour per translate a + F. Uncovered cells show '.', doubly covered '#'.
std::string render_tiling(const Tile& f, const PeriodicSet& a, long n, RenderFormat format);

}  // namespace tilekit::cli

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skylink/wavefront.hpp"

namespace skylink {

// One CSV row. Sphere fronts use (lat, lon) for the point and lat/lon chart
// components for the conormal.
struct FrontRow {
  double s, px, py, nx, ny, t;
};

std::vector<FrontRow> front_rows(const Front& front);

// Header "s,px,py,nx,ny,t", 12 significant digits.
void write_front_csv(std::ostream& out, const Front& front);
std::vector<FrontRow> read_front_csv(std::istream& in);

struct SvgOptions {
  int tick_every = 32;  // conormal tick every k samples
  double tick_length = 0.05;
  double size_px = 512.0;
  std::optional<SurfacePoint> refocus;  // annotated when present
};

void write_front_svg(std::ostream& out, const Front& front, const SvgOptions& options = {});

}  // namespace skylink

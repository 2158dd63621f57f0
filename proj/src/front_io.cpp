#include "skylink/front_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "skylink/error.hpp"

namespace skylink {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<FrontRow> front_rows(const Front& front) {
  const SurfaceModel& m = front.model();
  const double t = front.slice_time() - front.source().time;
  std::vector<FrontRow> rows;
  rows.reserve(front.size());
  for (const auto& smp : front.samples()) {
    const Vec2 c = m.to_chart(smp.point);
    const Vec2 n = m.chart_components(smp.conormal);
    rows.push_back({smp.s, c[0], c[1], n[0], n[1], t});
  }
  return rows;
}

void write_front_csv(std::ostream& out, const Front& front) {
  out << "s,px,py,nx,ny,t\n";
  for (const auto& r : front_rows(front))
    out << num(r.s) << ',' << num(r.px) << ',' << num(r.py) << ',' << num(r.nx) << ',' << num(r.ny) << ','
        << num(r.t) << '\n';
  if (!out) throw Error(ErrorCode::Io, "failed to write front CSV");
}

std::vector<FrontRow> read_front_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "s,px,py,nx,ny,t")
    throw Error(ErrorCode::Io, "front CSV header must be s,px,py,nx,ny,t");
  std::vector<FrontRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    FrontRow r{};
    if (!(fields >> r.s >> r.px >> r.py >> r.nx >> r.ny >> r.t))
      throw Error(ErrorCode::Io, "malformed front CSV row: " + line);
    rows.push_back(r);
  }
  return rows;
}

void write_front_svg(std::ostream& out, const Front& front, const SvgOptions& options) {
  const auto rows = front_rows(front);
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& r : rows) {
    x0 = std::min(x0, r.px);
    x1 = std::max(x1, r.px);
    y0 = std::min(y0, r.py);
    y1 = std::max(y1, r.py);
  }
  if (options.refocus) {
    const Vec2 c = front.model().to_chart(*options.refocus);
    x0 = std::min(x0, c[0]);
    x1 = std::max(x1, c[0]);
    y0 = std::min(y0, c[1]);
    y1 = std::max(y1, c[1]);
  }
  const double pad = options.tick_length + 0.05 * std::max(x1 - x0, y1 - y0) + 1e-3;
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  const double span = std::max(x1 - x0, y1 - y0);
  const double scale = options.size_px / span;
  auto sx = [&](double x) { return num((x - x0) * scale); };
  auto sy = [&](double y) { return num((y1 - y) * scale); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(options.size_px) << "\" height=\""
      << num(options.size_px) << "\">\n";
  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  for (const auto& r : rows) out << sx(r.px) << ',' << sy(r.py) << ' ';
  if (!rows.empty()) out << sx(rows.front().px) << ',' << sy(rows.front().py);
  out << "\"/>\n";
  const int every = std::max(1, options.tick_every);
  for (std::size_t i = 0; i < rows.size(); i += static_cast<std::size_t>(every)) {
    const auto& r = rows[i];
    const double len = std::hypot(r.nx, r.ny);
    if (len == 0.0) continue;
    const double ex = r.px + options.tick_length * r.nx / len;
    const double ey = r.py + options.tick_length * r.ny / len;
    out << "<line stroke=\"red\" stroke-width=\"1\" x1=\"" << sx(r.px) << "\" y1=\"" << sy(r.py) << "\" x2=\""
        << sx(ex) << "\" y2=\"" << sy(ey) << "\"/>\n";
  }
  if (options.refocus) {
    const Vec2 c = front.model().to_chart(*options.refocus);
    out << "<circle fill=\"none\" stroke=\"blue\" r=\"6\" cx=\"" << sx(c[0]) << "\" cy=\"" << sy(c[1]) << "\"/>\n";
    out << "<text fill=\"blue\" font-size=\"12\" x=\"" << sx(c[0]) << "\" y=\"" << sy(c[1])
        << "\">refocus</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw Error(ErrorCode::Io, "failed to write front SVG");
}

}  // namespace skylink

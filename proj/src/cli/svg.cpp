#include "svg.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

#include "planar/error.hpp"

namespace planar::cli {
namespace {

constexpr double kMargin = 20.0;
constexpr double kScale = 600.0;

double sx(double x) { return kMargin + kScale * x; }
double sy(double y) { return kMargin + kScale * (1.0 - y); }

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_svg(std::ostream& os, std::span<const LabeledExample> examples,
               const Hypothesis& h) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
        "viewBox=\"0 0 640 640\">\n"
     << "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n"
     << "  <rect x=\"" << coord(kMargin) << "\" y=\"" << coord(kMargin)
     << "\" width=\"" << coord(kScale) << "\" height=\"" << coord(kScale)
     << "\" fill=\"none\" stroke=\"#d4d4d8\"/>\n";

  std::vector<Point> ring;
  switch (h.kind) {
    case Hypothesis::Kind::Polygon:
      ring = h.polygon.vertices;
      break;
    case Hypothesis::Kind::Point:
    case Hypothesis::Kind::Segment:
      ring = h.support;
      break;
    case Hypothesis::Kind::Constant0:
      break;
  }
  os << "  <polygon points=\"";
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (i) os << ' ';
    os << coord(sx(ring[i].x)) << ',' << coord(sy(ring[i].y));
  }
  os << "\" fill=\"#16a34a\" fill-opacity=\"0.15\" stroke=\"#16a34a\" "
        "stroke-width=\"2\"/>\n";

  for (const LabeledExample& ex : examples) {
    os << "  <circle cx=\"" << coord(sx(ex.p.x)) << "\" cy=\"" << coord(sy(ex.p.y))
       << "\" r=\"2.5\" fill=\"" << (ex.label ? "#dc2626" : "#2563eb") << "\"/>\n";
  }
  os << "</svg>\n";
}

void write_svg_file(const std::string& path, std::span<const LabeledExample> examples,
                    const Hypothesis& h) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Data, "cannot open " + path + " for writing");
  write_svg(f, examples, h);
}

}  // namespace planar::cli

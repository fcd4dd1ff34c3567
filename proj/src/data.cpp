#include "planar/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "planar/error.hpp"

namespace planar {

namespace {

std::string fmt_double(double v) {
  std::array<char, 64> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

void require_in_unit_square(const Point& p, const char* what) {
  if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
    throw UsageError(std::string(what) + " must lie in the unit square, got (" +
                     fmt_double(p.x) + ", " + fmt_double(p.y) + ")");
}

}  // namespace

PlantedConcept PlantedConcept::triangle(const Point& a, const Point& b, const Point& c) {
  return kgon({a, b, c});
}

PlantedConcept PlantedConcept::kgon(std::vector<Point> vertices) {
  for (const Point& p : vertices) require_in_unit_square(p, "concept vertex");
  ConvexPolygon hull = convex_hull(vertices);
  if (hull.vertices.size() != vertices.size())
    throw UsageError("concept vertices must be in convex position");
  PlantedConcept c;
  c.shape = Shape::Polygon;
  c.polygon = std::move(hull);
  return c;
}

PlantedConcept PlantedConcept::disk(const Point& center, double radius) {
  if (!(radius > 0.0)) throw UsageError("disk radius must be positive");
  require_in_unit_square({center.x - radius, center.y - radius}, "disk extent");
  require_in_unit_square({center.x + radius, center.y + radius}, "disk extent");
  PlantedConcept c;
  c.shape = Shape::Disk;
  c.center = center;
  c.radius = radius;
  return c;
}

bool PlantedConcept::contains(const Point& p) const {
  if (shape == Shape::Disk) {
    double dx = p.x - center.x, dy = p.y - center.y;
    return dx * dx + dy * dy <= radius * radius;
  }
  return point_in_polygon_scan(p, polygon);
}

std::string PlantedConcept::describe() const {
  std::ostringstream os;
  if (shape == Shape::Disk) {
    os << "disk center (" << fmt_double(center.x) << ", " << fmt_double(center.y)
       << ") radius " << fmt_double(radius);
  } else {
    os << "polygon";
    for (const Point& p : polygon.vertices)
      os << " (" << fmt_double(p.x) << ", " << fmt_double(p.y) << ")";
  }
  return os.str();
}

PlantedConcept parse_concept(const std::string& name) {
  if (name == "triangle") return PlantedConcept::triangle({0, 0}, {1, 0}, {0, 1});
  if (name == "square")
    return PlantedConcept::kgon({{0.2, 0.2}, {0.8, 0.2}, {0.8, 0.8}, {0.2, 0.8}});
  if (name == "disk") return PlantedConcept::disk({0.5, 0.5}, 0.3);
  throw UsageError("unknown concept '" + name + "' (expected triangle, square, or disk)");
}

ExampleSource ExampleSource::planted(PlantedConcept target, double eta, RngStream rng) {
  if (!(eta >= 0.0 && eta <= 0.5))
    throw UsageError("noise rate must be in [0, 1/2], got " + fmt_double(eta));
  ExampleSource src;
  src.kind_ = "planted";
  src.concept_ = std::move(target);
  src.eta_ = eta;
  src.rng_ = rng;
  return src;
}

ExampleSource ExampleSource::constant(int bit, RngStream rng) {
  if (bit != 0 && bit != 1) throw UsageError("constant label must be 0 or 1");
  ExampleSource src;
  src.kind_ = "constant";
  src.bit_ = bit;
  src.rng_ = rng;
  return src;
}

ExampleSource ExampleSource::file(const std::string& path, bool with_replacement,
                                  RngStream rng) {
  ExampleSource src;
  src.kind_ = "file";
  src.rows_ = load_dataset(path).examples;
  src.with_replacement_ = with_replacement;
  src.rng_ = rng;
  return src;
}

std::vector<LabeledExample> ExampleSource::draw(std::int64_t m) {
  if (m < 0) throw UsageError("draw count must be nonnegative");
  std::vector<LabeledExample> out;
  out.reserve(std::size_t(m));
  if (kind_ == "file") {
    if (with_replacement_) {
      if (rows_.empty()) throw FileExhausted("file source is empty");
      for (std::int64_t i = 0; i < m; ++i) out.push_back(rows_[rng_.below(rows_.size())]);
    } else {
      if (cursor_ + std::size_t(m) > rows_.size())
        throw FileExhausted("file source has " + std::to_string(rows_.size()) +
                            " rows, " + std::to_string(cursor_) + " consumed, " +
                            std::to_string(m) + " requested");
      out.insert(out.end(), rows_.begin() + std::ptrdiff_t(cursor_),
                 rows_.begin() + std::ptrdiff_t(cursor_ + std::size_t(m)));
      cursor_ += std::size_t(m);
    }
  } else {
    for (std::int64_t i = 0; i < m; ++i) {
      Point p{rng_.uniform01(), rng_.uniform01()};
      int label;
      if (kind_ == "constant") {
        label = bit_;
      } else {
        bool in = concept_.contains(p);
        bool flip = rng_.bernoulli(eta_);
        label = int(in != flip);
      }
      out.push_back({p, label});
    }
  }
  drawn_ += m;
  return out;
}

namespace {

// from_chars over a trimmed field; rejects trailing garbage but accepts the
// textual infinities (finiteness is a validation concern, not a parse one).
bool parse_field(std::string_view f, double& out) {
  while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
  while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r'))
    f.remove_suffix(1);
  if (f.empty()) return false;
  auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
  return ec == std::errc{} && end == f.data() + f.size();
}

}  // namespace

LabeledPointSet load_dataset(const std::string& path, DatasetAudit* audit) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  std::vector<LabeledExample> rows;
  std::vector<int> row_lines;
  std::vector<std::string> bad_rows;
  std::size_t bad_total = 0;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = line;
    std::size_t first = sv.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || sv[first] == '#') continue;

    std::size_t c1 = sv.find(',');
    std::size_t c2 = c1 == std::string_view::npos ? c1 : sv.find(',', c1 + 1);
    if (c2 == std::string_view::npos || sv.find(',', c2 + 1) != std::string_view::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected x,y,label");

    double x, y, lab;
    if (!parse_field(sv.substr(0, c1), x))
      throw ParseError("line " + std::to_string(lineno) + ": bad x coordinate");
    if (!parse_field(sv.substr(c1 + 1, c2 - c1 - 1), y))
      throw ParseError("line " + std::to_string(lineno) + ": bad y coordinate");
    if (!parse_field(sv.substr(c2 + 1), lab))
      throw ParseError("line " + std::to_string(lineno) + ": bad label");

    std::string why;
    if (!std::isfinite(x) || !std::isfinite(y)) why = "nonfinite coordinate";
    if (lab != 0.0 && lab != 1.0) why = why.empty() ? "label must be 0 or 1" : why;
    if (!why.empty()) {
      ++bad_total;
      if (bad_rows.size() < 10)
        bad_rows.push_back("line " + std::to_string(lineno) + " (" + why + ")");
      continue;
    }
    rows.push_back({{x, y}, int(lab)});
    row_lines.push_back(lineno);
  }

  if (bad_total > 0) {
    std::string msg = "invalid rows: ";
    for (std::size_t i = 0; i < bad_rows.size(); ++i) {
      if (i) msg += ", ";
      msg += bad_rows[i];
    }
    if (bad_total > bad_rows.size())
      msg += ", and " + std::to_string(bad_total - bad_rows.size()) + " more";
    throw ValidationError(msg);
  }

  if (audit) {
    *audit = DatasetAudit{};
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Point &pa = rows[a].p, &pb = rows[b].p;
      return pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (rows[order[i - 1]].p == rows[order[i]].p) {
        ++audit->duplicate_total;
        if (audit->duplicates.size() < 10)
          audit->duplicates.push_back(
              {row_lines[order[i - 1]], row_lines[order[i]]});
      }
    }
    if (rows.size() <= 200) {
      audit->collinear_scanned = true;
      for (std::size_t i = 0; i < rows.size() && audit->collinear.size() < 10; ++i)
        for (std::size_t j = i + 1; j < rows.size() && audit->collinear.size() < 10; ++j)
          for (std::size_t k = j + 1; k < rows.size() && audit->collinear.size() < 10;
               ++k) {
            if (rows[i].p == rows[j].p || rows[j].p == rows[k].p ||
                rows[i].p == rows[k].p)
              continue;  // duplicates are reported separately
            if (orientation(rows[i].p, rows[j].p, rows[k].p) == 0)
              audit->collinear.push_back(
                  {row_lines[i], row_lines[j], row_lines[k]});
          }
    }
  }

  return LabeledPointSet::from(std::move(rows));
}

void save_dataset(const LabeledPointSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << "# x,y,label\n";
  for (const LabeledExample& e : s.examples)
    out << fmt_double(e.p.x) << ',' << fmt_double(e.p.y) << ',' << e.label << '\n';
  if (!out) throw ParseError("write to '" + path + "' failed");
}

void save_sidecar(const SourceMeta& meta, const std::string& dataset_path) {
  nlohmann::json j{{"kind", meta.kind},
                   {"seed", meta.seed},
                   {"stream", meta.stream},
                   {"eta", meta.eta},
                   {"concept", meta.concept_desc},
                   {"rng", "philox4x32-10"}};
  std::string path = dataset_path + ".json";
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace planar

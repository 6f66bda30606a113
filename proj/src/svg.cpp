#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "multitile/io.hpp"

namespace multitile {

namespace {

constexpr std::array<const char*, 12> kPalette = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                                                  "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Frame {
  double xmin, xmax, ymin, ymax;
  double scale;
  double margin = 20;
  double legend = 90;

  double width() const { return (xmax - xmin) * scale + 2 * margin + legend; }
  double height() const { return (ymax - ymin) * scale + 2 * margin; }
  double sx(double x) const { return margin + (x - xmin) * scale; }
  double sy(double y) const { return margin + (ymax - y) * scale; }
};

void legend(std::ostringstream& out, const Frame& f, std::size_t count) {
  const double x = f.width() - f.legend + 10;
  for (std::size_t i = 0; i < count; ++i) {
    const double y = f.margin + 18.0 * static_cast<double>(i);
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[i % kPalette.size()]
        << "\" stroke=\"#000\" stroke-width=\"0.5\"/>\n";
    out << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y + 10) << "\" font-family=\"sans-serif\" font-size=\"11\">" << i + 1 << "</text>\n";
  }
}

std::string render_empty() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"200\" height=\"200\" viewBox=\"0 0 200 200\">\n"
         "<rect x=\"0\" y=\"0\" width=\"200\" height=\"200\" fill=\"#fff\"/>\n"
         "</svg>\n";
}

}  // namespace

std::string render_svg(const std::vector<Region>& atoms, std::size_t dim) {
  std::vector<Box> boxes;
  for (const auto& a : atoms)
    if (!a.empty()) boxes.push_back(bounding_box(a));
  if (boxes.empty()) return render_empty();

  Rat lo0 = boxes[0].lo[0], hi0 = boxes[0].hi[0];
  Rat lo1 = dim == 2 ? boxes[0].lo[1] : Rat(0), hi1 = dim == 2 ? boxes[0].hi[1] : Rat(0);
  for (const auto& b : boxes) {
    if (b.lo[0] < lo0) lo0 = b.lo[0];
    if (b.hi[0] > hi0) hi0 = b.hi[0];
    if (dim == 2) {
      if (b.lo[1] < lo1) lo1 = b.lo[1];
      if (b.hi[1] > hi1) hi1 = b.hi[1];
    }
  }
  // Snap the drawing window to the integer grid around the data.
  Frame f{floor_rat(lo0).get_d(), ceil_rat(hi0).get_d(), 0, 1, 1};
  if (dim == 2) {
    f.ymin = floor_rat(lo1).get_d();
    f.ymax = ceil_rat(hi1).get_d();
  } else {
    f.ymax = static_cast<double>(atoms.size()) * 0.25 + 0.25;
  }
  f.scale = 400.0 / std::max(f.xmax - f.xmin, f.ymax - f.ymin);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(f.width()) << "\" height=\"" << num(f.height()) << "\" viewBox=\"0 0 "
      << num(f.width()) << " " << num(f.height()) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(f.width()) << "\" height=\"" << num(f.height()) << "\" fill=\"#fff\"/>\n";

  out << "<g stroke=\"#ccc\" stroke-width=\"1\">\n";
  for (double x = f.xmin; x <= f.xmax; x += 1.0)
    out << "<line x1=\"" << num(f.sx(x)) << "\" y1=\"" << num(f.sy(f.ymin)) << "\" x2=\"" << num(f.sx(x)) << "\" y2=\"" << num(f.sy(f.ymax)) << "\"/>\n";
  if (dim == 2)
    for (double y = f.ymin; y <= f.ymax; y += 1.0)
      out << "<line x1=\"" << num(f.sx(f.xmin)) << "\" y1=\"" << num(f.sy(y)) << "\" x2=\"" << num(f.sx(f.xmax)) << "\" y2=\"" << num(f.sy(y)) << "\"/>\n";
  out << "</g>\n";

  for (std::size_t i = 0; i < atoms.size(); ++i) {
    out << "<path id=\"atom-" << i + 1 << "\" fill=\"" << kPalette[i % kPalette.size()] << "\" fill-opacity=\"0.85\" stroke=\"#000\" stroke-width=\"0.5\" d=\"";
    bool first = true;
    for (const auto& c : atoms[i].cells()) {
      if (!first) out << ' ';
      first = false;
      if (dim == 1) {
        const double y0 = 0.25 * static_cast<double>(i + 1) - 0.1;
        const double y1 = y0 + 0.2;
        const double a = c.lo().get_d(), b = c.hi().get_d();
        out << "M" << num(f.sx(a)) << ' ' << num(f.sy(y0)) << " L" << num(f.sx(b)) << ' ' << num(f.sy(y0)) << " L" << num(f.sx(b)) << ' '
            << num(f.sy(y1)) << " L" << num(f.sx(a)) << ' ' << num(f.sy(y1)) << " Z";
      } else {
        const auto& v = c.vertices();
        for (std::size_t k = 0; k < v.size(); ++k)
          out << (k ? " L" : "M") << num(f.sx(v[k].x.get_d())) << ' ' << num(f.sy(v[k].y.get_d()));
        out << " Z";
      }
    }
    out << "\"/>\n";
  }
  legend(out, f, atoms.size());
  out << "</svg>\n";
  return out.str();
}

}  // namespace multitile

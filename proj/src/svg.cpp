#include "fad/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fad {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 70;
constexpr double kMarginRight = 170;  // room for the legend
constexpr double kMarginTop = 40;
constexpr double kMarginBottom = 55;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string xmlEscape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct Frame {
  double xmin, xmax, ymin, ymax;
  double px(double x) const {
    return kMarginLeft + (x - xmin) / (xmax - xmin) *
                             (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double y) const {
    return kHeight - kMarginBottom -
           (y - ymin) / (ymax - ymin) * (kHeight - kMarginTop - kMarginBottom);
  }
};

void openSvg(std::ostringstream& os) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
     << kHeight << "\">\n"
     << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n";
}

void drawAxes(std::ostringstream& os, const Frame& f, const std::string& xLabel,
              const std::string& yLabel, const std::string& title,
              int ticks = 5) {
  os << "<g stroke=\"#333333\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << f.px(f.xmin) << "\" y1=\"" << f.py(f.ymin)
     << "\" x2=\"" << f.px(f.xmax) << "\" y2=\"" << f.py(f.ymin) << "\"/>\n";
  os << "<line x1=\"" << f.px(f.xmin) << "\" y1=\"" << f.py(f.ymin)
     << "\" x2=\"" << f.px(f.xmin) << "\" y2=\"" << f.py(f.ymax) << "\"/>\n";
  os << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  for (int i = 0; i <= ticks; ++i) {
    const double fx = f.xmin + (f.xmax - f.xmin) * i / ticks;
    const double fy = f.ymin + (f.ymax - f.ymin) * i / ticks;
    os << "<text x=\"" << f.px(fx) << "\" y=\"" << f.py(f.ymin) + 18
       << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
    os << "<text x=\"" << f.px(f.xmin) - 8 << "\" y=\"" << f.py(fy) + 4
       << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
  }
  os << "<text x=\"" << (f.px(f.xmin) + f.px(f.xmax)) / 2 << "\" y=\""
     << kHeight - 12 << "\" text-anchor=\"middle\">" << xmlEscape(xLabel)
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << (f.py(f.ymin) + f.py(f.ymax)) / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << (f.py(f.ymin) + f.py(f.ymax)) / 2 << ")\">" << xmlEscape(yLabel)
     << "</text>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
     << "font-size=\"14\">" << xmlEscape(title) << "</text>\n";
  os << "</g>\n";
}

void drawLegend(std::ostringstream& os,
                const std::vector<std::string>& names) {
  os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  const double x = kWidth - kMarginRight + 14;
  for (size_t i = 0; i < names.size(); ++i) {
    const double y = kMarginTop + 16 + 18 * static_cast<double>(i);
    os << "<line x1=\"" << x << "\" y1=\"" << y - 4 << "\" x2=\"" << x + 22
       << "\" y2=\"" << y - 4 << "\" stroke=\"" << kPalette[i % kPaletteSize]
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << x + 28 << "\" y=\"" << y << "\">"
       << xmlEscape(names[i]) << "</text>\n";
  }
  os << "</g>\n";
}

template <typename PointT, typename GetX, typename GetY>
void drawPolyline(std::ostringstream& os, const Frame& f,
                  const std::vector<PointT>& pts, const char* color, GetX gx,
                  GetY gy) {
  os << "<polyline fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& pt : pts) {
    os << f.px(gx(pt)) << ',' << f.py(gy(pt)) << ' ';
  }
  os << "\"/>\n";
}

}  // namespace

std::string svgRocOverlay(
    const std::vector<std::pair<std::string, std::vector<RocPoint>>>& curves,
    const std::string& title) {
  std::ostringstream os;
  openSvg(os);
  Frame f{0.0, 1.0, 0.0, 1.0};
  drawAxes(os, f, "false positive rate", "true positive rate", title);
  os << "<line x1=\"" << f.px(0) << "\" y1=\"" << f.py(0) << "\" x2=\""
     << f.px(1) << "\" y2=\"" << f.py(1)
     << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  std::vector<std::string> names;
  for (size_t i = 0; i < curves.size(); ++i) {
    names.push_back(curves[i].first);
    drawPolyline(os, f, curves[i].second, kPalette[i % kPaletteSize],
                 [](const RocPoint& p) { return p.fpr; },
                 [](const RocPoint& p) { return p.tpr; });
  }
  drawLegend(os, names);
  os << "</svg>\n";
  return os.str();
}

std::string svgPrOverlay(
    const std::vector<std::pair<std::string, std::vector<PrPoint>>>& curves,
    const std::string& title) {
  std::ostringstream os;
  openSvg(os);
  Frame f{0.0, 1.0, 0.0, 1.0};
  drawAxes(os, f, "recall", "precision", title);
  std::vector<std::string> names;
  for (size_t i = 0; i < curves.size(); ++i) {
    names.push_back(curves[i].first);
    drawPolyline(os, f, curves[i].second, kPalette[i % kPaletteSize],
                 [](const PrPoint& p) { return p.recall; },
                 [](const PrPoint& p) { return p.precision; });
  }
  drawLegend(os, names);
  os << "</svg>\n";
  return os.str();
}

std::string svgScatter(const std::vector<ScatterPoint>& points,
                       const std::string& xLabel, const std::string& yLabel,
                       const std::string& title) {
  std::ostringstream os;
  openSvg(os);
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (!points.empty()) {
    xmin = xmax = points[0].x;
    ymin = ymax = points[0].y;
    for (const auto& p : points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const double padX = (xmax - xmin) > 0 ? 0.05 * (xmax - xmin) : 1.0;
  const double padY = (ymax - ymin) > 0 ? 0.05 * (ymax - ymin) : 1.0;
  Frame f{xmin - padX, xmax + padX, ymin - padY, ymax + padY};
  drawAxes(os, f, xLabel, yLabel, title);
  for (const auto& p : points) {
    const char* color = p.label == 1 ? "#d62728" : "#444444";
    os << "<circle cx=\"" << f.px(p.x) << "\" cy=\"" << f.py(p.y)
       << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.7\"/>\n";
  }
  const double lx = kWidth - kMarginRight + 14;
  os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n"
     << "<circle cx=\"" << lx + 6 << "\" cy=\"" << kMarginTop + 12
     << "\" r=\"3\" fill=\"#444444\"/>\n"
     << "<text x=\"" << lx + 16 << "\" y=\"" << kMarginTop + 16
     << "\">normal</text>\n"
     << "<circle cx=\"" << lx + 6 << "\" cy=\"" << kMarginTop + 30
     << "\" r=\"3\" fill=\"#d62728\"/>\n"
     << "<text x=\"" << lx + 16 << "\" y=\"" << kMarginTop + 34
     << "\">anomaly</text>\n"
     << "</g>\n";
  os << "</svg>\n";
  return os.str();
}

void writeTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace fad

#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace groth {

// Minimal polyline plotter; enough for shape, boundary, and sample overlays.
class SvgPlot {
 public:
  SvgPlot(int width = 720, int height = 540) : width_(width), height_(height) {}

  void add_polyline(const std::vector<std::pair<double, double>>& pts,
                    const std::string& color, double stroke = 1.5) {
    if (pts.empty()) return;
    for (const auto& [x, y] : pts) {
      xmin_ = std::min(xmin_, x);
      xmax_ = std::max(xmax_, x);
      ymin_ = std::min(ymin_, y);
      ymax_ = std::max(ymax_, y);
    }
    lines_.push_back({pts, color, stroke});
  }

  std::string render() const {
    const double pad = 40;
    const double sx = (width_ - 2 * pad) / std::max(xmax_ - xmin_, 1e-12);
    const double sy = (height_ - 2 * pad) / std::max(ymax_ - ymin_, 1e-12);
    const double s = std::min(sx, sy);
    auto px = [&](double x) { return pad + (x - xmin_) * s; };
    auto py = [&](double y) { return height_ - pad - (y - ymin_) * s; };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes through the origin when visible
    if (xmin_ <= 0 && xmax_ >= 0)
      out << "<line x1=\"" << px(0) << "\" y1=\"" << py(ymin_) << "\" x2=\"" << px(0)
          << "\" y2=\"" << py(ymax_) << "\" stroke=\"#cccccc\"/>\n";
    if (ymin_ <= 0 && ymax_ >= 0)
      out << "<line x1=\"" << px(xmin_) << "\" y1=\"" << py(0) << "\" x2=\"" << px(xmax_)
          << "\" y2=\"" << py(0) << "\" stroke=\"#cccccc\"/>\n";
    for (const auto& ln : lines_) {
      out << "<polyline fill=\"none\" stroke=\"" << ln.color << "\" stroke-width=\""
          << ln.stroke << "\" points=\"";
      for (const auto& [x, y] : ln.pts) out << px(x) << "," << py(y) << " ";
      out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
  }

 private:
  struct Line {
    std::vector<std::pair<double, double>> pts;
    std::string color;
    double stroke;
  };
  int width_, height_;
  double xmin_ = 1e300, xmax_ = -1e300, ymin_ = 1e300, ymax_ = -1e300;
  std::vector<Line> lines_;
};

}  // namespace groth

#include "hchain/cli/svg.hpp"

#include "hchain/cli/csv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hchain::cli {
namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                               "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

Frame make_frame(double x0, double x1, double y0, double y1) {
  if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
  if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
  const double pad = 0.04 * (y1 - y0);
  return Frame{x0, x1, y0 - pad, y1 + pad};
}

void header(std::ostringstream& s, const std::string& title, const std::string& xl,
            const std::string& yl, const Frame& f) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << escape(title) << "</text>\n";
  s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
    << "\" height=\"" << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
    s << "<text x=\"" << f.px(xv) << "\" y=\"" << kHeight - kBottom + 16
      << "\" text-anchor=\"middle\">" << format_real(std::round(xv * 1e4) / 1e4) << "</text>\n";
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << f.py(yv) + 4 << "\" text-anchor=\"end\">"
      << format_real(std::round(yv * 1e4) / 1e4) << "</text>\n";
  }
  s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\">"
    << escape(xl) << "</text>\n";
  s << "<text transform=\"translate(16," << kHeight / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(yl) << "</text>\n";
}

void polyline(std::ostringstream& s, const Frame& f, const Series& ser, const char* color,
              const char* dash) {
  s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dash != nullptr) s << " stroke-dasharray=\"" << dash << "\"";
  s << " points=\"";
  for (std::size_t i = 0; i < ser.x.size(); ++i) {
    if (!std::isfinite(ser.x[i]) || !std::isfinite(ser.y[i])) continue;
    s << f.px(ser.x[i]) << ',' << f.py(ser.y[i]) << ' ';
  }
  s << "\"/>\n";
}

void legend(std::ostringstream& s, const std::vector<std::string>& names, std::size_t offset) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double y = kTop + 14 + 14 * static_cast<double>(i);
    s << "<text x=\"" << kWidth - kRight - 8 << "\" y=\"" << y << "\" text-anchor=\"end\" fill=\""
      << kColors[(i + offset) % 8] << "\">" << escape(names[i]) << "</text>\n";
  }
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const Series& ser : series) {
    if (ser.x.size() != ser.y.size()) throw std::invalid_argument("series x/y size mismatch");
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if (!std::isfinite(ser.x[i]) || !std::isfinite(ser.y[i])) continue;
      x0 = std::min(x0, ser.x[i]);
      x1 = std::max(x1, ser.x[i]);
      y0 = std::min(y0, ser.y[i]);
      y1 = std::max(y1, ser.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  const Frame f = make_frame(x0, x1, y0, y1);
  std::ostringstream s;
  header(s, title, x_label, y_label, f);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < series.size(); ++k) {
    polyline(s, f, series[k], kColors[k % 8], nullptr);
    names.push_back(series[k].name);
  }
  legend(s, names, 0);
  s << "</svg>\n";
  return s.str();
}

std::string svg_level_sets(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           const std::vector<std::vector<double>>& values,
                           const std::vector<double>& levels, const std::vector<Series>& overlays) {
  if (xs.size() < 2 || ys.size() < 2 || values.size() != ys.size()) {
    throw std::invalid_argument("level sets need at least a 2x2 grid");
  }
  for (const auto& row : values) {
    if (row.size() != xs.size()) throw std::invalid_argument("grid row size mismatch");
  }
  const Frame f = make_frame(xs.front(), xs.back(), ys.front(), ys.back());
  std::ostringstream s;
  header(s, title, x_label, y_label, f);
  std::vector<std::string> names;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const double lv = levels[li];
    const char* color = kColors[li % 8];
    s << "<g stroke=\"" << color << "\" stroke-width=\"1.2\">\n";
    for (std::size_t r = 0; r + 1 < ys.size(); ++r) {
      for (std::size_t c = 0; c + 1 < xs.size(); ++c) {
        // Corners counter-clockwise from bottom-left.
        const double cx[4] = {xs[c], xs[c + 1], xs[c + 1], xs[c]};
        const double cy[4] = {ys[r], ys[r], ys[r + 1], ys[r + 1]};
        const double cv[4] = {values[r][c], values[r][c + 1], values[r + 1][c + 1], values[r + 1][c]};
        double px[4], py[4];
        int count = 0;
        for (int e = 0; e < 4; ++e) {
          const int a = e, b = (e + 1) % 4;
          const double va = cv[a] - lv, vb = cv[b] - lv;
          if ((va < 0) != (vb < 0)) {
            const double t = va / (va - vb);
            px[count] = cx[a] + t * (cx[b] - cx[a]);
            py[count] = cy[a] + t * (cy[b] - cy[a]);
            ++count;
          }
        }
        for (int k = 0; k + 1 < count; k += 2) {
          s << "<line x1=\"" << f.px(px[k]) << "\" y1=\"" << f.py(py[k]) << "\" x2=\"" << f.px(px[k + 1])
            << "\" y2=\"" << f.py(py[k + 1]) << "\"/>\n";
        }
      }
    }
    s << "</g>\n";
    names.push_back("level " + format_real(lv));
  }
  for (std::size_t k = 0; k < overlays.size(); ++k) {
    polyline(s, f, overlays[k], "black", "4,3");
  }
  legend(s, names, 0);
  for (std::size_t k = 0; k < overlays.size(); ++k) {
    s << "<text x=\"" << kLeft + 8 << "\" y=\"" << kTop + 14 + 14 * static_cast<double>(k)
      << "\">" << escape(overlays[k].name) << " (dashed)</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace hchain::cli

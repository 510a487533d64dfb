#include "coarse/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace coarse::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 56.0;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void open(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"15\">"
     << escape(title) << "</text>\n";
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
  void fix() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string line_chart(const std::vector<std::pair<double, double>>& points, const std::string& title,
                       const std::string& x_label, const std::string& y_label) {
  Range xr{kInfinity, -kInfinity};
  Range yr{0.0, -kInfinity};
  for (const auto& [x, y] : points) {
    xr.lo = std::min(xr.lo, x);
    xr.hi = std::max(xr.hi, x);
    if (std::isfinite(y)) {
      yr.lo = std::min(yr.lo, y);
      yr.hi = std::max(yr.hi, y);
    }
  }
  if (points.empty()) xr = {0.0, 1.0};
  if (!std::isfinite(yr.hi)) yr.hi = 1.0;
  xr.fix();
  yr.fix();
  const double pw = kWidth - 2 * kMargin;
  const double ph = kHeight - 2 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) {
    if (!std::isfinite(y)) return kMargin;
    return kHeight - kMargin - (y - yr.lo) / (yr.hi - yr.lo) * ph;
  };

  std::ostringstream os;
  open(os, title);
  os << "<g stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
     << kHeight - kMargin << "\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kHeight - kMargin
     << "\"/>\n</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double y = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    os << "<text x=\"" << fmt(sx(x)) << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"middle\">"
       << fmt(x) << "</text>\n"
       << "<text x=\"" << kMargin - 6 << "\" y=\"" << fmt(sy(y) + 4) << "\" text-anchor=\"end\">" << fmt(y)
       << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">" << escape(x_label)
     << "</text>\n"
     << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 " << kHeight / 2
     << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n</g>\n";
  os << "<polyline fill=\"none\" stroke=\"" << kPalette[0] << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : points) os << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
  os << "\"/>\n</svg>\n";
  return os.str();
}

std::string cover_diagram(const Cover& cover, const std::string& title) {
  const auto& X = cover.metric();
  std::size_t dim = X.coordinate_dim();
  std::vector<double> coords;
  if (X.is_dense()) {
    if (!X.numeric_ids()) throw Error(ErrorKind::InvalidArgument, "only coordinate spaces or integer ids can be drawn");
    dim = 1;
    for (PointIndex x = 0; x < X.size(); ++x) coords.push_back(std::stod(X.id(x)));
  } else {
    coords.assign(X.coordinates().begin(), X.coordinates().end());
  }
  if (dim != 1 && dim != 2) throw Error(ErrorKind::InvalidArgument, "only 1-D and 2-D covers can be drawn");

  Range xr{kInfinity, -kInfinity};
  Range yr{kInfinity, -kInfinity};
  for (PointIndex x = 0; x < X.size(); ++x) {
    xr.lo = std::min(xr.lo, coords[x * dim]);
    xr.hi = std::max(xr.hi, coords[x * dim]);
    if (dim == 2) {
      yr.lo = std::min(yr.lo, coords[x * dim + 1]);
      yr.hi = std::max(yr.hi, coords[x * dim + 1]);
    }
  }
  xr.lo -= 0.5;
  xr.hi += 0.5;
  if (dim == 2) {
    yr.lo -= 0.5;
    yr.hi += 0.5;
  }
  const double pw = kWidth - 2 * kMargin;
  const double ph = kHeight - 2 * kMargin;
  const std::size_t k = cover.size();

  std::ostringstream os;
  open(os, title);
  if (dim == 1) {
    const double row = ph / static_cast<double>(std::max<std::size_t>(k, 1));
    const double cell = pw / (xr.hi - xr.lo);
    for (std::size_t i = 0; i < k; ++i) {
      const char* color = kPalette[i % std::size(kPalette)];
      const double y = kMargin + row * static_cast<double>(i);
      os << "<g fill=\"" << color << "\">\n";
      for (PointIndex x : cover.member(i)) {
        os << "<rect x=\"" << fmt(kMargin + (coords[x] - 0.5 - xr.lo) * cell) << "\" y=\"" << fmt(y + row * 0.15)
           << "\" width=\"" << fmt(cell) << "\" height=\"" << fmt(row * 0.7) << "\"/>\n";
      }
      os << "</g>\n";
    }
  } else {
    const double cw = pw / (xr.hi - xr.lo);
    const double chh = ph / (yr.hi - yr.lo);
    for (std::size_t i = 0; i < k; ++i) {
      const char* color = kPalette[i % std::size(kPalette)];
      os << "<g fill=\"" << color << "\" fill-opacity=\"0.35\">\n";
      for (PointIndex x : cover.member(i)) {
        const double px = kMargin + (coords[2 * x] - 0.5 - xr.lo) * cw;
        const double py = kHeight - kMargin - (coords[2 * x + 1] + 0.5 - yr.lo) * chh;
        os << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(cw) << "\" height=\""
           << fmt(chh) << "\"/>\n";
      }
      os << "</g>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace coarse::svg

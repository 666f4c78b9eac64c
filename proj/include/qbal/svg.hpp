#pragma once

// Standalone SVG 1.1 scatter plot of 2-D covariates, marked by assignment sign.

#include "qbal/core.hpp"
#include "qbal/run_result.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qbal {

class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace detail

/// Points with w_i = +1 are drawn as circles, w_i = -1 as squares. Without a
/// result, or with an empty assignment, every point is a grey circle.
inline std::string render_scatter(const CovariateSet& x, const std::optional<RunResult>& result) {
  if (x.n() != 2) {
    throw UnsupportedDimension("scatter plots need 2-D covariates, got n = " + std::to_string(x.n()));
  }
  const bool classified = result && !result->omega.empty();
  if (classified && result->omega.size() != x.m()) {
    throw DimensionError("assignment has " + std::to_string(result->omega.size()) + " entries for " +
                         std::to_string(x.m()) + " points");
  }

  constexpr double width = 640.0, height = 480.0, margin = 60.0;
  const Eigen::MatrixXd& pts = x.matrix();
  double xmin = pts.row(0).minCoeff(), xmax = pts.row(0).maxCoeff();
  double ymin = pts.row(1).minCoeff(), ymax = pts.row(1).maxCoeff();
  const double padx = std::max(0.5, 0.1 * (xmax - xmin));
  const double pady = std::max(0.5, 0.1 * (ymax - ymin));
  xmin -= padx, xmax += padx, ymin -= pady, ymax += pady;
  auto sx = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto sy = [&](double v) { return height - margin - (v - ymin) / (ymax - ymin) * (height - 2 * margin); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  // Axes frame with min/max tick labels.
  os << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
     << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
     << height - 2 * margin << "\"/>\n</g>\n";
  os << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n"
     << "<text x=\"" << margin << "\" y=\"" << height - margin + 16 << "\" text-anchor=\"middle\">" << detail::fmt2(xmin)
     << "</text>\n"
     << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16 << "\" text-anchor=\"middle\">"
     << detail::fmt2(xmax) << "</text>\n"
     << "<text x=\"" << margin - 6 << "\" y=\"" << height - margin << "\" text-anchor=\"end\">" << detail::fmt2(ymin)
     << "</text>\n"
     << "<text x=\"" << margin - 6 << "\" y=\"" << margin + 4 << "\" text-anchor=\"end\">" << detail::fmt2(ymax)
     << "</text>\n"
     << "<text x=\"" << width / 2 << "\" y=\"" << height - 20 << "\" text-anchor=\"middle\">x1</text>\n"
     << "<text x=\"20\" y=\"" << height / 2 << "\" text-anchor=\"middle\">x2</text>\n</g>\n";

  os << "<g class=\"points\">\n";
  for (std::size_t i = 0; i < x.m(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const std::string cx = detail::fmt2(sx(pts(0, col)));
    const std::string cy = detail::fmt2(sy(pts(1, col)));
    if (!classified) {
      os << "<circle class=\"unassigned\" cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"5\" fill=\"grey\"/>\n";
    } else if (result->omega[i] > 0) {
      os << "<circle class=\"plus\" cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"6\" style=\"fill:#1f77b4\"/>\n";
    } else {
      const double px = sx(pts(0, col)) - 5.5, py = sy(pts(1, col)) - 5.5;
      os << "<rect class=\"minus\" x=\"" << detail::fmt2(px) << "\" y=\"" << detail::fmt2(py)
         << "\" width=\"11\" height=\"11\" style=\"fill:#d62728\"/>\n";
    }
  }
  os << "</g>\n";

  os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n";
  if (classified) {
    os << "<text x=\"" << margin << "\" y=\"30\">" << detail::xml_escape(result->method)
       << " assignment, imbalance " << detail::fmt4(result->imbalance) << "</text>\n"
       << "<circle cx=\"" << width - 150 << "\" cy=\"26\" r=\"6\" style=\"fill:#1f77b4\"/>"
       << "<text x=\"" << width - 138 << "\" y=\"30\">+1</text>\n"
       << "<rect x=\"" << width - 95.5 << "\" y=\"20.5\" width=\"11\" height=\"11\" style=\"fill:#d62728\"/>"
       << "<text x=\"" << width - 78 << "\" y=\"30\">-1</text>\n";
  } else {
    os << "<text x=\"" << margin << "\" y=\"30\">covariates (" << x.m() << " points)</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace qbal

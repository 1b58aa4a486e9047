#include "svg.hpp"

#include <algorithm>
#include <ostream>

#include "ultrafit/io.hpp"

namespace ultrafit::cli {

namespace {

constexpr double kWidth = 640, kHeight = 400, kMargin = 50;

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
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

}  // namespace

void write_trace_svg(std::ostream& out, std::span<const double> trace,
                     const std::string& title) {
  const double plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
  double lo = 0, hi = 1;
  if (!trace.empty()) {
    const auto [mn, mx] = std::minmax_element(trace.begin(), trace.end());
    lo = *mn;
    hi = *mx > *mn ? *mx : *mn + 1;
  }
  const double last = trace.size() > 1 ? static_cast<double>(trace.size() - 1) : 1.0;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">" << escape(title)
      << "</text>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">iteration</text>\n"
      << "<text x=\"" << kMargin - 5 << "\" y=\"" << kMargin
      << "\" text-anchor=\"end\">" << format_double(hi) << "</text>\n"
      << "<text x=\"" << kMargin - 5 << "\" y=\"" << kHeight - kMargin
      << "\" text-anchor=\"end\">" << format_double(lo) << "</text>\n"
      << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 15
      << "\" text-anchor=\"middle\">" << trace.size() - (trace.empty() ? 0 : 1) << "</text>\n";

  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double x = kMargin + plot_w * static_cast<double>(i) / last;
    const double y = kHeight - kMargin - plot_h * (trace[i] - lo) / (hi - lo);
    out << (i ? " " : "") << x << ',' << y;
  }
  out << "\"/>\n</svg>\n";
}

}  // namespace ultrafit::cli

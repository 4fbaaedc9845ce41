#pragma once

// Static SVG renderings: barcodes and page heat tables. All coordinates are
// integers so the output is byte-stable across platforms.

#include <algorithm>
#include <sstream>
#include <string>

#include "specseq/page_table.hpp"
#include "specseq/persistence.hpp"

namespace specseq {

namespace detail {

struct BarcodeLayout {
  int left = 60;
  int right = 40;
  int top = 30;
  int row = 14;
  int group_gap = 24;
  int step = 40;  // pixels per filtration index
};

inline std::string svg_header(int width, int height) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"monospace\" font-size=\"11\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  return out.str();
}

inline const char* degree_color(int n) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return palette[n % 6];
}

}  // namespace detail

/// One horizontal bar per interval, grouped by degree, on an axis of
/// filtration indices 1..N. Essential bars run to N and end in an arrowhead.
inline std::string barcode_svg(const Barcode& bc) {
  detail::BarcodeLayout L;
  const int N = std::max(bc.N, 1);
  const int max_deg = bc.max_degree();
  int rows = 0;
  for (int n = 0; n <= max_deg; ++n) rows += static_cast<int>(bc.count(n));
  int groups = 0;
  for (int n = 0; n <= max_deg; ++n) groups += bc.count(n) > 0 ? 1 : 0;

  const int plot_w = (N - 1) * L.step;
  const int width = L.left + plot_w + L.right + L.step / 2;
  const int axis_y = L.top + rows * L.row + groups * L.group_gap + 10;
  const int height = axis_y + 30;
  auto x = [&](int index) { return L.left + (index - 1) * L.step; };

  std::ostringstream out;
  out << detail::svg_header(width, height);
  out << "<text x=\"" << L.left << "\" y=\"16\">barcode p=" << bc.p.value() << " N=" << bc.N << "</text>\n";

  int y = L.top;
  for (int n = 0; n <= max_deg; ++n) {
    if (bc.count(n) == 0) continue;
    y += L.group_gap;
    out << "<text class=\"degree\" x=\"8\" y=\"" << y - 6 << "\">H" << n << "</text>\n";
    for (const Bar& b : bc.bars) {
      if (b.degree != n) continue;
      int x0 = x(b.birth);
      int x1 = x(b.death.value_or(bc.N));
      out << "<line class=\"bar\" x1=\"" << x0 << "\" y1=\"" << y << "\" x2=\"" << x1 << "\" y2=\"" << y
          << "\" stroke=\"" << detail::degree_color(n) << "\" stroke-width=\"6\"/>\n";
      if (b.essential()) {
        out << "<polygon class=\"arrow\" points=\"" << x1 << ',' << y - 6 << ' ' << x1 + 10 << ',' << y << ' '
            << x1 << ',' << y + 6 << "\" fill=\"" << detail::degree_color(n) << "\"/>\n";
      }
      y += L.row;
    }
  }

  out << "<line class=\"axis\" x1=\"" << L.left << "\" y1=\"" << axis_y << "\" x2=\"" << L.left + plot_w
      << "\" y2=\"" << axis_y << "\" stroke=\"black\"/>\n";
  for (int i = 1; i <= N; ++i) {
    out << "<line class=\"tick\" x1=\"" << x(i) << "\" y1=\"" << axis_y << "\" x2=\"" << x(i) << "\" y2=\""
        << axis_y + 4 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x(i) - 3 << "\" y=\"" << axis_y + 16 << "\">" << i << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

/// Heat table of dim E^(r)_{n,s}: rows n (top row highest), columns s.
inline std::string page_svg(const PageTable& pt, int r, int max_n, int N) {
  const int cell = 32, left = 40, top = 40;
  const int cols = N + 2;
  const int rows = max_n + 1;
  const int width = left + cols * cell + 20;
  const int height = top + rows * cell + 40;
  long peak = 1;
  for (int n = 0; n <= max_n; ++n) {
    for (int s = 0; s <= N + 1; ++s) peak = std::max(peak, pt.e(r, n, s));
  }

  std::ostringstream out;
  out << detail::svg_header(width, height);
  out << "<text x=\"" << left << "\" y=\"16\">E" << r << " (" << to_string(pt.provenance()) << ")</text>\n";
  for (int n = 0; n <= max_n; ++n) {
    int y = top + (max_n - n) * cell;
    out << "<text x=\"8\" y=\"" << y + cell / 2 + 4 << "\">n=" << n << "</text>\n";
    for (int s = 0; s <= N + 1; ++s) {
      int xx = left + s * cell;
      long v = pt.e(r, n, s);
      // White for zero, darkening linearly to the largest entry.
      int shade = v == 0 ? 255 : static_cast<int>(230 - (170 * v) / peak);
      out << "<rect class=\"cell\" x=\"" << xx << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"rgb(" << shade << ',' << shade << ",255)\" stroke=\"#999\"/>\n";
      if (v != 0) out << "<text x=\"" << xx + cell / 2 - 4 << "\" y=\"" << y + cell / 2 + 4 << "\">" << v << "</text>\n";
    }
  }
  for (int s = 0; s <= N + 1; ++s) {
    out << "<text x=\"" << left + s * cell + cell / 2 - 4 << "\" y=\"" << top + rows * cell + 16 << "\">" << s
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace specseq

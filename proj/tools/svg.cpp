#include "svg.hpp"

#include "output.hpp"

namespace mht::cli {

std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
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

namespace {

std::string stroke_attrs(const Stroke& s) {
  std::string a = " stroke=\"" + s.color + "\" stroke-width=\"" + fixed(s.width, 2) + "\"";
  if (!s.dash.empty()) a += " stroke-dasharray=\"" + s.dash + "\"";
  return a;
}

std::string title_element(std::string_view title) {
  if (title.empty()) return {};
  return "<title>" + escape_xml(title) + "</title>";
}

}  // namespace

SvgCanvas::SvgCanvas(const Box& window, double width_px, double height_px, double margin_px)
    : window_(window), width_(width_px), height_(height_px), margin_(margin_px) {
  if (!(window.width() > 0.0 && window.height() > 0.0)) {
    throw std::invalid_argument("SVG window must have positive extent");
  }
}

double SvgCanvas::px(double u) const {
  return margin_ + (u - window_.u_min) / window_.width() * (width_ - 2.0 * margin_);
}

double SvgCanvas::py(double v) const {
  return height_ - margin_ - (v - window_.v_min) / window_.height() * (height_ - 2.0 * margin_);
}

void SvgCanvas::comment(std::string_view text) {
  std::string safe(text);
  for (std::size_t pos; (pos = safe.find("--")) != std::string::npos;) safe.replace(pos, 2, "- -");
  body_ += "<!-- " + safe + " -->\n";
}

void SvgCanvas::polyline(const std::vector<State>& points, const Stroke& stroke) {
  if (points.size() < 2) return;
  body_ += "<polyline fill=\"none\"" + stroke_attrs(stroke) + " points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) body_ += ' ';
    body_ += fixed(px(points[i].x()), 2) + "," + fixed(py(points[i].y()), 2);
  }
  body_ += "\"/>\n";
}

void SvgCanvas::circle(const State& center, double radius_px, std::string_view fill,
                       const Stroke& stroke, std::string_view title) {
  body_ += "<circle cx=\"" + fixed(px(center.x()), 2) + "\" cy=\"" + fixed(py(center.y()), 2) +
           "\" r=\"" + fixed(radius_px, 2) + "\" fill=\"" + std::string(fill) + "\"" +
           stroke_attrs(stroke) + ">" + title_element(title) + "</circle>\n";
}

void SvgCanvas::square(const State& center, double half_px, std::string_view fill,
                       const Stroke& stroke, std::string_view title) {
  body_ += "<rect x=\"" + fixed(px(center.x()) - half_px, 2) + "\" y=\"" +
           fixed(py(center.y()) - half_px, 2) + "\" width=\"" + fixed(2 * half_px, 2) +
           "\" height=\"" + fixed(2 * half_px, 2) + "\" fill=\"" + std::string(fill) + "\"" +
           stroke_attrs(stroke) + ">" + title_element(title) + "</rect>\n";
}

void SvgCanvas::rect(const State& lo, const State& hi, std::string_view fill) {
  const double x0 = px(lo.x());
  const double x1 = px(hi.x());
  const double y0 = py(hi.y());
  const double y1 = py(lo.y());
  body_ += "<rect x=\"" + fixed(x0, 2) + "\" y=\"" + fixed(y0, 2) + "\" width=\"" +
           fixed(x1 - x0, 2) + "\" height=\"" + fixed(y1 - y0, 2) + "\" fill=\"" +
           std::string(fill) + "\" stroke=\"none\" shape-rendering=\"crispEdges\"/>\n";
}

void SvgCanvas::text(const State& at, std::string_view content, double size_px) {
  text_px(px(at.x()), py(at.y()), content, size_px);
}

void SvgCanvas::text_px(double x, double y, std::string_view content, double size_px,
                        std::string_view anchor) {
  body_ += "<text x=\"" + fixed(x, 2) + "\" y=\"" + fixed(y, 2) + "\" font-size=\"" +
           fixed(size_px, 1) + "\" font-family=\"sans-serif\" text-anchor=\"" +
           std::string(anchor) + "\">" + escape_xml(content) + "</text>\n";
}

void SvgCanvas::axes(std::string_view u_label, std::string_view v_label, int ticks) {
  body_ += "<rect x=\"" + fixed(margin_, 2) + "\" y=\"" + fixed(margin_, 2) + "\" width=\"" +
           fixed(width_ - 2 * margin_, 2) + "\" height=\"" + fixed(height_ - 2 * margin_, 2) +
           "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.00\"/>\n";
  for (int k = 0; k <= ticks; ++k) {
    const double u = window_.u_min + window_.width() * k / ticks;
    const double v = window_.v_min + window_.height() * k / ticks;
    text_px(px(u), height_ - margin_ + 16.0, fixed(u, 3), 10.0, "middle");
    text_px(margin_ - 6.0, py(v) + 4.0, fixed(v, 3), 10.0, "end");
  }
  text_px(width_ / 2.0, height_ - 8.0, u_label, 12.0, "middle");
  body_ += "<text x=\"14.00\" y=\"" + fixed(height_ / 2.0, 2) +
           "\" font-size=\"12.0\" font-family=\"sans-serif\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 14.00 " +
           fixed(height_ / 2.0, 2) + ")\">" + escape_xml(v_label) + "</text>\n";
}

std::string SvgCanvas::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fixed(width_, 0) + "\" height=\"" + fixed(height_, 0) + "\" viewBox=\"0 0 " +
         fixed(width_, 0) + " " + fixed(height_, 0) + "\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"" + fixed(width_, 0) + "\" height=\"" + fixed(height_, 0) +
         "\" fill=\"#ffffff\"/>\n" + body_ + "</svg>\n";
}

}  // namespace mht::cli

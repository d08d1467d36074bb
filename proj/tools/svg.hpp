#pragma once

#include "mht/geometry.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mht::cli {

struct Stroke {
  std::string color = "#000000";
  double width = 1.0;
  std::string dash;  ///< SVG stroke-dasharray, empty for solid
};

/// SVG 1.1 document mapping a phase-plane box onto a pixel canvas (v grows
/// upwards). Elements are emitted in call order.
class SvgCanvas {
public:
  SvgCanvas(const Box& window, double width_px = 640.0, double height_px = 640.0,
            double margin_px = 48.0);

  void comment(std::string_view text);
  void polyline(const std::vector<State>& points, const Stroke& stroke);
  void circle(const State& center, double radius_px, std::string_view fill, const Stroke& stroke,
              std::string_view title = {});
  void square(const State& center, double half_px, std::string_view fill, const Stroke& stroke,
              std::string_view title = {});
  /// Filled rectangle between two phase-plane corners.
  void rect(const State& lo, const State& hi, std::string_view fill);
  void text(const State& at, std::string_view content, double size_px = 12.0);
  /// Text placed in pixel coordinates.
  void text_px(double x, double y, std::string_view content, double size_px = 12.0,
               std::string_view anchor = "start");
  /// Frame and tick labels for the window.
  void axes(std::string_view u_label, std::string_view v_label, int ticks = 5);

  std::string str() const;

private:
  double px(double u) const;
  double py(double v) const;

  Box window_;
  double width_;
  double height_;
  double margin_;
  std::string body_;
};

std::string escape_xml(std::string_view s);

}  // namespace mht::cli

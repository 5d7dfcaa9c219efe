#pragma once

#include <map>
#include <string>
#include <vector>

#include "odeblow/grid.hpp"

namespace odeblow {

// Profiles serialize as two-column CSV (r, value) and as a little-endian
// float64 stream behind a 16-byte header (magic, n_points, r_max).

void write_profile_csv(const std::string& path, const RadialProfile& p);
RadialProfile read_profile_csv(const std::string& path);

void write_profile_bin(const std::string& path, const RadialProfile& p);
RadialProfile read_profile_bin(const std::string& path);

/// Plain `key = value` config document; '#' starts a comment.  Flags given on
/// the command line override values read from the file.
std::map<std::string, std::string> read_config(const std::string& path);

/// Fixed-format float used everywhere byte-stable output matters.
std::string format_double(double v);

/// Append one line and flush; used for the JSONL record sinks.
void append_line(const std::string& path, const std::string& line);
std::vector<std::string> read_lines(const std::string& path);

/// Minimal SVG canvas for the report plots.
class SvgCanvas {
  public:
    SvgCanvas(double width, double height);
    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "none");
    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0);
    void circle(double cx, double cy, double r, const std::string& fill);
    void text(double x, double y, const std::string& s, double size = 12.0,
              const std::string& anchor = "start");
    void save(const std::string& path) const;
    const std::string& body() const { return body_; }

  private:
    double width_, height_;
    std::string body_;
};

/// Five-stop heat colormap on [0, 1].
std::string heat_color(double t);

}  // namespace odeblow

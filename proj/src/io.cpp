#include "odeblow/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace odeblow {

namespace {
constexpr std::uint32_t kProfileMagic = 0x31465052u;  // "RPF1"

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace

void write_profile_csv(const std::string& path, const RadialProfile& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "r,value\n";
    const auto& g = p.grid();
    const auto& v = p.physical();
    char buf[64];
    for (int j = 0; j <= g.n; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.node(j), v[j]);
        out << buf;
    }
}

RadialProfile read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::vector<double> r, v;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || !(std::isdigit(line[0]) || line[0] == '-' || line[0] == '+'))
            continue;
        double a, b;
        if (std::sscanf(line.c_str(), "%lf,%lf", &a, &b) == 2) {
            r.push_back(a);
            v.push_back(b);
        }
    }
    if (r.size() < 2) throw std::runtime_error("profile csv too short: " + path);
    RadialGrid g{r.back(), static_cast<int>(r.size()) - 1};
    return RadialProfile::from_physical(g, std::move(v));
}

void write_profile_bin(const std::string& path, const RadialProfile& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    const auto& g = p.grid();
    const std::uint32_t n = static_cast<std::uint32_t>(g.n);
    const double rm = g.r_max;
    out.write(reinterpret_cast<const char*>(&kProfileMagic), 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&rm), 8);
    const auto& v = p.physical();
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

RadialProfile read_profile_bin(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint32_t magic = 0, n = 0;
    double rm = 0.0;
    in.read(reinterpret_cast<char*>(&magic), 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&rm), 8);
    if (!in || magic != kProfileMagic)
        throw std::runtime_error("bad profile header in " + path);
    std::vector<double> v(n + 1);
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated profile in " + path);
    return RadialProfile::from_physical(RadialGrid{rm, static_cast<int>(n)}, std::move(v));
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

std::string format_double(double v) {
    char buf[48];
    if (std::isnan(v)) return "nan";
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void append_line(const std::string& path, const std::string& line) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + path);
    out << line << '\n';
    out.flush();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    if (!in) return lines;
    std::string line;
    while (std::getline(in, line))
        if (!trim(line).empty()) lines.push_back(line);
    return lines;
}

SvgCanvas::SvgCanvas(double width, double height) : width_(width), height_(height) {}

void SvgCanvas::rect(double x, double y, double w, double h, const std::string& fill,
                     const std::string& stroke) {
    std::ostringstream os;
    os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
       << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    body_ += os.str();
}

void SvgCanvas::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                     double width) {
    std::ostringstream os;
    os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
       << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
    body_ += os.str();
}

void SvgCanvas::circle(double cx, double cy, double r, const std::string& fill) {
    std::ostringstream os;
    os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"" << fill
       << "\"/>\n";
    body_ += os.str();
}

void SvgCanvas::text(double x, double y, const std::string& s, double size,
                     const std::string& anchor) {
    std::ostringstream os;
    os << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
       << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
    body_ += os.str();
}

void SvgCanvas::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_ << "</svg>\n";
}

std::string heat_color(double t) {
    if (std::isnan(t)) return "#cccccc";
    t = std::min(1.0, std::max(0.0, t));
    // dark blue -> cyan -> green -> yellow -> red
    static const double stops[5][3] = {
        {13, 8, 135}, {70, 160, 246}, {32, 201, 151}, {253, 231, 37}, {220, 50, 32}};
    const double x = t * 4.0;
    const int i = std::min(3, static_cast<int>(x));
    const double u = x - i;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(stops[i][0] + u * (stops[i + 1][0] - stops[i][0])),
                  static_cast<int>(stops[i][1] + u * (stops[i + 1][1] - stops[i][1])),
                  static_cast<int>(stops[i][2] + u * (stops[i + 1][2] - stops[i][2])));
    return buf;
}

}  // namespace odeblow

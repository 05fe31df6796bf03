#include "plk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "plk/error.hpp"

namespace plk {

nlohmann::json points_to_json(const std::vector<Point>& pts) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : pts) j.push_back({p.x, p.y});
  return j;
}

std::vector<Point> points_from_json(const nlohmann::json& j) {
  require(j.is_array(), ErrorKind::InvalidInput, "points must be an array of [x,y] pairs");
  std::vector<Point> out;
  for (const auto& p : j) {
    require(p.is_array() && p.size() == 2, ErrorKind::InvalidInput, "each point must be [x,y]");
    out.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
  }
  return out;
}

nlohmann::json to_json(const PointSet2& s) {
  return {{"window", {s.width(), s.height()}}, {"points", points_to_json(s.points())}};
}

PointSet2 point_set_from_json(const nlohmann::json& j) {
  require(j.contains("points"), ErrorKind::InvalidInput, "point set JSON needs \"points\"");
  const auto pts = points_from_json(j.at("points"));
  Window w;
  if (j.contains("window")) {
    w = Window(j.at("window").at(0).get<std::int64_t>(), j.at("window").at(1).get<std::int64_t>());
  } else {
    std::int64_t W = 1, H = 1;
    for (const auto& p : pts) {
      W = std::max(W, p.x + 1);
      H = std::max(H, p.y + 1);
    }
    w = Window(W, H);
  }
  return PointSet2::from_points(w, pts);
}

nlohmann::json to_json(const TableauRegion& r) { return {{"corners", points_to_json(r.corners())}}; }

TableauRegion region_from_json(const nlohmann::json& j) {
  require(j.contains("corners"), ErrorKind::InvalidInput, "region JSON needs \"corners\"");
  return TableauRegion(points_from_json(j.at("corners")));
}

FractalSpec pattern_from_json(const nlohmann::json& j, std::int64_t depth) {
  require(j.contains("n") && j.contains("points"), ErrorKind::InvalidInput, "pattern JSON needs \"n\" and \"points\"");
  const auto n = j.at("n").get<std::int64_t>();
  auto pts = points_from_json(j.at("points"));
  if (!j.contains("schedule")) return FractalSpec::with_default_schedule(n, std::move(pts), depth);
  FractalSpec s;
  s.n = n;
  s.pattern = std::move(pts);
  s.schedule = j.at("schedule").get<std::vector<std::int64_t>>();
  require(static_cast<std::int64_t>(s.schedule.size()) >= depth, ErrorKind::InvalidInput,
          "schedule shorter than the requested depth");
  s.schedule.resize(static_cast<std::size_t>(depth));
  s.validate();
  return s;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

std::string to_pgm(const PointSet2& s) {
  std::string out = "P5\n" + std::to_string(s.width()) + " " + std::to_string(s.height()) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(s.window().area()));
  for (std::int64_t y = s.height() - 1; y >= 0; --y)
    for (std::int64_t x = 0; x < s.width(); ++x) out.push_back(s.contains(x, y) ? '\0' : '\xff');
  return out;
}

void write_pgm(const std::string& path, const PointSet2& s) { write_text_file(path, to_pgm(s)); }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace plk

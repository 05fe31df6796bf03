#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plk/fractal.hpp"
#include "plk/point_set.hpp"
#include "plk/tableau.hpp"

namespace plk {

// {"window":[W,H],"points":[[x,y],...]}
nlohmann::json to_json(const PointSet2& s);
PointSet2 point_set_from_json(const nlohmann::json& j);

// [[x,y],...]
nlohmann::json points_to_json(const std::vector<Point>& pts);
std::vector<Point> points_from_json(const nlohmann::json& j);

// {"corners":[[N,M],...]} with half-open corners.
nlohmann::json to_json(const TableauRegion& r);
TableauRegion region_from_json(const nlohmann::json& j);

// {"n":2,"points":[[0,0],[0,2],[2,2]]}, optionally with "schedule":[u_1,...].
FractalSpec pattern_from_json(const nlohmann::json& j, std::int64_t depth);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Binary PGM (P5), row 0 at the bottom; members are black on white.
std::string to_pgm(const PointSet2& s);
void write_pgm(const std::string& path, const PointSet2& s);

// 64-bit FNV-1a, used to tag reports with their configuration.
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace plk

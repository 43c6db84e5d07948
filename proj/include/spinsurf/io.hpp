#ifndef SPINSURF_IO_HPP
#define SPINSURF_IO_HPP

#include <array>
#include <string>

#include <nlohmann/json.hpp>

#include "spinsurf/grid.hpp"
#include "spinsurf/quaternion.hpp"

namespace spinsurf {

/// Header "u,v,x1,x2,x3,x4", one row per node, u fastest.
void write_csv(const std::string& path, const Grid<Vec4>& x);
Grid<Vec4> read_csv(const std::string& path);

/// Vertices from the selected three coordinates, one quad per grid cell.
void write_obj(const std::string& path, const Grid<Vec4>& x, std::array<int, 3> axes = {0, 1, 2});

/// Chooses CSV or OBJ from the extension.
void write_mesh(const std::string& path, const Grid<Vec4>& x, std::array<int, 3> axes = {0, 1, 2});

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace spinsurf

#endif  // SPINSURF_IO_HPP

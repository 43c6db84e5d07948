#include "spinsurf/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "spinsurf/error.hpp"

namespace spinsurf {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  os.precision(17);
  return os;
}

void finish(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

}  // namespace

void write_csv(const std::string& path, const Grid<Vec4>& x) {
  std::ofstream os = open_out(path);
  const GridSpec& g = x.spec();
  os << "u,v,x1,x2,x3,x4\n";
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Vec4& p = x(i, j);
      os << g.u(i) << ',' << g.v(j) << ',' << p.w << ',' << p.x << ',' << p.y << ',' << p.z << '\n';
    }
  finish(os, path);
}

Grid<Vec4> read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(is, line) || line != "u,v,x1,x2,x3,x4")
    throw Error(ErrorCode::Io, "'" + path + "': expected header u,v,x1,x2,x3,x4");
  std::map<double, int> us, vs;
  std::vector<std::array<double, 6>> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 6> r{};
    std::istringstream ls(line);
    for (int k = 0; k < 6; ++k) {
      std::string cell;
      if (!std::getline(ls, cell, ',')) throw Error(ErrorCode::Io, path + ":" + std::to_string(lineno) + ": short row");
      try {
        r[k] = std::stod(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Io, path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    us[r[0]] = 0;
    vs[r[1]] = 0;
    rows.push_back(r);
  }
  const int nu = static_cast<int>(us.size()), nv = static_cast<int>(vs.size());
  if (static_cast<std::size_t>(nu) * nv != rows.size())
    throw Error(ErrorCode::Io, "'" + path + "' is not a full tensor grid");
  int k = 0;
  for (auto& [_, idx] : us) idx = k++;
  k = 0;
  for (auto& [_, idx] : vs) idx = k++;
  const GridSpec g({us.begin()->first, us.rbegin()->first, vs.begin()->first, vs.rbegin()->first}, nu, nv);
  Grid<Vec4> x(g);
  for (const auto& r : rows) x(us[r[0]], vs[r[1]]) = {r[2], r[3], r[4], r[5]};
  return x;
}

void write_obj(const std::string& path, const Grid<Vec4>& x, std::array<int, 3> axes) {
  for (int a : axes)
    if (a < 0 || a > 3) throw Error(ErrorCode::InvalidArgument, "OBJ axes must be in 0..3");
  std::ofstream os = open_out(path);
  const GridSpec& g = x.spec();
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) {
      const Vec4& p = x(i, j);
      os << "v " << p[axes[0]] << ' ' << p[axes[1]] << ' ' << p[axes[2]] << '\n';
    }
  auto id = [&](int i, int j) { return j * g.nu + i + 1; };
  for (int j = 0; j + 1 < g.nv; ++j)
    for (int i = 0; i + 1 < g.nu; ++i)
      os << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << '\n';
  finish(os, path);
}

void write_mesh(const std::string& path, const Grid<Vec4>& x, std::array<int, 3> axes) {
  if (ends_with(path, ".obj")) write_obj(path, x, axes);
  else if (ends_with(path, ".csv")) write_csv(path, x);
  else throw Error(ErrorCode::InvalidArgument, "output '" + path + "' must end in .csv or .obj");
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream os = open_out(path);
  os << j.dump(2) << '\n';
  finish(os, path);
}

}  // namespace spinsurf

// Copyright 2026 The eulergram Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eulergram/error.hpp"
#include "eulergram/lattice.hpp"

namespace eulergram::lattice {

namespace {

std::string sidecar_path(const std::string& pbm_path) { return pbm_path + ".json"; }

}  // namespace

// P4 rows are written in increasing j, each row packed MSB-first and padded to
// a whole byte. A set bit is written as 1.
std::string encode_pbm(const BitGrid& grid) {
  std::string out = "P4\n" + std::to_string(grid.nx()) + ' ' + std::to_string(grid.ny()) + '\n';
  const auto row_bytes = static_cast<std::size_t>((grid.nx() + 7) / 8);
  for (int j = 0; j < grid.ny(); ++j) {
    std::string row(row_bytes, '\0');
    for (int i = 0; i < grid.nx(); ++i) {
      if (grid.get(i, j)) row[static_cast<std::size_t>(i / 8)] |= static_cast<char>(0x80 >> (i % 8));
    }
    out += row;
  }
  return out;
}

void write_pbm(const BitGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIoError, "cannot open for writing", {{"path", path}});
  out << encode_pbm(grid);
  if (!out) throw Error(ErrorKind::kIoError, "write failed", {{"path", path}});
}

BitGrid read_pbm(const std::string& path, const Lattice& lattice) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open for reading", {{"path", path}});
  std::string magic;
  in >> magic;
  if (magic != "P4") throw Error(ErrorKind::kIoError, "not a binary PBM (P4)", {{"path", path}});
  // Header tokens may be separated by comments.
  auto next_int = [&]() {
    for (;;) {
      in >> std::ws;
      if (in.peek() == '#') {
        std::string skip;
        std::getline(in, skip);
        continue;
      }
      int v = 0;
      in >> v;
      return v;
    }
  };
  const int width = next_int();
  const int height = next_int();
  in.get();  // single whitespace before raster
  if (!in || width != lattice.nx() || height != lattice.ny()) {
    throw Error(ErrorKind::kIoError, "PBM dimensions do not match lattice",
                {{"path", path}, {"width", width}, {"height", height}});
  }
  BitGrid grid(lattice);
  const int row_bytes = (width + 7) / 8;
  std::vector<char> buf(static_cast<std::size_t>(row_bytes));
  for (int j = 0; j < height; ++j) {
    in.read(buf.data(), row_bytes);
    if (!in) throw Error(ErrorKind::kIoError, "truncated PBM raster", {{"path", path}});
    for (int i = 0; i < width; ++i) {
      if (static_cast<unsigned char>(buf[static_cast<std::size_t>(i / 8)]) & (0x80 >> (i % 8))) {
        grid.set(i, j);
      }
    }
  }
  return grid;
}

std::string lattice_json(const Lattice& lattice) {
  nlohmann::json j{{"epsilon", lattice.epsilon()},
                   {"origin", {lattice.origin().x, lattice.origin().y}},
                   {"nx", lattice.nx()},
                   {"ny", lattice.ny()}};
  return j.dump(2);
}

Lattice lattice_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return Lattice(j.at("epsilon").get<double>(),
                   {j.at("origin").at(0).get<double>(), j.at("origin").at(1).get<double>()},
                   j.at("nx").get<int>(), j.at("ny").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIoError, std::string("bad lattice sidecar: ") + e.what());
  }
}

void write_grid(const BitGrid& grid, const std::string& pbm_path) {
  write_pbm(grid, pbm_path);
  std::ofstream side(sidecar_path(pbm_path));
  if (!side) throw Error(ErrorKind::kIoError, "cannot write sidecar", {{"path", sidecar_path(pbm_path)}});
  side << lattice_json(grid.lattice()) << '\n';
}

BitGrid read_grid(const std::string& pbm_path) {
  std::ifstream side(sidecar_path(pbm_path));
  if (!side) throw Error(ErrorKind::kIoError, "missing sidecar", {{"path", sidecar_path(pbm_path)}});
  std::stringstream ss;
  ss << side.rdbuf();
  return read_pbm(pbm_path, lattice_from_json(ss.str()));
}

}  // namespace eulergram::lattice

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "fdbo/evolution.hpp"

namespace fdbo {
namespace {

constexpr uint32_t kSnapshotVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  os.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw std::runtime_error("snapshot: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Trajectory& traj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path + " for writing");
  os.write("FDBO", 4);
  put<uint32_t>(os, kSnapshotVersion);
  put<uint32_t>(os, static_cast<uint32_t>(traj.grid.n()));
  put<double>(os, traj.grid.period());
  put<double>(os, traj.params.alpha);
  put<double>(os, traj.params.beta);
  put<uint32_t>(os, static_cast<uint32_t>(traj.states.size()));
  for (size_t f = 0; f < traj.states.size(); ++f) {
    put<double>(os, traj.times[f]);
    for (const auto& c : traj.states[f].coeffs) {
      put<double>(os, c.real());
      put<double>(os, c.imag());
    }
  }
  if (!os) throw std::runtime_error("snapshot: write failed for " + path);
}

Trajectory read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "FDBO", 4) != 0) throw std::runtime_error("snapshot: bad magic");
  const auto version = get<uint32_t>(is);
  if (version != kSnapshotVersion) throw std::runtime_error("snapshot: unsupported version " + std::to_string(version));
  const auto n = get<uint32_t>(is);
  const double period = get<double>(is);
  const double alpha = get<double>(is);
  const double beta = get<double>(is);
  const auto frames = get<uint32_t>(is);
  Grid g(static_cast<int>(n), period);
  Trajectory traj{g, SymbolParams(alpha, beta), {}, {}};
  for (uint32_t f = 0; f < frames; ++f) {
    traj.times.push_back(get<double>(is));
    SpectralField u(g);
    for (auto& c : u.coeffs) {
      const double re = get<double>(is);
      const double im = get<double>(is);
      c = {re, im};
    }
    traj.states.push_back(std::move(u));
  }
  return traj;
}

}  // namespace fdbo

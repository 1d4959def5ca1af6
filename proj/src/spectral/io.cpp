#include "iwave/spectral/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "iwave/error.hpp"

namespace iwave {

namespace {

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

template <typename T>
void put(std::ostream& os, T v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error("binary dump truncated");
  return to_little(v);
}

void write_csv_impl(const std::string& path, const std::vector<const ScalarField*>& comps) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  const SpectralGrid& g = comps.front()->grid();
  os << (g.dim() == 1 ? "x" : "x,y");
  if (comps.size() == 1) {
    os << ",value";
  } else {
    for (std::size_t c = 0; c < comps.size(); ++c) os << ",v" << c;
  }
  os << '\n' << std::setprecision(17);
  const int ny = g.dim() == 2 ? g.points(1) : 1;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const int i = static_cast<int>(p) / ny;
    os << g.coordinate(0, i);
    if (g.dim() == 2) os << ',' << g.coordinate(1, static_cast<int>(p) % ny);
    for (const auto* f : comps) os << ',' << (*f)[p];
    os << '\n';
  }
}

}  // namespace

void write_csv(const std::string& path, const ScalarField& f) { write_csv_impl(path, {&f}); }

void write_csv(const std::string& path, const VectorField& v) {
  std::vector<const ScalarField*> comps;
  for (int i = 0; i < v.dim(); ++i) comps.push_back(&v[i]);
  write_csv_impl(path, comps);
}

void write_binary(const std::string& path, const std::vector<ScalarField>& components) {
  if (components.empty()) throw Error("binary dump needs at least one component");
  const SpectralGrid& g = components.front().grid();
  for (const auto& c : components) require_same_grid(g, c.grid());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os.write("IWFD", 4);
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(components.size()));
  for (int a = 0; a < g.dim(); ++a) put<std::uint32_t>(os, static_cast<std::uint32_t>(g.points(a)));
  for (int a = 0; a < g.dim(); ++a) put<double>(os, g.length(a));
  for (const auto& c : components) {
    for (double v : c.values()) put<double>(os, v);
  }
  if (!os) throw Error("write failed for " + path);
}

std::vector<ScalarField> read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "IWFD", 4) != 0) throw Error(path + ": not a field dump");
  const auto version = get<std::uint32_t>(is);
  if (version != 1) throw Error(path + ": unsupported dump version");
  const int dim = static_cast<int>(get<std::uint32_t>(is));
  const auto ncomp = get<std::uint32_t>(is);
  if (dim != 1 && dim != 2) throw Error(path + ": bad dimension");
  std::vector<int> points(dim);
  std::vector<double> lengths(dim);
  for (int a = 0; a < dim; ++a) points[a] = static_cast<int>(get<std::uint32_t>(is));
  for (int a = 0; a < dim; ++a) lengths[a] = get<double>(is);
  const SpectralGrid g = make_grid(dim, lengths, points);
  std::vector<ScalarField> out;
  for (std::uint32_t c = 0; c < ncomp; ++c) {
    ScalarField f(g);
    for (std::size_t p = 0; p < g.size(); ++p) f[p] = get<double>(is);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace iwave

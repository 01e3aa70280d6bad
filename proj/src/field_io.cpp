#include "wpl/field_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace wpl {

namespace {

// Host is little-endian x86 in this project's targets; write raw.
void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}
void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), 8);
}
std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}
double get_f64(std::istream& is) {
  double v;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

void write_header(std::ostream& os, const char magic[4], const GridSpec& g) {
  os.write(magic, 4);
  put_u32(os, 1);
  put_u32(os, static_cast<std::uint32_t>(g.nx));
  put_u32(os, static_cast<std::uint32_t>(g.ny));
  put_f64(os, g.xmin);
  put_f64(os, g.xmax);
  put_f64(os, g.ymin);
  put_f64(os, g.ymax);
}

GridSpec read_header(std::istream& is, const char expect[4]) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, expect, 4) != 0)
    throw std::runtime_error("field file: bad magic");
  const std::uint32_t version = get_u32(is);
  if (version != 1) throw std::runtime_error("field file: unsupported version");
  const int nx = static_cast<int>(get_u32(is));
  const int ny = static_cast<int>(get_u32(is));
  const double xmin = get_f64(is), xmax = get_f64(is);
  const double ymin = get_f64(is), ymax = get_f64(is);
  return GridSpec::make(nx, ny, xmin, xmax, ymin, ymax);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

}  // namespace

void write_wpf1(std::ostream& os, const ComplexField& field) {
  write_header(os, "WPF1", field.grid);
  os.write(reinterpret_cast<const char*>(field.amp.data()),
           static_cast<std::streamsize>(field.amp.size() * sizeof(cplx)));
}

void write_wpf1(const std::string& path, const ComplexField& field) {
  auto os = open_out(path);
  write_wpf1(os, field);
}

ComplexField read_wpf1(std::istream& is) {
  ComplexField f(read_header(is, "WPF1"));
  is.read(reinterpret_cast<char*>(f.amp.data()),
          static_cast<std::streamsize>(f.amp.size() * sizeof(cplx)));
  if (!is) throw std::runtime_error("WPF1: truncated payload");
  return f;
}

ComplexField read_wpf1(const std::string& path) {
  auto is = open_in(path);
  return read_wpf1(is);
}

void write_hmap(std::ostream& os, const RealField& field) {
  write_header(os, "HMAP", field.grid);
  os.write(reinterpret_cast<const char*>(field.v.data()),
           static_cast<std::streamsize>(field.v.size() * sizeof(double)));
}

void write_hmap(const std::string& path, const RealField& field) {
  auto os = open_out(path);
  write_hmap(os, field);
}

RealField read_hmap(std::istream& is) {
  RealField f(read_header(is, "HMAP"));
  is.read(reinterpret_cast<char*>(f.v.data()),
          static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  if (!is) throw std::runtime_error("HMAP: truncated payload");
  return f;
}

RealField read_hmap(const std::string& path) {
  auto is = open_in(path);
  return read_hmap(is);
}

FieldFileInfo inspect_field_file(const std::string& path) {
  auto is = open_in(path);
  char magic[4];
  is.read(magic, 4);
  if (!is) throw std::runtime_error("field file: too short");
  FieldFileInfo info;
  info.magic.assign(magic, 4);
  if (info.magic != "WPF1" && info.magic != "HMAP")
    throw std::runtime_error("field file: unknown magic '" + info.magic + "'");
  info.version = get_u32(is);
  info.nx = get_u32(is);
  info.ny = get_u32(is);
  info.xmin = get_f64(is);
  info.xmax = get_f64(is);
  info.ymin = get_f64(is);
  info.ymax = get_f64(is);
  const std::size_t per_point = info.magic == "WPF1" ? 16 : 8;
  info.payload_bytes = static_cast<std::size_t>(info.nx) * info.ny * per_point;
  return info;
}

}  // namespace wpl

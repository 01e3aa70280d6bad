#pragma once

#include <iosfwd>
#include <string>

#include "wpl/grid.hpp"

namespace wpl {

// Binary field dumps, little-endian, row-major (x fastest).
//
// WPF1: magic "WPF1", u32 version=1, u32 nx, u32 ny,
//       f64 xmin,xmax,ymin,ymax, then nx*ny interleaved (re,im) f64.
// HMAP: same header with magic "HMAP", payload nx*ny f64 (real maps).

void write_wpf1(std::ostream& os, const ComplexField& field);
void write_wpf1(const std::string& path, const ComplexField& field);
ComplexField read_wpf1(std::istream& is);
ComplexField read_wpf1(const std::string& path);

void write_hmap(std::ostream& os, const RealField& field);
void write_hmap(const std::string& path, const RealField& field);
RealField read_hmap(std::istream& is);
RealField read_hmap(const std::string& path);

/// Header summary for the `inspect` CLI subcommand. Works for both formats.
struct FieldFileInfo {
  std::string magic;
  std::uint32_t version = 0;
  std::uint32_t nx = 0, ny = 0;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  std::size_t payload_bytes = 0;
};
FieldFileInfo inspect_field_file(const std::string& path);

}  // namespace wpl

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "field.hpp"

namespace ssimlab {

// Binary (P5) grayscale image. Samples are row-major, top row first; maxval
// up to 255 stores one byte per sample, larger maxval two bytes big-endian.
struct PgmImage {
  std::size_t width = 0;
  std::size_t height = 0;
  unsigned maxval = 255;
  std::vector<std::uint16_t> samples;
};

PgmImage read_pgm(const std::string& path);
// Canonical header "P5\n<w> <h>\n<maxval>\n"; round-trips read_pgm output
// byte for byte.
void write_pgm(const std::string& path, const PgmImage& img);

// sample/maxval on the unit square, vertex layout; image row j maps to grid
// row j.
ScalarField2D field_from_pgm(const PgmImage& img);
// round(value * maxval), clamped to [0, maxval]; exact inverse of
// field_from_pgm for fields whose values are multiples of 1/maxval.
PgmImage pgm_from_field(const ScalarField2D& f, unsigned maxval = 255);

ScalarField2D load_image(const std::string& path);
void save_image(const std::string& path, const ScalarField2D& f,
                unsigned maxval = 255);

}  // namespace ssimlab

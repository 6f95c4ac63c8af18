#include "pgm.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace ssimlab {

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  fail_config("malformed PGM file '" + path + "': " + what);
}

// whitespace and '#' comments separate header tokens
unsigned long read_header_int(std::istream& in, const std::string& path,
                              const char* what) {
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  if (ch == EOF || !std::isdigit(ch)) malformed(path, std::string("expected ") + what);
  unsigned long value = 0;
  while (ch != EOF && std::isdigit(ch)) {
    value = value * 10 + static_cast<unsigned long>(ch - '0');
    if (value > 1000000000UL) malformed(path, std::string(what) + " out of range");
    ch = in.get();
  }
  if (ch != EOF) in.unget();
  return value;
}

}  // namespace

PgmImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_config("cannot open '" + path + "'");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') {
    malformed(path, "only binary P5 is supported");
  }
  PgmImage img;
  img.width = read_header_int(in, path, "width");
  img.height = read_header_int(in, path, "height");
  const unsigned long maxval = read_header_int(in, path, "maxval");
  if (img.width == 0 || img.height == 0) malformed(path, "zero dimension");
  if (maxval == 0 || maxval > 65535) malformed(path, "maxval must be 1..65535");
  img.maxval = static_cast<unsigned>(maxval);
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep)) {
    malformed(path, "expected single whitespace before sample data");
  }

  const std::size_t n = img.width * img.height;
  const std::size_t bytes_per = img.maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(n * bytes_per);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    malformed(path, "truncated sample data");
  }
  img.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint16_t v =
        bytes_per == 1 ? raw[i]
                       : static_cast<std::uint16_t>((raw[2 * i] << 8) |
                                                    raw[2 * i + 1]);
    if (v > img.maxval) malformed(path, "sample exceeds maxval");
    img.samples[i] = v;
  }
  return img;
}

void write_pgm(const std::string& path, const PgmImage& img) {
  if (img.width == 0 || img.height == 0) fail_config("empty image");
  if (img.maxval == 0 || img.maxval > 65535) {
    fail_config("maxval must be 1..65535");
  }
  if (img.samples.size() != img.width * img.height) {
    fail_config("sample count does not match image dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  out << "P5\n" << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  const bool wide = img.maxval > 255;
  std::vector<unsigned char> raw;
  raw.reserve(img.samples.size() * (wide ? 2 : 1));
  for (std::uint16_t v : img.samples) {
    if (v > img.maxval) fail_config("sample exceeds maxval");
    if (wide) raw.push_back(static_cast<unsigned char>(v >> 8));
    raw.push_back(static_cast<unsigned char>(v & 0xff));
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

ScalarField2D field_from_pgm(const PgmImage& img) {
  if (img.width < 2 || img.height < 2) {
    fail_config("image must be at least 2x2 to span a grid");
  }
  const GridSpec grid = GridSpec::rect(Domain2D::unit(), img.width - 1,
                                       img.height - 1, NodeLayout::vertex);
  std::vector<double> values(img.samples.size());
  // divide rather than multiply by a reciprocal so sample/maxval is correctly
  // rounded and a save/load round trip of quantized levels is bit-exact
  const double maxval = static_cast<double>(img.maxval);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<double>(img.samples[i]) / maxval;
  }
  return ScalarField2D(grid, std::move(values), true);
}

PgmImage pgm_from_field(const ScalarField2D& f, unsigned maxval) {
  if (maxval == 0 || maxval > 65535) fail_config("maxval must be 1..65535");
  PgmImage img;
  img.width = f.nx();
  img.height = f.ny();
  img.maxval = maxval;
  img.samples.resize(f.size());
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double clamped = std::min(1.0, std::max(0.0, v[i]));
    img.samples[i] = static_cast<std::uint16_t>(
        std::lround(clamped * static_cast<double>(maxval)));
  }
  return img;
}

ScalarField2D load_image(const std::string& path) {
  return field_from_pgm(read_pgm(path));
}

void save_image(const std::string& path, const ScalarField2D& f,
                unsigned maxval) {
  write_pgm(path, pgm_from_field(f, maxval));
}

}  // namespace ssimlab

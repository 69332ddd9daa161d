#include "nlc/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nlc {

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("NLGRID line " + std::to_string(line) + ": " + what);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& out) {
    while (std::getline(in_, out)) {
      ++line_;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (out.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

// Reads "<key> v1 ... vn" with exactly n values.
template <typename T>
std::vector<T> header_values(LineReader& reader, const std::string& key, std::size_t n) {
  std::string text;
  if (!reader.next(text)) fail(reader.line() + 1, "missing '" + key + "' line");
  std::istringstream ls(text);
  std::string word;
  ls >> word;
  if (word != key) fail(reader.line(), "expected '" + key + "', found '" + word + "'");
  std::vector<T> values;
  T v{};
  while (ls >> v) values.push_back(v);
  if (!ls.eof()) fail(reader.line(), "malformed value after '" + key + "'");
  if (values.size() != n) fail(reader.line(), "'" + key + "' expects " + std::to_string(n) + " value(s)");
  return values;
}

}  // namespace

void save_grid(std::ostream& out, const IndicatorGrid& grid, GridEncoding encoding) {
  const int d = grid.dimension();
  out << "NLGRID v1\n";
  out << "d " << d << "\n";
  out << "dims";
  for (int k = 0; k < d; ++k) out << ' ' << grid.dims()[k];
  out << "\norigin";
  for (int k = 0; k < d; ++k) out << ' ' << format_real(grid.origin()[k]);
  out << "\nspacing " << format_real(grid.spacing()) << "\n";
  const auto occ = grid.occupancy();
  if (encoding == GridEncoding::raw) {
    out << "encoding raw\n";
    const auto row = static_cast<std::size_t>(grid.dims()[d - 1]);
    std::string line(row, '0');
    for (std::size_t i = 0; i < occ.size(); i += row) {
      for (std::size_t j = 0; j < row; ++j) line[j] = occ[i + j] ? '1' : '0';
      out << line << '\n';
    }
    return;
  }
  out << "encoding rle\n";
  std::size_t i = 0;
  while (i < occ.size()) {
    std::size_t j = i;
    while (j < occ.size() && (occ[j] != 0) == (occ[i] != 0)) ++j;
    out << (occ[i] ? 1 : 0) << ' ' << (j - i) << '\n';
    i = j;
  }
}

void save_grid(const std::string& path, const IndicatorGrid& grid, GridEncoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  save_grid(out, grid, encoding);
  if (!out) throw std::runtime_error("write failed: " + path);
}

IndicatorGrid load_grid(std::istream& in) {
  LineReader reader(in);
  std::string text;
  if (!reader.next(text) || text != "NLGRID v1") fail(reader.line(), "expected 'NLGRID v1'");
  const auto dv = header_values<int>(reader, "d", 1);
  const int d = dv[0];
  if (d < 1 || d > 3) fail(reader.line(), "dimension must be 1, 2 or 3");
  const auto dims_v = header_values<std::int64_t>(reader, "dims", static_cast<std::size_t>(d));
  const auto origin_v = header_values<double>(reader, "origin", static_cast<std::size_t>(d));
  const auto spacing_v = header_values<double>(reader, "spacing", 1);
  if (!(spacing_v[0] > 0.0)) fail(reader.line(), "spacing must be positive");
  if (!reader.next(text)) fail(reader.line() + 1, "missing 'encoding' line");
  const bool raw = text == "encoding raw";
  if (!raw && text != "encoding rle") fail(reader.line(), "encoding must be raw or rle");

  CellIndex dims{1, 1, 1};
  Point origin{};
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) {
    if (dims_v[k] < 1) fail(3, "dims must be positive");
    dims[k] = dims_v[k];
    origin[k] = origin_v[k];
    total *= static_cast<std::size_t>(dims_v[k]);
  }
  std::vector<std::uint8_t> occ;
  occ.reserve(total);
  if (raw) {
    const auto row = static_cast<std::size_t>(dims[d - 1]);
    while (occ.size() < total) {
      if (!reader.next(text)) fail(reader.line() + 1, "payload ends after " + std::to_string(occ.size()) + " of " + std::to_string(total) + " cells");
      if (text.size() != row) fail(reader.line(), "row length " + std::to_string(text.size()) + ", expected " + std::to_string(row));
      for (char c : text) {
        if (c != '0' && c != '1') fail(reader.line(), "raw payload accepts only 0 and 1");
        occ.push_back(c == '1' ? 1 : 0);
      }
    }
  } else {
    while (occ.size() < total) {
      if (!reader.next(text)) fail(reader.line() + 1, "payload ends after " + std::to_string(occ.size()) + " of " + std::to_string(total) + " cells");
      std::istringstream ls(text);
      int bit = -1;
      long long count = -1;
      std::string extra;
      if (!(ls >> bit >> count) || (ls >> extra) || (bit != 0 && bit != 1) || count < 1) {
        fail(reader.line(), "expected '<bit> <count>'");
      }
      if (occ.size() + static_cast<std::size_t>(count) > total) fail(reader.line(), "run exceeds the cell count");
      occ.insert(occ.end(), static_cast<std::size_t>(count), static_cast<std::uint8_t>(bit));
    }
  }
  if (reader.next(text)) fail(reader.line(), "trailing data after payload");
  return IndicatorGrid(d, dims, origin, spacing_v[0], std::move(occ));
}

IndicatorGrid load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return load_grid(in);
}

}  // namespace nlc

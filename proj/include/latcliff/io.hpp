#pragma once

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "latcliff/lattice.hpp"
#include "latcliff/report.hpp"

namespace latcliff::io {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes content to a temporary file next to the target and renames it in.
inline void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error("cannot open " + tmp + " for writing");
    os << content;
    if (!os) throw io_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw io_error("cannot rename " + tmp + " to " + path);
}

/// Field CSV: header k1,...,kn,blade_mask,re,im and one row per nonzero
/// (site, blade) entry, sites in region order and blades ascending.
inline std::string field_to_csv(const Field& f) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 1; i <= f.n(); ++i) os << "k" << i << ",";
  os << "blade_mask,re,im\n";
  f.for_each_site([&](const std::vector<int>& k, const Multivector& v) {
    for (mask_t m = 0; m < v.size(); ++m) {
      const scalar_t c = v[m];
      if (c == scalar_t{}) continue;
      for (int kv : k) os << kv << ",";
      os << m << "," << c.real() << "," << c.imag() << "\n";
    }
  });
  return os.str();
}

inline void write_field_csv(const Field& f, const std::string& path) {
  atomic_write(path, field_to_csv(f));
}

/// Reads the CSV format back; bounds come from the data, missing entries
/// are zero.  Mesh width and boundary mode are not stored in the file.
inline Field read_field_csv(const std::string& path, double h,
                            Boundary mode = Boundary::Shrinking) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open " + path);
  std::string header;
  if (!std::getline(is, header)) throw io_error("empty field file " + path);

  int n = 0;
  {
    std::istringstream hs(header);
    std::string col;
    while (std::getline(hs, col, ',')) {
      if (!col.empty() && col[0] == 'k')
        ++n;
    }
  }
  if (n < 1) throw io_error("malformed field header in " + path);

  struct Entry {
    std::vector<int> site;
    mask_t mask;
    scalar_t value;
  };
  std::vector<Entry> entries;
  std::vector<int> lo(n, std::numeric_limits<int>::max());
  std::vector<int> hi(n, std::numeric_limits<int>::min());

  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Entry e;
    e.site.resize(n);
    std::string cell;
    for (int i = 0; i < n; ++i) {
      if (!std::getline(ls, cell, ',')) throw io_error("short row in " + path);
      e.site[i] = std::stoi(cell);
      lo[i] = std::min(lo[i], e.site[i]);
      hi[i] = std::max(hi[i], e.site[i]);
    }
    if (!std::getline(ls, cell, ',')) throw io_error("short row in " + path);
    e.mask = static_cast<mask_t>(std::stoul(cell));
    double re = 0.0, im = 0.0;
    if (!std::getline(ls, cell, ',')) throw io_error("short row in " + path);
    re = std::stod(cell);
    if (!std::getline(ls, cell, ',')) throw io_error("short row in " + path);
    im = std::stod(cell);
    e.value = scalar_t{re, im};
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw io_error("no entries in " + path);

  const LatticeBox box(n, h, lo, hi, mode);
  const Signature sig = Signature::neg_definite(n);
  std::vector<Multivector> grid(box.bounds.site_count(), Multivector(sig));
  for (const auto& e : entries) {
    if (e.mask >= sig.blade_count()) throw io_error("blade mask out of range in " + path);
    grid[box.bounds.index_of(e.site)].coeff(e.mask) = e.value;
  }
  return Field::build(box, [&](const std::vector<int>& k) {
    return grid[box.bounds.index_of(k)];
  });
}

inline void write_json(const json& j, const std::string& path) {
  atomic_write(path, j.dump(2) + "\n");
}

/// Multivector as a list of (blade mask, re, im), zero entries omitted.
inline json multivector_to_json(const Multivector& a) {
  json arr = json::array();
  for (mask_t m = 0; m < a.size(); ++m) {
    const scalar_t c = a[m];
    if (c == scalar_t{}) continue;
    arr.push_back({m, c.real(), c.imag()});
  }
  return arr;
}

}  // namespace latcliff::io

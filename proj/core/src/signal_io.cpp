#include "magcut/signal_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace magcut {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string signal_to_csv(const Signal& x) {
  std::string out;
  if (x.shape.is_2d)
    out += "# shape " + std::to_string(x.shape.h) + " " + std::to_string(x.shape.w) + "\n";
  out += "re,im\n";
  for (int i = 0; i < x.size(); ++i)
    out += fmt_double(x.values[i].real()) + "," + fmt_double(x.values[i].imag()) + "\n";
  return out;
}

void write_signal_csv(const Signal& x, const std::string& path) {
  write_text_file(path, signal_to_csv(x));
}

Signal read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open signal file: " + path);

  std::string line;
  int lineno = 0;
  bool is_2d = false;
  int h = 0, w = 0;
  std::vector<Complex> values;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string word;
      ss >> word;
      if (word == "shape") {
        if (!(ss >> h >> w) || h < 1 || w < 1)
          throw IoError(path + ":" + std::to_string(lineno) + ": bad shape line");
        is_2d = true;
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("re,im", 0) != 0)
        throw IoError(path + ":" + std::to_string(lineno) + ": expected 're,im' header");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError(path + ":" + std::to_string(lineno) + ": expected 're,im' row");
    try {
      const double re = std::stod(line.substr(0, comma));
      const double im = std::stod(line.substr(comma + 1));
      values.emplace_back(re, im);
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  if (!header_seen) throw IoError(path + ": missing 're,im' header");
  const int p = static_cast<int>(values.size());
  if (p < 2) throw IoError(path + ": signal must have at least 2 entries");
  if (is_2d && h * w != p)
    throw IoError(path + ": shape " + std::to_string(h) + "x" + std::to_string(w) +
                  " does not match " + std::to_string(p) + " rows");

  CVec v(p);
  for (int i = 0; i < p; ++i) v[i] = values[i];
  return Signal(std::move(v), is_2d ? SignalShape::two_d(h, w) : SignalShape::one_d(p));
}

void write_phase_csv(const PhaseVector& u, const std::string& path) {
  std::string out = "re,im,degenerate\n";
  for (int i = 0; i < u.n(); ++i)
    out += fmt_double(u.values[i].real()) + "," + fmt_double(u.values[i].imag()) + "," +
           (u.degenerate[i] ? "1" : "0") + "\n";
  write_text_file(path, out);
}

namespace {

Signal image_from_matrix(const std::vector<std::vector<double>>& rows,
                         const std::string& path, double maxval) {
  const int h = static_cast<int>(rows.size());
  if (h < 1) throw IoError(path + ": empty image");
  const int w = static_cast<int>(rows[0].size());
  double peak = maxval;
  if (peak <= 0.0) {
    for (const auto& r : rows)
      for (double v : r) peak = std::max(peak, v);
    if (peak <= 0.0) peak = 1.0;
  }
  CVec values(h * w);
  for (int i = 0; i < h; ++i) {
    if (static_cast<int>(rows[i].size()) != w)
      throw IoError(path + ": ragged image rows");
    for (int j = 0; j < w; ++j)
      values[static_cast<Eigen::Index>(j) * h + i] = Complex(rows[i][j] / peak, 0.0);
  }
  return Signal(std::move(values), SignalShape::two_d(h, w));
}

Signal load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path);
  std::string magic;
  in >> magic;
  auto next_int = [&]() {
    // Skip whitespace and '#' comment lines between header tokens.
    for (;;) {
      const int c = in.peek();
      if (c == '#') {
        std::string junk;
        std::getline(in, junk);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    long v = -1;
    in >> v;
    if (!in || v < 0) throw IoError(path + ": bad PGM header");
    return v;
  };
  const long w = next_int();
  const long h = next_int();
  const long maxval = next_int();
  if (w < 1 || h < 1 || maxval < 1) throw IoError(path + ": bad PGM dimensions");

  std::vector<std::vector<double>> rows(h, std::vector<double>(w));
  if (magic == "P2") {
    for (long i = 0; i < h; ++i)
      for (long j = 0; j < w; ++j) {
        long v;
        if (!(in >> v)) throw IoError(path + ": truncated PGM data");
        rows[i][j] = static_cast<double>(v);
      }
  } else if (magic == "P5") {
    in.get();  // single whitespace after maxval
    if (maxval > 255) throw IoError(path + ": 16-bit PGM not supported");
    std::vector<unsigned char> buf(static_cast<size_t>(w) * h);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!in) throw IoError(path + ": truncated PGM data");
    for (long i = 0; i < h; ++i)
      for (long j = 0; j < w; ++j) rows[i][j] = buf[i * w + j];
  } else {
    throw IoError(path + ": unsupported PGM magic '" + magic + "'");
  }
  return image_from_matrix(rows, path, static_cast<double>(maxval));
}

Signal load_csv_image(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open image: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(lineno) + ": bad number");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return image_from_matrix(rows, path, 0.0);
}

}  // namespace

Signal load_image_signal(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("cannot open image: " + path);
  char m0 = 0, m1 = 0;
  probe.get(m0);
  probe.get(m1);
  probe.close();
  if (m0 == 'P' && (m1 == '2' || m1 == '5')) return load_pgm(path);

  // A 2-D signal CSV (as written by gen) also serves as an image: the real
  // part is the intensity, rescaled to peak at 1.
  const std::string text = read_text_file(path);
  if (text.rfind("re,im", 0) == 0 || text.find("\nre,im") != std::string::npos) {
    Signal s = read_signal_csv(path);
    if (!s.shape.is_2d)
      throw IoError(path + ": image signal file lacks a '# shape h w' line");
    const double peak = s.values.real().maxCoeff();
    if (peak > 0.0) s.values /= peak;
    return s;
  }
  return load_csv_image(path);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace magcut

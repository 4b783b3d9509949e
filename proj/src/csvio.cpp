#include "lapgeo/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lapgeo {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_grid_csv(const SampledImmersion& S, std::ostream& out) {
  S.validate();
  out << "# lapgeo-grid v1 n=" << S.n() << " m=" << S.m() << " shape=";
  for (int a = 0; a < S.n(); ++a) out << (a ? "," : "") << S.grid.axes[a].samples;
  out << " periodic=";
  for (int a = 0; a < S.n(); ++a) out << (a ? "," : "") << (S.grid.axes[a].periodic ? 1 : 0);
  out << " domain=";
  for (int a = 0; a < S.n(); ++a)
    out << (a ? ";" : "") << fmt(S.grid.axes[a].start) << ":" << fmt(S.grid.axes[a].end);
  out << " label=" << S.label << "\n";

  const std::int64_t N = S.grid.total();
  for (std::int64_t idx = 0; idx < N; ++idx) {
    if (S.n() == 1) {
      out << fmt(S.grid.axes[0].coord(static_cast<int>(idx)));
    } else {
      int i = static_cast<int>(idx / S.grid.axes[1].samples);
      int j = static_cast<int>(idx % S.grid.axes[1].samples);
      out << fmt(S.grid.axes[0].coord(i)) << "," << fmt(S.grid.axes[1].coord(j));
    }
    for (int c = 0; c < S.m(); ++c) out << "," << fmt(S.points(idx, c));
    out << "\n";
  }
}

void write_grid_csv(const SampledImmersion& S, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::BadInput, "cannot open " + path + " for writing");
  write_grid_csv(S, f);
}

SampledImmersion read_grid_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# lapgeo-grid v1", 0) != 0)
    throw Error(ErrorCode::BadInput, "missing '# lapgeo-grid v1' header");

  auto field_of = [&](const std::string& key) -> std::string {
    auto pos = header.find(" " + key + "=");
    if (pos == std::string::npos) throw Error(ErrorCode::BadInput, "header missing " + key + "=");
    pos += key.size() + 2;
    if (key == "label") return header.substr(pos);
    auto end = header.find(' ', pos);
    return header.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
  };

  int n = std::stoi(field_of("n"));
  int m = std::stoi(field_of("m"));
  if (n < 1 || n > 2 || m < 2) throw Error(ErrorCode::BadInput, "bad n/m in header");

  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
  };

  auto shapes = split(field_of("shape"), ',');
  auto per = split(field_of("periodic"), ',');
  auto doms = split(field_of("domain"), ';');
  if ((int)shapes.size() != n || (int)per.size() != n || (int)doms.size() != n)
    throw Error(ErrorCode::BadInput, "header shape/periodic/domain arity mismatch");

  Grid grid;
  for (int a = 0; a < n; ++a) {
    auto ab = split(doms[a], ':');
    if (ab.size() != 2) throw Error(ErrorCode::BadInput, "bad domain spec");
    grid.axes.push_back({std::stoi(shapes[a]), std::stod(ab[0]), std::stod(ab[1]), per[a] == "1"});
  }
  grid.validate();

  SampledImmersion S;
  S.grid = grid;
  S.ambient_dim = m;
  S.label = field_of("label");
  S.points.resize(grid.total(), m);

  std::string line;
  std::int64_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line)
      if (ch == ',' || ch == '\t') ch = ' ';
    std::stringstream ss(line);
    double v;
    std::vector<double> vals;
    while (ss >> v) vals.push_back(v);
    if ((int)vals.size() != n + m)
      throw Error(ErrorCode::BadInput, "row " + std::to_string(row) + " has wrong arity");
    if (row >= grid.total()) throw Error(ErrorCode::BadInput, "more rows than shape declares");
    for (int c = 0; c < m; ++c) S.points(row, c) = vals[n + c];
    ++row;
  }
  if (row != grid.total()) throw Error(ErrorCode::BadInput, "fewer rows than shape declares");
  return S;
}

SampledImmersion read_grid_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::BadInput, "cannot open " + path);
  return read_grid_csv(f);
}

}  // namespace lapgeo

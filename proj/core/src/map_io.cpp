#include "thompson/map_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "thompson/error.hpp"

namespace thompson {

namespace {

/// Next non-blank line with comments stripped; false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

PLMap read_map(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw Error("map file: missing header 'n r'");
  std::istringstream header(line);
  int n = 0;
  std::string r_text;
  if (!(header >> n >> r_text)) throw Error("map file line " + std::to_string(line_no) + ": expected 'n r'");
  const GroupContext ctx(n, Rational::parse(r_text));

  std::vector<Breakpoint> bp;
  while (next_line(in, line, line_no)) {
    std::istringstream row(line);
    std::string x, y, extra;
    if (!(row >> x >> y) || (row >> extra)) {
      throw Error("map file line " + std::to_string(line_no) + ": expected 'x y'");
    }
    bp.push_back({Rational::parse(x), Rational::parse(y)});
  }
  return PLMap(ctx, std::move(bp));
}

PLMap read_map_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_map(in);
}

void write_map(std::ostream& out, const PLMap& x) {
  out << x.context().n() << ' ' << x.context().r() << '\n';
  for (const auto& p : x.breakpoints()) out << p.x << ' ' << p.y << '\n';
}

void write_map_file(const std::filesystem::path& path, const PLMap& x) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_map(out, x);
}

void write_csv(std::ostream& out, const PLMap& x) {
  out << "x,y\n";
  for (const auto& p : x.breakpoints()) out << p.x << ',' << p.y << '\n';
}

void write_svg(std::ostream& out, const std::vector<PLMap>& maps, int size) {
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  const int margin = 20;
  const int full = size + 2 * margin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << full << "\" height=\"" << full << "\" viewBox=\"0 0 "
      << full << ' ' << full << "\">\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  out << std::fixed << std::setprecision(3);

  std::set<double> ticks;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const double r = maps[i].context().r().to_double();
    auto px = [&](const Rational& t) { return margin + size * t.to_double() / r; };
    auto py = [&](const Rational& t) { return margin + size * (1.0 - t.to_double() / r); };
    out << "<polyline fill=\"none\" stroke=\"" << kColors[i % 5] << "\" points=\"";
    for (const auto& p : maps[i].breakpoints()) {
      out << px(p.x) << ',' << py(p.y) << ' ';
      ticks.insert(px(p.x));
    }
    out << "\"/>\n";
  }
  for (double t : ticks) {
    out << "<line x1=\"" << t << "\" y1=\"" << margin + size << "\" x2=\"" << t << "\" y2=\"" << margin + size + 6
        << "\" stroke=\"#444\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace thompson

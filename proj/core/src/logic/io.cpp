#include "thompson/logic/io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/logic/parser.hpp"

namespace thompson::logic {

namespace {

std::string strip_comment(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return line;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw Error("line " + std::to_string(line_no) + ": " + msg);
}

std::vector<int> read_ints(const std::string& line, std::size_t line_no) {
  std::istringstream row(line);
  std::vector<int> out;
  std::string word;
  while (row >> word) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(word, &used);
    } catch (const std::logic_error&) {
      fail(line_no, "not an integer: " + word);
    }
    if (used != word.size()) fail(line_no, "not an integer: " + word);
    out.push_back(value);
  }
  return out;
}

/// Splits "(a b) (c d) : body" into variable blocks and the formula text.
void split_blocks(const std::string& rest, std::size_t line_no, std::vector<std::vector<std::string>>& blocks,
                  std::string& body) {
  std::size_t i = 0;
  for (;;) {
    while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
    if (i >= rest.size()) fail(line_no, "missing ':' before the formula");
    if (rest[i] == ':') {
      body = rest.substr(i + 1);
      return;
    }
    if (rest[i] != '(') fail(line_no, "expected '(' or ':'");
    const auto close = rest.find(')', i);
    if (close == std::string::npos) fail(line_no, "unclosed '('");
    std::string inside = rest.substr(i + 1, close - i - 1);
    for (auto& c : inside) {
      if (c == ',') c = ' ';
    }
    std::istringstream vars(inside);
    std::vector<std::string> block;
    std::string v;
    while (vars >> v) block.push_back(v);
    blocks.push_back(std::move(block));
    i = close + 1;
  }
}

void write_blocks(std::ostream& out, const std::vector<std::string>& vars, std::size_t dim) {
  for (std::size_t i = 0; i < vars.size(); i += dim) {
    out << " (";
    for (std::size_t j = 0; j < dim && i + j < vars.size(); ++j) out << (j ? " " : "") << vars[i + j];
    out << ")";
  }
}

std::vector<int> decode_index(std::size_t idx, int arity, int universe) {
  std::vector<int> t(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(universe));
    idx /= static_cast<std::size_t>(universe);
  }
  return t;
}

}  // namespace

FiniteStructure read_structure(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<FiniteStructure> m;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_comment(line);
    if (blank(line)) continue;
    std::istringstream words(line);
    std::string keyword;
    std::string name;
    words >> keyword;
    if (keyword == "universe") {
      int u = 0;
      if (m || !(words >> u)) fail(line_no, "expected a single 'universe N' first");
      m.emplace(u);
      continue;
    }
    if (!m) fail(line_no, "'universe N' must come first");
    if (keyword == "constant") {
      int value = 0;
      if (!(words >> name >> value)) fail(line_no, "expected 'constant name value'");
      m->add_constant(name, value);
      continue;
    }
    if (keyword != "relation" && keyword != "function") fail(line_no, "unknown directive '" + keyword + "'");
    int arity = 0;
    if (!(words >> name >> arity)) fail(line_no, "expected '" + keyword + " name arity'");

    std::vector<std::vector<int>> rows;
    bool closed = false;
    while (std::getline(in, line)) {
      ++line_no;
      line = strip_comment(line);
      if (blank(line)) continue;
      std::string first;
      std::istringstream(line) >> first;
      if (first == "end") {
        closed = true;
        break;
      }
      rows.push_back(read_ints(line, line_no));
    }
    if (!closed) fail(line_no, "missing 'end' for '" + name + "'");

    if (keyword == "relation") {
      m->add_relation(name, arity, rows);
      continue;
    }
    std::size_t size = 1;
    for (int i = 0; i < arity; ++i) size *= static_cast<std::size_t>(m->universe());
    std::vector<int> table(size, -1);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != arity + 1) fail(line_no, "function '" + name + "': row of the wrong length");
      const std::span<const int> args(row.data(), static_cast<std::size_t>(arity));
      table[m->index(args)] = row.back();
    }
    for (int v : table) {
      if (v < 0) fail(line_no, "function '" + name + "' is not total");
    }
    m->add_function(name, arity, std::move(table));
  }
  if (!m) throw Error("structure file: missing 'universe N'");
  return *m;
}

void write_structure(std::ostream& out, const FiniteStructure& m) {
  out << "universe " << m.universe() << '\n';
  for (const auto& [name, r] : m.relations()) {
    out << "relation " << name << ' ' << r.arity << '\n';
    for (std::size_t idx = 0; idx < r.table.size(); ++idx) {
      if (!r.table[idx]) continue;
      const auto t = decode_index(idx, r.arity, m.universe());
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
      out << '\n';
    }
    out << "end\n";
  }
  for (const auto& [name, f] : m.functions()) {
    if (f.arity == 0) {
      out << "constant " << name << ' ' << f.table[0] << '\n';
      continue;
    }
    out << "function " << name << ' ' << f.arity << '\n';
    for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
      for (int a : decode_index(idx, f.arity, m.universe())) out << a << ' ';
      out << f.table[idx] << '\n';
    }
    out << "end\n";
  }
}

InterpretationData read_interpretation(std::istream& in) {
  // Join continuation lines first.
  std::vector<std::pair<std::size_t, std::string>> directives;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_comment(line);
    if (blank(line)) continue;
    if (std::isspace(static_cast<unsigned char>(line[0])) && !directives.empty()) {
      directives.back().second += " " + line;
    } else {
      directives.emplace_back(line_no, line);
    }
  }

  InterpretationData data;
  bool have_dim = false, have_phi = false, have_psi = false;
  for (const auto& [no, text] : directives) {
    std::istringstream words(text);
    std::string keyword;
    words >> keyword;
    std::string rest;
    std::getline(words, rest);
    if (keyword == "dim") {
      if (!(std::istringstream(rest) >> data.dim)) fail(no, "expected 'dim N'");
      have_dim = true;
      continue;
    }
    if (keyword == "param") {
      std::istringstream p(rest);
      std::string name, equals;
      int value = 0;
      if (!(p >> name >> equals >> value) || equals != "=") fail(no, "expected 'param name = value'");
      data.param_vars.push_back(name);
      data.param_values.push_back(value);
      continue;
    }
    bool function = false;
    std::string symbol;
    if (keyword == "xi") {
      std::istringstream s(rest);
      s >> symbol;
      if (symbol == "function") {
        function = true;
        s >> symbol;
      }
      std::getline(s, rest);
      if (symbol.empty()) fail(no, "xi needs a symbol name");
    } else if (keyword != "phi" && keyword != "psi") {
      fail(no, "unknown directive '" + keyword + "'");
    }
    std::vector<std::vector<std::string>> blocks;
    std::string body;
    split_blocks(rest, no, blocks, body);
    FormulaTemplate t;
    for (const auto& b : blocks) {
      if (static_cast<int>(b.size()) != data.dim) fail(no, "block size differs from dim (dim must come first)");
      t.vars.insert(t.vars.end(), b.begin(), b.end());
    }
    try {
      t.body = parse(body);
    } catch (const SyntaxError& e) {
      fail(no, e.what());
    }
    const int nblocks = static_cast<int>(blocks.size());
    if (keyword == "phi") {
      if (nblocks != 1) fail(no, "phi takes one block");
      data.phi = std::move(t);
      have_phi = true;
    } else if (keyword == "psi") {
      if (nblocks != 2) fail(no, "psi takes two blocks");
      data.psi = std::move(t);
      have_psi = true;
    } else {
      if (function) {
        if (nblocks < 1) fail(no, "a function xi needs at least the value block");
        data.sigma.functions[symbol] = nblocks - 1;
      } else {
        data.sigma.relations[symbol] = nblocks;
      }
      if (!data.xi.emplace(symbol, std::move(t)).second) fail(no, "xi for '" + symbol + "' given twice");
    }
  }
  if (!have_dim || !have_phi || !have_psi) throw Error("interpretation file needs dim, phi and psi");
  data.validate();
  return data;
}

void write_interpretation(std::ostream& out, const InterpretationData& data) {
  const auto dim = static_cast<std::size_t>(data.dim);
  out << "dim " << data.dim << '\n';
  for (std::size_t i = 0; i < data.param_vars.size(); ++i) {
    out << "param " << data.param_vars[i] << " = " << data.param_values[i] << '\n';
  }
  out << "phi";
  write_blocks(out, data.phi.vars, dim);
  out << " : " << render(data.phi.body) << '\n';
  out << "psi";
  write_blocks(out, data.psi.vars, dim);
  out << " : " << render(data.psi.body) << '\n';
  for (const auto& [name, t] : data.xi) {
    out << "xi " << (data.sigma.functions.contains(name) ? "function " : "") << name;
    write_blocks(out, t.vars, dim);
    out << " : " << render(t.body) << '\n';
  }
}

Formula read_formula(std::istream& in) {
  std::string text;
  std::string line;
  while (std::getline(in, line)) text += strip_comment(line) + "\n";
  return parse(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace thompson::logic

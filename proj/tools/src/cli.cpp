#include "thompson/cli/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "thompson/arithmetic.hpp"
#include "thompson/commutators.hpp"
#include "thompson/constructions.hpp"
#include "thompson/error.hpp"
#include "thompson/logic/interpretation.hpp"
#include "thompson/logic/io.hpp"
#include "thompson/logic/parser.hpp"
#include "thompson/map_io.hpp"
#include "thompson/random.hpp"
#include "thompson/wreath.hpp"

namespace thompson::cli {

namespace fs = std::filesystem;

namespace {

struct ContextOptions {
  int n = 2;
  std::string r = "1";

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "Slope base n (slopes are powers of n)")->capture_default_str();
    app->add_option("--r", r, "Interval length r")->capture_default_str();
  }
  GroupContext context() const { return GroupContext(n, Rational::parse(r)); }
};

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

/// A formula argument names a file when one exists, otherwise it is the text.
logic::Formula formula_argument(const std::string& arg) {
  if (fs::is_regular_file(arg)) {
    auto in = open_input(arg);
    return logic::read_formula(in);
  }
  return logic::parse(arg);
}

logic::FiniteStructure structure_file(const std::string& path) {
  auto in = open_input(path);
  return logic::read_structure(in);
}

logic::InterpretationData interpretation_file(const std::string& path) {
  auto in = open_input(path);
  return logic::read_interpretation(in);
}

/// Pairs file: whitespace-separated map paths, relative to the file itself,
/// two per commutator; '#' comments.
CommutatorList read_pairs_file(const fs::path& path) {
  auto in = open_input(path);
  std::vector<PLMap> maps;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    for (std::string word; words >> word;) {
      fs::path p(word);
      if (p.is_relative()) p = path.parent_path() / p;
      maps.push_back(read_map_file(p));
    }
  }
  if (maps.empty() || maps.size() % 2 != 0) {
    throw Error("pairs file must list an even, nonzero number of maps; got " + std::to_string(maps.size()));
  }
  CommutatorList list;
  for (std::size_t i = 0; i < maps.size(); i += 2) list.push_back({maps[i], maps[i + 1]});
  return list;
}

void print_map(std::ostream& out, const std::string& title, const PLMap& x) {
  out << "# " << title << '\n';
  write_map(out, x);
}

std::string class_names(const SlopeClass& c) {
  std::string out;
  auto add = [&](bool member, const char* name) {
    if (!member) return;
    if (!out.empty()) out += ' ';
    out += name;
  };
  add(c.in_F_circle(), "F-circle");
  add(c.in_E(), "E");
  add(c.in_E2(), "E2");
  add(c.in_P_plus(), "P+");
  add(c.in_P_minus(), "P-");
  add(c.in_U(), "U");
  add(c.in_B(), "B");
  return out;
}

void add_map_commands(CLI::App& app, std::ostream& out) {
  struct Args {
    std::vector<std::string> compose_files;
    std::string inv_file;
    std::string ev_file, ev_point;
    std::string sup_file;
    std::string sl_file;
  };
  auto o = std::make_shared<Args>();
  auto* map = app.add_subcommand("map", "Operations on maps stored in files");
  map->require_subcommand(1);

  auto* cmp = map->add_subcommand("compose", "Product of the maps, left to right (first the first)");
  cmp->add_option("files", o->compose_files, "Map files")->required()->check(CLI::ExistingFile);
  cmp->callback([&out, o] {
    std::vector<PLMap> maps;
    for (const auto& f : o->compose_files) maps.push_back(read_map_file(f));
    write_map(out, product(maps));
  });

  auto* inv = map->add_subcommand("inverse", "Inverse map");
  inv->add_option("file", o->inv_file)->required()->check(CLI::ExistingFile);
  inv->callback([&out, o] { write_map(out, inverse(read_map_file(o->inv_file))); });

  auto* ev = map->add_subcommand("eval", "Image of a point");
  ev->add_option("file", o->ev_file)->required()->check(CLI::ExistingFile);
  ev->add_option("t", o->ev_point, "Point of [0; r]")->required();
  ev->callback([&out, o] { out << evaluate(read_map_file(o->ev_file), Rational::parse(o->ev_point)) << '\n'; });

  auto* sup = map->add_subcommand("support", "Support as open intervals");
  sup->add_option("file", o->sup_file)->required()->check(CLI::ExistingFile);
  sup->callback([&out, o] { out << support(read_map_file(o->sup_file)).to_string() << '\n'; });

  auto* sl = map->add_subcommand("slopes", "Boundary slopes, their exponents and slope classes");
  sl->add_option("file", o->sl_file)->required()->check(CLI::ExistingFile);
  sl->callback([&out, o] {
    const PLMap x = read_map_file(o->sl_file);
    const SlopeClass c = classify(x);
    out << "slope at 0: " << slope_right(x, 0) << " (n^" << c.s0 << ")\n";
    out << "slope at r: " << slope_left(x, x.context().r()) << " (n^" << c.sr << ")\n";
    out << "classes: " << class_names(c) << '\n';
  });
}

void add_bump_command(CLI::App& app, std::ostream& out) {
  struct Args {
    ContextOptions ctx;
    std::string alpha, beta, p, q;
  };
  auto o = std::make_shared<Args>();
  auto* bump = app.add_subcommand("bump", "Up-bump with support ]alpha; beta[ and boundary slopes p, q");
  o->ctx.add_to(bump);
  bump->add_option("alpha", o->alpha)->required();
  bump->add_option("beta", o->beta)->required();
  bump->add_option("p", o->p, "Right slope at alpha (> 1)")->required();
  bump->add_option("q", o->q, "Left slope at beta (< 1)")->required();
  bump->callback([&out, o] {
    write_map(out, make_bump(o->ctx.context(), Rational::parse(o->alpha), Rational::parse(o->beta), Rational::parse(o->p),
                             Rational::parse(o->q)));
  });
}

void add_generators_command(CLI::App& app, std::ostream& out) {
  struct Args {
    ContextOptions ctx;
    std::string alpha0;
    std::int64_t s = 1, t = 1;
    std::string out_dir;
  };
  auto o = std::make_shared<Args>();
  auto* g = app.add_subcommand("generators", "The pair a, b generating a copy of Z wr Z");
  o->ctx.add_to(g);
  g->add_option("--alpha0", o->alpha0, "Ladder origin (default: the standard choice for the context)");
  g->add_option("--s", o->s, "a = c^s")->capture_default_str();
  g->add_option("--t", o->t, "b = d^t")->capture_default_str();
  g->add_option("--out-dir", o->out_dir, "Write a.map and b.map there instead of printing");
  g->callback([&out, o] {
    const GroupContext c = o->ctx.context();
    const Generators gens = o->alpha0.empty() ? default_generators(c) : make_generators(c, Rational::parse(o->alpha0), o->s, o->t);
    if (!o->out_dir.empty()) {
      fs::create_directories(o->out_dir);
      write_map_file(fs::path(o->out_dir) / "a.map", gens.a());
      write_map_file(fs::path(o->out_dir) / "b.map", gens.b());
      out << "wrote " << (fs::path(o->out_dir) / "a.map").string() << " and " << (fs::path(o->out_dir) / "b.map").string()
          << '\n';
      return;
    }
    print_map(out, "a", gens.a());
    print_map(out, "b", gens.b());
  });
}

void add_wreath_commands(CLI::App& app, std::ostream& out) {
  struct Args {
    std::string dec_file;
    std::string expr;
    bool as_map = false;
  };
  auto o = std::make_shared<Args>();
  auto* w = app.add_subcommand("wreath", "The copy of Z wr Z inside F");
  w->require_subcommand(1);

  auto* dec = w->add_subcommand("decompose", "Normal form of a map in <a, b>, or \"not in <a,b>\"");
  dec->add_option("file", o->dec_file)->required()->check(CLI::ExistingFile);
  dec->callback([&out, o] {
    const PLMap x = read_map_file(o->dec_file);
    const auto u = wreath_decompose(x, default_generators(x.context()));
    out << (u ? u->to_string() : std::string("not in <a,b>")) << '\n';
  });

  auto* ev = w->add_subcommand("eval", "Normal form of a word (letters a, b, A, B, powers ^k) or normal form");
  ev->add_option("expr", o->expr)->required();
  ev->add_flag("--map", o->as_map, "Print the map embed(u) over the standard generators");
  ev->callback([&out, o] {
    const WreathElement u = o->expr.find('|') != std::string::npos ? w_parse_normal_form(o->expr) : w_from_word(o->expr);
    if (o->as_map) {
      write_map(out, embed(u, thompson_generators()));
    } else {
      out << u.to_string() << '\n';
    }
  });
}

void add_arith_commands(CLI::App& app, std::ostream& out) {
  struct Args {
    ContextOptions ctx;
    std::int64_t k = 1;
    std::string dec_file;
    std::string x_file, y_file, z_file;
    std::string dx_file, dy_file;
    bool witness = false;
  };
  auto o = std::make_shared<Args>();
  auto* a = app.add_subcommand("arith", "The interpretation of (N, +, |) in F");
  a->require_subcommand(1);

  auto* enc = a->add_subcommand("encode", "Map encoding a positive integer");
  o->ctx.add_to(enc);
  enc->add_option("k", o->k)->required();
  enc->callback([&out, o] { write_map(out, encode_nat(o->ctx.context(), o->k)); });

  auto* dec = a->add_subcommand("decode", "Integer encoded by a map of class B");
  dec->add_option("file", o->dec_file)->required()->check(CLI::ExistingFile);
  dec->callback([&out, o] { out << decode(read_map_file(o->dec_file)) << '\n'; });

  auto* add = a->add_subcommand("add", "Whether x + y = z holds for the encoded integers");
  add->add_option("x", o->x_file)->required()->check(CLI::ExistingFile);
  add->add_option("y", o->y_file)->required()->check(CLI::ExistingFile);
  add->add_option("z", o->z_file)->required()->check(CLI::ExistingFile);
  add->callback([&out, o] {
    out << (add_bridge(read_map_file(o->x_file), read_map_file(o->y_file), read_map_file(o->z_file)) ? "true" : "false")
        << '\n';
  });

  auto* div = a->add_subcommand("divides", "Whether x divides y for the encoded integers");
  div->add_option("x", o->dx_file)->required()->check(CLI::ExistingFile);
  div->add_option("y", o->dy_file)->required()->check(CLI::ExistingFile);
  div->add_flag("--witness", o->witness, "Print the verified witness maps");
  div->callback([&out, o] {
    const PLMap x = read_map_file(o->dx_file), y = read_map_file(o->dy_file);
    if (!o->witness) {
      out << (divides_bridge(x, y) ? "true" : "false") << '\n';
      return;
    }
    const auto w = divides_witness(x, y);
    if (!w) {
      out << "false\n";
      return;
    }
    out << "true\n# quotient " << w->quotient << '\n';
    print_map(out, "x1", w->x1);
    print_map(out, "x2", w->x2);
    print_map(out, "z", w->z);
    print_map(out, "w", w->w);
  });
}

void add_commutator_commands(CLI::App& app, std::ostream& out) {
  struct Args {
    std::string pairs_file;
  };
  auto o = std::make_shared<Args>();
  auto* c = app.add_subcommand("commutators", "Products of commutators");
  c->require_subcommand(1);
  auto* dec = c->add_subcommand("decompose", "Rewrite a product of commutators as a product of two");
  dec->add_option("pairs-file", o->pairs_file, "File listing 2k map paths")->required()->check(CLI::ExistingFile);
  dec->callback([&out, o] {
    const CommutatorList list = read_pairs_file(o->pairs_file);
    const GroupContext ctx = list.front().x.context();
    const auto two = decompose_to_two(list);
    print_map(out, "x1", two[0].x);
    print_map(out, "y1", two[0].y);
    print_map(out, "x2", two[1].x);
    print_map(out, "y2", two[1].y);
    const PLMap straight = value(list, ctx);
    print_map(out, "certificate: product of the input commutators", straight);
    out << "# verified " << (compose(value(two[0]), value(two[1])) == straight ? "true" : "false") << '\n';
  });
}

void add_logic_commands(CLI::App& app, std::ostream& out, int& status) {
  struct Args {
    std::string ev_structure, ev_formula;
    std::vector<std::string> assignments;
    std::string red_interp, red_formula;
    std::string chk_structure, chk_interp;
    bool show_quotient = false;
    std::size_t sentences = 30;
    std::uint64_t seed = 1;
  };
  auto o = std::make_shared<Args>();
  auto* l = app.add_subcommand("logic", "First-order formulas, finite structures and interpretations");
  l->require_subcommand(1);

  auto* ev = l->add_subcommand("eval", "Truth of a formula in a finite structure");
  ev->add_option("structure", o->ev_structure)->required()->check(CLI::ExistingFile);
  ev->add_option("formula", o->ev_formula, "Formula file or text")->required();
  ev->add_option("--assign", o->assignments, "Free variable values, name=value");
  ev->callback([&out, o] {
    const logic::FiniteStructure m = structure_file(o->ev_structure);
    const logic::Formula f = logic::bind_constants(formula_argument(o->ev_formula), m.signature());
    std::map<std::string, int> env;
    for (const auto& a : o->assignments) {
      const auto eq = a.find('=');
      if (eq == std::string::npos) throw Error("--assign expects name=value, got " + a);
      env[a.substr(0, eq)] = std::stoi(a.substr(eq + 1));
    }
    out << (logic::evaluate(m, f, env) ? "true" : "false") << '\n';
  });

  auto* red = l->add_subcommand("reduce", "Translate a sentence through an interpretation");
  red->add_option("interpretation", o->red_interp)->required()->check(CLI::ExistingFile);
  red->add_option("sentence", o->red_formula, "Sentence file or text")->required();
  red->callback([&out, o] {
    out << logic::render(logic::reduce(formula_argument(o->red_formula), interpretation_file(o->red_interp))) << '\n';
  });

  auto* chk = l->add_subcommand("check-interp", "Admissibility of an interpretation in a structure");
  chk->add_option("structure", o->chk_structure)->required()->check(CLI::ExistingFile);
  chk->add_option("interpretation", o->chk_interp)->required()->check(CLI::ExistingFile);
  chk->add_flag("--quotient", o->show_quotient, "Also print the interpreted structure");
  chk->add_option("--sentences", o->sentences, "Random sentences in the equivalence suite")->capture_default_str();
  chk->add_option("--seed", o->seed, "Seed of the equivalence suite")->capture_default_str();
  chk->callback([&out, &status, o] {
    const logic::FiniteStructure n = structure_file(o->chk_structure);
    const logic::InterpretationData data = interpretation_file(o->chk_interp);
    const logic::InterpretationAnalysis a = logic::analyze(n, data);
    if (!a.admissible) {
      out << "not admissible: " << a.reason << '\n';
      return;
    }
    out << "admissible: " << a.domain.size() << " tuples, " << a.representatives.size() << " classes\n";
    const logic::FiniteStructure m = logic::quotient(n, data);
    if (o->show_quotient) logic::write_structure(out, m);
    if (data.sigma.has_functions()) {
      out << "equivalence suite skipped: the interpreted signature has function symbols\n";
      return;
    }
    gen::Rng rng(o->seed);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < o->sentences; ++i) {
      const logic::Formula alpha = gen::random_sentence(rng, data.sigma, 3);
      if (logic::evaluate(m, alpha) == logic::reduced_holds(n, alpha, data)) {
        ++agree;
      } else {
        out << "disagreement on " << logic::render(alpha) << '\n';
      }
    }
    out << "equivalence: " << agree << "/" << o->sentences << " random sentences agree\n";
    if (agree != o->sentences) status = kExitDomainError;
  });
}

void add_plot_command(CLI::App& app, std::ostream& out) {
  struct Args {
    std::vector<std::string> files;
    std::string format = "svg";
    std::string output;
    int size = 400;
  };
  auto o = std::make_shared<Args>();
  auto* p = app.add_subcommand("plot", "Graph of maps as SVG, or CSV for a single map");
  p->add_option("files", o->files, "Map files")->required()->check(CLI::ExistingFile);
  p->add_option("--format", o->format)->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
  p->add_option("-o,--output", o->output, "Output file (default: standard output)");
  p->add_option("--size", o->size, "SVG width and height in pixels")->capture_default_str();
  p->callback([&out, o] {
    std::vector<PLMap> maps;
    for (const auto& f : o->files) maps.push_back(read_map_file(f));
    std::ofstream file;
    if (!o->output.empty()) file = open_output(o->output);
    std::ostream& dst = o->output.empty() ? out : file;
    if (o->format == "csv") {
      if (maps.size() != 1) throw Error("csv output takes exactly one map");
      write_csv(dst, maps.front());
    } else {
      write_svg(dst, maps, o->size);
    }
  });
}

void add_selftest_command(CLI::App& app, std::ostream& out, int& status) {
  struct Args {
    std::uint64_t seed = 42;
    std::size_t trials = 200;
    unsigned threads = 0;
    std::string filter;
  };
  auto o = std::make_shared<Args>();
  auto* s = app.add_subcommand("selftest", "Run the randomized property campaign");
  s->add_option("--seed", o->seed)->capture_default_str();
  s->add_option("--trials", o->trials, "Trials per check")->capture_default_str();
  s->add_option("--threads", o->threads, "Worker threads (0: one per core)")->capture_default_str();
  s->add_option("--filter", o->filter, "Only checks whose name starts with this prefix");
  s->callback([&out, &status, o] {
    const auto outcomes = run_selftest(o->seed, o->trials, o->threads, o->filter);
    write_report(out, outcomes);
    for (const auto& o : outcomes) {
      if (!o.result.pass) status = kExitDomainError;
    }
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations in Thompson's group F and its relatives", "thompson"};
  app.require_subcommand(1);
  int status = kExitOk;
  add_map_commands(app, out);
  add_bump_command(app, out);
  add_generators_command(app, out);
  add_wreath_commands(app, out);
  add_arith_commands(app, out);
  add_commutator_commands(app, out);
  add_logic_commands(app, out, status);
  add_plot_command(app, out);
  add_selftest_command(app, out, status);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"thompson"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace thompson::cli

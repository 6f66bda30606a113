// Command-line driver: check, decompose, render, synthesize, examples.
//
// Exit codes: 0 success, 2 input error, 3 not a Z^n-tiling, 4 inconclusive.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "multitile/io.hpp"
#include "multitile/tiling.hpp"

namespace {

using namespace multitile;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kNotTiling = 3;
constexpr int kInconclusive = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string lattice_name(std::size_t dim) { return dim == 1 ? "Z" : "Z^2"; }

std::string cell_text(const ConvexCell& c) {
  if (c.dim() == 1) return "[" + to_string(c.lo()) + "," + to_string(c.hi()) + "]";
  std::string s = "conv{";
  for (std::size_t i = 0; i < c.vertices().size(); ++i) {
    if (i) s += ",";
    s += "(" + to_string(c.vertices()[i].x) + "," + to_string(c.vertices()[i].y) + ")";
  }
  return s + "}";
}

std::string region_text(const Region& r) {
  if (r.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < r.cells().size(); ++i) {
    if (i) s += " u ";
    s += cell_text(r.cells()[i]);
  }
  return s;
}

std::string set_text(const DigitSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : s) {
    if (!first) out += ",";
    first = false;
    out += to_string(p);
  }
  return out + "}";
}

void print_digits(std::ostream& os, const DigitMatrix& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (!d.at(i, j).empty()) os << "  Gamma_" << i + 1 << "," << j + 1 << " = " << set_text(d.at(i, j)) << "\n";
  const auto cols = digit_column_sets(d).columns;
  for (std::size_t j = 0; j < cols.size(); ++j) os << "  D_" << j + 1 << " = " << set_text(cols[j]) << "\n";
}

void print_atoms(std::ostream& os, const std::vector<Region>& atoms) {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    os << "  atom " << i + 1 << " (measure " << to_string(atoms[i].measure()) << "): " << region_text(atoms[i]) << "\n";
}

int run_check(const std::string& path) {
  const Problem p = parse_problem(read_file(path));
  const bool tiles = is_lattice_tiling(p.region);
  std::cout << "tiles " << lattice_name(p.region.dim()) << ": " << (tiles ? "yes" : "no") << ", |K| = " << to_string(p.region.measure()) << "\n";
  std::cout << "folded pieces (shift: measure in the unit cube):\n";
  for (const auto& piece : fold_to_torus(p.region)) std::cout << "  " << to_string(piece.shift) << ": " << to_string(piece.piece.measure()) << "\n";
  return tiles ? kOk : kNotTiling;
}

int run_decompose(const std::string& path, std::optional<unsigned> max_depth, bool as_json, const std::string& svg) {
  const Problem p = parse_problem(read_file(path));
  const unsigned depth = max_depth.value_or(p.max_depth.value_or(kDefaultMaxDepth));
  const DecompositionResult r = decompose(p.region, p.matrix, depth);

  if (as_json) {
    std::cout << decomposition_to_json(r, p.region, p.matrix);
  } else {
    std::cout << "status: " << to_string(r.status) << "\n";
    for (const auto& level : r.trace) {
      std::cout << "  level " << level.level << ": " << level.atom_count << " atoms, cut by";
      if (level.cutting_translates.empty()) std::cout << " nothing";
      for (const auto& l : level.cutting_translates) std::cout << " " << to_string(l);
      std::cout << "\n";
    }
    if (r.status == Status::SelfAffine) {
      std::cout << "prototiles N = " << r.minimal_partition->size() << "\n";
      std::cout << "m0 = " << r.stabilization_depth << "\n";
      print_atoms(std::cout, r.minimal_partition->atoms);
      print_digits(std::cout, *r.digits);
    }
    if (r.status == Status::InconclusiveAtDepth) std::cout << "depth = " << r.depth_reached << "\n";
    if (!r.diagnostics.empty()) std::cout << "note: " << r.diagnostics << "\n";
  }
  if (!svg.empty() && r.status == Status::SelfAffine) write_file(svg, render_svg(r.minimal_partition->atoms, p.region.dim()));

  switch (r.status) {
    case Status::SelfAffine:
      return kOk;
    case Status::NotLatticeTiling:
      return kNotTiling;
    case Status::InconclusiveAtDepth:
      return kInconclusive;
  }
  return kInconclusive;
}

int run_render(const std::string& path, const std::string& svg) {
  const std::vector<Region> atoms = parse_atoms_document(read_file(path));
  const std::size_t dim = nlohmann::json::parse(read_file(path)).at("dim").get<std::size_t>();
  const std::string out = render_svg(atoms, dim);
  if (svg.empty() || svg == "-") {
    std::cout << out;
  } else {
    write_file(svg, out);
  }
  return kOk;
}

int run_synthesize(const std::string& example, const std::string& system_path, unsigned depth, bool as_json, const std::string& svg) {
  std::optional<ExampleFixture> fixture;
  DigitSystem system;
  Region seed;
  if (!example.empty()) {
    fixture = builtin_example(example);
    system = fixture->system();
    seed = unit_cube(fixture->k.dim());
  } else {
    SystemFile file = parse_system(read_file(system_path));
    system = std::move(file.system);
    seed = std::move(file.seed);
  }

  const auto history = attractor_sequence(system, seed, depth);
  std::vector<Rat> steps, errors;
  for (std::size_t t = 1; t < history.size(); ++t) {
    Rat step = 0, error = 0;
    for (std::size_t i = 0; i < history[t].size(); ++i) {
      step += symmetric_difference_measure(history[t][i], history[t - 1][i]);
      if (fixture) error += symmetric_difference_measure(history[t][i], fixture->atoms[i]) / 2;
    }
    steps.push_back(step);
    errors.push_back(error);
  }

  if (as_json) {
    nlohmann::json doc;
    if (fixture) doc["fixture"] = nlohmann::json::parse(fixture_to_json(*fixture));
    doc["system"] = nlohmann::json::parse(system_to_json(system));
    doc["depth"] = depth;
    nlohmann::json approx = nlohmann::json::array();
    for (const auto& r : history.back()) {
      nlohmann::json cells = nlohmann::json::array();
      for (const auto& c : r.cells()) {
        if (c.dim() == 1) {
          cells.push_back({to_string(c.lo()), to_string(c.hi())});
        } else {
          nlohmann::json v = nlohmann::json::array();
          for (const auto& p : c.vertices()) v.push_back({to_string(p.x), to_string(p.y)});
          cells.push_back(v);
        }
      }
      approx.push_back({{"measure", to_string(r.measure())}, {"cells", cells}});
    }
    doc["approximation"] = approx;
    nlohmann::json s = nlohmann::json::array(), e = nlohmann::json::array();
    for (const auto& v : steps) s.push_back(to_string(v));
    for (const auto& v : errors) e.push_back(to_string(v));
    doc["step_differences"] = s;
    if (fixture) doc["fixture_errors"] = e;
    std::cout << doc.dump(2) << "\n";
  } else {
    if (fixture) {
      std::cout << fixture->id << ": " << fixture->title << "\n";
      std::cout << "K = " << region_text(fixture->k) << ", B = " << to_string(fixture->matrix) << "\n";
      print_atoms(std::cout, fixture->atoms);
      print_digits(std::cout, fixture->digits);
    } else {
      std::cout << "B = " << to_string(system.matrix) << ", standard digits: " << (system.standard ? "yes" : "no") << "\n";
      print_digits(std::cout, system.digits);
    }
    std::cout << "approximation at depth " << depth << ":\n";
    print_atoms(std::cout, history.back());
    for (std::size_t t = 0; t < steps.size(); ++t) {
      std::cout << "  step " << t + 1 << ": |A_t - A_{t-1}| = " << to_string(steps[t]);
      if (fixture) std::cout << ", error vs fixture = " << to_string(errors[t]);
      std::cout << "\n";
    }
  }
  if (!svg.empty()) write_file(svg, render_svg(history.back(), seed.dim()));
  return kOk;
}

int run_examples(const std::string& action, const std::string& id) {
  if (action == "list") {
    for (const auto& e : example_ids()) std::cout << e << "  " << builtin_example(e).title << "\n";
    std::cout << "ex34(p,q)  K=[-p/q,1-p/q], B=2, 1 <= p < q, gcd(p,q) = 1 (also ex34_p_q)\n";
    return kOk;
  }
  if (action == "show") {
    std::cout << fixture_to_json(builtin_example(id));
    return kOk;
  }
  if (action == "problem") {
    const ExampleFixture f = builtin_example(id);
    std::cout << serialize_problem(Problem{f.k, f.matrix, std::nullopt});
    return kOk;
  }
  throw std::invalid_argument("unknown examples action '" + action + "' (list, show, problem)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decompose integral self-affine multi-tiles into their simplest form"};
  app.require_subcommand(1);

  std::string file, svg, example, system_path, action, id;
  std::optional<unsigned> max_depth;
  unsigned depth = 0;
  bool as_json = false;

  auto* check = app.add_subcommand("check", "decide whether K tiles by Z^n");
  check->add_option("file", file, "problem file")->required();

  auto* decomp = app.add_subcommand("decompose", "compute the simplest-form decomposition");
  decomp->add_option("file", file, "problem file")->required();
  decomp->add_option("--max-depth", max_depth, "refinement depth cap (default 32)")->check(CLI::Range(1u, 4096u));
  decomp->add_flag("--json", as_json, "canonical JSON output");
  decomp->add_option("--svg", svg, "write the minimal partition as SVG");

  auto* render = app.add_subcommand("render", "render a problem or decomposition result as SVG");
  render->add_option("file", file, "problem or decomposition JSON")->required();
  render->add_option("--svg,-o", svg, "output path (stdout if omitted)");

  auto* synth = app.add_subcommand("synthesize", "approximate the attractor of a digit system");
  auto* ex_opt = synth->add_option("--example", example, "built-in example id");
  auto* sys_opt = synth->add_option("--system", system_path, "digit-system file");
  ex_opt->excludes(sys_opt);
  synth->add_option("--depth", depth, "number of iterations")->check(CLI::Range(0u, 64u));
  synth->add_flag("--json", as_json, "JSON output");
  synth->add_option("--svg", svg, "write the approximation as SVG");

  auto* examples = app.add_subcommand("examples", "built-in fixtures");
  examples->add_option("action", action, "list | show | problem")->required();
  examples->add_option("id", id, "example id (show, problem)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return run_check(file);
    if (*decomp) return run_decompose(file, max_depth, as_json, svg);
    if (*render) return run_render(file, svg);
    if (*synth) {
      if (example.empty() && system_path.empty()) throw std::invalid_argument("synthesize needs --example or --system");
      return run_synthesize(example, system_path, depth, as_json, svg);
    }
    if (*examples) return run_examples(action, id);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

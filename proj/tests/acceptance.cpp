// Acceptance suite. Usage: multitile_acceptance PATH_TO_CLI
// Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multitile/decomposer.hpp"
#include "multitile/io.hpp"
#include "multitile/synthesizer.hpp"
#include "multitile/tiling.hpp"

using namespace multitile;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

Rat q(long n, long d = 1) { return make_rat(n, d); }

DigitSet pts1(std::initializer_list<long> xs) {
  DigitSet s;
  for (long x : xs) s.insert(LatticePoint{x});
  return s;
}

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const fs::path out = g_dir / "cli.out";
  const std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

fs::path write_problem(const std::string& name, const Region& k, const IntMatrix& b) {
  const fs::path path = g_dir / (name + ".json");
  std::ofstream(path) << serialize_problem(Problem{k, b, std::nullopt});
  return path;
}

Region negate(const Region& r) { return image(r, AffineMap(2, {-1, 0, 0, -1}, {0, 0})); }

std::vector<Region> split_presentation(const Region& r, std::mt19937& rng, int chords) {
  // Cut random cells along random rational chords through two boundary
  // points, using half-plane clipping by large triangles.
  std::vector<ConvexCell> cells = r.cells();
  std::uniform_int_distribution<long> t(1, 30);
  for (int c = 0; c < chords; ++c) {
    const std::size_t idx = rng() % cells.size();
    const ConvexCell cell = cells[idx];
    if (cell.dim() == 1) {
      const Rat cut = cell.lo() + (cell.hi() - cell.lo()) * make_rat(t(rng), 31);
      cells[idx] = ConvexCell::interval(cell.lo(), cut);
      cells.push_back(ConvexCell::interval(cut, cell.hi()));
      continue;
    }
    const auto& v = cell.vertices();
    const std::size_t e1 = rng() % v.size();
    const std::size_t e2 = (e1 + 1 + rng() % (v.size() - 1)) % v.size();
    auto on_edge = [&](std::size_t e) {
      const Point2& a = v[e];
      const Point2& b = v[(e + 1) % v.size()];
      const Rat s = make_rat(t(rng), 31);
      return Point2{a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
    };
    const Point2 p1 = on_edge(e1), p2 = on_edge(e2);
    std::vector<Point2> left, right;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point2& a = v[i];
      const Point2& b = v[(i + 1) % v.size()];
      const Rat da = (p2.x - p1.x) * (a.y - p1.y) - (p2.y - p1.y) * (a.x - p1.x);
      const Rat db = (p2.x - p1.x) * (b.y - p1.y) - (p2.y - p1.y) * (b.x - p1.x);
      if (sgn(da) >= 0) left.push_back(a);
      if (sgn(da) <= 0) right.push_back(a);
      if (sgn(da) * sgn(db) < 0) {
        const Rat s = da / (da - db);
        const Point2 x{a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
        left.push_back(x);
        right.push_back(x);
      }
    }
    if (left.size() < 3 || right.size() < 3) continue;
    cells[idx] = ConvexCell::polygon(left);
    cells.push_back(ConvexCell::polygon(right));
  }
  std::vector<Region> out;
  for (const auto& c : cells) out.push_back(Region::from_cells(c.dim(), {c}));
  return out;
}

// Problem file listing the given cells verbatim.
std::string problem_text(const std::vector<ConvexCell>& cells, const IntMatrix& b) {
  std::string out = "{\"dim\":" + std::to_string(b.dim()) + ",\"matrix\":[";
  for (std::size_t r = 0; r < b.dim(); ++r) {
    out += r ? ",[" : "[";
    for (std::size_t c = 0; c < b.dim(); ++c) out += (c ? "," : "") + b.at(r, c).get_str();
    out += "]";
  }
  out += "],\"cells\":[";
  auto str = [](const Rat& x) { return "\"" + to_string(x) + "\""; };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out += i ? "," : "";
    if (cells[i].dim() == 1) {
      out += "[" + str(cells[i].lo()) + "," + str(cells[i].hi()) + "]";
      continue;
    }
    out += "[";
    const auto& v = cells[i].vertices();
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ",[" : "[") + str(v[k].x) + "," + str(v[k].y) + "]";
    out += "]";
  }
  return out + "]}";
}

std::vector<std::pair<long, long>> family() {
  std::vector<std::pair<long, long>> out;
  for (long qd = 2; qd <= 12; ++qd)
    for (long p = 1; p < qd; ++p)
      if (std::gcd(p, qd) == 1) out.emplace_back(p, qd);
  return out;
}

bool columns_standard(const DigitMatrix& d, const IntMatrix& b) {
  for (const auto& column : digit_column_sets(d).columns) {
    std::vector<LatticePoint> v(column.begin(), column.end());
    if (!is_complete_coset_set(v, b)) return false;
  }
  return true;
}

void criterion1() {
  const Region k = Region::interval(q(-3, 4), q(1, 4));
  const auto r = decompose(k, IntMatrix{{2}});
  expect(r.status == Status::SelfAffine, "status");
  const std::vector<Region> expected{Region::interval(q(-3, 4), q(-1, 2)), Region::interval(q(-1, 2), 0), Region::interval(0, q(1, 4))};
  expect(r.minimal_partition->atoms == expected, "prototiles");
  const DigitMatrix& g = *r.digits;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      DigitSet want;
      if (i == 0 && j == 1) want = pts1({-1});
      if (i == 1 && j == 0) want = pts1({0});
      if (i == 1 && j == 1) want = pts1({0});
      if (i == 1 && j == 2) want = pts1({-1});
      if (i == 2 && j == 0) want = pts1({1});
      if (i == 2 && j == 2) want = pts1({0});
      expect(g.at(i, j) == want, "digit entry " + std::to_string(i + 1) + "," + std::to_string(j + 1));
    }
  const auto cols = digit_column_sets(g).columns;
  expect(cols == std::vector<DigitSet>{pts1({0, 1}), pts1({-1, 0}), pts1({-1, 0})}, "digit columns");
  const auto f4 = builtin_example("ex31_4piece");
  const auto classes = equivalence_classes(f4.digits, f4.matrix, 2);
  expect(classes.classes == std::vector<std::vector<std::size_t>>{{0}, {1, 2}, {3}}, "classes at depth 2");
  expect(merge_by_classes(Partition{f4.k, f4.atoms}, classes).atoms == expected, "merged partition");
}

void criterion2() {
  const Region k = Region::interval(q(-3, 4), q(1, 4));
  const auto r = decompose(k, IntMatrix{{-3}});
  expect(r.status == Status::SelfAffine, "status");
  expect(r.minimal_partition->atoms == std::vector<Region>{k}, "single prototile");
  expect(r.digits->at(0, 0) == pts1({0, 1, 2}), "digits");
  const auto f2 = builtin_example("ex32_2piece");
  expect(!is_simplest_form(f2.atoms, f2.matrix, kDefaultMaxDepth), "2-piece split reported simplest");
  const auto cols = digit_column_sets(extract_digits(f2.atoms, f2.matrix)).columns;
  expect(cols[0] == pts1({0, 1, 2}) && cols[1] == pts1({0, 1, 2}), "columns");
  expect(f2.digits.at(0, 0) != f2.digits.at(0, 1) && f2.digits.at(1, 0) != f2.digits.at(1, 1), "columns identical");
  for (unsigned depth = 1; depth <= 8; ++depth)
    expect(equivalence_classes(f2.digits, f2.matrix, depth).classes == std::vector<std::vector<std::size_t>>{{0, 1}}, "1 and 2 not equivalent");
}

void criterion3() {
  const auto f6 = builtin_example("ex33_6piece");
  const auto& h = f6.atoms[0];
  const auto& e = f6.atoms[1];
  const auto& f = f6.atoms[2];
  const auto r = decompose(f6.k, f6.matrix);
  expect(r.status == Status::SelfAffine, "status");
  expect(r.stabilization_depth == 2, "m0 = " + std::to_string(r.stabilization_depth));
  const auto& atoms = r.minimal_partition->atoms;
  expect(atoms.size() == 4, "prototile count");
  for (const Region& want : {unite(h, e), f, unite(negate(e), negate(h)), negate(f)}) {
    expect(std::any_of(atoms.begin(), atoms.end(), [&](const Region& a) { return essentially_equal(a, want); }), "missing prototile");
  }
  expect(verify_self_affine_collection(f6.atoms, f6.matrix, f6.digits), "6-piece fixture");
  const Partition c1 = refine(Partition::trivial(f6.k), f6.k, f6.matrix, 1);
  expect(c1.size() == 2, "first refinement");
  bool rejected = false;
  try {
    rejected = !verify_self_affine_collection(c1.atoms, f6.matrix, extract_digits(c1.atoms, f6.matrix));
  } catch (const CoverFailure&) {
    rejected = true;
  }
  expect(rejected, "first refinement accepted");
}

void criterion4() {
  for (const auto& [p, qd] : family()) {
    const std::string tag = std::to_string(p) + "/" + std::to_string(qd);
    const Region k = Region::interval(q(-p, qd), q(qd - p, qd));
    const IntMatrix b{{2}};
    const auto run = run_cli("check \"" + write_problem("fam", k, b).string() + "\"");
    expect(run.exit_code == 0 && run.out.find("tiles Z: yes") != std::string::npos, tag + ": check");
    const auto r = decompose(k, b);
    expect(r.status == Status::SelfAffine, tag + ": status");
    const auto& atoms = r.minimal_partition->atoms;
    expect(atoms.size() <= static_cast<std::size_t>(qd), tag + ": count");
    for (const auto& a : atoms)
      for (const auto& c : a.cells()) expect(Rat(c.lo() * qd).get_den() == 1 && Rat(c.hi() * qd).get_den() == 1, tag + ": endpoint");
    expect(verify_self_affine_collection(atoms, b, *r.digits), tag + ": verify");
    expect(columns_standard(*r.digits, b), tag + ": coset sets");
  }
}

void criterion5() {
  std::vector<std::string> ids = example_ids();
  for (const char* extra : {"ex34(1,3)", "ex34(3,8)", "ex34(5,12)"}) ids.push_back(extra);
  std::mt19937 rng(2024);
  for (const auto& id : ids) {
    const auto f = builtin_example(id);
    const auto base = decompose(f.k, f.matrix);
    const std::string want = decomposition_to_json(base, f.k, f.matrix);
    for (int trial = 0; trial < 3; ++trial) {
      const auto pieces = split_presentation(f.k, rng, 20);
      std::vector<ConvexCell> cells;
      for (const auto& piece : pieces) cells.insert(cells.end(), piece.cells().begin(), piece.cells().end());
      expect(cells.size() > f.k.cells().size(), id + ": no chord was cut");
      const Region again = Region::from_cells(f.k.dim(), cells);
      const auto r = decompose(again, f.matrix);
      expect(decomposition_to_json(r, again, f.matrix) == want, id + ": output differs");
      // Through the file format as well, with the cut cells listed separately.
      const fs::path path = g_dir / "split.json";
      std::ofstream(path) << problem_text(cells, f.matrix);
      const auto run = run_cli("decompose --json \"" + path.string() + "\"");
      expect(run.exit_code == 0 && run.out == want, id + ": CLI output differs");
    }
  }
}

void criterion6() {
  std::vector<std::string> ids = example_ids();
  for (const auto& [p, qd] : family()) ids.push_back("ex34(" + std::to_string(p) + "," + std::to_string(qd) + ")");
  for (const auto& id : ids) {
    const auto f = builtin_example(id);
    const std::size_t n = f.k.dim();
    const Rat d = abs(Rat(det(f.matrix)));
    Rat scale = 1;
    for (unsigned k = 0; k <= 3; ++k) {
      expect(measure(affine_image(f.k, f.matrix, k, LatticePoint::zero(n))) == scale, id + ": measure of B^k K");
      scale *= d;
    }
    Partition p = Partition::trivial(f.k);
    const auto result = decompose(f.k, f.matrix);
    for (unsigned level = 1; level <= result.stabilization_depth + 1; ++level) {
      p = refine(p, f.k, f.matrix, level);
      Rat total = 0;
      for (const auto& a : p.atoms) total += measure(a);
      expect(total == 1 && measure(f.k) == 1, id + ": atom measures at level " + std::to_string(level));
    }
    for (const auto* rep : {&f.atoms, &result.minimal_partition->atoms}) {
      const DigitMatrix g = rep == &f.atoms ? f.digits : *result.digits;
      for (unsigned m = 1; m <= 2; ++m) {
        const auto cols = digit_column_sets(digit_power(g, f.matrix, m)).columns;
        std::vector<Region> pieces;
        Rat total = 0;
        for (std::size_t j = 0; j < rep->size(); ++j)
          for (const auto& l : cols[j]) {
            pieces.push_back(translate((*rep)[j], l));
            total += measure(pieces.back());
          }
        Region acc(n);
        for (const auto& piece : pieces) acc = unite(acc, piece);
        const Region target = affine_image(f.k, f.matrix, m, LatticePoint::zero(n));
        expect(essentially_equal(acc, target) && total == measure(target), id + ": B^m K identity, m = " + std::to_string(m));
      }
    }
  }
}

void criterion7() {
  DigitMatrix g(1, 1);
  g.at(0, 0) = pts1({0, 1, 2});
  const auto s = DigitSystem::make(IntMatrix{{-3}}, g);
  const Region k = Region::interval(q(-3, 4), q(1, 4));
  const auto seq = attractor_sequence(s, Region::interval(0, 1), 7);
  Rat want = q(1, 4);
  for (unsigned d = 1; d <= 6; ++d) {
    const Rat err = symmetric_difference_measure(seq[d][0], k) / 2;
    expect(err == want, "depth " + std::to_string(d) + ": error " + to_string(err));
    const Rat step = symmetric_difference_measure(seq[d][0], seq[d + 1][0]);
    const Rat prev = symmetric_difference_measure(seq[d - 1][0], seq[d][0]);
    expect(step == prev / 3, "depth " + std::to_string(d) + ": step ratio");
    want /= 3;
  }
  const auto run = run_cli("synthesize --example ex32_tile --depth 3");
  expect(run.exit_code == 0 && run.out.find("-7/9") != std::string::npos && run.out.find("2/9") != std::string::npos, "CLI synthesize");
}

void criterion8() {
  bool threw = false;
  try {
    decompose(Region::interval(0, 1), IntMatrix{{1}});
  } catch (const InvalidMatrix&) {
    threw = true;
  }
  expect(threw, "non-expansive matrix accepted");
  threw = false;
  try {
    decompose(Region::interval(0, 1), IntMatrix{{2, 0}, {0, 1}});
  } catch (const InvalidMatrix&) {
    threw = true;
  }
  expect(threw, "non-expansive 2x2 matrix accepted");

  const Region double_cover = Region::interval(0, 2);
  expect(decompose(double_cover, IntMatrix{{2}}).status == Status::NotLatticeTiling, "[0,2] status");
  const auto dc = write_problem("double", double_cover, IntMatrix{{2}});
  expect(run_cli("check \"" + dc.string() + "\"").exit_code == 3, "[0,2] check exit");
  expect(run_cli("decompose \"" + dc.string() + "\"").exit_code == 3, "[0,2] decompose exit");

  const auto f = builtin_example("ex33_4piece");
  const auto shallow = decompose(f.k, f.matrix, 1);
  expect(shallow.status == Status::InconclusiveAtDepth && shallow.depth_reached == 1, "max_depth 1 status");
  const auto path = write_problem("ex33", f.k, f.matrix);
  const auto run = run_cli("decompose --max-depth 1 \"" + path.string() + "\"");
  expect(run.exit_code == 4, "max_depth 1 exit " + std::to_string(run.exit_code));
  expect(run.out.find("level 1") != std::string::npos, "trace missing");
  expect(decompose(f.k, f.matrix).status == Status::SelfAffine, "default depth status");
  expect(run_cli("decompose \"" + path.string() + "\"").exit_code == 0, "default depth exit");
  const fs::path bad = g_dir / "bad.json";
  std::ofstream(bad) << R"({"dim":1,"matrix":[[1]],"cells":[["0","1"]]})";
  expect(run_cli("decompose \"" + bad.string() + "\"").exit_code == 2, "non-expansive file exit");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: multitile_acceptance PATH_TO_CLI\n";
    return 2;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() / ("multitile-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(g_dir);

  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"1 ex31 regression (B=2, three prototiles)", criterion1},
      {"2 ex32 regression (B=-3, single tile)", criterion2},
      {"3 ex33 regression (four prototiles, m0=2)", criterion3},
      {"4 ex34 family, p<q<=12", criterion4},
      {"5 uniqueness under re-presentation", criterion5},
      {"6 measure conservation", criterion6},
      {"7 synthesizer contraction", criterion7},
      {"8 guard paths", criterion8},
  };
  int failed = 0;
  for (const auto& [name, body] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      body();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << name << "  (" << ms << " ms)";
    if (!ok) std::cout << ": " << detail;
    std::cout << "\n";
    failed += ok ? 0 : 1;
  }
  fs::remove_all(g_dir);
  return failed == 0 ? 0 : 1;
}

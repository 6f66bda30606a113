#include "multitile/io.hpp"

#include <json.hpp>

#include "multitile/tiling.hpp"

namespace multitile {

using nlohmann::json;

namespace {

std::string field(const std::string& parent, std::size_t index) { return parent + "[" + std::to_string(index) + "]"; }

Rat rat_field(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "expected a rational string such as \"-3/4\"");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  }
}

Int int_field(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.dump());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Rat r;
    try {
      r = parse_rat(s);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where, e.what());
    }
    if (r.get_den() != 1) throw ParseError(where, "expected an integer");
    return r.get_num();
  }
  throw ParseError(where, "expected an integer");
}

const json& member(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(key, "missing field");
  return *it;
}

json rat_json(const Rat& r) { return to_string(r); }

json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json point_json(const LatticePoint& p) {
  json out = json::array();
  for (const auto& c : p.coords()) out.push_back(int_json(c));
  return out;
}

json matrix_json(const IntMatrix& b) {
  json out = json::array();
  for (const auto& row : b.rows()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(int_json(v));
    out.push_back(r);
  }
  return out;
}

json cell_json(const ConvexCell& c) {
  if (c.dim() == 1) return json::array({rat_json(c.lo()), rat_json(c.hi())});
  json out = json::array();
  for (const auto& p : c.vertices()) out.push_back(json::array({rat_json(p.x), rat_json(p.y)}));
  return out;
}

json region_json(const Region& r) {
  json cells = json::array();
  for (const auto& c : r.cells()) cells.push_back(cell_json(c));
  return cells;
}

json atoms_json(const std::vector<Region>& atoms) {
  json out = json::array();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    out.push_back({{"index", i + 1}, {"measure", rat_json(atoms[i].measure())}, {"cells", region_json(atoms[i])}});
  return out;
}

json digit_set_json(const DigitSet& s) {
  json out = json::array();
  for (const auto& p : s) out.push_back(point_json(p));
  return out;
}

json digits_json(const DigitMatrix& d) {
  json rows = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < d.size(); ++j) row.push_back(digit_set_json(d.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json columns_json(const DigitMatrix& d) {
  json out = json::array();
  for (const auto& c : digit_column_sets(d).columns) out.push_back(digit_set_json(c));
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column), "invalid JSON");
  }
}

ConvexCell parse_cell(const json& cell, std::size_t dim, const std::string& where) {
  if (!cell.is_array()) throw ParseError(where, "a cell must be an array");
  try {
    if (dim == 1) {
      if (cell.size() != 2) throw ParseError(where, "a 1-D cell needs exactly two endpoints");
      Rat a = rat_field(cell[0], field(where, 0));
      Rat b = rat_field(cell[1], field(where, 1));
      if (a == b) throw ValidationError(where + ": cell has zero length");
      if (b < a) std::swap(a, b);
      return ConvexCell::interval(a, b);
    }
    if (cell.size() < 3) throw ParseError(where, "a 2-D cell needs at least three vertices");
    std::vector<Point2> vertices;
    for (std::size_t v = 0; v < cell.size(); ++v) {
      const json& p = cell[v];
      if (!p.is_array() || p.size() != 2) throw ParseError(field(where, v), "a vertex must be a pair [\"x\",\"y\"]");
      vertices.push_back({rat_field(p[0], field(field(where, v), 0)), rat_field(p[1], field(field(where, v), 1))});
    }
    return ConvexCell::polygon(std::move(vertices));
  } catch (const GeometryError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

Region parse_region(const json& cells, std::size_t dim, const std::string& where) {
  if (!cells.is_array()) throw ParseError(where, "expected an array of cells");
  std::vector<Region> parts;
  for (std::size_t c = 0; c < cells.size(); ++c) parts.push_back(Region::from_cells(dim, {parse_cell(cells[c], dim, field(where, c))}));
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b)
      if (sgn(overlap_measure(parts[a], parts[b])) > 0) throw ValidationError(field(where, a) + " and " + field(where, b) + " overlap");
  return parts.empty() ? Region(dim) : disjoint_union(parts);
}

std::size_t parse_dim(const json& doc) {
  const json& d = member(doc, "dim");
  if (!d.is_number_integer() || (d.get<long>() != 1 && d.get<long>() != 2)) throw ParseError("dim", "must be 1 or 2");
  return d.get<std::size_t>();
}

IntMatrix parse_matrix(const json& doc, std::size_t dim) {
  const json& m = member(doc, "matrix");
  if (!m.is_array() || m.size() != dim) throw ParseError("matrix", "expected " + std::to_string(dim) + " rows");
  std::vector<std::vector<Int>> rows;
  for (std::size_t r = 0; r < dim; ++r) {
    if (!m[r].is_array() || m[r].size() != dim) throw ParseError(field("matrix", r), "expected " + std::to_string(dim) + " entries");
    rows.emplace_back();
    for (std::size_t c = 0; c < dim; ++c) rows.back().push_back(int_field(m[r][c], field(field("matrix", r), c)));
  }
  IntMatrix b(rows);
  if (det(b) == 0) throw ValidationError("matrix " + to_string(b) + " is singular");
  if (!is_expansive(b)) throw ValidationError("matrix " + to_string(b) + " is not expansive");
  return b;
}

}  // namespace

ParseError::ParseError(std::string where, const std::string& what) : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

Problem parse_problem(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  const std::size_t dim = parse_dim(doc);

  IntMatrix b = parse_matrix(doc, dim);

  Region region = parse_region(member(doc, "cells"), dim, "cells");
  if (region.empty()) throw ValidationError("cells: region is empty");

  std::optional<unsigned> max_depth;
  if (auto it = doc.find("max_depth"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<long>() < 1 || it->get<long>() > 4096) throw ParseError("max_depth", "must be an integer in [1, 4096]");
    max_depth = it->get<unsigned>();
  }
  return Problem{std::move(region), std::move(b), max_depth};
}

std::string serialize_problem(const Problem& p) {
  json doc = {{"dim", p.region.dim()}, {"matrix", matrix_json(p.matrix)}, {"cells", region_json(p.region)}};
  if (p.max_depth) doc["max_depth"] = *p.max_depth;
  return doc.dump(2) + "\n";
}

SystemFile parse_system(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  const std::size_t dim = parse_dim(doc);
  IntMatrix b = parse_matrix(doc, dim);
  const json& rows = member(doc, "digits");
  if (!rows.is_array() || rows.empty()) throw ParseError("digits", "expected a non-empty square array");
  const std::size_t m = rows.size();
  DigitMatrix digits(m, dim, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::string row_name = field("digits", i);
    if (!rows[i].is_array() || rows[i].size() != m) throw ParseError(row_name, "expected " + std::to_string(m) + " digit sets");
    for (std::size_t j = 0; j < m; ++j) {
      const std::string set_name = field(row_name, j);
      if (!rows[i][j].is_array()) throw ParseError(set_name, "expected an array of points");
      for (std::size_t k = 0; k < rows[i][j].size(); ++k) {
        const json& p = rows[i][j][k];
        const std::string point_name = field(set_name, k);
        if (!p.is_array() || p.size() != dim) throw ParseError(point_name, "expected a point with " + std::to_string(dim) + " coordinates");
        std::vector<Int> coords;
        for (std::size_t c = 0; c < dim; ++c) coords.push_back(int_field(p[c], field(point_name, c)));
        digits.at(i, j).insert(LatticePoint(std::move(coords)));
      }
    }
  }
  Region seed = doc.contains("seed") ? parse_region(doc["seed"], dim, "seed") : unit_cube(dim);
  if (seed.empty()) throw ValidationError("seed: region is empty");
  return SystemFile{DigitSystem::make(std::move(b), std::move(digits)), std::move(seed)};
}

std::string system_to_json(const DigitSystem& s) {
  json doc = {{"dim", s.matrix.dim()}, {"matrix", matrix_json(s.matrix)}, {"digits", digits_json(s.digits)}, {"standard", s.standard}};
  return doc.dump(2) + "\n";
}

std::vector<Region> parse_atoms_document(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  const std::size_t dim = parse_dim(doc);
  if (doc.contains("atoms")) {
    const json& atoms = doc["atoms"];
    if (!atoms.is_array()) throw ParseError("atoms", "expected an array");
    std::vector<Region> out;
    for (std::size_t a = 0; a < atoms.size(); ++a) out.push_back(parse_region(member(atoms[a], "cells"), dim, field("atoms", a) + ".cells"));
    return out;
  }
  if (doc.contains("cells")) return {parse_region(doc["cells"], dim, "cells")};
  throw ParseError("document", "expected \"atoms\" or \"cells\"");
}

std::string decomposition_to_json(const DecompositionResult& r, const Region& k, const IntMatrix& b) {
  json doc = {{"status", to_string(r.status)}, {"dim", k.dim()}, {"matrix", matrix_json(b)}, {"measure", rat_json(k.measure())}};
  json trace = json::array();
  for (const auto& level : r.trace) {
    json cuts = json::array();
    for (const auto& l : level.cutting_translates) cuts.push_back(point_json(l));
    trace.push_back({{"level", level.level}, {"cutting_translates", cuts}, {"atoms", level.atom_count}});
  }
  doc["trace"] = trace;
  if (!r.diagnostics.empty()) doc["diagnostics"] = r.diagnostics;
  if (r.status == Status::InconclusiveAtDepth) doc["depth"] = r.depth_reached;
  if (r.status == Status::SelfAffine && r.minimal_partition && r.digits) {
    doc["prototiles"] = r.minimal_partition->size();
    doc["m0"] = r.stabilization_depth;
    doc["atoms"] = atoms_json(r.minimal_partition->atoms);
    doc["digits"] = digits_json(*r.digits);
    doc["digit_columns"] = columns_json(*r.digits);
  }
  return doc.dump(2) + "\n";
}

std::string fixture_to_json(const ExampleFixture& f) {
  json doc = {{"id", f.id},
              {"title", f.title},
              {"dim", f.k.dim()},
              {"matrix", matrix_json(f.matrix)},
              {"cells", region_json(f.k)},
              {"measure", rat_json(f.k.measure())},
              {"atoms", atoms_json(f.atoms)},
              {"digits", digits_json(f.digits)},
              {"digit_columns", columns_json(f.digits)}};
  if (f.expected_m0) doc["expected_m0"] = *f.expected_m0;
  return doc.dump(2) + "\n";
}

}  // namespace multitile

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "multitile/decomposer.hpp"
#include "multitile/synthesizer.hpp"

namespace multitile {

/// Malformed JSON or a field of the wrong shape. `where` names the field
/// (or "line L, column C" for syntax errors).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what);
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Well-formed input describing an unusable problem (degenerate or
/// non-convex cell, overlapping cells, singular or non-expansive matrix).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Problem {
  Region region;
  IntMatrix matrix;
  std::optional<unsigned> max_depth;
};

/// Schema: {"dim": 1|2, "matrix": [[int,...],...], "cells": [...],
/// "max_depth": int (optional)}. A 1-D cell is ["a","b"]; a 2-D cell is a
/// list of ["x","y"] vertex pairs in boundary order. Rationals are strings
/// of the form "p", "-p" or "p/q".
Problem parse_problem(const std::string& text);
std::string serialize_problem(const Problem& p);

struct SystemFile {
  DigitSystem system;
  /// Defaults to the unit interval / square.
  Region seed;
};

/// Schema: {"dim", "matrix", "digits": [[[point, ...], ...], ...],
/// "seed": cells (optional)}; digits[i][j] lists the integer points of
/// Gamma_ij, each point an array of n integers.
SystemFile parse_system(const std::string& text);

/// Atoms from any document this tool writes (problem, decomposition
/// result or example dump). A problem yields its region as a single atom.
std::vector<Region> parse_atoms_document(const std::string& text);

std::string decomposition_to_json(const DecompositionResult& r, const Region& k, const IntMatrix& b);
std::string fixture_to_json(const ExampleFixture& f);
std::string system_to_json(const DigitSystem& s);

/// Deterministic SVG. Dimension 2 draws one filled path per atom over the
/// integer grid; dimension 1 draws one bar row per atom along a number line.
std::string render_svg(const std::vector<Region>& atoms, std::size_t dim);

}  // namespace multitile

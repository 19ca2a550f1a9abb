#pragma once

#include <iosfwd>
#include <string>

#include "flatweights/grid.hpp"

// Weight/function file formats.
//
// CSV: one header line holding the two integers "n,L", then the cell values,
// row-major for n=2 (one line per row). Values are written with 17
// significant digits, so a write/read round trip is bit-exact. A literal
// "n,L" label line before the header is tolerated on input.
//
// JSON: {"n": 1, "L": 3, "values": [...]} with round-trip-exact numbers.

namespace flatweights {

void write_grid_fn_csv(const GridFn& f, std::ostream& out);
GridFn read_grid_fn_csv(std::istream& in);

void write_grid_fn_json(const GridFn& f, std::ostream& out);
GridFn read_grid_fn_json(std::istream& in);

// Dispatch on extension: .json uses JSON, anything else CSV.
GridFn read_grid_fn_file(const std::string& path);
void write_grid_fn_file(const GridFn& f, const std::string& path);

Weight read_weight_file(const std::string& path);
void write_weight_file(const Weight& w, const std::string& path);

}  // namespace flatweights

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "superplane/multipoly.hpp"
#include "superplane/network.hpp"

namespace superplane::io {

/// %.17g formatting; reads back bit-exactly.
std::string format_real(double v);

// Polynomial text format:
//   poly nvars=<d>
//   <coefficient> <e1> ... <ed>      one term per line, graded-lex order
// Blank lines and lines starting with '#' are ignored on input.
std::string serialize_poly(const MultiPoly& p);
MultiPoly parse_poly(std::string_view text);

// Univariate polynomial: a single line "unipoly: c0 c1 ... cN".
std::string serialize_unipoly(const UniPoly& p);
UniPoly parse_unipoly(std::string_view text);

// Network file: JSON with input_dim and layers[{weights, activation}].
std::string serialize_network(const NetworkSpec& net);
NetworkSpec parse_network(std::string_view text);

// Dataset file: CSV with header f1,...,fd,y and one example per row.
std::string serialize_dataset(const Dataset& ds);
Dataset parse_dataset(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

MultiPoly load_poly(const std::filesystem::path& path);
NetworkSpec load_network(const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace superplane::io

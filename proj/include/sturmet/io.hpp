#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sturmet/types.hpp"

namespace sturmet {

/// Matrix-market-style text block: a header line "name rows cols nnz",
/// then one entry per line "row col re im" (1-based).  Zero entries are
/// skipped, so banded matrices stay compact.
void write_matrix_triplets(std::ostream& os, const Matrix& m, const std::string& name);

/// Reads one block written by write_matrix_triplets.  Throws IoError on
/// malformed input or a name mismatch (pass "" to accept any name).
Matrix read_matrix_triplets(std::istream& is, const std::string& expect_name = "");

/// Minimal RFC-4180 CSV: fields are quoted only when needed.
std::string csv_field(const std::string& s);
std::vector<std::vector<std::string>> read_csv(std::istream& is);

}  // namespace sturmet

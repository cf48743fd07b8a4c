#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "dectk/int_matrix.hpp"
#include "dectk/mesh.hpp"
#include "dectk/whitney.hpp"

namespace dectk {

/// Coordinate-list text: a "rows cols nnz" header, then one "row col value"
/// line per stored entry (0-based, column-major order).
void write_coo(std::ostream& out, const IntSparseMatrix& m);
void write_coo(std::ostream& out, const Eigen::SparseMatrix<double>& m);
Eigen::SparseMatrix<double> read_coo(std::istream& in);

std::string fingerprint_hex(std::uint64_t fp);

/// {"degree": p, "fingerprint": "<16 hex digits>", "values": [...]}
std::string cochain_json(const Cochain& c, const AbstractComplex& ac);
/// A JSON array of cochain objects.
std::string cochain_basis_json(const std::vector<Cochain>& basis, const AbstractComplex& ac);

/// Parses a cochain object and checks it against `ac`: the fingerprint
/// must match and the value count must equal the simplex count. Throws
/// ParseError on malformed input and ValidationError on a mismatch.
Cochain parse_cochain(const std::string& text, const AbstractComplex& ac);
/// Accepts a single object or an array of them.
std::vector<Cochain> parse_cochain_basis(const std::string& text, const AbstractComplex& ac);

Cochain load_cochain_file(const std::filesystem::path& path, const AbstractComplex& ac);

} // namespace dectk

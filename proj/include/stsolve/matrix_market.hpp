#ifndef STSOLVE_MATRIX_MARKET_HPP
#define STSOLVE_MATRIX_MARKET_HPP

#include "stsolve/sparse_matrix.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace stsolve {

enum class MmError {
    io,                  // unreadable file or truncated stream
    bad_header,          // banner or size line malformed
    unsupported_format,  // not coordinate / real / general|symmetric
    not_square,
    bad_entry,           // unparsable entry line
    index_out_of_range,  // entry index outside the declared bounds
};

class MatrixMarketError : public std::runtime_error {
public:
    MatrixMarketError(MmError kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    MmError kind() const { return kind_; }

private:
    MmError kind_;
};

/// Reads "coordinate real general|symmetric". Symmetric files are
/// expanded to full storage, duplicate entries are summed, and rows
/// come out sorted by column.
SparseMatrix load_matrix_market(std::istream& in);
SparseMatrix load_matrix_market(const std::string& path);

/// Always emits "coordinate real general" with 1-based indices and
/// %.17g values, so load(write(A)) reproduces A bit for bit.
void write_matrix_market(const SparseMatrix& a, std::ostream& out);
void write_matrix_market(const SparseMatrix& a, const std::string& path);

/// Dense vectors travel as "array real general" with one column.
DenseVector load_dense_vector(std::istream& in);
DenseVector load_dense_vector(const std::string& path);
void write_dense_vector(const DenseVector& v, std::ostream& out);
void write_dense_vector(const DenseVector& v, const std::string& path);

} // namespace stsolve

#endif // STSOLVE_MATRIX_MARKET_HPP

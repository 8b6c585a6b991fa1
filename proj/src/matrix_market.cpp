#include "stsolve/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stsolve {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct Banner {
    std::string format;    // coordinate | array
    std::string field;     // real | integer | ...
    std::string symmetry;  // general | symmetric | ...
};

Banner parse_banner(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw MatrixMarketError(MmError::io, "empty Matrix Market stream");
    std::istringstream ls(line);
    std::string tag, object, format, field, symmetry;
    ls >> tag >> object >> format >> field >> symmetry;
    if (lower(tag) != "%%matrixmarket")
        throw MatrixMarketError(MmError::bad_header,
                                "missing %%MatrixMarket banner: '" + line + "'");
    if (lower(object) != "matrix" || format.empty() || field.empty() || symmetry.empty())
        throw MatrixMarketError(MmError::bad_header, "malformed banner: '" + line + "'");
    return Banner{lower(format), lower(field), lower(symmetry)};
}

// first line after the banner that is neither blank nor a % comment
std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '%') continue;
        return line;
    }
    throw MatrixMarketError(MmError::io, "unexpected end of Matrix Market stream");
}

} // namespace

SparseMatrix load_matrix_market(std::istream& in) {
    const Banner banner = parse_banner(in);
    if (banner.format != "coordinate")
        throw MatrixMarketError(MmError::unsupported_format,
                                "expected coordinate format, got '" + banner.format + "'");
    if (banner.field != "real")
        throw MatrixMarketError(MmError::unsupported_format,
                                "expected real field, got '" + banner.field + "'");
    const bool symmetric = banner.symmetry == "symmetric";
    if (!symmetric && banner.symmetry != "general")
        throw MatrixMarketError(MmError::unsupported_format,
                                "expected general or symmetric, got '" + banner.symmetry + "'");

    index_t rows = 0, cols = 0, declared_nnz = 0;
    {
        std::istringstream ls(next_content_line(in));
        if (!(ls >> rows >> cols >> declared_nnz) || rows <= 0 || cols <= 0 || declared_nnz < 0)
            throw MatrixMarketError(MmError::bad_header, "malformed size line");
    }
    if (rows != cols)
        throw MatrixMarketError(MmError::not_square,
                                "matrix is " + std::to_string(rows) + "x" + std::to_string(cols));

    std::vector<SparseMatrix::Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(symmetric ? 2 * declared_nnz : declared_nnz));
    for (index_t k = 0; k < declared_nnz; ++k) {
        index_t i = 0, j = 0;
        double value = 0.0;
        if (!(in >> i >> j >> value))
            throw MatrixMarketError(MmError::bad_entry,
                                    "bad or missing entry " + std::to_string(k + 1) + " of " +
                                        std::to_string(declared_nnz));
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw MatrixMarketError(MmError::index_out_of_range,
                                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") outside declared " + std::to_string(rows) + "x" +
                                        std::to_string(cols) + " bounds");
        triplets.push_back({i - 1, j - 1, value});
        if (symmetric && i != j) triplets.push_back({j - 1, i - 1, value});
    }
    return SparseMatrix::from_triplets(rows, std::move(triplets));
}

SparseMatrix load_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MatrixMarketError(MmError::io, "cannot open '" + path + "'");
    return load_matrix_market(in);
}

void write_matrix_market(const SparseMatrix& a, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n << " " << a.n << " " << a.nnz() << "\n";
    char buf[64];
    for (index_t i = 0; i < a.n; ++i) {
        for (index_t k = a.row_offsets[static_cast<std::size_t>(i)];
             k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g",
                          a.values[static_cast<std::size_t>(k)]);
            out << (i + 1) << " " << (a.col_indices[static_cast<std::size_t>(k)] + 1) << " "
                << buf << "\n";
        }
    }
    if (!out) throw MatrixMarketError(MmError::io, "write failed");
}

void write_matrix_market(const SparseMatrix& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MatrixMarketError(MmError::io, "cannot open '" + path + "' for writing");
    write_matrix_market(a, out);
}

DenseVector load_dense_vector(std::istream& in) {
    const Banner banner = parse_banner(in);
    if (banner.format != "array" || banner.field != "real" || banner.symmetry != "general")
        throw MatrixMarketError(MmError::unsupported_format,
                                "expected array real general vector");
    index_t rows = 0, cols = 0;
    {
        std::istringstream ls(next_content_line(in));
        if (!(ls >> rows >> cols) || rows <= 0 || cols != 1)
            throw MatrixMarketError(MmError::bad_header, "expected 'N 1' vector size line");
    }
    DenseVector v(static_cast<std::size_t>(rows));
    for (index_t k = 0; k < rows; ++k) {
        if (!(in >> v[static_cast<std::size_t>(k)]))
            throw MatrixMarketError(MmError::bad_entry,
                                    "bad or missing value " + std::to_string(k + 1));
    }
    return v;
}

DenseVector load_dense_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MatrixMarketError(MmError::io, "cannot open '" + path + "'");
    return load_dense_vector(in);
}

void write_dense_vector(const DenseVector& v, std::ostream& out) {
    out << "%%MatrixMarket matrix array real general\n";
    out << v.size() << " 1\n";
    char buf[64];
    for (double x : v) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out << buf << "\n";
    }
    if (!out) throw MatrixMarketError(MmError::io, "write failed");
}

void write_dense_vector(const DenseVector& v, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MatrixMarketError(MmError::io, "cannot open '" + path + "' for writing");
    write_dense_vector(v, out);
}

} // namespace stsolve

#pragma once

#include "ridgesketch/types.hh"

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace ridgesketch {

// Raw binary interchange format: magic "RSKM", u64 rows, u64 cols
// (little-endian), then the column-major f64 payload.

static_assert(std::endian::native == std::endian::little,
              "RSKM I/O assumes a little-endian host");

inline void write_rskm(const std::string& path, const DenseMatrix& M) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write("RSKM", 4);
    const std::uint64_t rows = static_cast<std::uint64_t>(M.rows());
    const std::uint64_t cols = static_cast<std::uint64_t>(M.cols());
    f.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    f.write(reinterpret_cast<const char*>(&cols), sizeof cols);
    f.write(reinterpret_cast<const char*>(M.data()),
            static_cast<std::streamsize>(sizeof(double) * M.size()));
    if (!f) throw IoError("write failed: " + path);
}

inline DenseMatrix read_rskm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, "RSKM", 4) != 0) throw IoError("bad RSKM magic in " + path);
    std::uint64_t rows = 0, cols = 0;
    f.read(reinterpret_cast<char*>(&rows), sizeof rows);
    f.read(reinterpret_cast<char*>(&cols), sizeof cols);
    if (!f || rows == 0 || cols == 0) throw IoError("bad RSKM header in " + path);
    DenseMatrix M(static_cast<Index>(rows), static_cast<Index>(cols));
    f.read(reinterpret_cast<char*>(M.data()),
           static_cast<std::streamsize>(sizeof(double) * M.size()));
    if (!f) throw IoError("truncated RSKM payload in " + path);
    return M;
}

inline void write_rskm_vector(const std::string& path, const Vector& v) {
    write_rskm(path, DenseMatrix(v));
}

inline Vector read_rskm_vector(const std::string& path) {
    const DenseMatrix M = read_rskm(path);
    if (M.cols() != 1) throw IoError("expected a single-column RSKM file: " + path);
    return M.col(0);
}

// Matrix Market interchange. Readers accept the array and coordinate formats
// (real, general or symmetric); the writer emits array/general.

inline DenseMatrix read_matrix_market(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open: " + path);
    std::string header;
    if (!std::getline(f, header)) throw IoError("empty Matrix Market file: " + path);
    std::istringstream hs(header);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    for (auto& s : {&object, &format, &field, &symmetry})
        for (auto& c : *s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (banner != "%%MatrixMarket" || object != "matrix")
        throw IoError("not a Matrix Market matrix: " + path);
    if (field != "real" && field != "integer")
        throw IoError("unsupported Matrix Market field '" + field + "' in " + path);
    const bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general")
        throw IoError("unsupported Matrix Market symmetry '" + symmetry + "' in " + path);

    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream sizes(line);
    if (format == "array") {
        Index rows = 0, cols = 0;
        sizes >> rows >> cols;
        if (rows <= 0 || cols <= 0) throw IoError("bad Matrix Market sizes in " + path);
        DenseMatrix M(rows, cols);
        if (symmetric) {
            if (rows != cols) throw IoError("symmetric Matrix Market must be square: " + path);
            for (Index j = 0; j < cols; ++j)
                for (Index i = j; i < rows; ++i) {
                    double v;
                    if (!(f >> v)) throw IoError("truncated Matrix Market data in " + path);
                    M(i, j) = v;
                    M(j, i) = v;
                }
        } else {
            for (Index j = 0; j < cols; ++j)
                for (Index i = 0; i < rows; ++i) {
                    double v;
                    if (!(f >> v)) throw IoError("truncated Matrix Market data in " + path);
                    M(i, j) = v;
                }
        }
        return M;
    }
    if (format == "coordinate") {
        Index rows = 0, cols = 0;
        long long nnz = 0;
        sizes >> rows >> cols >> nnz;
        if (rows <= 0 || cols <= 0 || nnz < 0) throw IoError("bad Matrix Market sizes in " + path);
        DenseMatrix M = DenseMatrix::Zero(rows, cols);
        for (long long e = 0; e < nnz; ++e) {
            Index i, j;
            double v;
            if (!(f >> i >> j >> v)) throw IoError("truncated Matrix Market data in " + path);
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw IoError("Matrix Market index out of range in " + path);
            M(i - 1, j - 1) = v;
            if (symmetric) M(j - 1, i - 1) = v;
        }
        return M;
    }
    throw IoError("unsupported Matrix Market format '" + format + "' in " + path);
}

inline void write_matrix_market(const std::string& path, const DenseMatrix& M) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << "%%MatrixMarket matrix array real general\n";
    f << M.rows() << " " << M.cols() << "\n";
    f.precision(17);
    for (Index j = 0; j < M.cols(); ++j)
        for (Index i = 0; i < M.rows(); ++i) f << M(i, j) << "\n";
    if (!f) throw IoError("write failed: " + path);
}

inline bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Dispatch on extension: .rskm binary, .mtx/.mm Matrix Market.
inline DenseMatrix read_matrix_any(const std::string& path) {
    if (has_suffix(path, ".mtx") || has_suffix(path, ".mm")) return read_matrix_market(path);
    return read_rskm(path);
}

inline void write_matrix_any(const std::string& path, const DenseMatrix& M) {
    if (has_suffix(path, ".mtx") || has_suffix(path, ".mm"))
        write_matrix_market(path, M);
    else
        write_rskm(path, M);
}

}  // namespace ridgesketch

// File formats: matrices/vectors as structured text (dim + flat [re, im]
// entry list, row-major), kernel specs as JSON, and deterministic CSV with
// self-describing metadata headers.
#pragma once

#include <string>
#include <vector>

#include "grid.hpp"
#include "kernels.hpp"
#include "types.hpp"

namespace lchs {

std::string format_double(double v);  // shortest round-trip decimal

void write_matrix_file(const Matrix& m, const std::string& path);
void write_vector_file(const Vector& v, const std::string& path);

// Accepts both layouts: dim^2 entries (square matrix) or dim entries
// (column vector, returned as dim x 1).
Matrix read_matrix_file(const std::string& path);
Vector read_vector_file(const std::string& path);

KernelSpec kernel_from_json(const std::string& text);
std::string kernel_to_json(const KernelSpec& spec);

// CSV with "# key=value" metadata lines before the column header. Values are
// emitted with round-trip precision so identical inputs give identical bytes.
class CsvWriter {
public:
    explicit CsvWriter(std::string path);
    void meta(const std::string& key, const std::string& value);
    void meta(const std::string& key, double value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void close();  // writes the staged content; also runs on destruction
    ~CsvWriter();

private:
    std::string path_;
    std::string buffer_;
    bool closed_ = false;
};

void write_grid_csv(const QuadratureGrid& grid, const std::string& path);

}  // namespace lchs

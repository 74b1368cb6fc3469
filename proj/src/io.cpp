#include "io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "errors.hpp"

namespace lchs {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXcd>& m, Eigen::Index dim) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            entries.push_back({m(i, j).real(), m(i, j).imag()});
        }
    }
    return json{{"dim", dim}, {"entries", std::move(entries)}};
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("parse failure in '" + path + "': " + e.what());
    }
    return j;
}

void dump_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

}  // namespace

void write_matrix_file(const Matrix& m, const std::string& path) {
    if (m.rows() != m.cols()) throw DimensionError("write_matrix_file: matrix must be square");
    dump_json(matrix_to_json(m, m.rows()), path);
}

void write_vector_file(const Vector& v, const std::string& path) {
    dump_json(matrix_to_json(v, v.size()), path);
}

Matrix read_matrix_file(const std::string& path) {
    json j = load_json(path);
    if (!j.contains("dim") || !j.contains("entries")) {
        throw IoError("'" + path + "': expected fields 'dim' and 'entries'");
    }
    const auto dim = j["dim"].get<Eigen::Index>();
    if (dim < 1) throw IoError("'" + path + "': dim must be positive");
    const auto& entries = j["entries"];
    Eigen::Index rows;
    Eigen::Index cols;
    if (static_cast<Eigen::Index>(entries.size()) == dim * dim) {
        rows = dim;
        cols = dim;
    } else if (static_cast<Eigen::Index>(entries.size()) == dim) {
        rows = dim;
        cols = 1;
    } else {
        throw IoError("'" + path + "': entries length must be dim^2 (matrix) or dim (vector)");
    }
    Matrix m(rows, cols);
    Eigen::Index idx = 0;
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2) {
            throw IoError("'" + path + "': each entry must be a [re, im] pair");
        }
        m(idx / cols, idx % cols) = Complex(e[0].get<double>(), e[1].get<double>());
        ++idx;
    }
    return m;
}

Vector read_vector_file(const std::string& path) {
    Matrix m = read_matrix_file(path);
    if (m.cols() != 1) {
        throw IoError("'" + path + "': expected a vector (dim entries), found a matrix");
    }
    return m.col(0);
}

KernelSpec kernel_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("kernel spec parse failure: ") + e.what());
    }
    if (!j.contains("variant")) throw IoError("kernel spec: missing 'variant'");
    const std::string variant = j["variant"].get<std::string>();
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key != "variant" && key != "beta" && key != "p") {
            throw IoError("kernel spec: unknown key '" + key + "'");
        }
    }
    if (variant == "beta_exponential") {
        if (!j.contains("beta")) throw IoError("kernel spec: beta_exponential needs 'beta'");
        return KernelSpec::beta_exponential(j["beta"].get<double>());
    }
    if (variant == "cauchy") return KernelSpec::cauchy();
    if (variant == "poly_power") {
        if (!j.contains("p")) throw IoError("kernel spec: poly_power needs 'p'");
        return KernelSpec::poly_power(j["p"].get<int>());
    }
    if (variant == "log_power") {
        if (!j.contains("p")) throw IoError("kernel spec: log_power needs 'p'");
        return KernelSpec::log_power(j["p"].get<int>());
    }
    throw IoError("kernel spec: unknown variant '" + variant + "'");
}

std::string kernel_to_json(const KernelSpec& spec) {
    json j;
    switch (spec.family()) {
        case KernelFamily::beta_exponential:
            j = {{"variant", "beta_exponential"}, {"beta", spec.beta()}};
            break;
        case KernelFamily::cauchy:
            j = {{"variant", "cauchy"}};
            break;
        case KernelFamily::poly_power:
            j = {{"variant", "poly_power"}, {"p", spec.power()}};
            break;
        case KernelFamily::log_power:
            j = {{"variant", "log_power"}, {"p", spec.power()}};
            break;
    }
    return j.dump();
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {}

void CsvWriter::meta(const std::string& key, const std::string& value) {
    buffer_ += "# " + key + "=" + value + "\n";
}

void CsvWriter::meta(const std::string& key, double value) {
    meta(key, format_double(value));
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        buffer_ += columns[i];
        buffer_ += (i + 1 < columns.size()) ? "," : "\n";
    }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        buffer_ += cells[i];
        buffer_ += (i + 1 < cells.size()) ? "," : "\n";
    }
}

void CsvWriter::close() {
    if (closed_) return;
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path_ + "' for writing");
    out << buffer_;
    closed_ = true;
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; close() explicitly to see failures
    }
}

void write_grid_csv(const QuadratureGrid& grid, const std::string& path) {
    CsvWriter csv(path);
    csv.meta("kernel", grid.spec.label());
    csv.meta("K", grid.trunc_k);
    csv.meta("h1", grid.step_h1);
    csv.meta("Q", static_cast<double>(grid.order_q));
    if (grid.spec.family() == KernelFamily::beta_exponential) {
        csv.meta("beta", grid.spec.beta());
    }
    csv.header({"index", "k", "re_c", "im_c"});
    for (std::size_t j = 0; j < grid.total_m; ++j) {
        csv.row({std::to_string(j), format_double(grid.nodes[j]),
                 format_double(grid.coeffs[j].real()), format_double(grid.coeffs[j].imag())});
    }
    csv.close();
}

}  // namespace lchs

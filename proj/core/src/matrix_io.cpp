#include "fsel/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fsel {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& what) {
    throw InvalidInput(path + ":" + std::to_string(line) + ": " + what);
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

FeatureMatrix read_matrix_coordinate(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open matrix file '" + path + "'");
    }
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) {
        parse_fail(path, 1, "missing header line '%%matrix d n nnz'");
    }
    ++lineno;
    std::istringstream header(line);
    std::string tag;
    long long d = 0, n = 0, nnz = 0;
    if (!(header >> tag >> d >> n >> nnz) || tag != "%%matrix") {
        parse_fail(path, lineno, "header must be '%%matrix d n nnz'");
    }
    if (d < 1 || n < 1 || nnz < 0) {
        parse_fail(path, lineno, "header requires d >= 1, n >= 1, nnz >= 0");
    }

    std::vector<SparseEntry> entries;
    entries.reserve(static_cast<std::size_t>(nnz));
    for (long long k = 0; k < nnz; ++k) {
        if (!std::getline(in, line)) {
            parse_fail(path, lineno + 1, "expected " + std::to_string(nnz) +
                                             " entries, file ended early");
        }
        ++lineno;
        std::istringstream row(line);
        long long i = 0, j = 0;
        double value = 0.0;
        if (!(row >> i >> j >> value)) {
            parse_fail(path, lineno, "expected 'row col value'");
        }
        std::string trailing;
        if (row >> trailing) {
            parse_fail(path, lineno, "trailing content after 'row col value'");
        }
        if (i < 1 || i > d) {
            parse_fail(path, lineno, "row index " + std::to_string(i) +
                                         " outside [1, " + std::to_string(d) + "]");
        }
        if (j < 1 || j > n) {
            parse_fail(path, lineno, "column index " + std::to_string(j) +
                                         " outside [1, " + std::to_string(n) + "]");
        }
        entries.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), value});
    }
    try {
        return FeatureMatrix::from_sparse(static_cast<Index>(d),
                                          static_cast<Index>(n), entries);
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

void write_matrix_coordinate(const std::string& path, const FeatureMatrix& m) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInput("cannot open '" + path + "' for writing");
    }
    std::vector<SparseEntry> entries;
    for (Index c = 0; c < m.sample_count(); ++c) {
        for (Index r = 0; r < m.feature_count(); ++r) {
            const double v = m.values()(r, c);
            if (v != 0.0) {
                entries.push_back({r, c, v});
            }
        }
    }
    out << "%%matrix " << m.feature_count() << ' ' << m.sample_count() << ' '
        << entries.size() << '\n';
    for (const SparseEntry& e : entries) {
        out << (e.row + 1) << ' ' << (e.col + 1) << ' ' << format_value(e.value)
            << '\n';
    }
    if (!out) {
        throw InvalidInput("failed writing '" + path + "'");
    }
}

Eigen::VectorXd read_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open value file '" + path + "'");
    }
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        double v = 0.0;
        std::string trailing;
        if (!(row >> v) || (row >> trailing)) {
            parse_fail(path, lineno, "expected one value per line");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw InvalidInput(path + ": no values found");
    }
    return Eigen::Map<Eigen::VectorXd>(values.data(),
                                       static_cast<Index>(values.size()));
}

void write_value_file(const std::string& path, const Eigen::VectorXd& v) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInput("cannot open '" + path + "' for writing");
    }
    for (Index i = 0; i < v.size(); ++i) {
        out << format_value(v(i)) << '\n';
    }
    if (!out) {
        throw InvalidInput("failed writing '" + path + "'");
    }
}

}  // namespace fsel

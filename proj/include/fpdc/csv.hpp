#pragma once

// Minimal CSV interchange: comma-separated, one header row, no quoting.
// Doubles are written with the shortest representation that parses back to
// the same value, so a write/read round trip is exact.  Dataset files use
// one numeric column per variable plus optional integer columns named
// "label" (1-based cluster) and "outlier" (0/1 flag).

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fpdc/core_linalg.hpp"
#include "fpdc/simdata.hpp"

namespace fpdc {

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("parse_double: not a number: '" + std::string(s) + "'");
    return v;
}

inline long parse_long(std::string_view s) {
    long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("parse_long: not an integer: '" + std::string(s) + "'");
    return v;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (first) {
            table.header = std::move(cells);
            first = false;
            continue;
        }
        if (cells.size() != table.header.size())
            throw std::runtime_error("read_csv: ragged row in " + path);
        table.rows.push_back(std::move(cells));
    }
    if (first) throw std::runtime_error("read_csv: empty file " + path);
    return table;
}

inline void write_table_csv(const std::string& path,
                            const std::vector<std::string>& header,
                            const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_table_csv: cannot open " + path);
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::runtime_error("write_table_csv: ragged row");
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << row[c];
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_table_csv: write failed for " + path);
}

template <class Scalar>
void write_matrix_csv(const std::string& path,
                      const std::vector<std::string>& header,
                      const Matrix<Scalar>& m) {
    if (Index(header.size()) != m.cols())
        throw std::invalid_argument("write_matrix_csv: one header per column required");
    std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i) {
        rows[std::size_t(i)].reserve(std::size_t(m.cols()));
        for (Index c = 0; c < m.cols(); ++c)
            rows[std::size_t(i)].push_back(format_double(double(m(i, c))));
    }
    write_table_csv(path, header, rows);
}

template <class Scalar>
void write_dataset_csv(const std::string& path, const LabeledDataset<Scalar>& data) {
    const Index n = data.x.rows();
    const Index j = data.x.cols();
    std::vector<std::string> header;
    for (Index c = 0; c < j; ++c) header.push_back("v" + std::to_string(c + 1));
    header.push_back("label");
    header.push_back("outlier");
    std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        auto& row = rows[std::size_t(i)];
        row.reserve(std::size_t(j) + 2);
        for (Index c = 0; c < j; ++c) row.push_back(format_double(double(data.x(i, c))));
        row.push_back(std::to_string(data.labels.empty() ? 0 : data.labels[std::size_t(i)]));
        row.push_back(std::to_string(int(data.outlier.empty() ? 0 : data.outlier[std::size_t(i)])));
    }
    write_table_csv(path, header, rows);
}

// Read a dataset written by write_dataset_csv, or any headered numeric CSV:
// columns named "label" and "outlier" become metadata, everything else is a
// feature column.  Missing metadata columns yield empty labels and an
// all-zero outlier mask.
template <class Scalar>
LabeledDataset<Scalar> read_dataset_csv(const std::string& path) {
    const CsvTable table = read_csv(path);
    Index label_col = -1, outlier_col = -1;
    std::vector<Index> feature_cols;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (table.header[c] == "label")
            label_col = Index(c);
        else if (table.header[c] == "outlier")
            outlier_col = Index(c);
        else
            feature_cols.push_back(Index(c));
    }
    if (feature_cols.empty())
        throw std::runtime_error("read_dataset_csv: no feature columns in " + path);
    const Index n = Index(table.rows.size());
    if (n == 0) throw std::runtime_error("read_dataset_csv: no data rows in " + path);

    LabeledDataset<Scalar> data;
    data.x.resize(n, Index(feature_cols.size()));
    data.outlier.assign(std::size_t(n), 0);
    if (label_col >= 0) data.labels.resize(std::size_t(n));
    for (Index i = 0; i < n; ++i) {
        const auto& row = table.rows[std::size_t(i)];
        for (std::size_t c = 0; c < feature_cols.size(); ++c)
            data.x(i, Index(c)) = Scalar(parse_double(row[std::size_t(feature_cols[c])]));
        if (label_col >= 0)
            data.labels[std::size_t(i)] = int(parse_long(row[std::size_t(label_col)]));
        if (outlier_col >= 0)
            data.outlier[std::size_t(i)] = parse_long(row[std::size_t(outlier_col)]) != 0;
    }
    return data;
}

}  // namespace fpdc

#include "permcorr/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "permcorr/errors.hpp"

namespace permcorr {

namespace {

struct CsvLine {
    int line_number = 0; // 1-based
    std::vector<std::string> fields;
};

std::vector<CsvLine> read_csv_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::vector<CsvLine> lines;
    std::string raw;
    int line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        if (!raw.empty() && raw.back() == '\r') {
            raw.pop_back();
        }
        std::string trimmed = raw;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }
        CsvLine line;
        line.line_number = line_number;
        std::stringstream ss(raw);
        std::string field;
        while (std::getline(ss, field, ',')) {
            line.fields.push_back(field);
        }
        if (!raw.empty() && raw.back() == ',') {
            line.fields.emplace_back();
        }
        lines.push_back(std::move(line));
    }
    if (lines.empty()) {
        throw IoError(path + " contains no data lines");
    }
    return lines;
}

double parse_number(const std::string& field, const std::string& path, int line_number) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(begin, &end);
    while (end != nullptr && (*end == ' ' || *end == '\t')) {
        ++end;
    }
    if (end == begin || (end != nullptr && *end != '\0') || errno == ERANGE) {
        throw IoError(path + ":" + std::to_string(line_number) + ": malformed number '" +
                      field + "'");
    }
    return value;
}

} // namespace

CoefficientMatrix read_matrix_csv(const std::string& path) {
    const auto lines = read_csv_lines(path);
    const int n = static_cast<int>(lines.size());
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& line : lines) {
        if (static_cast<int>(line.fields.size()) != n) {
            throw IoError(path + ":" + std::to_string(line.line_number) + ": expected " +
                          std::to_string(n) + " columns, got " +
                          std::to_string(line.fields.size()));
        }
        for (const auto& field : line.fields) {
            entries.push_back(parse_number(field, path, line.line_number));
        }
    }
    const SymmetryClass cls = classify_entries(n, entries);
    bool hollow = true;
    for (int i = 0; i < n; ++i) {
        if (entries[static_cast<std::size_t>(i) * n + i] != 0.0) {
            hollow = false;
        }
    }
    try {
        return CoefficientMatrix(n, std::move(entries), cls, hollow);
    } catch (const std::invalid_argument& e) {
        throw IoError(path + ": " + e.what());
    }
}

Sample read_points_csv(const std::string& path) {
    const auto lines = read_csv_lines(path);
    std::vector<std::vector<double>> points;
    points.reserve(lines.size());
    const std::size_t d = lines.front().fields.size();
    for (const auto& line : lines) {
        if (line.fields.size() != d) {
            throw IoError(path + ":" + std::to_string(line.line_number) +
                          ": inconsistent column count");
        }
        std::vector<double> point;
        point.reserve(d);
        for (const auto& field : line.fields) {
            point.push_back(parse_number(field, path, line.line_number));
        }
        points.push_back(std::move(point));
    }
    try {
        return Sample(std::move(points));
    } catch (const std::invalid_argument& e) {
        throw IoError(path + ": " + e.what());
    }
}

LabelVector read_labels_csv(const std::string& path) {
    const auto lines = read_csv_lines(path);
    std::vector<int> labels;
    labels.reserve(lines.size());
    for (const auto& line : lines) {
        if (line.fields.size() != 1) {
            throw IoError(path + ":" + std::to_string(line.line_number) +
                          ": expected one label per line");
        }
        const double v = parse_number(line.fields.front(), path, line.line_number);
        if (v != 0.0 && v != 1.0) {
            throw IoError(path + ":" + std::to_string(line.line_number) +
                          ": labels must be 0 or 1");
        }
        labels.push_back(static_cast<int>(v));
    }
    try {
        return LabelVector(std::move(labels));
    } catch (const std::invalid_argument& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_matrix_csv(const std::string& path, const CoefficientMatrix& m) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out.precision(17);
    for (int i = 0; i < m.order(); ++i) {
        for (int j = 0; j < m.order(); ++j) {
            if (j > 0) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << content;
}

std::vector<double> column(const Sample& sample, int index) {
    std::vector<double> values;
    values.reserve(sample.size());
    for (const auto& p : sample.points()) {
        values.push_back(p[index]);
    }
    return values;
}

} // namespace permcorr

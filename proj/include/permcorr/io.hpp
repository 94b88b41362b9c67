#pragma once

#include <string>
#include <vector>

#include "permcorr/builders.hpp"
#include "permcorr/matrix.hpp"

namespace permcorr {

// CSV readers. All formats accept leading '#' comment lines. Parse errors
// throw IoError with the 1-based line number.

// N rows of N comma-separated values. The symmetry class and hollow flag are
// detected from the entries (exact checks).
CoefficientMatrix read_matrix_csv(const std::string& path);

// One point per row, d columns.
Sample read_points_csv(const std::string& path);

// One 0/1 label per row.
LabelVector read_labels_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const CoefficientMatrix& m);

void write_text_file(const std::string& path, const std::string& content);

std::vector<double> column(const Sample& sample, int index);

} // namespace permcorr

#pragma once

#include "ltda/gh_distance.hpp"
#include "ltda/landscape.hpp"
#include "ltda/metric_space.hpp"

#include <map>
#include <string>
#include <vector>

namespace ltda {

/// Malformed input document (as opposed to a well-formed but invalid space).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Space document: {"points": [[...], ...], "labels": [[...], ...]} or
/// {"dist": [[...], ...], "labels": [...]}. Point indices inside "labels" are
/// 1-based; providing both "points" and "dist" is rejected.
LabeledMetricSpace load_space(const std::string& path);
LabeledMetricSpace parse_space(const std::string& json_text);

/// CSV of one point per row (flattened-vector ingestion for image data).
MatrixXd load_point_rows_csv(const std::string& path);

/// Key-value block stamped into every output file.
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v);  // shortest round-trip decimal

void write_barcode_csv(const std::string& path, const Barcode& bc, int degree,
                       const Metadata& meta);
void write_landscape_csv(const std::string& path, const GeneralizedLandscape& gl,
                         const Metadata& meta);
void write_landscape_json(const std::string& path, const GeneralizedLandscape& gl,
                          const Metadata& meta);
void write_slice_csv(const std::string& path, const SampledSlice& slice, const std::string& name,
                     const Metadata& meta);
void write_matrix_csv(const std::string& path, const std::vector<std::string>& names,
                      const MatrixXd& matrix, const Metadata& meta);
void write_witness_json(const std::string& path, const std::string& variant, const GHResult& result,
                        const Metadata& meta);

/// Label of a poset element mask in file output: "{1,3}" with 1-based labels.
std::string mask_name(uint32_t mask);

}  // namespace ltda

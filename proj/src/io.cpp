#include "ltda/io.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ltda {

using nlohmann::json;

namespace {

LabelList parse_labels(const json& doc, int n_points) {
    if (!doc.contains("labels") || !doc["labels"].is_array())
        throw FormatError("document needs a \"labels\" array");
    LabelList labels;
    for (const auto& l : doc["labels"]) {
        if (!l.is_array()) throw FormatError("each label set must be an array of point indices");
        IndexSet set;
        for (const auto& v : l) {
            if (!v.is_number_integer()) throw FormatError("label entries must be integers");
            const int p = v.get<int>();
            if (p < 1 || p > n_points)
                throw FormatError("label point index " + std::to_string(p) +
                                  " out of range (indices are 1-based)");
            set.push_back(p - 1);
        }
        labels.push_back(std::move(set));
    }
    return labels;
}

}  // namespace

LabeledMetricSpace parse_space(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("parse error: ") + e.what());
    }
    const bool has_points = doc.contains("points");
    const bool has_dist = doc.contains("dist");
    if (has_points && has_dist)
        throw FormatError("document provides both \"points\" and \"dist\"; pick one");
    if (!has_points && !has_dist) throw FormatError("document needs \"points\" or \"dist\"");

    if (has_points) {
        const auto& pts = doc["points"];
        if (!pts.is_array() || pts.empty()) throw FormatError("\"points\" must be a nonempty array");
        const size_t d = pts[0].size();
        MatrixXd coords(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(d));
        for (size_t i = 0; i < pts.size(); ++i) {
            if (!pts[i].is_array() || pts[i].size() != d)
                throw FormatError("all points must have the same dimension");
            for (size_t c = 0; c < d; ++c)
                coords(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                    pts[i][c].get<double>();
        }
        return LabeledMetricSpace::from_point_cloud(
            coords, parse_labels(doc, static_cast<int>(pts.size())));
    }

    const auto& rows = doc["dist"];
    if (!rows.is_array() || rows.empty()) throw FormatError("\"dist\" must be a nonempty array");
    const size_t n = rows.size();
    MatrixXd dist(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw FormatError("\"dist\" must be a square matrix");
        for (size_t j = 0; j < n; ++j)
            dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].get<double>();
    }
    return LabeledMetricSpace::from_distance_matrix(dist, parse_labels(doc, static_cast<int>(n)));
}

LabeledMetricSpace load_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_space(buf.str());
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

MatrixXd load_point_rows_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows[0].size())
            throw FormatError(path + ": ragged CSV rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError(path + ": no data rows");
    MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec <= 16; ++prec) {
        char cand[40];
        std::snprintf(cand, sizeof cand, "%.*g", prec, v);
        if (std::strtod(cand, nullptr) == v) return cand;
    }
    return buf;
}

std::string mask_name(uint32_t mask) {
    std::string s = "{";
    bool first = true;
    for (int b = 0; b < 32; ++b)
        if (mask & (1u << b)) {
            if (!first) s += ",";
            s += std::to_string(b + 1);
            first = false;
        }
    return s + "}";
}

namespace {

void write_meta_comments(std::ofstream& out, const Metadata& meta) {
    for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

}  // namespace

void write_barcode_csv(const std::string& path, const Barcode& bc, int degree,
                       const Metadata& meta) {
    auto out = open_out(path);
    write_meta_comments(out, meta);
    out << "degree,birth,death\n";
    for (const auto& [b, d] : bc.bars)
        out << degree << "," << format_double(b) << "," << format_double(d) << "\n";
}

void write_landscape_csv(const std::string& path, const GeneralizedLandscape& gl,
                         const Metadata& meta) {
    auto out = open_out(path);
    write_meta_comments(out, meta);
    out << "level,r,poset_element,value\n";
    for (int n = 1; n <= gl.n_max; ++n)
        for (size_t g = 0; g < gl.z.size(); ++g)
            for (size_t e = 0; e < gl.element_masks.size(); ++e)
                out << n << "," << format_double(gl.z[g]) << "," << mask_name(gl.element_masks[e])
                    << ","
                    << format_double(gl.values[static_cast<size_t>(n - 1)](
                           static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(e)))
                    << "\n";
}

void write_landscape_json(const std::string& path, const GeneralizedLandscape& gl,
                          const Metadata& meta) {
    json doc;
    for (const auto& [k, v] : meta) doc["meta"][k] = v;
    doc["degree"] = gl.degree;
    doc["levels"] = gl.n_max;
    doc["grid"] = json::array();
    for (double zv : gl.z) doc["grid"].push_back(zv);
    doc["elements"] = json::array();
    for (uint32_t m : gl.element_masks) doc["elements"].push_back(mask_name(m));
    doc["values"] = json::array();
    for (int n = 0; n < gl.n_max; ++n) {
        json level = json::array();
        for (size_t e = 0; e < gl.element_masks.size(); ++e) {
            json column = json::array();
            for (size_t g = 0; g < gl.z.size(); ++g)
                column.push_back(gl.values[static_cast<size_t>(n)](static_cast<Eigen::Index>(g),
                                                                   static_cast<Eigen::Index>(e)));
            level.push_back(std::move(column));
        }
        doc["values"].push_back(std::move(level));
    }
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

void write_slice_csv(const std::string& path, const SampledSlice& slice, const std::string& name,
                     const Metadata& meta) {
    auto out = open_out(path);
    write_meta_comments(out, meta);
    out << "level,r," << name << "\n";
    for (int n = 1; n <= slice.n_levels(); ++n)
        for (size_t g = 0; g < slice.z.size(); ++g)
            out << n << "," << format_double(slice.z[g]) << ","
                << format_double(slice.levels[static_cast<size_t>(n - 1)][g]) << "\n";
}

void write_matrix_csv(const std::string& path, const std::vector<std::string>& names,
                      const MatrixXd& matrix, const Metadata& meta) {
    auto out = open_out(path);
    write_meta_comments(out, meta);
    out << "class";
    for (const auto& n : names) out << "," << n;
    out << "\n";
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        out << names[static_cast<size_t>(i)];
        for (Eigen::Index j = 0; j < matrix.cols(); ++j)
            out << "," << format_double(matrix(i, j));
        out << "\n";
    }
}

void write_witness_json(const std::string& path, const std::string& variant, const GHResult& result,
                        const Metadata& meta) {
    json doc;
    for (const auto& [k, v] : meta) doc["meta"][k] = v;
    doc["variant"] = variant;
    doc["value"] = result.value;
    doc["phi"] = result.witness.phi;
    doc["psi"] = result.witness.psi;
    if (result.sigma) {
        json s = json::array();
        for (int v : *result.sigma) s.push_back(v + 1);
        doc["sigma"] = std::move(s);
    }
    if (result.correspondence) {
        json d = json::array();
        for (auto [i, j] : result.correspondence->pairs) d.push_back({i + 1, j + 1});
        doc["D"] = std::move(d);
    }
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

}  // namespace ltda

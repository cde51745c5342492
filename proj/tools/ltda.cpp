#include "ltda/errors.hpp"
#include "ltda/gh_distance.hpp"
#include "ltda/io.hpp"
#include "ltda/landscape.hpp"
#include "ltda/metric_space.hpp"
#include "ltda/poset.hpp"
#include "ltda/rng.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace ltda;

namespace {

int env_threads() {
    const char* v = std::getenv("LTDA_THREADS");
    if (!v) return 0;
    const int t = std::atoi(v);
    return t > 0 ? t : 0;
}

struct LandscapeConfig {
    int degree = 0;
    int levels = 0;  // 0 = automatic (largest union size)
    int grid = 64;
    std::string weighting = "diameter";
    double weight_param = 0.1;
    uint64_t seed = 0;
    double budget = 1e6;
};

WeightedPoset build_poset(const LandscapeConfig& cfg, const LabeledMetricSpace& lms) {
    const WeightedPoset skeleton = power_poset(lms.k());
    if (cfg.weighting == "constant") return weight_constant(skeleton, cfg.weight_param);
    if (cfg.weighting == "diameter") return weight_diameter(skeleton, lms);
    if (cfg.weighting == "hausdorff")
        return weight_hausdorff_fraction(skeleton, lms, cfg.weight_param);
    throw CLI::ValidationError("--weighting must be constant, diameter or hausdorff");
}

int auto_levels(const LabeledMetricSpace& lms) {
    return lms.n_points();  // degree-0 level count can never exceed the union size
}

Metadata base_meta(const std::string& command, const LandscapeConfig& cfg) {
    return {{"tool", "ltda"},
            {"command", command},
            {"degree", std::to_string(cfg.degree)},
            {"levels", std::to_string(cfg.levels)},
            {"grid", std::to_string(cfg.grid)},
            {"weighting", cfg.weighting},
            {"weight_param", format_double(cfg.weight_param)},
            {"seed", std::to_string(cfg.seed)}};
}

void require_valid(const LabeledMetricSpace& lms, const std::string& path) {
    const ValidationReport report = validate(lms);
    if (!report.ok()) {
        std::string what = path + " is not a valid labeled metric space:";
        for (const auto& i : report.issues) what += "\n  " + i;
        throw std::runtime_error(what);
    }
}

SampledSlice plain_landscape_slice(const LabeledMetricSpace& lms, int degree,
                                   const std::vector<double>& z, int levels) {
    const IndexSet all = lms.union_of((1u << lms.k()) - 1u);
    const double diam = diam_points(lms, all);
    const Landscape1D plain = landscape_1d(barcode(vietoris_rips(lms, all, degree, diam), degree));
    SampledSlice s;
    s.z = z;
    s.levels.assign(static_cast<size_t>(levels), std::vector<double>(z.size(), 0.0));
    for (int n = 1; n <= levels; ++n)
        for (size_t g = 0; g < z.size(); ++g)
            s.levels[static_cast<size_t>(n - 1)][g] = plain.evaluate(n, z[g]);
    return s;
}

struct CompareOutcome {
    double mse;
    double sup;
};

CompareOutcome compare_landscapes(const LabeledMetricSpace& lms, const LandscapeConfig& cfg,
                                  int threads, SampledSlice* aware_out = nullptr,
                                  SampledSlice* naive_out = nullptr) {
    const int levels = cfg.levels > 0 ? cfg.levels : auto_levels(lms);
    const std::vector<double> z = default_grid(lms, cfg.grid);
    const WeightedPoset poset = build_poset(cfg, lms);
    const GeneralizedLandscape gl =
        generalized_landscape(lms, poset, cfg.degree, z, levels, cfg.budget, threads);
    const SampledSlice aware = gl.slice((1u << lms.k()) - 1u);
    const SampledSlice naive = plain_landscape_slice(lms, cfg.degree, z, levels);

    const int resample = std::max(2 * cfg.grid, 2);
    CompareOutcome out{mse_distance(aware, naive, resample), 0.0};
    for (int i = 0; i < resample; ++i) {
        const double r = z.front() + (z.back() - z.front()) * static_cast<double>(i) /
                                         static_cast<double>(resample - 1);
        for (int n = 1; n <= levels; ++n)
            out.sup = std::max(out.sup, std::abs(aware.interpolate(n, r) - naive.interpolate(n, r)));
    }
    if (aware_out) *aware_out = aware;
    if (naive_out) *naive_out = naive;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"labeled metric spaces: Gromov-Hausdorff distances and generalized landscapes"};
    app.require_subcommand(1);
    const int threads = env_threads();

    // --- validate ---------------------------------------------------------
    std::string validate_input;
    auto* cmd_validate = app.add_subcommand("validate", "check a space document");
    cmd_validate->add_option("input", validate_input, "space JSON file")->required();

    // --- gh ----------------------------------------------------------------
    std::string gh_x, gh_y, gh_variant = "k", gh_witness;
    double gh_budget = 1e8;
    auto* cmd_gh = app.add_subcommand("gh", "labeled Gromov-Hausdorff distance between two spaces");
    cmd_gh->add_option("x", gh_x, "first space JSON file")->required();
    cmd_gh->add_option("y", gh_y, "second space JSON file")->required();
    cmd_gh->add_option("--variant", gh_variant, "k | perm | stab | plain | lower-bound");
    cmd_gh->add_option("--budget", gh_budget, "enumeration budget");
    cmd_gh->add_option("--witness", gh_witness, "write the optimal maps to this JSON file");

    // --- landscape ----------------------------------------------------------
    LandscapeConfig cfg;
    std::string ls_input, ls_out = "landscape", ls_barcodes;
    auto* cmd_landscape = app.add_subcommand("landscape", "generalized persistence landscape");
    cmd_landscape->add_option("input", ls_input, "space JSON file")->required();
    cmd_landscape->add_option("--barcodes", ls_barcodes,
                              "also write each union's barcode CSV under this prefix");
    cmd_landscape->add_option("--degree", cfg.degree, "homology degree");
    cmd_landscape->add_option("--levels", cfg.levels, "landscape levels (0 = automatic)");
    cmd_landscape->add_option("--grid", cfg.grid, "grid size |Z|");
    cmd_landscape->add_option("--weighting", cfg.weighting, "constant | diameter | hausdorff");
    cmd_landscape->add_option("--weight-param", cfg.weight_param,
                              "constant weight or Hausdorff fraction");
    cmd_landscape->add_option("--seed", cfg.seed, "seed recorded in outputs");
    cmd_landscape->add_option("--budget", cfg.budget, "path enumeration budget");
    cmd_landscape->add_option("--out", ls_out, "output prefix (.csv and .json)");

    // --- compare -------------------------------------------------------------
    LandscapeConfig cmp_cfg;
    std::string cmp_input, cmp_out;
    auto* cmd_compare =
        app.add_subcommand("compare", "class-aware union slice vs class-naive landscape");
    cmd_compare->add_option("input", cmp_input, "space JSON file")->required();
    cmd_compare->add_option("--degree", cmp_cfg.degree, "homology degree");
    cmd_compare->add_option("--levels", cmp_cfg.levels, "landscape levels (0 = automatic)");
    cmd_compare->add_option("--grid", cmp_cfg.grid, "grid size |Z|");
    cmd_compare->add_option("--weighting", cmp_cfg.weighting, "constant | diameter | hausdorff");
    cmd_compare->add_option("--weight-param", cmp_cfg.weight_param,
                            "constant weight or Hausdorff fraction");
    cmd_compare->add_option("--seed", cmp_cfg.seed, "seed recorded in outputs");
    cmd_compare->add_option("--budget", cmp_cfg.budget, "path enumeration budget");
    cmd_compare->add_option("--out", cmp_out, "output prefix for both landscapes");

    // --- pairwise -------------------------------------------------------------
    LandscapeConfig pw_cfg;
    pw_cfg.weighting = "hausdorff";
    pw_cfg.weight_param = 0.1;
    std::string pw_dir, pw_out = "mse_matrix.csv", pw_pairs;
    int pw_samples = 0;
    auto* cmd_pairwise =
        app.add_subcommand("pairwise", "pairwise class-aware vs class-naive MSE matrix");
    cmd_pairwise->add_option("dataset", pw_dir, "directory of per-class point CSV files")
        ->required();
    cmd_pairwise->add_option("--degree", pw_cfg.degree, "homology degree");
    cmd_pairwise->add_option("--levels", pw_cfg.levels, "landscape levels (0 = automatic)");
    cmd_pairwise->add_option("--grid", pw_cfg.grid, "grid size |Z|");
    cmd_pairwise->add_option("--weighting", pw_cfg.weighting, "constant | diameter | hausdorff");
    cmd_pairwise->add_option("--weight-param", pw_cfg.weight_param,
                             "constant weight or Hausdorff fraction");
    cmd_pairwise->add_option("--seed", pw_cfg.seed, "sampling seed");
    cmd_pairwise->add_option("--budget", pw_cfg.budget, "path enumeration budget");
    cmd_pairwise->add_option("--samples", pw_samples, "points sampled per class (0 = all)");
    cmd_pairwise->add_option("--pairs", pw_pairs, "comma list like 1-2,1-3 (default: all pairs)");
    cmd_pairwise->add_option("--out", pw_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_validate) {
            LabeledMetricSpace lms = load_space(validate_input);
            const ValidationReport report = validate(lms);
            if (report.ok()) {
                std::printf("%s: valid (%d points, %d labels)\n", validate_input.c_str(),
                            lms.n_points(), lms.k());
                return 0;
            }
            for (const auto& issue : report.issues)
                std::printf("%s: %s\n", validate_input.c_str(), issue.c_str());
            return 1;
        }

        if (*cmd_gh) {
            LabeledMetricSpace X = load_space(gh_x);
            LabeledMetricSpace Y = load_space(gh_y);
            require_valid(X, gh_x);
            require_valid(Y, gh_y);
            GHResult result;
            double value = 0.0;
            try {
                if (gh_variant == "k") value = (result = gh_k_exact(X, Y, gh_budget)).value;
                else if (gh_variant == "perm") value = (result = gh_perm_exact(X, Y, gh_budget)).value;
                else if (gh_variant == "stab") value = (result = gh_stab_exact(X, Y, gh_budget)).value;
                else if (gh_variant == "plain") value = (result = gh_plain(X, Y, gh_budget)).value;
                else if (gh_variant == "lower-bound") value = gh_lower_bound_diam(X, Y);
                else throw CLI::ValidationError("--variant must be k, perm, stab, plain or lower-bound");
            } catch (const BudgetExceeded& e) {
                std::fprintf(stderr, "%s\nhint: rerun with --variant lower-bound\n", e.what());
                return 3;
            }
            std::printf("%.12g\n", value);
            if (!gh_witness.empty() && gh_variant != "lower-bound")
                write_witness_json(gh_witness, gh_variant, result,
                                   {{"tool", "ltda"},
                                    {"command", "gh"},
                                    {"x", gh_x},
                                    {"y", gh_y},
                                    {"budget", format_double(gh_budget)}});
            return 0;
        }

        if (*cmd_landscape) {
            LabeledMetricSpace lms = load_space(ls_input);
            require_valid(lms, ls_input);
            cfg.levels = cfg.levels > 0 ? cfg.levels : auto_levels(lms);
            const std::vector<double> z = default_grid(lms, cfg.grid);
            const WeightedPoset poset = build_poset(cfg, lms);
            const GeneralizedLandscape gl =
                generalized_landscape(lms, poset, cfg.degree, z, cfg.levels, cfg.budget, threads);
            Metadata meta = base_meta("landscape", cfg);
            meta.emplace_back("input", ls_input);
            write_landscape_csv(ls_out + ".csv", gl, meta);
            write_landscape_json(ls_out + ".json", gl, meta);
            if (!ls_barcodes.empty())
                for (uint32_t mask : gl.element_masks) {
                    const IndexSet pts = lms.union_of(mask);
                    const double diam = diam_points(lms, pts);
                    const Barcode bc =
                        barcode(vietoris_rips(lms, pts, cfg.degree, diam), cfg.degree);
                    std::string name = mask_name(mask);
                    for (auto& ch : name)
                        if (ch == '{' || ch == '}' || ch == ',') ch = '_';
                    write_barcode_csv(ls_barcodes + name + ".csv", bc, cfg.degree, meta);
                }
            std::printf("landscape: %zu grid points, %zu poset elements, %d levels -> %s.{csv,json}\n",
                        gl.z.size(), gl.element_masks.size(), gl.n_max, ls_out.c_str());
            return 0;
        }

        if (*cmd_compare) {
            LabeledMetricSpace lms = load_space(cmp_input);
            require_valid(lms, cmp_input);
            SampledSlice aware, naive;
            const CompareOutcome out = compare_landscapes(lms, cmp_cfg, threads, &aware, &naive);
            std::printf("mse %.12g\nsup %.12g\n", out.mse, out.sup);
            if (!cmp_out.empty()) {
                Metadata meta = base_meta("compare", cmp_cfg);
                meta.emplace_back("input", cmp_input);
                write_slice_csv(cmp_out + "_class_aware.csv", aware, "class_aware", meta);
                write_slice_csv(cmp_out + "_class_naive.csv", naive, "class_naive", meta);
            }
            return 0;
        }

        if (*cmd_pairwise) {
            std::vector<std::string> files;
            for (const auto& entry : fs::directory_iterator(pw_dir))
                if (entry.is_regular_file() && entry.path().extension() == ".csv")
                    files.push_back(entry.path().string());
            std::sort(files.begin(), files.end());
            if (files.size() < 2)
                throw std::runtime_error("pairwise: need at least two class CSV files");

            std::vector<std::string> names;
            std::vector<MatrixXd> clouds;
            for (const auto& f : files) {
                names.push_back(fs::path(f).stem().string());
                MatrixXd cloud = load_point_rows_csv(f);
                if (pw_samples > 0 && cloud.rows() > pw_samples) {
                    // Seeded subsample without replacement; one stream per class
                    // keeps the draw independent of which pairs are requested.
                    SplitMix64 rng(pw_cfg.seed ^ (0x9e37u + names.size()));
                    std::vector<Eigen::Index> idx(static_cast<size_t>(cloud.rows()));
                    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Eigen::Index>(i);
                    for (size_t i = idx.size(); i > 1; --i)
                        std::swap(idx[i - 1], idx[rng.below(i)]);
                    MatrixXd sampled(pw_samples, cloud.cols());
                    for (int i = 0; i < pw_samples; ++i) sampled.row(i) = cloud.row(idx[static_cast<size_t>(i)]);
                    cloud = std::move(sampled);
                }
                clouds.push_back(std::move(cloud));
            }

            std::vector<std::pair<int, int>> wanted;
            if (pw_pairs.empty()) {
                for (size_t i = 0; i < clouds.size(); ++i)
                    for (size_t j = i + 1; j < clouds.size(); ++j)
                        wanted.emplace_back(static_cast<int>(i), static_cast<int>(j));
            } else {
                std::stringstream ss(pw_pairs);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    const auto dash = tok.find('-');
                    if (dash == std::string::npos)
                        throw std::runtime_error("pairwise: --pairs entries look like 1-2");
                    wanted.emplace_back(std::stoi(tok.substr(0, dash)) - 1,
                                        std::stoi(tok.substr(dash + 1)) - 1);
                }
            }

            MatrixXd matrix = MatrixXd::Zero(static_cast<Eigen::Index>(clouds.size()),
                                             static_cast<Eigen::Index>(clouds.size()));
            for (auto [i, j] : wanted) {
                const Eigen::Index ni = clouds[static_cast<size_t>(i)].rows();
                const Eigen::Index nj = clouds[static_cast<size_t>(j)].rows();
                MatrixXd coords(ni + nj, clouds[static_cast<size_t>(i)].cols());
                coords.topRows(ni) = clouds[static_cast<size_t>(i)];
                coords.bottomRows(nj) = clouds[static_cast<size_t>(j)];
                IndexSet first(static_cast<size_t>(ni)), second(static_cast<size_t>(nj));
                for (Eigen::Index p = 0; p < ni; ++p) first[static_cast<size_t>(p)] = static_cast<int>(p);
                for (Eigen::Index p = 0; p < nj; ++p)
                    second[static_cast<size_t>(p)] = static_cast<int>(ni + p);
                LabeledMetricSpace lms =
                    LabeledMetricSpace::from_point_cloud(coords, {first, second});
                const CompareOutcome out = compare_landscapes(lms, pw_cfg, threads);
                matrix(i, j) = out.mse;
                matrix(j, i) = out.mse;
                std::printf("%s vs %s: mse %.12g\n", names[static_cast<size_t>(i)].c_str(),
                            names[static_cast<size_t>(j)].c_str(), out.mse);
            }
            Metadata meta = base_meta("pairwise", pw_cfg);
            meta.emplace_back("dataset", pw_dir);
            meta.emplace_back("samples", std::to_string(pw_samples));
            write_matrix_csv(pw_out, names, matrix, meta);
            std::printf("wrote %s\n", pw_out.c_str());
            return 0;
        }
    } catch (const FormatError& e) {
        std::fprintf(stderr, "format error: %s\n", e.what());
        return 2;
    } catch (const BudgetExceeded& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

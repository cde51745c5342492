#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltda/metric_space.hpp"
#include "ltda/rng.hpp"
#include "testkit/testkit.hpp"

#include <cmath>

using namespace ltda;

namespace {

LabeledMetricSpace two_rows_space() {
    MatrixXd c(6, 2);
    c << 0, 0, 0.4, 0, 1, 0, 0, 1, 0.4, 1, 1, 1;
    return LabeledMetricSpace::from_point_cloud(c, {{0, 1, 2}, {3, 4, 5}});
}

}  // namespace

TEST_CASE("from_point_cloud computes euclidean distances") {
    MatrixXd c(2, 2);
    c << 0, 0, 1, 0;
    auto lms = LabeledMetricSpace::from_point_cloud(c, {{0}, {1}});
    CHECK(lms.dist(0, 0) == 0.0);
    CHECK(lms.dist(0, 1) == 1.0);
    CHECK(lms.dist(1, 0) == 1.0);
}

TEST_CASE("two-rows space has diameter sqrt(2)") {
    auto lms = two_rows_space();
    CHECK(diam_Q(lms, {0, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(diam_Q(lms, {0}) == doctest::Approx(1.0));
}

TEST_CASE("duplicated point under two labels is a valid space") {
    MatrixXd c(2, 2);
    c << 0.5, 0.5, 0.5, 0.5;
    auto lms = LabeledMetricSpace::from_point_cloud(c, {{0}, {1}});
    CHECK(lms.dist(0, 1) == 0.0);
    CHECK(validate(lms).ok());
}

TEST_CASE("constructor rejects bad labels") {
    MatrixXd c(2, 2);
    c << 0, 0, 1, 0;
    CHECK_THROWS_AS(LabeledMetricSpace::from_point_cloud(c, {{}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(LabeledMetricSpace::from_point_cloud(c, {{0}, {5}}), std::invalid_argument);
    CHECK_THROWS_AS(LabeledMetricSpace::from_point_cloud(c, {{0}}), std::invalid_argument);
}

TEST_CASE("validate reports triangle violations") {
    MatrixXd d(3, 3);
    d << 0, 5, 1, 5, 0, 1, 1, 1, 0;
    auto lms = LabeledMetricSpace::from_distance_matrix(d, {{0, 1, 2}});
    auto report = validate(lms);
    CHECK(!report.ok());
    bool found = false;
    for (const auto& i : report.issues)
        if (i.find("triangle") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate reports cover violations") {
    MatrixXd d(2, 2);
    d << 0, 1, 1, 0;
    auto lms = LabeledMetricSpace(d, {{0}, {0}});
    auto report = validate(lms);
    CHECK(!report.ok());
}

TEST_CASE("validate accepts a valid space") {
    CHECK(validate(two_rows_space()).ok());
}

TEST_CASE("diam_Q edge cases") {
    auto lms = two_rows_space();
    CHECK_THROWS_AS(diam_Q(lms, {}), std::invalid_argument);
    MatrixXd c(2, 2);
    c << 0, 0, 3, 4;
    auto two = LabeledMetricSpace::from_point_cloud(c, {{0}, {1}});
    CHECK(diam_Q(two, {0}) == 0.0);  // single-point label
}

TEST_CASE("hausdorff basics") {
    MatrixXd c(2, 2);
    c << 0, 0, 0, 1;
    auto lms = LabeledMetricSpace::from_point_cloud(c, {{0}, {1}});
    CHECK(hausdorff(lms, {0}, {1}) == doctest::Approx(1.0));
    CHECK(hausdorff(lms, {0, 1}, {0, 1}) == 0.0);
    CHECK_THROWS_AS(hausdorff(lms, {}, {0}), std::invalid_argument);
}

TEST_CASE("hausdorff on the rotated circle configuration") {
    MatrixXd c(8, 2);
    for (int i = 0; i < 4; ++i) {
        const double a = i * M_PI / 2.0;
        c(i, 0) = std::cos(a);
        c(i, 1) = std::sin(a);
        const double b = a + M_PI / 4.0;
        c(4 + i, 0) = std::cos(b);
        c(4 + i, 1) = std::sin(b);
    }
    auto lms = LabeledMetricSpace::from_point_cloud(c, {{0, 1, 2, 3}, {4, 5, 6, 7}});
    const double expected = std::sqrt(2.0 - std::sqrt(2.0));
    CHECK(hausdorff(lms, lms.label(0), lms.union_of(0b11)) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("restrict_labels") {
    auto lms = two_rows_space();
    auto full = restrict_labels(lms, {0, 1});
    CHECK(full.n_points() == 6);
    CHECK(full.k() == 2);

    auto first = restrict_labels(lms, {0});
    CHECK(first.n_points() == 3);
    CHECK(first.dist(0, 1) == doctest::Approx(0.4));
    CHECK(first.dist(0, 2) == doctest::Approx(1.0));

    auto second = restrict_labels(lms, {1});
    CHECK(second.k() == 1);

    CHECK_THROWS_AS(restrict_labels(lms, {}), std::invalid_argument);
    CHECK_THROWS_AS(restrict_labels(lms, {1, 0}), std::invalid_argument);

    // restricting twice with the full subsequence changes nothing
    auto again = restrict_labels(first, {0});
    CHECK(again.n_points() == first.n_points());
    CHECK(again.dist() == first.dist());
}

TEST_CASE("permute_labels group action") {
    auto lms = two_rows_space();
    auto same = permute_labels(lms, {0, 1});
    CHECK(same.label(0) == lms.label(0));

    auto swapped = permute_labels(lms, {1, 0});
    CHECK(swapped.label(0) == lms.label(1));
    CHECK(swapped.label(1) == lms.label(0));

    auto back = permute_labels(swapped, {1, 0});
    CHECK(back.label(0) == lms.label(0));
    CHECK_THROWS_AS(permute_labels(lms, {0, 0}), std::invalid_argument);
}

TEST_CASE("stabilize") {
    auto lms = two_rows_space();
    auto same = stabilize(lms, {0, 1});
    CHECK(same.k() == 2);

    auto s3 = stabilize(lms, {0, 0, 1});
    CHECK(s3.k() == 3);
    CHECK(s3.label(0) == lms.label(0));
    CHECK(s3.label(1) == lms.label(0));
    CHECK(s3.label(2) == lms.label(1));

    // a permutation-induced stabilization equals permute_labels
    auto via_rho = stabilize(lms, {1, 0});
    auto via_sigma = permute_labels(lms, {1, 0});
    CHECK(via_rho.label(0) == via_sigma.label(0));
    CHECK(via_rho.label(1) == via_sigma.label(1));

    CHECK_THROWS_AS(stabilize(lms, {0, 0}), std::invalid_argument);  // not surjective
    CHECK_THROWS_AS(stabilize(lms, {0}), std::invalid_argument);     // q < k
}

TEST_CASE("chromatic to labeled") {
    MatrixXd d(3, 3);
    d << 0, 1, 2, 1, 0, 1, 2, 1, 0;
    ChromaticInput in{d, std::nullopt, {0, 1, 2}, {{0}, {1, 2}}};
    auto lms = chromatic_to_labeled(in);
    CHECK(lms.k() == 2);
    CHECK(lms.label(0) == IndexSet{0});
    CHECK(lms.label(1) == IndexSet{1, 2});

    ChromaticInput all{d, std::nullopt, {0, 1, 2}, {{0, 1, 2}}};
    CHECK(chromatic_to_labeled(all).k() == 1);

    ChromaticInput bad{d, std::nullopt, {0, 1, 7}, {{0}, {1, 2}}};
    CHECK_THROWS_WITH_AS(chromatic_to_labeled(bad),
                         doctest::Contains("color 7"), std::invalid_argument);

    ChromaticInput unhit{d, std::nullopt, {0, 0, 0}, {{0}, {1}}};
    CHECK_THROWS_AS(chromatic_to_labeled(unhit), std::invalid_argument);
}

TEST_CASE("property: diam_Q monotone and hausdorff bounded by diameter") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto lms = testkit::random_space(seed, 3, 6);
        const double d1 = diam_Q(lms, {0});
        const double d12 = diam_Q(lms, {0, 1});
        CHECK(d1 <= d12 + 1e-15);
        const double h = hausdorff(lms, lms.label(0), lms.label(1));
        CHECK(h <= d12 + 1e-15);
    }
}

TEST_CASE("property: stabilization preserves the label multiset after dedup") {
    auto lms = two_rows_space();
    auto st = stabilize(lms, {1, 0, 1, 0});
    std::vector<IndexSet> seen;
    for (int i = 0; i < st.k(); ++i) {
        bool dup = false;
        for (const auto& s : seen)
            if (s == st.label(i)) dup = true;
        if (!dup) seen.push_back(st.label(i));
    }
    CHECK(seen.size() == 2);
    CHECK((seen[0] == lms.label(0) || seen[0] == lms.label(1)));
    CHECK((seen[1] == lms.label(0) || seen[1] == lms.label(1)));
}

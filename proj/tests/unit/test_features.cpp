#include <doctest.h>

#include <random>
#include <string>

#include "helpers.hpp"

using namespace trustclust;
using tc_test::constant_trust;
using tc_test::error_code_of;
using tc_test::make_record;

namespace {

const std::array<double, 10> kConfidentG{82, 84, 86, 88, 90, 80, 81.5, 83, 84.5, 74.5};

double f(const TrustFeatureVector& v, int label) { return v.values[label - 1]; }

DriveConfig with_lows(std::initializer_list<int> lows) {
  auto cfg = builtin_catalog().at(DriveType::G);
  for (auto& i : cfg.intersections) i.reliability = Level::High;
  for (int i : lows) cfg.intersections[i - 1].reliability = Level::Low;
  cfg.overall_reliability = 100 - 10 * static_cast<int>(lows.size());
  return cfg;
}

}  // namespace

TEST_CASE("phase segmentation of the study drives") {
  using V = std::vector<int>;
  const auto g = segment_phases(builtin_catalog().at(DriveType::G));
  CHECK(g.building == V{1, 2, 3, 4, 5});
  CHECK(g.error_events == V{6, 10});
  CHECK(g.repair == V{7, 8, 9});

  const auto d = segment_phases(builtin_catalog().at(DriveType::D));
  CHECK(d.building == V{1, 2});
  CHECK(d.error_events == V{3, 4, 5, 10});
  CHECK(d.repair == V{6, 7, 8, 9});

  CHECK(error_code_of([] { segment_phases(builtin_catalog().at(DriveType::A)); }) == ErrorCode::NoLowReliability);
}

TEST_CASE("phases partition the intersections of every analyzable drive") {
  for (const auto& [drive, cfg] : builtin_catalog()) {
    if (!is_analyzable(drive)) continue;
    const auto p = segment_phases(cfg);
    std::vector<int> all;
    for (const auto* part : {&p.building, &p.error_events, &p.repair}) all.insert(all.end(), part->begin(), part->end());
    std::sort(all.begin(), all.end());
    CHECK(all == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(p.building.back() < p.error_events.front());
  }
}

TEST_CASE("features of the noise-free confident drive-G trajectory") {
  const auto v = extract_features(make_record("p", DriveType::G, kConfidentG), builtin_catalog().at(DriveType::G));
  CHECK(f(v, 1) == doctest::Approx(82.0));
  CHECK(f(v, 2) == doctest::Approx(2.0));
  CHECK(f(v, 7) == doctest::Approx(-10.0));
  CHECK(f(v, 8) == doctest::Approx(1.5));
  // building {1..5} with a pedestrian only at 1; repair {7,8,9} with pedestrians at 7 and 8
  CHECK(f(v, 3) == doctest::Approx(82.0));
  CHECK(f(v, 4) == doctest::Approx(87.0));
  CHECK(f(v, 9) == doctest::Approx(82.25));
  CHECK(f(v, 10) == doctest::Approx(84.5));
  // no take-overs: the take-over means fall back to the phase means
  CHECK(f(v, 5) == doctest::Approx(86.0));
  CHECK(f(v, 6) == doctest::Approx(86.0));
  CHECK(f(v, 11) == doctest::Approx(83.0));
  CHECK(f(v, 12) == doctest::Approx(83.0));
}

TEST_CASE("take-over conditional means") {
  std::array<bool, 10> to{};
  to[1] = to[2] = true;  // intersections 2 and 3
  to[7] = true;          // intersection 8
  const auto v =
      extract_features(make_record("p", DriveType::G, kConfidentG, to), builtin_catalog().at(DriveType::G));
  CHECK(f(v, 5) == doctest::Approx(85.0));
  CHECK(f(v, 6) == doctest::Approx((82.0 + 88.0 + 90.0) / 3.0));
  CHECK(f(v, 11) == doctest::Approx(83.0));
  CHECK(f(v, 12) == doctest::Approx((81.5 + 84.5) / 2.0));
}

TEST_CASE("flat trajectory") {
  for (auto drive : {DriveType::B, DriveType::C, DriveType::D, DriveType::G, DriveType::H}) {
    const auto v = extract_features(make_record("p", drive, constant_trust(70)), builtin_catalog().at(drive));
    for (int label = 1; label <= 12; ++label) {
      CAPTURE(label);
      const bool rate = label == 2 || label == 7 || label == 8;
      CHECK(f(v, label) == doctest::Approx(rate ? 0.0 : 70.0));
    }
  }
}

TEST_CASE("translation shifts levels and leaves rates unchanged") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(20.0, 70.0);
  for (int rep = 0; rep < 50; ++rep) {
    for (auto drive : {DriveType::B, DriveType::C, DriveType::D, DriveType::G, DriveType::H}) {
      std::array<double, 10> t, shifted;
      std::array<bool, 10> to{};
      for (int i = 0; i < 10; ++i) {
        t[i] = u(rng);
        shifted[i] = t[i] + 13.0;
        to[i] = (rng() & 3u) == 0;
      }
      const auto& cfg = builtin_catalog().at(drive);
      const auto a = extract_features(make_record("a", drive, t, to), cfg);
      const auto b = extract_features(make_record("b", drive, shifted, to), cfg);
      for (int label = 1; label <= 12; ++label) {
        const bool rate = label == 2 || label == 7 || label == 8;
        CHECK(f(b, label) == doctest::Approx(f(a, label) + (rate ? 0.0 : 13.0)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("drives whose phases are empty are rejected") {
  const auto rec = make_record("p", DriveType::G, kConfidentG);
  CHECK(error_code_of([&] { extract_features(rec, with_lows({1, 6})); }) == ErrorCode::EmptyPhase);
  CHECK(error_code_of([&] { extract_features(rec, with_lows({10})); }) == ErrorCode::EmptyPhase);
  CHECK(error_code_of([&] { extract_features(rec, builtin_catalog().at(DriveType::A)); }) ==
        ErrorCode::NoLowReliability);
}

TEST_CASE("ols_slope") {
  CHECK(ols_slope({1, 2, 3}, {5, 7, 9}) == doctest::Approx(2.0));
  CHECK(ols_slope({1, 2, 4}, {0, 1, 0}) == doctest::Approx(-1.0 / 14.0));
  CHECK(ols_slope({3}, {9}) == 0.0);
  CHECK(ols_slope({}, {}) == 0.0);
}

TEST_CASE("feature matrix rows match per-record extraction") {
  Dataset d;
  d.participants.push_back(make_record("a", DriveType::G, kConfidentG));
  d.participants.push_back(make_record("b", DriveType::D, constant_trust(40)));
  auto t = kConfidentG;
  t[6] = 20;
  d.participants.push_back(make_record("c", DriveType::H, t));
  const auto m = feature_matrix(d);
  CHECK(m.values.rows() == 3);
  CHECK(m.values.cols() == 12);
  CHECK(m.participant_ids == std::vector<std::string>{"a", "b", "c"});
  for (int i = 0; i < 3; ++i) {
    const auto& r = d.participants[i];
    const auto v = extract_features(r, builtin_catalog().at(r.drive_type));
    for (int j = 0; j < 12; ++j) CHECK(m.values(i, j) == v.values[j]);
  }

  std::ostringstream os;
  write_feature_matrix(os, m);
  CHECK(os.str().rfind("participant_id,f1,f2,f3,f4,f5,f6,f7,f8,f9,f10,f11,f12\na,82,2,", 0) == 0);
}

TEST_CASE("feature matrix errors") {
  CHECK(error_code_of([] { feature_matrix(Dataset{}); }) == ErrorCode::EmptyResult);
  Dataset d;
  d.participants.push_back(make_record("bad-one", DriveType::A, kConfidentG));
  try {
    feature_matrix(d);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoLowReliability);
    CHECK(std::string(e.what()).find("bad-one") != std::string::npos);
  }
}

TEST_CASE("feature names") {
  CHECK(feature_label(Feature::InitialTrust) == "f1");
  CHECK(feature_label(Feature::RepairAvgNoTakeover) == "f12");
  CHECK(feature_name(Feature::ErrorRate) == "error_rate");
}

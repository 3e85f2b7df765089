#include <doctest.h>

#include <Eigen/Dense>
#include <filesystem>

#include "newscov/factor_model.hpp"
#include "newscov/io.hpp"
#include "newscov/rng.hpp"

using namespace newscov;

TEST_CASE("init is reproducible from the seed") {
  const FactorModel a = init_model(3, 4, 2, 7);
  const FactorModel b = init_model(3, 4, 2, 7);
  CHECK(a.source_factors == b.source_factors);
  CHECK(a.event_factors == b.event_factors);

  const FactorModel c = init_model(3, 4, 2, 8);
  CHECK(a.source_factors != c.source_factors);
}

TEST_CASE("init rejects degenerate parameters") {
  CHECK_THROWS_AS(init_model(0, 4, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(init_model(3, 0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(init_model(3, 4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(init_model(3, 4, 2, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(init_model(3, 4, 2, 1, -0.1), std::invalid_argument);
}

TEST_CASE("init entries look like the requested gaussian") {
  // 1e6 entries at scale 0.1: the sample mean lies within 3 sigma/sqrt(n)
  // of zero and the sample stddev near 0.1.
  const FactorModel model = init_model(500, 500, 1000, 99);
  const double n = static_cast<double>(model.source_factors.size() +
                                       model.event_factors.size());
  REQUIRE(n == 1e6);
  const double sum =
      model.source_factors.sum() + model.event_factors.sum();
  CHECK(std::abs(sum / n) < 3.0 * 0.1 / std::sqrt(n));
  const double sq = model.source_factors.squaredNorm() +
                    model.event_factors.squaredNorm();
  CHECK(std::sqrt(sq / n) == doctest::Approx(0.1).epsilon(0.01));
}

TEST_CASE("score is the embedding dot product") {
  FactorModel model;
  model.source_factors.resize(2, 2);
  model.event_factors.resize(2, 2);
  model.source_factors.col(0) << 1.0, 2.0;
  model.source_factors.col(1) << 0.0, 0.0;
  model.event_factors.col(0) << 3.0, 4.0;
  model.event_factors.col(1) << -1.0, 5.0;

  CHECK(score(model, 0, 0) == 11.0);
  CHECK(score(model, 1, 0) == 0.0);  // zero source vector
  CHECK(score(model, 1, 1) == 0.0);
  CHECK_THROWS_AS(score(model, 2, 0), std::out_of_range);
  CHECK_THROWS_AS(score(model, 0, 2), std::out_of_range);
  CHECK_THROWS_AS(score(model, -1, 0), std::out_of_range);
}

TEST_CASE("score survives a common orthogonal rotation") {
  const FactorModel model = init_model(6, 9, 5, 3);
  // QR of a random matrix gives a uniform-ish orthogonal Q.
  SeededRng rng(17);
  Eigen::MatrixXd noise(5, 5);
  for (Eigen::Index i = 0; i < noise.size(); ++i) {
    noise.data()[i] = rng.next_gaussian();
  }
  const Eigen::MatrixXd q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(noise).householderQ();

  FactorModel rotated;
  rotated.source_factors = q * model.source_factors;
  rotated.event_factors = q * model.event_factors;
  for (std::int32_t s = 0; s < 6; ++s) {
    for (std::int32_t e = 0; e < 9; ++e) {
      CHECK(score(rotated, s, e) ==
            doctest::Approx(score(model, s, e)).epsilon(1e-12));
    }
  }
}

TEST_CASE("score_triplet is the score difference") {
  const FactorModel model = init_model(4, 7, 3, 11);
  for (std::int32_t s = 0; s < 4; ++s) {
    for (std::int32_t a = 0; a < 7; ++a) {
      CHECK(score_triplet(model, s, a, a) == 0.0);
      for (std::int32_t b = 0; b < 7; ++b) {
        const double forward = score_triplet(model, s, a, b);
        CHECK(forward == -score_triplet(model, s, b, a));
        CHECK(forward == doctest::Approx(score(model, s, a) -
                                         score(model, s, b))
                             .epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("model scorer matches the free function") {
  const FactorModel model = init_model(3, 5, 4, 2);
  const ModelScorer scorer(model);
  CHECK(scorer.name() == "mf");
  for (std::int32_t s = 0; s < 3; ++s) {
    for (std::int32_t e = 0; e < 5; ++e) {
      CHECK(scorer.score(s, e) == score(model, s, e));
    }
  }
}

TEST_CASE("model bundle round-trips bit-exactly through disk") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "newscov_test_model_rt";
  fs::remove_all(dir);

  ModelBundle bundle;
  bundle.model = init_model(5, 8, 3, 21);
  // Exercise non-finite-free but awkward values.
  bundle.model.source_factors(0, 0) = 0.1 + 0.2;
  bundle.model.event_factors(2, 7) = -1e-308;
  bundle.source_names = {"a", "b", "c", "d", "e"};
  bundle.event_ids = {"1", "2", "3", "4", "5", "6", "7", "8"};
  bundle.meta = {{"seed", 21}};
  save_model(bundle, dir);

  const ModelBundle loaded = load_model(dir);
  CHECK(loaded.model.source_factors == bundle.model.source_factors);
  CHECK(loaded.model.event_factors == bundle.model.event_factors);
  CHECK(loaded.source_names == bundle.source_names);
  CHECK(loaded.event_ids == bundle.event_ids);
  CHECK(loaded.meta.at("seed") == 21);

  // Mismatched name table is rejected on save.
  bundle.source_names.pop_back();
  CHECK_THROWS_AS(save_model(bundle, dir), std::invalid_argument);

  fs::remove_all(dir);
}

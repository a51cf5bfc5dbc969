#include <doctest.h>

#include <random>

#include "adsyn/estimation.hpp"
#include "oracles.hpp"

using namespace adsyn;
using namespace adsyn::estimation;

namespace {
const ParamSet kBoth = ParamSet(0b11);
const ParamSet kTheta1 = ParamSet::single(0);
const ParamSet kTheta2 = ParamSet::single(1);
}  // namespace

TEST_CASE("batch estimates on the two-parameter example") {
  auto p = fixture::fig2_pts();
  std::vector<StateId> x0{0};
  CHECK(estimate_batch(p, x0, {}) == kBoth);

  std::vector<StateId> xs{0, 1};
  std::vector<InputId> us{0};
  CHECK(estimate_batch(p, xs, us) == kBoth);

  std::vector<StateId> xs2{0, 1, 2};
  std::vector<InputId> us2{0, 0};
  CHECK(estimate_batch(p, xs2, us2) == kTheta2);
}

TEST_CASE("recursive estimates on the two-parameter example") {
  auto p = fixture::fig2_pts();
  CHECK(estimate_step(p, kBoth, 1, 0, 1) == kTheta1);
  CHECK(estimate_step(p, kBoth, 1, 1, 1) == kBoth);
  CHECK(estimate_step(p, kBoth, 1, 0, 2) == kTheta2);
  CHECK(estimate_step(p, kTheta2, 2, 0, 2) == kTheta2);
  CHECK(estimate_step(p, kTheta2, 1, 1, 1) == kTheta2);
}

TEST_CASE("inconsistent histories raise EmptyEstimate") {
  auto p = fixture::fig2_pts();
  try {
    estimate_step(p, kBoth, 0, 0, 0);
    FAIL("expected EmptyEstimate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyEstimate);
  }
  CHECK(consistent_params(p, kBoth, 0, 0, 0).empty());
  CHECK(consistent_params(p, kTheta1, 1, 0, 2).empty());
  std::vector<StateId> xs{0, 1, 1, 2};
  std::vector<InputId> us{0, 0, 0};
  try {
    estimate_batch(p, xs, us);
    FAIL("expected EmptyEstimate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyEstimate);
  }
  std::vector<InputId> wrong{0};
  try {
    estimate_batch(p, xs, wrong);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("batch and recursive forms agree on every short history") {
  auto s = sweep::estimator_sweep(3);
  CHECK(s.histories == 3 + 18 + 108 + 648);
  CHECK(s.systems > 10000);
  CHECK(s.batch_mismatches == 0);
  CHECK(s.fold_mismatches == 0);
  CHECK(s.growth == 0);
  CHECK(s.unsound == 0);
}

TEST_CASE("estimates stay sound along random trajectories") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    auto p = fixture::random_pts(rng, 5, 3, 4, 3);
    ParamId truth = static_cast<ParamId>(rng() % 4);
    StateId x = static_cast<StateId>(rng() % 5);
    ParamSet v = p.all_params();
    std::vector<StateId> xs{x};
    std::vector<InputId> us;
    for (int k = 0; k < 30; ++k) {
      InputId u = static_cast<InputId>(rng() % 3);
      auto succ = p.successors(x, u, truth);
      StateId next = succ[rng() % succ.size()];
      ParamSet nv = estimate_step(p, v, x, u, next);
      CHECK(nv.subset_of(v));
      CHECK(nv.contains(truth));
      xs.push_back(next);
      us.push_back(u);
      CHECK(estimate_batch(p, xs, us) == nv);
      v = nv;
      x = next;
    }
  }
}

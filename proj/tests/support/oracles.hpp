#pragma once

// Reference implementations used only by the tests. They are written
// against the definitions, not against the library code they check.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "adsyn/abstraction.hpp"
#include "adsyn/logic.hpp"
#include "adsyn/synthesis.hpp"
#include "adsyn/systems.hpp"

namespace oracle {

using adsyn::Letter;
using adsyn::StateId;

// LTL semantics on prefix·cycle^ω, evaluated over the |prefix|+|cycle|
// distinct positions. Until is a least fixpoint over the lasso.
bool ltl_holds(const adsyn::logic::LtlFormula& f, const std::vector<Letter>& prefix,
               const std::vector<Letter>& cycle);

// Winning region by enumerating every memoryless strategy and, for each,
// every strongly connected node set of the induced graph.
std::vector<char> rabin_winning(const adsyn::synthesis::RabinGame& g);

// Hull of the successor set from the 32 corners of (x, θ1, θ2, θ3, d).
adsyn::abstraction::Interval post_corners(const adsyn::abstraction::ScalarParametricAffine& sys,
                                          const adsyn::abstraction::Interval& qx,
                                          const adsyn::abstraction::Box& qtheta,
                                          const adsyn::abstraction::Rational& u);

// Hull over an n-point grid per dimension of x, θ1, θ2, θ3 with d at both ends.
adsyn::abstraction::Interval post_sampled(const adsyn::abstraction::ScalarParametricAffine& sys,
                                          const adsyn::abstraction::Interval& qx,
                                          const adsyn::abstraction::Box& qtheta,
                                          const adsyn::abstraction::Rational& u, int n);

}  // namespace oracle

namespace fixture {

// DRA of GF pi1 & F pi2 as drawn: F_1 = {s0}, I_1 = {s2}.
extern const char* const kFig1Dra;
adsyn::logic::Dra fig1_dra();

// Three states, two inputs, two parameters; both slices written out by hand.
adsyn::systems::Pts fig2_pts();

adsyn::systems::Pts random_pts(std::mt19937_64& rng, std::size_t states, std::size_t inputs,
                               std::size_t params, std::size_t max_succ);

// Single-pair game, every (node, input) with at least one successor.
adsyn::synthesis::RabinGame random_game(std::mt19937_64& rng, std::size_t max_nodes,
                                        std::size_t max_inputs);

}  // namespace fixture

namespace sweep {

struct EstimatorSweep {
  std::size_t histories = 0;
  std::size_t systems = 0;  // (history, PTS) pairs checked
  std::size_t batch_mismatches = 0;
  std::size_t fold_mismatches = 0;
  std::size_t growth = 0;  // steps where the set got larger
  std::size_t unsound = 0;
};

// Every history of at most `max_len` steps over 3 states and 2 inputs,
// against every two-parameter PTS as far as that history can observe it:
// the estimators only read the membership of the observed (x, u, x')
// triples, so all assignments of those bits are enumerated and the rest of
// the PTS is filled in arbitrarily.
EstimatorSweep estimator_sweep(std::size_t max_len);

}  // namespace sweep

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lfdgf/fo.hpp"
#include "lfdgf/lfd.hpp"
#include "lfdgf/mcheck.hpp"
#include "lfdgf/models.hpp"

namespace lfdgf {

// Bounded finite-model search. "Nothing found" is never an UNSAT claim.

struct GfModel {
    StandardModel model;
    FoAssignment assignment; // values of the free variables
};

struct GfSearchOptions {
    int min_dom = 1;
    int max_dom = 3;
    // With seed != 0, each ground atom is pinned to a random value with
    // probability `force` (used to sample varied models); pinned runs that
    // turn out unsatisfiable are retried unpinned.
    std::uint64_t seed = 0;
    double force = 0.0;
    std::size_t ground_cap = 4'000'000;
};

// Grounds f over domains of increasing size and hands the propositional
// formula to the CDCL solver. Every returned model is re-checked by eval_fo.
std::optional<GfModel> brute_sat_gf(const Fo& f, const GfSearchOptions& opt = {});

struct LfdWitness {
    DependenceModel model;
    Assignment s;
};

struct LfdSearchOptions {
    int max_dom = 3;
    int max_team = 4;
    bool symmetry = true;
    // Teams whose relevant ground atoms exceed this are skipped (counted).
    std::size_t max_atoms = 16;
};

struct LfdSearch {
    std::optional<LfdWitness> found;
    std::size_t teams = 0;
    std::size_t skipped = 0;
};

// Enumerates domains, teams (up to renaming of domain elements when
// symmetry is on) and the interpretations of the ground atoms the formula
// can see. Uses its own evaluator.
LfdSearch brute_sat_lfd(const Lfd& f, const Signature& sig, const LfdSearchOptions& opt = {});

// Random generators. All are deterministic functions of the engine state.
using Rng = std::mt19937_64;

struct LfdShape {
    int size = 8;      // rough node budget
    int max_edepth = 3;
    bool deps = true;
};
Lfd random_lfd(Rng& rng, const Signature& sig, const LfdShape& shape = {});

struct GfShape {
    int size = 8;
    int max_qdepth = 2;
    std::vector<std::string> pool{"a", "b", "c", "d"}; // FO variable names
};
// Guarded formula whose free variables are exactly drawn from `free`.
Fo random_gf(Rng& rng, const Signature& sig, const std::vector<std::string>& free,
             const GfShape& shape = {});

StandardModel random_standard_model(Rng& rng, const Signature& sig, int max_dom,
                                    double density = 0.5);
DependenceModel random_dependence_model(Rng& rng, const Signature& sig, int max_dom,
                                        int max_team, double density = 0.5);
DependenceModel random_distinguished_model(Rng& rng, const Signature& sig, int max_dom,
                                           int max_team, double density = 0.5);

std::string element_name(int i);

} // namespace lfdgf

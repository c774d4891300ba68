#pragma once

// Executable inequality checks over the body/measure catalog.  Each check
// evaluates a hypothesis on a deterministic direction (or subspace) grid,
// evaluates the conclusion with error-tracked functionals, and reports the
// margins.  A check passes when both the hypothesis margin and the
// conclusion slack clear the accumulated noise tolerance; hypothesis
// violations demote the verdict to diagnostic (the claim is silent there),
// and checks against unspecified absolute constants are always diagnostic.

#include "geomtomo/functionals.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace geomtomo {

enum class Verdict { pass, fail, diagnostic };

std::string to_string(Verdict v);

struct ValueDigest {
    std::string label;
    double value = 0;
    double error = 0;
    std::string method;
};

struct CheckReport {
    std::string check_id;
    Verdict verdict = Verdict::diagnostic;
    double lhs = 0;                 // conclusion left side
    double rhs = 0;                 // conclusion right side
    double slack = 0;               // rhs - lhs (or -|difference| for identities)
    double hypothesis_margin = 0;   // min over the grid of (rhs - lhs); 0 if no grid
    double noise_tolerance = 0;     // accumulated numerical error budget
    int grid_size = 0;
    std::uint64_t seed = 0;
    std::string details;
    std::vector<ValueDigest> provenance;
};

struct VerifyOptions {
    ComputeOptions compute;
    int grid_target = 64;   // hypothesis grid size
    double r = 1.0;         // fixed reference-ball radius of the gated checks
    double epsilon = 0.0;   // separation offset added to the section side
    bool enforce = false;   // pre-scale the dominating side to min margin ~0
    int instances = 200;    // randomized battery size
};

// ---- grids and hypothesis scaling ------------------------------------------------

// deterministic low-discrepancy direction set: every stride-th node of the
// level-`level` sphere rule, about `target` directions
std::vector<Vec> direction_grid(int dim, int level, int target);

// seeded Haar sample of k-dimensional subspaces
std::vector<Frame> frame_grid(int dim, int k, int count, std::uint64_t seed);

// smallest s > 0 such that lhs[i] <= rhs_at_scale(s)[i] for all i, with min
// margin ~0.  When the right side obeys the power law rhs(s) = s^e rhs(1)
// pass `scaling_exponent` = e for a closed form; otherwise a monotone
// bisection is used.
double enforce_hypothesis(const std::vector<double>& lhs,
                          const std::function<std::vector<double>(double)>& rhs_at_scale,
                          std::optional<double> scaling_exponent);

// ---- individual checks ------------------------------------------------------------

// shadows of K below slices of L on k-subspaces implies |K| <= |L|
CheckReport verify_gk(const BodySpec& K, const BodySpec& L, int k,
                      const VerifyOptions& vo);

// sections of K below shadows of L implies a circumradius/inradius mass
// ratio bound; variant 'a' is volume-only (plus a diagnostic constant for
// the isotropic refinement), variant 'b' weighs sections against the
// mu-projection of L
CheckReport verify_thm12(const BodySpec& K, const BodySpec& L, const MeasureSpec& mu,
                         char variant, const VerifyOptions& vo);

// same comparisons with both bodies first brought to John position, giving
// sqrt(n)-type constants
CheckReport verify_cor13(const BodySpec& K, const BodySpec& L, const MeasureSpec& mu,
                         char variant, const VerifyOptions& vo);

// k-subspace variant via the mean width of L; also emits the Grassmann
// shadow-average mean width bound as a second report
std::vector<CheckReport> verify_prop31(const BodySpec& K, const BodySpec& L, int k,
                                       const VerifyOptions& vo);

// separation comparison for concave homogeneous densities: mu-projections
// of K below sections of L plus epsilon bounds mu(K)^(1-q)
CheckReport verify_thm14(const BodySpec& K, const BodySpec& L, const MeasureSpec& mu,
                         const VerifyOptions& vo);

// q-concave bounded-density comparison with reference radius r; when the
// mass gate holds the simplified corollary bound is emitted as well
std::vector<CheckReport> verify_thm51(const BodySpec& K, const BodySpec& L,
                                      const MeasureSpec& mu, const VerifyOptions& vo);

// Grassmann moment bound for the slice masses of a star body (f = indicator)
CheckReport verify_prop53(const BodySpec& body, int k, const VerifyOptions& vo);

// log-concave ray-decreasing comparison, dispatching on the mass of K
// relative to the reference ball; reports which case fired
CheckReport verify_thm61(const BodySpec& K, const BodySpec& L, const MeasureSpec& mu,
                         const VerifyOptions& vo);

// ---- batteries ---------------------------------------------------------------------

// randomized catalog instances of the supporting lemmas and identities:
// concavity of masses under Minkowski combination, mixed-mass lower bounds,
// the polar mass identity, dilation bounds, surface-to-mass ratios, section
// profile concavity, sphere/Grassmann averaging, and the averaged-hypothesis
// variant of the separation bound
std::vector<CheckReport> lemma_bank(const VerifyOptions& vo);

struct SweepTable {
    std::string id;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// sharpness sweeps reproducing the predicted tightness ratios
SweepTable sweep_remark31(int n, const std::vector<double>& ps, const VerifyOptions& vo);
SweepTable sweep_remark61(const std::vector<int>& ns, const VerifyOptions& vo);
SweepTable sweep_remark32(int n, const std::vector<int>& levels, const VerifyOptions& vo);
SweepTable sweep_remark41(int n, const VerifyOptions& vo);

// seeded random catalog draws
BodySpec random_body(Rng& rng, int dim, bool convex_only);
MeasureSpec random_measure(Rng& rng, int dim);

// named suites: "lemma_bank", "theorems", "all"; jobs run on a work queue
// capped by GEOMTOMO_THREADS
std::vector<CheckReport> run_battery(const std::string& suite, const VerifyOptions& vo);

}  // namespace geomtomo

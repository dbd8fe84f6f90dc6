#pragma once

// End-to-end verification drive: from a base complex file through the
// blowup, its link and curvature checks, the height machinery, the
// branching locus with its monodromy certificates, down to the finiteness
// verdict.  Stages run in dependency order; the first failing stage stops
// the drive and the report names it.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubecert/morse.hpp"

namespace cubecert {

struct PipelineConfig {
    std::string l_path;                      // base complex, canonical JSON
    std::array<int, 3> a_part_sizes{4, 4, 4};
    // Monodromy primes in pair order (1,2), (2,3), (3,1); all zero means
    // choose automatically (smallest admissible primes, pairwise distinct).
    std::array<int, 3> q_primes{0, 0, 0};
    std::optional<MorseSigns> morse_signs;   // default: half split per part
    int window_radius = 1;
    std::uint64_t seed = 0;                  // echoed into the report
    std::string out_dir;                     // empty: no artifacts written
    // Strict mode insists on the full-size regime: every A-side part has at
    // least 4 vertices and at least 2 of each sign.  Lab mode lifts the size
    // floor and stamps a prominent banner into the report instead.
    bool strict = true;
};

// One executed stage.  `data` holds the stage's computed numbers as a JSON
// object; `cites` names the earlier stages the verdict relies on, so a
// verdict always points at computed data or a recorded assumption.
struct PipelineStage {
    std::string name;
    std::string verdict;  // "pass" or "fail"
    std::string detail;   // one-line justification
    std::string data;     // JSON object text
    std::vector<std::string> cites;
};

struct PipelineReport {
    bool ok = false;
    std::string mode;                 // "strict" or "lab"
    std::vector<std::string> banner;  // nonempty only in lab mode
    std::string config;               // JSON echo of the resolved config
    std::vector<PipelineStage> stages;
    std::vector<std::string> assumptions;  // recorded, never computed here
};

// Run the drive.  Bad files or arguments throw InputError, regime misuse
// throws PreconditionError; a false checked claim is not an exception but
// a failing stage (ok = false, later stages skipped).  With out_dir set,
// writes report.json, the blowup manifest, per-pair monodromy certificates,
// the finiteness verdict and a manifest.json indexing all artifacts.
PipelineReport run_pipeline(const PipelineConfig& cfg);

// Deterministic serialization: byte-identical for identical config and
// inputs; contains no timestamps.
std::string report_to_json(const PipelineReport& r);

// One ascending or descending link class of the branching-locus vertices
// (keyed by pattern, traced chain and signs) together with the outcome of
// the four-cycle ordering search over its branch directions.  Classes whose
// link contains no branch direction are reported with branch_directions = 0
// and skipped by the search.
struct OrderingClassResult {
    std::string cls;
    std::string side;  // "ascending" or "descending"
    std::size_t members = 0;
    std::size_t branch_directions = 0;
    bool found = false;
    bool budget_exhausted = false;
    std::vector<std::string> witness;
};
std::vector<OrderingClassResult> ordering_search_census(
    const CubeComplex& X, const MorseSigns& signs, const BlowupInputs& in,
    std::size_t budget = 100000);

// Worker count for within-stage scans: CUBECERT_WORKERS clamped to 1..64,
// defaulting to min(hardware concurrency, 8).
int worker_count();

// Valence bounds of the three projection pairs (1,2), (2,3), (3,1): the
// largest part size among the four generator parts each pair touches.
std::array<int, 3> monodromy_valence_bounds(const SimplicialComplex& gamma_a,
                                            const SimplicialComplex& gamma_b);

// Monodromy primes per pair.  All-zero request: the smallest prime above
// each bound, pairwise distinct, chosen in pair order.  Explicit primes are
// validated (prime, above the bound, distinct); InputError otherwise.
std::array<int, 3> resolve_monodromy_primes(const std::array<int, 3>& requested,
                                            const std::array<int, 3>& bounds);

// Branched covers of the corner cones of one projection: every corner of
// the retract graph yields a cone over its instance grid, covered with the
// labeled monodromy.  single_lift counts corners whose cone point has a
// unique preimage (equivalently, transitive four-loop monodromy).
struct LinkCoverSummary {
    std::array<int, 2> pair{};
    int removed_coordinate = 0;
    int q = 0;
    std::size_t corners = 0;
    std::size_t single_lift = 0;
    std::size_t covered_vertices = 0;
};
std::vector<LinkCoverSummary> link_cover_summaries(
    const CubeComplex& X, const std::array<int, 3>& q_primes);

}  // namespace cubecert

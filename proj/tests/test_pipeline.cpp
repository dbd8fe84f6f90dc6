#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "cubecert/error.hpp"
#include "cubecert/json_io.hpp"
#include "cubecert/pipeline.hpp"
#include "helpers.hpp"

using namespace cubecert;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

// scratch directory shared by the cases, cleaned up per test
struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("cubecert_pipeline_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string file(const std::string& name, const SimplicialComplex& K) {
        const std::string path = (dir / name).string();
        write_text_file(path, complex_to_json(K));
        return path;
    }
};

json parse_report(const PipelineReport& r) {
    return json::parse(report_to_json(r));
}

const json& stage_named(const json& rep, const std::string& name) {
    for (const json& s : rep.at("stages"))
        if (s.at("name") == name) return s;
    throw std::runtime_error("stage not in report: " + name);
}

// every citation must name a stage that appears earlier in the report
void check_citations(const json& rep) {
    std::set<std::string> seen;
    for (const json& s : rep.at("stages")) {
        for (const json& c : s.at("citations")) {
            INFO("stage ", s.at("name").get<std::string>(), " cites ",
                 c.get<std::string>());
            CHECK(seen.count(c.get<std::string>()) == 1);
        }
        seen.insert(s.at("name").get<std::string>());
        // a verdict always points at data or an assumption
        CHECK(s.at("verdict").is_string());
        CHECK((s.at("verdict") == "pass" || s.at("verdict") == "fail"));
        CHECK(!s.at("detail").get<std::string>().empty());
        CHECK(s.at("data").is_object());
    }
}

}  // namespace

TEST_CASE("the triangle instance drives every stage to a pass") {
    Scratch tmp;
    PipelineConfig cfg;
    cfg.l_path = tmp.file("triangle.json", testutil::simplex({"x", "y", "z"}));

    const PipelineReport rep = run_pipeline(cfg);
    CHECK(rep.ok);
    CHECK(rep.mode == "strict");
    CHECK(rep.banner.empty());
    CHECK(rep.assumptions.size() == 2);

    const std::vector<std::string> expected{
        "input",        "nlcp",
        "subdivision",  "octahedralisation",
        "blowup",       "vertex-links",
        "npc",          "hyperplanes",
        "morse-orientation", "morse-links",
        "windows",      "branch-locus",
        "monodromy",    "link-covers",
        "orderings",    "finiteness"};
    REQUIRE(rep.stages.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(rep.stages[i].name == expected[i]);
        CHECK(rep.stages[i].verdict == "pass");
    }

    const json j = parse_report(rep);
    check_citations(j);

    // the blowup of the standard triangle instance
    const json& blow = stage_named(j, "blowup").at("data");
    CHECK(blow.at("cells_by_dim") == json({1664, 12544, 30720, 24576}));

    // automatic monodromy moduli: smallest primes above the valence bound
    // 12, pairwise distinct in pair order
    const json& mono = stage_named(j, "monodromy").at("data");
    CHECK(mono.at("valence_bounds") == json({12, 12, 12}));
    CHECK(mono.at("q_primes") == json({13, 17, 19}));
    for (const json& p : mono.at("pairs")) {
        CHECK(p.at("ok") == true);
        CHECK(p.at("commutator_identity") == true);
        CHECK(p.at("four_loops") == p.at("transitive_loops"));
    }

    // corner counts of the three projections: |B_i| x |A_j| over the
    // doubled-subdivision parts (12, 12, 4) and A-parts of size 4
    const json& covers = stage_named(j, "link-covers").at("data");
    std::vector<std::size_t> corners;
    for (const json& p : covers.at("pairs")) {
        corners.push_back(p.at("corners").get<std::size_t>());
        CHECK(p.at("single_lift_corners") == p.at("corners"));
    }
    CHECK(corners == std::vector<std::size_t>{48, 48, 16});

    // every locus link class admits a shelling order of its branch
    // directions
    const json& ord = stage_named(j, "orderings").at("data");
    CHECK(ord.at("classes_searched").get<std::size_t>() > 0);
    CHECK(ord.at("orderings_found") == ord.at("classes_searched"));
    CHECK(ord.at("budget_exhausted") == 0);

    // the base group is computed trivial, so the census-driven verdict is
    // plain finite presentation
    const json& fin = stage_named(j, "finiteness").at("data");
    CHECK(fin.at("base_group_trivial") == true);
    CHECK(fin.at("report").at("verdict") == "finitely presented");
}

TEST_CASE("a local cut point stops the drive at the nlcp stage") {
    Scratch tmp;
    PipelineConfig cfg;
    cfg.l_path = tmp.file("cycle.json", testutil::cycle(3));

    const PipelineReport rep = run_pipeline(cfg);
    CHECK(!rep.ok);
    REQUIRE(rep.stages.size() == 2);
    CHECK(rep.stages[0].name == "input");
    CHECK(rep.stages[0].verdict == "pass");
    CHECK(rep.stages[1].name == "nlcp");
    CHECK(rep.stages[1].verdict == "fail");
    CHECK(rep.stages[1].detail.find("rejected") != std::string::npos);
    check_citations(parse_report(rep));
}

TEST_CASE("bad files, regimes and moduli raise input errors") {
    Scratch tmp;
    PipelineConfig cfg;

    cfg.l_path = (tmp.dir / "missing.json").string();
    CHECK_THROWS_AS(run_pipeline(cfg), InputError);

    cfg.l_path = tmp.file("solid3.json",
                          testutil::simplex({"a", "b", "c", "d"}));
    CHECK_THROWS_AS(run_pipeline(cfg), InputError);  // dimension 3

    cfg.l_path = tmp.file("triangle.json", testutil::simplex({"x", "y", "z"}));
    cfg.a_part_sizes = {4, 2, 4};
    CHECK_THROWS_AS(run_pipeline(cfg), InputError);  // strict size floor
    cfg.a_part_sizes = {4, 4, 4};
    cfg.window_radius = -1;
    CHECK_THROWS_AS(run_pipeline(cfg), InputError);

    // explicit moduli are validated against the triangle bounds (12,12,12)
    const std::array<int, 3> bounds{12, 12, 12};
    CHECK(resolve_monodromy_primes({0, 0, 0}, bounds) ==
          std::array<int, 3>{13, 17, 19});
    CHECK(resolve_monodromy_primes({23, 29, 31}, bounds) ==
          std::array<int, 3>{23, 29, 31});
    CHECK_THROWS_AS(resolve_monodromy_primes({4, 5, 7}, bounds), InputError);
    CHECK_THROWS_AS(resolve_monodromy_primes({13, 13, 17}, bounds),
                    InputError);
    CHECK_THROWS_AS(resolve_monodromy_primes({5, 7, 11}, bounds), InputError);
}

TEST_CASE("reports are deterministic and free of stale citations") {
    Scratch tmp;
    PipelineConfig cfg;
    cfg.l_path = tmp.file("triangle.json", testutil::simplex({"x", "y", "z"}));
    cfg.seed = 7;

    const std::string first = report_to_json(run_pipeline(cfg));
    const std::string second = report_to_json(run_pipeline(cfg));
    CHECK(first == second);
    CHECK(first.find("\"seed\": 7") != std::string::npos);
    check_citations(json::parse(first));
}

TEST_CASE("lab mode stamps a banner and reports the small regime honestly") {
    Scratch tmp;
    PipelineConfig cfg;
    cfg.l_path = tmp.file("triangle.json", testutil::simplex({"x", "y", "z"}));
    cfg.strict = false;

    // full-size parts still pass in lab mode, banner and all
    const PipelineReport full = run_pipeline(cfg);
    CHECK(full.ok);
    CHECK(full.mode == "lab");
    CHECK(!full.banner.empty());
    CHECK(report_to_json(full).find("LAB MODE") != std::string::npos);

    // two-point parts leave single-signed vertices in half the links, so
    // the ordering search fails there and the drive stops naming it
    cfg.a_part_sizes = {2, 2, 2};
    const PipelineReport small = run_pipeline(cfg);
    CHECK(!small.ok);
    CHECK(small.stages.back().name == "orderings");
    CHECK(small.stages.back().verdict == "fail");
    const json data = json::parse(small.stages.back().data);
    CHECK(data.at("orderings_found").get<std::size_t>() <
          data.at("classes_searched").get<std::size_t>());
    // the failed rows carry a deepest-prefix witness
    bool witnessed = false;
    for (const json& row : data.at("rows"))
        if (row.contains("witness") && !row.at("witness").empty())
            witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("artifacts land under the output directory with a manifest index") {
    Scratch tmp;
    PipelineConfig cfg;
    cfg.l_path = tmp.file("triangle.json", testutil::simplex({"x", "y", "z"}));
    cfg.out_dir = (tmp.dir / "artifacts").string();

    const PipelineReport rep = run_pipeline(cfg);
    CHECK(rep.ok);

    const std::vector<std::string> expected{
        "report.json",       "blowup_manifest.json", "monodromy_12.json",
        "monodromy_23.json", "monodromy_31.json",    "finiteness.json"};
    for (const std::string& name : expected)
        CHECK(fs::exists(fs::path(cfg.out_dir) / name));

    const json manifest =
        json::parse(read_text_file((fs::path(cfg.out_dir) / "manifest.json").string()));
    REQUIRE(manifest.at("artifacts").size() == expected.size());
    for (const json& a : manifest.at("artifacts")) {
        const std::string name = a.at("file").get<std::string>();
        CHECK(std::find(expected.begin(), expected.end(), name) !=
              expected.end());
        CHECK(a.at("bytes").get<std::size_t>() ==
              fs::file_size(fs::path(cfg.out_dir) / name));
    }

    // the stored report is the returned report
    CHECK(read_text_file((fs::path(cfg.out_dir) / "report.json").string()) ==
          report_to_json(rep));
}

TEST_CASE("worker count respects the environment override") {
    ::setenv("CUBECERT_WORKERS", "3", 1);
    CHECK(worker_count() == 3);
    ::setenv("CUBECERT_WORKERS", "0", 1);
    CHECK(worker_count() == 1);
    ::setenv("CUBECERT_WORKERS", "999", 1);
    CHECK(worker_count() == 64);
    ::unsetenv("CUBECERT_WORKERS");
    CHECK(worker_count() >= 1);
    CHECK(worker_count() <= 8);
}

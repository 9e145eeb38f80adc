#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcover/cli.hpp"

using namespace qcover;

namespace {

struct RunOutcome {
    int code = 0;
    std::string out;
    std::string err;
};

RunOutcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path tmp_dir() {
    auto d = std::filesystem::temp_directory_path() / "qcover_cli_tests";
    std::filesystem::create_directories(d);
    return d;
}

std::string write_file(const std::string& name, const std::string& content) {
    auto path = tmp_dir() / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path.string();
}

std::string fano_line_file(const std::string& name) {
    auto s = make_proj_space(Field::make(2, 1), 2);
    std::vector<ProjPoint> pts;
    for (const auto& p : enumerate_points(s))
        if (s.field->is_zero(p.coords.entries[0])) pts.push_back(p);
    return write_file(name, canonical_dump(blocking_set_to_json(BlockingSet(s, pts))));
}

std::string klein_cover_file(const std::string& name) {
    return write_file(name, R"json({"group": {"constructor": "E(2,2)"}, "members": [[0,1],[0,2],[0,3]]})json");
}

}  // namespace

TEST_CASE("enumerate emits the canonical point list") {
    auto r = run({"enumerate", "--q", "2", "--n", "2"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 7);
    CHECK(j["q"] == 2);
    CHECK(j["n"] == 2);
    CHECK(j["modulus"] == json::array({0, 1}));
    REQUIRE(j["points"].size() == 7);
    CHECK(j["points"][0] == "(0:0:1)");
    CHECK(j["points"][6] == "(1:1:1)");
    CHECK(r.out.back() == '\n');

    auto t = run({"--format", "text", "enumerate", "--q", "2", "--n", "2"});
    REQUIRE(t.code == 0);
    CHECK(t.out.substr(0, 8) == "(0:0:1)\n");
    CHECK(std::count(t.out.begin(), t.out.end(), '\n') == 7);
}

TEST_CASE("enumerate accepts an explicit modulus") {
    auto r = run({"enumerate", "--q", "9", "--n", "1", "--modulus", "1,0,1"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 10);
    CHECK(j["modulus"] == json::array({1, 0, 1}));
    // a reducible modulus is refused
    auto bad = run({"enumerate", "--q", "9", "--n", "1", "--modulus", "0,0,1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("input error") != std::string::npos);
}

TEST_CASE("search reports the spectrum") {
    auto r = run({"search", "--q", "2", "--n", "2", "--range", "1,7"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["range"] == json::array({1, 7}));
    REQUIRE(j["sizes"].size() == 1);
    CHECK(j["sizes"]["3"]["count"] == 7);
    CHECK(j["sizes"]["3"]["first"] ==
          json::array({"(0:0:1)", "(0:1:0)", "(0:1:1)"}));

    auto single = run({"search", "--q", "2", "--n", "2", "--range", "3"});
    CHECK(json::parse(single.out)["sizes"]["3"]["count"] == 7);

    auto text = run({"--format", "text", "search", "--q", "2", "--n", "2", "--range", "1,7"});
    CHECK(text.out == "size 3: count 7, first (0:0:1) (0:1:0) (0:1:1)\n");

    auto empty = run({"search", "--q", "2", "--n", "2", "--range", "4,7"});
    CHECK(json::parse(empty.out)["sizes"].empty());
    CHECK(run({"search", "--q", "2", "--n", "2", "--range", "0,5"}).code == 2);
}

TEST_CASE("search output is byte-identical across worker counts") {
    auto one = run({"search", "--q", "3", "--n", "2", "--range", "1,6", "--workers", "1"});
    auto four = run({"search", "--q", "3", "--n", "2", "--range", "1,6", "--workers", "4"});
    REQUIRE(one.code == 0);
    REQUIRE(four.code == 0);
    CHECK(one.out == four.out);
    CHECK(json::parse(one.out)["sizes"]["4"]["count"] == 13);
}

TEST_CASE("verify accepts a line and rejects non-blocking sets") {
    auto good = run({"verify", fano_line_file("line.json")});
    REQUIRE(good.code == 0);
    json j = json::parse(good.out);
    CHECK(j["blocking"] == true);
    CHECK(j["minimal"] == true);
    CHECK(j["failure"].is_null());
    CHECK(j["inessential"].is_null());
    REQUIRE(j["witnesses"].size() == 3);
    CHECK(j["witnesses"][0]["point"] == "(0:0:1)");

    auto two = write_file("two.json",
                          R"json({"q": 2, "n": 2, "points": ["(0:0:1)", "(0:1:0)"]})json");
    auto bad = run({"verify", two});
    CHECK(bad.code == 1);
    json b = json::parse(bad.out);
    CHECK(b["blocking"] == false);
    CHECK(b["failure"] == "(0:1:1)");
    CHECK(b["minimal"] == false);

    auto fat = write_file("fat.json",
                          R"json({"q": 2, "n": 2, "points": ["(0:0:1)", "(0:1:0)", "(0:1:1)", "(1:0:0)"]})json");
    auto nm = run({"verify", fat});
    CHECK(nm.code == 1);
    json f = json::parse(nm.out);
    CHECK(f["blocking"] == true);
    CHECK(f["minimal"] == false);
    CHECK(f["inessential"] == "(1:0:0)");

    auto text = run({"verify", fano_line_file("line2.json"), "--format", "text"});
    CHECK(text.out.find("blocking: yes") != std::string::npos);
    CHECK(text.out.find("minimal: yes") != std::string::npos);
}

TEST_CASE("verify handles group covers") {
    auto good = run({"verify", klein_cover_file("klein.json")});
    REQUIRE(good.code == 0);
    json j = json::parse(good.out);
    CHECK(j["is_cover"] == true);
    CHECK(j["irredundant"] == true);
    CHECK(j["maximal"] == true);
    CHECK(j["core_free"] == true);
    CHECK(j["classification"] == "C_3");
    CHECK(j["intersection"] == json::array({0}));
    REQUIRE(j["witnesses"].size() == 3);

    auto gap = write_file("gap.json",
                          R"json({"group": {"constructor": "C(6)"}, "members": [[0,2,4],[0,3]]})json");
    auto bad = run({"verify", gap});
    CHECK(bad.code == 1);
    json b = json::parse(bad.out);
    CHECK(b["is_cover"] == false);
    CHECK(b["uncovered"] == 1);

    // raw Cayley tables work too
    auto table = write_file("table.json",
                            R"json({"group": {"order": 2, "table": [[0,1],[1,0]]}, "members": [[0]]})json");
    CHECK(run({"verify", table}).code == 1);

    // constructor products parse left to right
    auto prod = write_file("prod.json",
                           R"json({"group": {"constructor": "C(2)xC(2)"}, "members": [[0,1],[0,2],[0,3]]})json");
    CHECK(run({"verify", prod}).code == 0);

    auto badgroup = write_file("badgroup.json",
                               R"json({"group": {"constructor": "Q(8)"}, "members": [[0]]})json");
    CHECK(run({"verify", badgroup}).code == 2);
    auto badsub = write_file("badsub.json",
                             R"json({"group": {"constructor": "C(6)"}, "members": [[0,1]]})json");
    CHECK(run({"verify", badsub}).code == 2);
}

TEST_CASE("verify input failures exit with 2") {
    CHECK(run({"verify", (tmp_dir() / "missing.json").string()}).code == 2);
    auto mangled = write_file("mangled.json", "{\"q\": 2,");
    auto r = run({"verify", mangled});
    CHECK(r.code == 2);
    CHECK(r.err.find("input error") != std::string::npos);
    auto unknown = write_file("unknown.json", R"json({"something": 1})json");
    CHECK(run({"verify", unknown}).code == 2);
}

TEST_CASE("dualize round-trips byte for byte") {
    auto line = fano_line_file("roundtrip.json");
    std::ifstream in(line, std::ios::binary);
    std::ostringstream orig;
    orig << in.rdbuf();

    auto first = run({"dualize", line});
    REQUIRE(first.code == 0);
    json dual = json::parse(first.out);
    CHECK(dual["dim"] == 3);
    REQUIRE(dual["members"].size() == 3);
    json report = json::parse(first.err);
    CHECK(report["blocking"] == true);
    CHECK(report["covers_space"] == true);
    CHECK(report["minimal"] == true);
    CHECK(report["irredundant"] == true);
    CHECK(report["equivalent"] == true);

    auto cover_path = write_file("roundtrip_dual.json", first.out);
    auto second = run({"dualize", cover_path});
    REQUIRE(second.code == 0);
    CHECK(second.out == orig.str());
}

TEST_CASE("dualize verdicts transfer for non-blocking and non-minimal sets too") {
    auto two = write_file("dual_two.json",
                          R"json({"q": 2, "n": 2, "points": ["(0:0:1)", "(0:1:0)"]})json");
    auto r = run({"dualize", two});
    CHECK(r.code == 0);
    json rep = json::parse(r.err);
    CHECK(rep["blocking"] == false);
    CHECK(rep["covers_space"] == false);
    CHECK(rep["equivalent"] == true);

    auto fat = write_file("dual_fat.json",
                          R"json({"q": 2, "n": 2, "points": ["(0:0:1)", "(0:1:0)", "(0:1:1)", "(1:0:0)"]})json");
    auto nm = run({"dualize", fat});
    CHECK(nm.code == 0);
    json rep2 = json::parse(nm.err);
    CHECK(rep2["minimal"] == false);
    CHECK(rep2["irredundant"] == false);
    CHECK(rep2["equivalent"] == true);
}

TEST_CASE("dualize can write to a file") {
    auto line = fano_line_file("tofile.json");
    auto out_path = (tmp_dir() / "tofile_dual.json").string();
    auto r = run({"dualize", line, "-o", out_path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    json dual = load_json_file(out_path);
    CHECK(dual["members"].size() == 3);
    CHECK(run({"verify", out_path}).code == 2);  // covers go through dualize, not verify
}

TEST_CASE("compose blocking sets from the command line") {
    auto f1 = fano_line_file("c1.json");
    auto f2 = fano_line_file("c2.json");
    auto r = run({"compose", f1, f2});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["n"] == 5);
    CHECK(j["points"] ==
          json::array({"(0:0:0:0:1:0)", "(0:0:0:0:1:1)", "(0:0:1:0:0:1)", "(0:1:0:0:0:0)",
                       "(0:1:1:0:0:0)"}));
    json rep = json::parse(r.err);
    CHECK(rep["blocking"] == true);
    CHECK(rep["minimal"] == true);

    // deterministic: byte-identical on repetition
    auto again = run({"compose", f1, f2});
    CHECK(again.out == r.out);

    // explicit transversals matching the defaults give the same bytes
    auto chosen = run({"compose", f1, f2, "--a", "0;0;1", "--b", "0;0;1"});
    REQUIRE(chosen.code == 0);
    CHECK(chosen.out == r.out);

    // a bad transversal is an input error
    CHECK(run({"compose", f1, f2, "--a", "0;1;0"}).code == 2);

    auto out_path = (tmp_dir() / "composed.json").string();
    auto filed = run({"compose", f1, f2, "-o", out_path});
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    CHECK(run({"verify", out_path}).code == 0);
}

TEST_CASE("compose group covers from the command line") {
    auto f1 = klein_cover_file("g1.json");
    auto f2 = klein_cover_file("g2.json");
    auto r = run({"compose", f1, f2});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["group"]["constructor"] == "E(2,2)xE(2,2)");
    REQUIRE(j["members"].size() == 5);
    CHECK(j["members"][0] == json::array({0, 1, 4, 5, 10, 11, 14, 15}));
    json rep = json::parse(r.err);
    CHECK(rep["classification"] == "C_5");

    auto composed = write_file("composed_cover.json", r.out);
    CHECK(run({"verify", composed}).code == 0);

    CHECK(run({"compose", f1, f2, "--a", "1"}).code == 2);   // a inside M1
    CHECK(run({"compose", f1, f2, "--i1", "7"}).code == 2);  // bad index
}

TEST_CASE("compose refuses mismatched inputs") {
    auto set = fano_line_file("mix1.json");
    auto cover = klein_cover_file("mix2.json");
    auto r = run({"compose", set, cover});
    CHECK(r.code == 2);
    CHECK(r.err.find("different kinds") != std::string::npos);

    auto dual = run({"dualize", set});
    auto dual_path = write_file("mix_dual.json", dual.out);
    auto h = run({"compose", dual_path, dual_path});
    CHECK(h.code == 2);
    CHECK(h.err.find("dualize them first") != std::string::npos);
}

TEST_CASE("resource guards exit with 3") {
    auto r = run({"enumerate", "--q", "3", "--n", "4", "--bound", "100"});
    CHECK(r.code == 3);
    CHECK(r.err.find("resource guard") != std::string::npos);
    CHECK(run({"search", "--q", "3", "--n", "4", "--range", "1,2", "--bound", "100"}).code == 3);
}

TEST_CASE("argument errors exit with 2") {
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"enumerate"}).code == 2);             // --q and --n required
    CHECK(run({"search", "--q", "2", "--n", "2"}).code == 2);  // --range required
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"enumerate", "--q", "2", "--n", "2", "--workers", "0"}).code == 2);
    CHECK(run({"enumerate", "--q", "2", "--n", "2", "--format", "yaml"}).code == 2);
    CHECK(run({"enumerate", "--q", "6", "--n", "2"}).code == 2);  // not a prime power
}

TEST_CASE("environment variables supply defaults") {
    setenv("QCOVER_FORMAT", "text", 1);
    auto text = run({"enumerate", "--q", "2", "--n", "1"});
    CHECK(text.out == "(0:1)\n(1:0)\n(1:1)\n");
    unsetenv("QCOVER_FORMAT");

    setenv("QCOVER_BOUND", "100", 1);
    CHECK(run({"enumerate", "--q", "3", "--n", "4"}).code == 3);
    unsetenv("QCOVER_BOUND");

    setenv("QCOVER_WORKERS", "3", 1);
    auto r = run({"search", "--q", "2", "--n", "2", "--range", "1,7"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["sizes"]["3"]["count"] == 7);
    unsetenv("QCOVER_WORKERS");
}

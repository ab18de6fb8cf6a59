#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "temp_dir.hpp"
#include "wikiindex/exporter.hpp"

using namespace wikiindex;
using testing::TempDir;

namespace {

const std::filesystem::path kCorpus = std::filesystem::path(WIKIINDEX_TESTDATA_DIR) / "einstein";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wikiindex");
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> probe_args(const TempDir& dir) {
  return {"probe",   "--seed",  "Albert_Einstein", "--short-name", "Einstein", "--anchor",
          "physics", "--anchor", "relativity",     "--source",     "fixture:" + kCorpus.string(),
          "--out",   (dir / "r.json").string(),    "--trace",      (dir / "t.trace").string()};
}

}  // namespace

TEST_CASE("probe writes report, trace and exports") {
  TempDir dir;
  auto args = probe_args(dir);
  args.insert(args.end(), {"--export", "graphml:" + (dir / "g.graphml").string(), "--text", (dir / "r.txt").string()});
  const auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("WI = 5 × 3.46 = 17, (12 articles with the references, WH = 5)") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "g.graphml"));
  CHECK(read_file(dir / "r.txt").find("Subject-domain network") != std::string::npos);
  CHECK(report_from_json(read_file(dir / "r.json")).index.wi_rounded == 17);

  const auto again = run(probe_args(dir));
  CHECK(again.out == r.out);
}

TEST_CASE("probe exit codes") {
  TempDir dir;
  auto missing_seed = probe_args(dir);
  missing_seed[2] = "No_Such_Page";
  missing_seed.insert(missing_seed.end(), {"--full-name", "Albert Einstein"});
  CHECK(run(missing_seed).code == cli::kSeedNotFound);

  auto bad_source = probe_args(dir);
  bad_source[10] = "ftp:whatever";
  CHECK(run(bad_source).code == cli::kConfig);

  auto no_corpus = probe_args(dir);
  no_corpus[10] = "fixture:" + (dir / "nothing").string();
  CHECK(run(no_corpus).code == cli::kCorpus);

  auto bad_growth = probe_args(dir);
  bad_growth.insert(bad_growth.end(), {"--growth", "cube"});
  CHECK(run(bad_growth).code == cli::kConfig);

  auto bad_name = probe_args(dir);
  bad_name[4] = "Bohr";
  CHECK(run(bad_name).code == cli::kConfig);

  auto unwritable = probe_args(dir);
  unwritable[12] = "/proc/forbidden/r.json";
  CHECK(run(unwritable).code == cli::kIo);

  auto corrupt = probe_args(dir);
  const auto cp = dir.write("cp.json", "{\"kind\":\"something else\"}");
  corrupt.insert(corrupt.end(), {"--resume", cp.string()});
  CHECK(run(corrupt).code == cli::kCheckpoint);

  CHECK(run({"probe", "--seed", "X"}).code == cli::kConfig);
  CHECK(run({}).code == cli::kConfig);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("truncated probes still write results") {
  TempDir dir;
  auto args = probe_args(dir);
  args.insert(args.end(), {"--max-pages", "3"});
  const auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("(truncated)") != std::string::npos);
  const auto report = report_from_json(read_file(dir / "r.json"));
  CHECK(report.truncated);
  CHECK(report.trace.events.size() == 3);
}

TEST_CASE("config files mirror flags and flags win") {
  TempDir dir;
  const auto ini = dir.write("probe.ini", "[probe]\nseed=Albert_Einstein\nshort-name=Einstein\nanchor=[\"physics\",\"relativity\"]\n"
                                          "source=fixture:" + kCorpus.string() + "\nmax-pages=2\n");
  const auto r = run({"--config", ini.string(), "probe", "--out", (dir / "a.json").string(), "--trace",
                      (dir / "a.trace").string(), "--max-pages", "4"});
  REQUIRE(r.code == 0);
  CHECK(report_from_json(read_file(dir / "a.json")).trace.events.size() == 4);
}

TEST_CASE("index on CSV and reports") {
  TempDir dir;
  const auto csv = dir.write("m.csv", "title,mentions\nA,100\nB,20\nC,10\nD,5\nE,5\nF,1\nG,1\nH,1\nI,1\n");
  auto r = run({"index", csv.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("N=9 WH=5 WI=15\n", 0) == 0);

  CHECK(run({"index", csv.string(), "--growth", "identity"}).out.rfind("N=9 WH=5 WI=45\n", 0) == 0);
  CHECK(run({"index", dir.write("e.csv", "").string()}).out.rfind("N=0 WH=0 WI=0\n", 0) == 0);
  CHECK(run({"index", dir.write("h.csv", "title,mentions\n").string()}).out.rfind("N=0 WH=0 WI=0\n", 0) == 0);

  std::string fermi = "title,mentions\n";
  for (int i = 0; i < 92; ++i) fermi += "P" + std::to_string(i) + "," + std::to_string(i < 7 ? 7 + i : 1 + i % 6) + "\n";
  CHECK(run({"index", dir.write("f.csv", fermi).string(), "--growth", "sqrt"}).out.rfind("N=92 WH=7 WI=67\n", 0) == 0);

  CHECK(run({"index", dir.write("bad.csv", "title,mentions\nA,-3\n").string()}).code == cli::kInput);
  CHECK(run({"index", dir.write("bad2.csv", "name,count\nA,3\n").string()}).code == cli::kInput);
  CHECK(run({"index", dir.write("dup.csv", "title,mentions\nA,3\nA,4\n").string()}).code == cli::kInput);
  CHECK(run({"index", (dir / "absent.csv").string()}).code == cli::kIo);

  REQUIRE(run(probe_args(dir)).code == 0);
  CHECK(run({"index", (dir / "r.json").string()}).out.rfind("N=12 WH=5 WI=17\n", 0) == 0);
}

TEST_CASE("compare renders aligned tables with placeholders") {
  TempDir dir;
  REQUIRE(run(probe_args(dir)).code == 0);
  const auto rows = dir.write("rows.csv",
                              "scientist,report,wiki_index,h-index Scopus,h-index Google Scholar Citations,footnote\n"
                              "Albert Einstein,,141,,111,\"Profile missing, the value was calculated\"\n"
                              "Enrico Fermi,,67,45,,\n"
                              "Fixture Einstein,r.json,,1,2,\n");
  const auto r = run({"compare", rows.string(), "--csv", (dir / "t.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "Scientist        | Wiki-index | h-index Scopus | h-index Google Scholar Citations\n"
        "-----------------+------------+----------------+---------------------------------\n"
        "Albert Einstein  |        141 |           n/a* |                              111\n"
        "Enrico Fermi     |         67 |             45 |                              n/a\n"
        "Fixture Einstein |         17 |              1 |                                2\n"
        "*Profile missing, the value was calculated\n");
  CHECK(read_file(dir / "t.csv").rfind("Scientist,Wiki-index,h-index Scopus", 0) == 0);

  const auto header_only = run({"compare", dir.write("h.csv", "scientist,wiki_index,Scopus\n").string()});
  CHECK(header_only.code == 0);
  CHECK(header_only.out == "Scientist | Wiki-index | Scopus\n----------+------------+-------\n");

  const auto missing = dir.write("m.csv", "scientist,report\nX,nowhere.json\n");
  CHECK(run({"compare", missing.string()}).code == cli::kReportMissing);
}

TEST_CASE("metrics on graph files and reports") {
  TempDir dir;
  const auto k3 = dir.write("k3.csv", "from,to,kind\nA,B,forward\nB,C,forward\nC,A,back\n");
  const auto r = run({"metrics", k3.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("- graph diameter: 1\n") != std::string::npos);
  CHECK(r.out.find("- average clustering: 1.00\n") != std::string::npos);

  const auto two = dir.write("two.csv", "from,to,kind\nA,B,forward\nB,C,forward\nX,Y,forward\n");
  CHECK(run({"metrics", two.string()}).out.find("(largest component: 3 of 5 nodes, 2 components)") !=
        std::string::npos);

  REQUIRE(run(probe_args(dir)).code == 0);
  const auto m = run({"metrics", (dir / "r.json").string()});
  CHECK(m.out.find("- nodes: 23\n- edges: 30\n- average degree of a node: 2.61\n- graph diameter: 5\n") !=
        std::string::npos);
  CHECK(run({"metrics", dir.write("x.dot", "graph{}").string()}).code == cli::kConfig);
  CHECK(run({"metrics", (dir / "nothing.gexf").string()}).code == cli::kIo);
}

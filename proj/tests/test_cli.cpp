#include <doctest.h>

#include <sstream>

#include "support/temp_dir.hpp"
#include "wngf/cli.hpp"
#include "wngf/io.hpp"

using namespace wngf;
using wngf::testing::TempDir;
using wngf::testing::slurp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Two groups; b0 and a1 broker across them.
const char *kToyEdges = "source,target,weight\n"
                        "a0,a1,5\n"
                        "a1,a2,4\n"
                        "a0,a2,0.5\n"
                        "a1,b0,2\n"
                        "b0,b1,3\n"
                        "b1,a0,1\n"
                        "b0,a2,6\n";
const char *kToyGroups = "node,group\na0,A\na1,A\na2,A\nb0,B\nb1,B\n";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("compute writes a profile") {
  TempDir dir;
  const auto edges = dir.file("toy.csv", kToyEdges).string();
  const auto groups = dir.file("toy_groups.csv", kToyGroups).string();
  const auto out = (dir / "profile.csv").string();
  const auto r = run({"compute", "--edges", edges, "--groups", groups, "--mode", "wngf", "--out",
                      out, "--oracle-check"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out.find("oracle-check passed") != std::string::npos);
  const auto profile = io::read_profile(out);
  CHECK(profile.nodes.size() == 5);
  // a0 -> a1 -> a2 brokers despite the direct a0 -> a2 edge (1/5 + 1/4 < 2).
  CHECK(profile.find("a1")->counts[role_index(Role::Coordinator)] == 1);
}

TEST_CASE("output is byte-identical across worker counts and kernels") {
  TempDir dir;
  const auto edges = dir.file("toy.csv", kToyEdges).string();
  const auto groups = dir.file("g.csv", kToyGroups).string();
  CHECK(run({"compute", "--edges", edges, "--groups", groups, "--out", (dir / "1.csv").string(),
             "--workers", "1", "--kernel", "scalar"})
            .code == 0);
  CHECK(run({"compute", "--edges", edges, "--groups", groups, "--out", (dir / "2.csv").string(),
             "--workers", "4"})
            .code == 0);
  CHECK(slurp(dir / "1.csv") == slurp(dir / "2.csv"));
}

TEST_CASE("binary compute on a dichotomized graph") {
  TempDir dir;
  const auto edges = dir.file("toy.csv", kToyEdges).string();
  const auto groups = dir.file("g.csv", kToyGroups).string();
  const auto r = run({"compute", "--edges", edges, "--groups", groups, "--mode", "binary",
                      "--method", "threshold", "--fraction", "0.1", "--out",
                      (dir / "p.csv").string(), "--keep-isolated"});
  CHECK(r.code == 0);
  CHECK(r.out.find("edges 7 -> 7") != std::string::npos);

  const auto wngf_reduce = run({"compute", "--edges", edges, "--groups", groups, "--method",
                                "backbone", "--alpha", "0.4", "--out", (dir / "q.csv").string()});
  CHECK(wngf_reduce.code == 1);
  CHECK(wngf_reduce.err.starts_with("--method:"));
}

TEST_CASE("dichotomize subcommand") {
  TempDir dir;
  const auto edges = dir.file("g.csv", kToyEdges).string();
  const auto out = (dir / "bb.csv").string();
  const auto r = run({"dichotomize", "--edges", edges, "--method", "backbone", "--alpha", "0.4",
                      "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.find("nodes retained") != std::string::npos);
  const auto reduced = io::read_edge_list(out);
  for (const auto &e : reduced)
    CHECK(e.weight == 1.0);

  const auto t = run({"dichotomize", "--edges", edges, "--method", "threshold", "--fraction",
                      "0.5", "--out", (dir / "t.csv").string()});
  CHECK(t.code == 0);
  CHECK(io::read_edge_list(dir / "t.csv").size() == 4);
}

TEST_CASE("dichotomize warns about lost nodes") {
  TempDir dir;
  const auto edges = dir.file("g.csv", "source,target,weight\nA,B,1\nC,D,9\n").string();
  const auto r = run({"dichotomize", "--edges", edges, "--method", "threshold", "--fraction",
                      "0.5", "--out", (dir / "t.csv").string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning: 2 nodes lost all edges: A B") != std::string::npos);
}

TEST_CASE("compare and ecdf") {
  TempDir dir;
  const auto edges = dir.file("toy.csv", kToyEdges).string();
  const auto groups = dir.file("g.csv", kToyGroups).string();
  const auto a = (dir / "wngf.csv").string();
  const auto b = (dir / "binary.csv").string();
  REQUIRE(run({"compute", "--edges", edges, "--groups", groups, "--out", a}).code == 0);
  REQUIRE(run({"compute", "--edges", edges, "--groups", groups, "--mode", "binary", "--out", b})
              .code == 0);

  const auto report = (dir / "report.csv").string();
  const auto r = run({"compare", "--a", a, "--b", a, "--top-k", "5", "--out", report});
  CHECK(r.code == 0);
  CHECK(r.err.find("unreliable") != std::string::npos);
  const std::string text = slurp(report);
  CHECK(text.starts_with("role,kind,coefficient,p_value,n\n"));
  CHECK(text.find("role,rank,node,score_a,score_b,abs_diff") != std::string::npos);

  CHECK(run({"compare", "--a", a, "--b", b, "--out", report}).code == 0);

  const auto e = (dir / "ecdf.csv").string();
  CHECK(run({"ecdf", "--profile", a, "--profile", b, "--out", e}).code == 0);
  const std::string curve = slurp(e);
  CHECK(curve.starts_with("role,method,value,cum_fraction\ncoordinator,wngf,"));
  CHECK(curve.find("coordinator,binary,") != std::string::npos);

  CHECK(run({"ecdf", "--profile", a, "--profile", a, "--out", e}).code == 1);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"compute", "--bogus"}).code == 1);
  CHECK(run({"compute", "--groups", "g.csv", "--out", "x.csv"}).code == 1);
  CHECK(run({"compute", "--edges", "e.csv", "--groups", "g.csv", "--mode", "fancy", "--out",
             "x.csv"})
            .code == 1);
  CHECK(run({"dichotomize", "--edges", "e.csv", "--method", "threshold", "--out", "x.csv"}).code ==
        1);
  CHECK(run({"dichotomize", "--edges", "e.csv", "--method", "backbone", "--alpha", "0", "--out",
             "x.csv"})
            .code == 1);
  CHECK(run({"dichotomize", "--edges", "e.csv", "--matrix", "m.csv", "--method", "backbone",
             "--alpha", "0.4", "--out", "x.csv"})
            .code == 1);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("compute") != std::string::npos);
}

TEST_CASE("data errors exit with 2 and name the file") {
  TempDir dir;
  const auto groups = dir.file("g.csv", kToyGroups).string();
  const auto bad = dir.file("bad.csv", "source,target,weight\na0,a1,x\n").string();
  auto r = run({"compute", "--edges", bad, "--groups", groups, "--out", (dir / "o.csv").string()});
  CHECK(r.code == 2);
  CHECK(r.err.starts_with(bad + ":2:"));
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  const auto dup = dir.file("dup.csv", "source,target,weight\na0,a1,1\na0,a1,2\n").string();
  r = run({"compute", "--edges", dup, "--groups", groups, "--out", (dir / "o.csv").string()});
  CHECK(r.code == 2);
  CHECK(r.err.starts_with(dup + ":"));

  const auto edges = dir.file("e.csv", kToyEdges).string();
  const auto partial = dir.file("p.csv", "node,group\na0,A\n").string();
  r = run({"compute", "--edges", edges, "--groups", partial, "--out", (dir / "o.csv").string()});
  CHECK(r.code == 2);
  CHECK(r.err.starts_with(partial + ":"));
  CHECK(r.err.find("missing nodes") != std::string::npos);

  r = run({"compute", "--edges", (dir / "nope.csv").string(), "--groups", groups, "--out",
           (dir / "o.csv").string()});
  CHECK(r.code == 2);
}

TEST_CASE("matrix input") {
  TempDir dir;
  const auto m1 = dir.file("m1.csv", ",A,B,C\nA,7,2,0\nB,0,0,3\nC,1,0,0\n").string();
  const auto m2 = dir.file("m2.csv", ",A,B,C\nA,0,1,0\nB,0,0,0\nC,0,0,0\n").string();
  const auto groups = dir.file("g.csv", "node,group\nA,X\nB,Y\nC,X\n").string();
  const auto out = (dir / "p.csv").string();
  CHECK(run({"compute", "--matrix", m1, "--matrix", m2, "--aggregate", "--drop-self-loops",
             "--groups", groups, "--out", out})
            .code == 0);
  const auto p = io::read_profile(out);
  // A -> B -> C: broker B (Y) between two X nodes.
  CHECK(p.find("B")->counts[role_index(Role::Itinerant)] == 1);
  CHECK(run({"compute", "--matrix", m1, "--matrix", m2, "--groups", groups, "--out", out}).code ==
        1);
  CHECK(run({"compute", "--matrix", m1, "--groups", groups, "--out", out}).code == 2);
}

}

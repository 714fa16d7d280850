#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "mwc/mwc.h"

using json = nlohmann::json;

namespace {

struct G {
  mwc_graph* g = nullptr;
  ~G() { mwc_graph_free(g); }
};

struct R {
  mwc_run* r = nullptr;
  ~R() { mwc_run_free(r); }
};

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(mwc_version()).size() > 0);
  CHECK(std::string(mwc_status_name(MWC_OK)) == "ok");
  CHECK(std::string(mwc_status_name(MWC_CONGESTION)) == "congestion");
  CHECK(std::string(mwc_status_name(static_cast<mwc_status>(99))) == "unknown");
}

TEST_CASE("graph handles") {
  const int32_t u[] = {0, 1, 2};
  const int32_t v[] = {1, 2, 0};
  const int64_t w[] = {2, 3, 4};
  G g;
  REQUIRE(mwc_graph_create(3, 1, 3, u, v, w, &g.g) == MWC_OK);
  CHECK(mwc_graph_n(g.g) == 3);
  CHECK(mwc_graph_m(g.g) == 3);
  CHECK(mwc_graph_directed(g.g) == 1);
  CHECK(mwc_graph_max_weight(g.g) == 4);
  int32_t a, b;
  int64_t x;
  REQUIRE(mwc_graph_edge(g.g, 1, &a, &b, &x) == MWC_OK);
  CHECK(x >= 2);
  CHECK(mwc_graph_edge(g.g, 3, &a, &b, &x) == MWC_INVALID_ARGUMENT);

  double val = 0;
  int32_t cyc[8], len = 0;
  REQUIRE(mwc_oracle_mwc(g.g, &val, cyc, 8, &len) == MWC_OK);
  CHECK(val == 9);
  CHECK(len == 3);
  REQUIRE(mwc_oracle_hop_mwc(g.g, 8, &val) == MWC_OK);
  CHECK(std::isinf(val));

  const std::string path = "capi_roundtrip.txt";
  REQUIRE(mwc_graph_save(g.g, path.c_str()) == MWC_OK);
  G h;
  REQUIRE(mwc_graph_load(path.c_str(), &h.g) == MWC_OK);
  CHECK(mwc_graph_m(h.g) == 3);
  std::remove(path.c_str());

  G bad;
  CHECK(mwc_graph_parse("3 directed\n0 0 1\n", &bad.g) != MWC_OK);
  CHECK(std::string(mwc_last_error()).find("self-loop") != std::string::npos);
  CHECK(mwc_graph_load("/nonexistent/graph.txt", &bad.g) == MWC_IO);
  CHECK(mwc_graph_create(3, 0, 1, nullptr, nullptr, nullptr, &bad.g) == MWC_INVALID_ARGUMENT);
}

TEST_CASE("generator specs") {
  G g;
  REQUIRE(mwc_graph_generate("family=planted n=40 len=5 directed=1 seed=3", &g.g) == MWC_OK);
  std::vector<int32_t> wit(mwc_graph_witness(g.g, nullptr, 0));
  REQUIRE(wit.size() == 5);
  mwc_graph_witness(g.g, wit.data(), static_cast<int32_t>(wit.size()));
  double val = 0;
  REQUIRE(mwc_oracle_mwc(g.g, &val, nullptr, 0, nullptr) == MWC_OK);
  CHECK(val == 5);
  G f;
  REQUIRE(mwc_graph_generate("family=gadget kind=fig1 Sa=0001 Sb=0001 p=2", &f.g) == MWC_OK);
  REQUIRE(mwc_oracle_mwc(f.g, &val, nullptr, 0, nullptr) == MWC_OK);
  CHECK(!std::isinf(val));
  G bad;
  CHECK(mwc_graph_generate("family=nope", &bad.g) == MWC_INVALID_ARGUMENT);
  CHECK(mwc_graph_generate("n=abc", &bad.g) == MWC_PARSE);
  CHECK(mwc_graph_generate("garbage", &bad.g) == MWC_PARSE);
  int32_t D = 0;
  G p;
  REQUIRE(mwc_graph_generate("family=path n=5", &p.g) == MWC_OK);
  REQUIRE(mwc_graph_diameter(p.g, &D) == MWC_OK);
  CHECK(D == 4);
}

TEST_CASE("algorithm runs") {
  mwc_params p;
  mwc_params_init(&p);
  p.verify = 1;
  SUBCASE("girth on C5") {
    G g;
    REQUIRE(mwc_graph_generate("family=cycle n=5", &g.g) == MWC_OK);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      p.seed = seed;
      R r;
      REQUIRE(mwc_run_algorithm(g.g, "girth", &p, &r.r) == MWC_OK);
      CHECK(mwc_run_value(r.r) == 5);
      CHECK(mwc_run_violated(r.r) == 0);
      CHECK(mwc_run_max_words(r.r) <= 1);
      json j = json::parse(mwc_run_json(r.r));
      CHECK(j["ratio"] == 1.0);
      CHECK(j["oracle"] == 5.0);
      CHECK(j.contains("case"));
    }
  }
  SUBCASE("replay gives the same hash") {
    G g;
    REQUIRE(mwc_graph_generate("family=planted n=60 len=6 directed=1 seed=9", &g.g) == MWC_OK);
    p.seed = 4;
    R a, b;
    REQUIRE(mwc_run_algorithm(g.g, "mwc-dir", &p, &a.r) == MWC_OK);
    REQUIRE(mwc_run_algorithm(g.g, "mwc-dir", &p, &b.r) == MWC_OK);
    CHECK(mwc_run_hash(a.r) == mwc_run_hash(b.r));
    CHECK(mwc_run_rounds(a.r) == mwc_run_rounds(b.r));
    CHECK(mwc_run_value(a.r) >= 6);
    CHECK(mwc_run_value(a.r) <= 12);
    CHECK(mwc_run_violated(a.r) == 0);
  }
  SUBCASE("weighted and sssp") {
    G g;
    REQUIRE(mwc_graph_generate("family=random n=50 avg=3 W=9 seed=2", &g.g) == MWC_OK);
    p.eps = 0.5;
    R r;
    REQUIRE(mwc_run_algorithm(g.g, "mwc-wt", &p, &r.r) == MWC_OK);
    CHECK(mwc_run_violated(r.r) == 0);
    json j = json::parse(mwc_run_json(r.r));
    CHECK(j["per_level_M"].is_array());
    G d;
    REQUIRE(mwc_graph_generate("family=random n=64 avg=3 directed=1 seed=2", &d.g) == MWC_OK);
    p.num_sources = 8;
    R s;
    REQUIRE(mwc_run_algorithm(d.g, "bfs-exact", &p, &s.r) == MWC_OK);
    CHECK(mwc_run_violated(s.r) == 0);
    CHECK(mwc_run_value(s.r) == 1.0);
  }
  SUBCASE("disconnected input runs per component") {
    const int32_t u[] = {0, 1, 2, 3, 4, 5, 6};
    const int32_t v[] = {1, 2, 0, 4, 5, 6, 3};
    G g;
    REQUIRE(mwc_graph_create(8, 0, 7, u, v, nullptr, &g.g) == MWC_OK);
    R r;
    REQUIRE(mwc_run_algorithm(g.g, "girth", &p, &r.r) == MWC_OK);
    CHECK(mwc_run_value(r.r) == 3);
    CHECK(json::parse(mwc_run_json(r.r))["components"].size() == 2);
  }
  SUBCASE("named errors") {
    G g;
    REQUIRE(mwc_graph_generate("family=cycle n=6", &g.g) == MWC_OK);
    R r;
    CHECK(mwc_run_algorithm(g.g, "mwc-dir", &p, &r.r) == MWC_INVALID_ARGUMENT);
    CHECK(std::string(mwc_last_error()).find("directed") != std::string::npos);
    CHECK(mwc_run_algorithm(g.g, "nope", &p, &r.r) == MWC_INVALID_ARGUMENT);
    CHECK(mwc_run_algorithm(nullptr, "girth", &p, &r.r) == MWC_INVALID_ARGUMENT);
    CHECK(r.r == nullptr);
  }
}

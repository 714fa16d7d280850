// Batch runner over the mwc C API.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mwc/mwc.h"

using json = nlohmann::ordered_json;

namespace {

struct Failure : std::runtime_error {
  mwc_status status;
  Failure(mwc_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

void check(mwc_status s) {
  if (s != MWC_OK) throw Failure(s, mwc_last_error());
}

struct GraphPtr {
  mwc_graph* g = nullptr;
  GraphPtr() = default;
  GraphPtr(const GraphPtr&) = delete;
  GraphPtr& operator=(const GraphPtr&) = delete;
  ~GraphPtr() { mwc_graph_free(g); }
};

struct RunPtr {
  mwc_run* r = nullptr;
  RunPtr() = default;
  RunPtr(const RunPtr&) = delete;
  RunPtr& operator=(const RunPtr&) = delete;
  ~RunPtr() { mwc_run_free(r); }
};

struct Opts {
  std::string config, input, spec, out, seeds, algo, sizes = "256,1024,4096";
  std::string sources = "1", mode = "approx", provider = "exact-shortcut";
  double eps = 0.25, sample_factor = 0;
  int64_t phase_cap_factor = 0, cap_override = 0, hop_bound = 0, W = 0;
  bool witness = false, verify = false, tables = false, directed = false;
};

// Flat key=value lines; keys are long option names. Command-line flags win.
void apply_config(CLI::App* app, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw Failure(MWC_IO, "cannot open config " + path);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line.erase(0, line.find_first_not_of(" \t"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Failure(MWC_PARSE, path + ":" + std::to_string(no) + ": expected key=value");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    CLI::Option* opt = nullptr;
    try {
      opt = app->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw Failure(MWC_PARSE, path + ":" + std::to_string(no) + ": unknown key " + key);
    }
    if (opt->count() > 0) continue;
    opt->add_result(val);
    opt->run_callback();
  }
}

std::vector<uint64_t> parse_seeds(const std::string& text) {
  std::vector<uint64_t> out;
  std::string s = text;
  if (s.empty()) {
    const char* env = std::getenv("MWC_SEED");
    s = env && *env ? env : "1";
  }
  std::stringstream ss(s);
  std::string part;
  try {
    while (std::getline(ss, part, ',')) {
      const auto dots = part.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoull(part));
      } else {
        const uint64_t a = std::stoull(part.substr(0, dots)), b = std::stoull(part.substr(dots + 2));
        if (b < a) throw std::invalid_argument(part);
        for (uint64_t x = a; x <= b; ++x) out.push_back(x);
      }
    }
  } catch (const std::exception&) {
    throw Failure(MWC_PARSE, "bad seed list: " + s);
  }
  if (out.empty()) throw Failure(MWC_INVALID_ARGUMENT, "seed list is empty");
  return out;
}

std::vector<int32_t> parse_ints(const std::string& text, const std::string& what) {
  std::vector<int32_t> out;
  std::stringstream ss(text);
  std::string part;
  try {
    while (std::getline(ss, part, ',')) out.push_back(std::stoi(part));
  } catch (const std::exception&) {
    throw Failure(MWC_PARSE, "bad " + what + ": " + text);
  }
  return out;
}

std::string with_defaults(std::string spec, const Opts& o) {
  if (o.directed && spec.find("directed=") == std::string::npos) spec += " directed=1";
  if (o.W > 0 && spec.find("W=") == std::string::npos) spec += " W=" + std::to_string(o.W);
  return spec;
}

void load(GraphPtr& g, const Opts& o) {
  if (!o.input.empty() && !o.spec.empty()) throw Failure(MWC_INVALID_ARGUMENT, "give either --input or --spec");
  if (!o.input.empty()) check(mwc_graph_load(o.input.c_str(), &g.g));
  else if (!o.spec.empty()) check(mwc_graph_generate(with_defaults(o.spec, o).c_str(), &g.g));
  else throw Failure(MWC_INVALID_ARGUMENT, "no graph: give --input or --spec");
}

mwc_params params_of(const Opts& o, uint64_t seed, const std::vector<int32_t>& srcs, int32_t k) {
  mwc_params p;
  mwc_params_init(&p);
  p.seed = seed;
  p.eps = o.eps;
  p.sample_factor = o.sample_factor;
  p.phase_cap_factor = o.phase_cap_factor;
  p.cap_override = o.cap_override;
  p.hop_bound = o.hop_bound;
  p.witness = o.witness;
  p.verify = o.verify;
  p.tables = o.tables;
  p.provider = o.provider == "null" ? 1 : 0;
  if (!srcs.empty()) {
    p.sources = srcs.data();
    p.num_sources = static_cast<int32_t>(srcs.size());
  } else {
    p.num_sources = k;
  }
  return p;
}

std::string algo_of(const Opts& o, const std::string& sub) {
  if (sub == "sssp") {
    if (o.mode == "exact") return "bfs-exact";
    if (o.mode == "approx") return "sssp-approx";
    if (o.mode == "small-k") return "sssp-small-k";
    throw Failure(MWC_INVALID_ARGUMENT, "unknown sssp mode: " + o.mode);
  }
  if (sub == "mwc-dir" || sub == "girth" || sub == "mwc-wt") return sub;
  if (o.algo.empty()) throw Failure(MWC_INVALID_ARGUMENT, "--algo is required");
  return o.algo;
}

json config_json(const Opts& o, const std::string& algo, const std::vector<uint64_t>& seeds) {
  return {{"algorithm", algo},     {"input", o.input},        {"spec", o.spec},
          {"seeds", seeds},        {"eps", o.eps},            {"sample_factor", o.sample_factor},
          {"phase_cap_factor", o.phase_cap_factor}, {"cap_override", o.cap_override},
          {"hop_bound", o.hop_bound}, {"witness", o.witness}, {"verify", o.verify},
          {"sources", o.sources},  {"provider", o.provider}};
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Failure(MWC_IO, "cannot write " + path);
  out << text << "\n";
}

int cmd_gen(const Opts& o) {
  if (o.out.empty()) throw Failure(MWC_INVALID_ARGUMENT, "--out is required");
  if (o.spec.empty()) throw Failure(MWC_INVALID_ARGUMENT, "--spec is required");
  GraphPtr g;
  check(mwc_graph_generate(with_defaults(o.spec, o).c_str(), &g.g));
  check(mwc_graph_save(g.g, o.out.c_str()));
  const int32_t len = mwc_graph_witness(g.g, nullptr, 0);
  if (len > 0) {
    std::vector<int32_t> w(len);
    mwc_graph_witness(g.g, w.data(), len);
    std::ofstream side(o.out + ".witness");
    for (int32_t i = 0; i < len; ++i) side << (i ? " " : "") << w[i];
    side << "\n";
  }
  std::cerr << "wrote " << o.out << " (n=" << mwc_graph_n(g.g) << ", m=" << mwc_graph_m(g.g) << ")\n";
  return 0;
}

int cmd_run(const Opts& o, const std::string& sub) {
  const std::string algo = algo_of(o, sub);
  const auto seeds = parse_seeds(o.seeds);
  GraphPtr g;
  load(g, o);
  std::vector<int32_t> srcs;
  int32_t k = 1;
  if (o.sources.find(',') != std::string::npos) srcs = parse_ints(o.sources, "source list");
  else k = parse_ints(o.sources, "source count").at(0);

  json records = json::array();
  std::map<std::string, int> cases;
  int violations = 0;
  double worst = 1;
  for (uint64_t seed : seeds) {
    const mwc_params p = params_of(o, seed, srcs, k);
    RunPtr r;
    check(mwc_run_algorithm(g.g, algo.c_str(), &p, &r.r));
    json rec = json::parse(mwc_run_json(r.r));
    if (rec.contains("case")) ++cases[rec["case"].is_string() ? rec["case"].get<std::string>() : std::to_string(rec["case"].get<int>())];
    if (rec.contains("ratio") && rec["ratio"].is_number()) worst = std::max(worst, rec["ratio"].get<double>());
    violations += mwc_run_violated(r.r);
    records.push_back(std::move(rec));
  }
  json doc;
  doc["version"] = mwc_version();
  doc["config"] = config_json(o, algo, seeds);
  doc["records"] = records;
  doc["summary"] = {{"runs", seeds.size()}, {"violations", violations}, {"max_ratio", worst}, {"case_histogram", cases}};
  emit(o.out, doc.dump(2));
  if (o.verify && violations > 0) {
    std::cerr << "verify: " << violations << " violating seed(s)\n";
    return 1;
  }
  return 0;
}

int cmd_sweep(const Opts& o) {
  const std::string algo = algo_of(o, "sweep");
  const auto seeds = parse_seeds(o.seeds);
  std::vector<int32_t> sizes = parse_ints(o.sizes, "size list");
  std::set<int32_t> distinct(sizes.begin(), sizes.end());
  if (distinct.size() < 3) throw Failure(MWC_INVALID_ARGUMENT, "need >= 3 distinct sizes");
  std::string family = o.spec.empty() ? "family=random avg=3" : o.spec;
  Opts go = o;
  if (algo == "mwc-dir" || algo == "bfs-exact") go.directed = true;
  if (algo == "mwc-wt" && go.W == 0) go.W = 16;
  family = with_defaults(family, go);

  std::vector<double> xs, ys;
  std::vector<std::vector<std::string>> rows;
  for (int32_t n : distinct) {
    std::vector<double> rounds;
    int32_t D = 0;
    for (uint64_t seed : seeds) {
      GraphPtr g;
      check(mwc_graph_generate((family + " n=" + std::to_string(n) + " seed=" + std::to_string(seed)).c_str(), &g.g));
      check(mwc_graph_diameter(g.g, &D));
      const int32_t k = std::max(1, static_cast<int32_t>(std::lround(std::cbrt(static_cast<double>(n)))));
      const mwc_params p = params_of(o, seed, {}, k);
      RunPtr r;
      check(mwc_run_algorithm(g.g, algo.c_str(), &p, &r.r));
      rounds.push_back(static_cast<double>(mwc_run_rounds(r.r)));
    }
    std::sort(rounds.begin(), rounds.end());
    const double med = rounds.size() % 2 ? rounds[rounds.size() / 2]
                                         : (rounds[rounds.size() / 2 - 1] + rounds[rounds.size() / 2]) / 2;
    const double lg = std::max(1.0, std::log2(static_cast<double>(n)));
    const double norm = med / (lg * lg * lg);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(norm));
    rows.push_back({std::to_string(n), std::to_string(D), std::to_string(med), std::to_string(norm)});
  }
  // Least squares slope of log(rounds / log^3 n) against log n.
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) sx += xs[i], sy += ys[i], sxx += xs[i] * xs[i], sxy += xs[i] * ys[i];
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / k;
  std::ostringstream csv;
  csv << "n,D,median_rounds,normalized_rounds,exponent,residual\n";
  for (size_t i = 0; i < rows.size(); ++i)
    csv << rows[i][0] << "," << rows[i][1] << "," << rows[i][2] << "," << rows[i][3] << "," << slope << ","
        << ys[i] - (icpt + slope * xs[i]) << "\n";
  emit(o.out, csv.str());
  return 0;
}

void common(CLI::App* c, Opts& o, bool graph = true) {
  c->add_option("--config", o.config, "flat key=value file");
  if (graph) {
    c->add_option("--input", o.input, "edge-list file");
    c->add_option("--spec", o.spec, "generator spec, e.g. \"family=random n=100 avg=3\"");
    c->add_flag("--directed", o.directed, "generate a directed graph");
    c->add_option("--W", o.W, "weight bound for generated graphs");
  }
  c->add_option("--out,-o", o.out, "output path (default stdout)");
  c->add_option("--seeds", o.seeds, "seed list, e.g. 1,2,5 or 1..10 (default $MWC_SEED or 1)");
  c->add_option("--eps", o.eps, "approximation parameter");
  c->add_option("--sample-factor", o.sample_factor, "sampling constant override");
  c->add_flag("--verify", o.verify, "compare with the exact oracle");
}

void algo_flags(CLI::App* c, Opts& o) {
  c->add_option("--phase-cap-factor", o.phase_cap_factor, "per-phase message cap constant");
  c->add_option("--cap-override", o.cap_override, "fixed per-phase cap");
  c->add_option("--hop-bound", o.hop_bound, "hop-limited mode on a weighted host");
  c->add_flag("--witness", o.witness, "report a witness walk");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed minimum weight cycle simulator"};
  app.require_subcommand(1);
  Opts o;
  auto* gen = app.add_subcommand("gen", "write a generated graph");
  common(gen, o);
  auto* run = app.add_subcommand("run", "run an algorithm over seeds");
  common(run, o);
  algo_flags(run, o);
  run->add_option("--algo", o.algo, "bfs-exact | sssp-approx | sssp-small-k | mwc-dir | girth | mwc-wt");
  run->add_option("--sources", o.sources, "source count or comma list");
  auto* verify = app.add_subcommand("verify", "run with oracle checks; nonzero exit on any violation");
  common(verify, o);
  algo_flags(verify, o);
  verify->add_option("--algo", o.algo, "algorithm id");
  verify->add_option("--sources", o.sources, "source count or comma list");
  auto* sweep = app.add_subcommand("sweep", "round growth over sizes (CSV)");
  common(sweep, o);
  algo_flags(sweep, o);
  sweep->add_option("--algo", o.algo, "algorithm id");
  sweep->add_option("--sizes", o.sizes, "comma list of n");
  auto* sssp = app.add_subcommand("sssp", "k-source shortest paths");
  common(sssp, o);
  sssp->add_option("--sources", o.sources, "source count or comma list");
  sssp->add_option("--mode", o.mode, "exact | approx | small-k");
  sssp->add_option("--provider", o.provider, "exact-shortcut | null");
  sssp->add_option("--phase-cap-factor", o.phase_cap_factor, "per-phase message cap constant");
  sssp->add_flag("--tables", o.tables, "include distance tables");
  auto* dir = app.add_subcommand("mwc-dir", "directed unweighted 2-approximation");
  common(dir, o);
  algo_flags(dir, o);
  auto* girth = app.add_subcommand("girth", "undirected (2 - 1/g)-approximate girth");
  common(girth, o);
  girth->add_option("--hop-bound", o.hop_bound, "hop-limited mode on a weighted host");
  girth->add_flag("--witness", o.witness, "report a witness walk");
  auto* wt = app.add_subcommand("mwc-wt", "weighted (2 + 2 eps)-approximation");
  common(wt, o);

  CLI11_PARSE(app, argc, argv);
  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config(sub, o.config);
    const std::string name = sub->get_name();
    if (name == "gen") return cmd_gen(o);
    if (name == "sweep") return cmd_sweep(o);
    if (name == "verify") o.verify = true;
    return cmd_run(o, name);
  } catch (const Failure& f) {
    std::cerr << "error (" << mwc_status_name(f.status) << "): " << f.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

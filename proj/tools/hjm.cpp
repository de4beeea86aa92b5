// hjm: command-line front end for the search, construction and verification
// library.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "hjm/certificate.hpp"
#include "hjm/construct.hpp"
#include "hjm/optimize.hpp"
#include "hjm/search.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace hjm;

namespace {

constexpr const char* kVersion = "1.0";

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kBudget = 3 };

struct RunConfig {
  std::string command;
  int n = 3;
  int k = 3;
  std::string pred = "moser";
  std::uint64_t seed = 1;
  double budget = 0;  // seconds, 0 = none
  std::string out = ".";
  std::string format = "csv";
  int verbose = 0;
  int jobs = 1;
};

RunConfig cfg;
std::vector<std::string> written;

std::atomic<bool> interrupted{false};
void on_signal(int) { interrupted = true; }

fs::path out_dir() {
  fs::path d = cfg.out;
  if (const char* env = std::getenv("HJM_DATA_DIR")) d = env;
  fs::create_directories(d);
  return d;
}

void log(const std::string& msg) {
  if (cfg.verbose) std::cerr << msg << '\n';
}

fs::path emit(const std::string& name, const std::string& text) {
  fs::path p = out_dir() / name;
  fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  require(f.good(), ErrorCode::kInvalidArgument, "cannot write " + p.string());
  f << text;
  written.push_back(name);
  log("wrote " + p.string());
  return p;
}

fs::path emit_cert(const std::string& name, Certificate c) {
  c.provenance.seed = cfg.seed;
  c.provenance.version = kVersion;
  return emit(name, to_json(c));
}

// Records the command, seed and artifacts of the run.
void emit_manifest(const std::string& stem) {
  json j;
  j["command"] = cfg.command;
  j["seed"] = cfg.seed;
  j["version"] = kVersion;
  j["artifacts"] = written;
  emit(stem + ".manifest.json", j.dump(2) + "\n");
}

Predicate pred() { return parse_predicate(cfg.pred); }

CertKind kind_of(Predicate p) {
  switch (p) {
    case Predicate::kLineFree:
      return CertKind::kLineFree;
    case Predicate::kCapSet:
      return CertKind::kCapSet;
    default:
      return CertKind::kMoser;
  }
}

Provenance prov(const std::string& gen) { return {gen, cfg.seed, kVersion}; }

std::string frontier_csv(const ParetoFrontier& f, const std::string& cert_prefix, bool certs) {
  std::ostringstream out;
  for (int i = 0; i <= f.n(); ++i) out << "a" << i << ',';
  out << "witness\n";
  std::size_t idx = 0;
  for (const auto& e : f.entries()) {
    const std::string name = cert_prefix + std::to_string(idx++) + ".json";
    for (auto v : e.stats.a) out << v << ',';
    out << (certs ? name : "") << '\n';
    if (certs) emit_cert(name, make_certificate(e.witness, kind_of(pred()), prov("pareto")));
  }
  return out.str();
}

std::string frontier_json(const ParetoFrontier& f) {
  json j = json::array();
  for (const auto& e : f.entries()) j.push_back({{"stats", e.stats.a}, {"witness", e.witness.strings()}});
  return j.dump(2) + "\n";
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> v;
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, ',');) {
    try {
      v.push_back(std::stoll(t));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad integer list '" + s + "'");
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// verify

int verify_frontier_csv(const fs::path& path) {
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  const bool has_witness = header.find("witness") != std::string::npos;
  if (header.rfind("a0", 0) != 0) {
    std::cout << "table re-read: " << path.string() << '\n';
    return kOk;
  }
  std::vector<StatVector> rows;
  int bad = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string t; std::getline(ss, t, ',');) cells.push_back(t);
    if (has_witness && line.back() == ',') cells.emplace_back();
    std::vector<std::int64_t> a;
    const std::size_t ncols = has_witness ? cells.size() - 1 : cells.size();
    for (std::size_t i = 0; i < ncols; ++i) a.push_back(std::stoll(cells[i]));
    StatVector v(static_cast<int>(a.size()) - 1, a);
    rows.push_back(v);
    if (has_witness && !cells.back().empty()) {
      auto c = read_certificate((path.parent_path() / cells.back()).string());
      auto r = verify_certificate(c);
      if (!r.pass || !(statistics(c.set()) == v)) {
        std::cout << "FAIL row " << v.str() << ": " << r.str() << '\n';
        ++bad;
      }
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (i != j && rows[i].dominates(rows[j])) {
        std::cout << "FAIL " << rows[i].str() << " dominates " << rows[j].str() << '\n';
        ++bad;
      }
  std::cout << (bad ? "FAIL " : "PASS ") << rows.size() << " rows\n";
  return bad ? kMismatch : kOk;
}

int verify_checkpoint(const fs::path& path) {
  auto s = read_checkpoint(path.string());
  auto bad = s.frontier.audit(Predicate::kMoser);
  for (const auto& b : bad) std::cout << "FAIL " << b << '\n';
  std::cout << (bad.empty() ? "PASS" : "FAIL") << " shard " << s.shard << ' '
            << (s.complete ? "complete" : "partial") << ' ' << s.frontier.size() << " entries\n";
  return bad.empty() ? kOk : kMismatch;
}

int verify_path(const fs::path& path);

int verify_manifest(const fs::path& path, const json& j) {
  int rc = kOk;
  for (const auto& a : j["artifacts"]) {
    const fs::path p = path.parent_path() / a.get<std::string>();
    if (!fs::exists(p)) {
      std::cout << "FAIL missing " << p.string() << '\n';
      rc = kMismatch;
      continue;
    }
    if (p.extension() == ".json" || p.extension() == ".csv" || p.extension() == ".txt")
      rc = std::max(rc, verify_path(p));
  }
  return rc;
}

int verify_path(const fs::path& path) {
  require(fs::exists(path), ErrorCode::kInvalidArgument, "no such file: " + path.string());
  if (path.extension() == ".csv") return verify_frontier_csv(path);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.rfind("shard ", 0) == 0) return verify_checkpoint(path);
  if (path.extension() == ".json" && text.find("\"artifacts\"") != std::string::npos) {
    json j;
    try {
      j = json::parse(text);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kMalformedInput, e.what());
    }
    if (j.contains("artifacts")) return verify_manifest(path, j);
  }
  auto c = certificate_from_json(text);
  auto r = verify_certificate(c);
  std::cout << r.str();
  if (!r.str().empty() && r.str().back() != '\n') std::cout << '\n';
  return r.pass ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------
// pareto4

struct Pareto4Options {
  int shard = -1;
  bool all = false;
  int min_corners = 0;
  bool resume = false;
  double every = 30;
};

fs::path shard_path(int s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "shard_%03d.txt", s);
  return out_dir() / "pareto4" / buf;
}

int run_pareto4(const Pareto4Options& o) {
  Pareto4Search search;
  std::vector<int> todo;
  if (o.shard >= 0) {
    require(static_cast<std::size_t>(o.shard) < search.shards(), ErrorCode::kInvalidArgument,
            "shard id out of range (0.." + std::to_string(search.shards() - 1) + ")");
    todo.push_back(o.shard);
  } else if (o.all) {
    todo = search.shards_with_corners(3);
  } else {
    require(o.min_corners >= 3, ErrorCode::kInvalidArgument,
            "pareto4 needs --shard, --all or --min-corners (>= 3)");
    todo = search.shards_with_corners(o.min_corners);
  }
  fs::create_directories(out_dir() / "pareto4");
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  const auto start = std::chrono::steady_clock::now();
  auto over = [&] {
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return interrupted.load() || (cfg.budget > 0 && t > cfg.budget);
  };

  std::vector<ShardState> done(todo.size());
  std::vector<char> ok(todo.size(), 0);
  std::mutex io;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= todo.size()) return;
      const int s = todo[i];
      const fs::path cp = shard_path(s);
      std::optional<ShardState> prev;
      if (o.resume && fs::exists(cp)) prev = read_checkpoint(cp.string());
      if (prev && prev->complete) {
        done[i] = *prev;
        ok[i] = 1;
        continue;
      }
      if (over()) continue;
      auto last_write = std::chrono::steady_clock::now();
      try {
        done[i] = search.run(
            s, prev ? &*prev : nullptr,
            [&](const ShardState& st) {
              const bool stop = over();
              const double since =
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - last_write).count();
              if (st.complete || stop || since >= o.every) {
                write_checkpoint(cp.string(), st);
                last_write = std::chrono::steady_clock::now();
              }
              if (stop && !st.complete) throw Error(ErrorCode::kBudgetExceeded, "pareto4 stopped");
            },
            1.0);
        ok[i] = 1;
        std::lock_guard<std::mutex> lock(io);
        log("shard " + std::to_string(s) + " done: " + std::to_string(done[i].frontier.size()) +
            " entries, memo " + std::to_string(done[i].memo_hits) + "/" +
            std::to_string(done[i].memo_misses));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kBudgetExceeded) throw;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(1, cfg.jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<ShardState> complete;
  for (std::size_t i = 0; i < todo.size(); ++i)
    if (ok[i]) complete.push_back(done[i]);
  written.clear();
  for (std::size_t i = 0; i < todo.size(); ++i)
    if (fs::exists(shard_path(todo[i]))) written.push_back((fs::path("pareto4") / shard_path(todo[i]).filename()).string());
  if (complete.size() < todo.size()) {
    std::cout << complete.size() << "/" << todo.size()
              << " shards complete; checkpoints written, rerun with --resume\n";
    emit_manifest("pareto4");
    return kBudget;
  }

  auto f = merge_shards(complete);
  const int a0 = o.shard >= 0 ? static_cast<int>(search.rep(o.shard).size())
                              : (o.all ? 0 : o.min_corners);
  // Rows with a >= a0 are exact when every shard with |R| >= a0 has run.
  auto rows = o.shard >= 0 ? f.vectors() : rows_from(f, a0);
  std::ostringstream csv;
  write_stat_csv(csv, rows);
  const std::string stem = o.shard >= 0 ? "pareto4_shard" + std::to_string(o.shard) : "pareto4_a" + std::to_string(a0);
  emit(stem + (cfg.format == "json" ? ".json" : ".csv"), cfg.format == "json" ? frontier_json(f) : csv.str());

  int rc = kOk;
  for (const auto& msg : check_stat_clauses(f)) {
    std::cout << "clause " << msg << '\n';
    rc = kMismatch;
  }
  for (const auto& msg : f.audit(Predicate::kMoser)) {
    std::cout << "audit " << msg << '\n';
    rc = kMismatch;
  }
  for (const auto& v : rows) std::cout << v.str() << '\n';
  if (o.shard < 0) {
    // Compare with the published table; differences are reported only.
    const fs::path pub = fs::path(HJM_SOURCE_DATA) / "pareto4d_published.csv";
    if (fs::exists(pub)) {
      std::set<std::vector<std::int64_t>> have, want;
      for (const auto& v : rows) have.insert(v.a);
      for (const auto& v : read_stat_csv(pub.string()))
        if (v.a[0] >= a0) want.insert(v.a);
      for (const auto& v : want)
        if (!have.count(v)) std::cout << "published only: " << StatVector(4, v).str() << '\n';
      for (const auto& v : have)
        if (!want.count(v)) std::cout << "computed only: " << StatVector(4, v).str() << '\n';
    }
  }
  emit_manifest(stem);
  return rc;
}

// ---------------------------------------------------------------------------
// construct

struct ConstructOptions {
  std::string name;
  int i = -1;
  int j = 0;
  int m = 3;
  std::string type = "1111";
  std::vector<std::string> extra;
};

int run_construct(const ConstructOptions& o) {
  const int n = cfg.n;
  std::optional<PointSet> set;
  std::optional<SimplexSet> simplex;
  CertKind kind = CertKind::kLineFree;
  int sn = n;
  const std::string& name = o.name;
  if (name == "dhj") {
    simplex = b_jn(o.j, n);
    kind = CertKind::kFujimura;
  } else if (name == "trimmed") {
    simplex = trimmed_b0(n);
    kind = CertKind::kFujimura;
  } else if (name == "medium") {
    auto r = medium_construction(o.m);
    simplex = r.b;
    sn = 3 * o.m;
    kind = CertKind::kFujimura;
    std::cout << "removed " << r.removed << " density " << rational_str(r.density) << '\n';
  } else if (name == "circulant") {
    auto r = circulant_construction(n, cfg.k);
    simplex = r.b;
    kind = CertKind::kFujimura;
    std::cout << "det " << r.det << '\n';
  } else if (name == "xyz") {
    set = xyz_set();
  } else if (name == "sphere") {
    set = sphere_lb(n, o.i);
    kind = CertKind::kMoser;
  } else if (name == "semisphere") {
    set = o.i > 0 ? semisphere_lb(n, o.i) : best_semisphere(n);
    kind = CertKind::kMoser;
  } else if (name == "shell") {
    set = (o.extra.empty() ? sphere_shell_lb(n, o.i) : sphere_shell_lb(n, o.i, o.extra)).set;
    kind = CertKind::kMoser;
  } else if (name == "moser-b5" || name == "moser-b10") {
    const bool five = name == "moser-b5";
    sn = five ? 5 : 10;
    set = augment_ab(five ? moser_b5() : moser_b10(), sn, five ? moser_b5_extra() : moser_b10_extra());
    kind = CertKind::kMoser;
  } else if (name == "coding") {
    auto w = coding_witness(n);
    require(w.has_value(), ErrorCode::kBudgetExceeded, "no code found within the search budget");
    set = *w;
    kind = CertKind::kMoser;
  } else if (name == "higher-k") {
    set = higher_k(n, cfg.k);
    kind = CertKind::kMoser;
  } else if (name == "good") {
    require(o.type.size() == 4, ErrorCode::kInvalidArgument, "--type needs four letters");
    set = good_set(o.type[0] - '0', o.type[1] - '0', o.type[2] - '0', o.type[3] - '0');
    kind = CertKind::kMoser;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown construction '" + name + "'");
  }
  const std::string stem = "construct_" + name + "_n" + std::to_string(set ? set->n() : sn);
  Certificate c = set ? make_certificate(*set, kind, prov("construct " + name))
                      : make_simplex_certificate(*simplex, sn, kind, prov("construct " + name));
  auto r = verify_certificate(c);
  if (set)
    std::cout << set->size() << '\n';
  else
    std::cout << *c.weight << '\n';
  emit_cert(stem + ".json", c);
  emit_manifest(stem);
  return r.pass ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------
// optimize

int run_optimize(const std::string& what, const std::string& frontier) {
  if (what == "fujimura" || what == "moser-b") {
    OptOptions opt;
    opt.time_limit = cfg.budget;
    auto r = what == "fujimura" ? max_fujimura(cfg.n, opt) : max_moser_b(cfg.n, opt);
    std::cout << r.weight << (r.exact ? "" : " (not proven optimal, upper bound " + r.upper_bound.get_str() + ")")
              << '\n';
    const std::string stem = "optimize_" + what + "_n" + std::to_string(cfg.n);
    auto c = make_simplex_certificate(r.best, cfg.n, what == "fujimura" ? CertKind::kFujimura : CertKind::kMoserB,
                                      prov("optimize " + what));
    emit_cert(stem + ".json", c);
    emit_manifest(stem);
    return r.exact ? kOk : kBudget;
  }
  if (what == "props-bound") {
    std::cout << props_upper_bound(cfg.n) << '\n';
    return kOk;
  }
  if (what == "lp") {
    const std::string path = frontier.empty() ? std::string(HJM_SOURCE_DATA) + "/pareto4d_published.csv" : frontier;
    std::vector<std::vector<mpq_class>> pts;
    for (const auto& r : read_stat_csv(path)) {
      require(r.n == 4, ErrorCode::kMalformedInput, "lp needs a 4D frontier");
      std::vector<mpq_class> p;
      for (auto v : r.a) p.emplace_back(static_cast<long>(v));
      pts.push_back(p);
    }
    auto q = [](std::initializer_list<long> l) {
      std::vector<mpq_class> v;
      for (long x : l) v.emplace_back(x);
      return v;
    };
    std::vector<LinearConstraint> extra{
        {q({0, 0, 1, 0, 0}), Sense::kLe, 12},
        {q({0, 0, 0, 1, 0}), Sense::kLe, 4},
        {q({0, 0, 0, 0, 1}), Sense::kLe, mpq_class(1, 2)},
        {{0, 0, mpq_class(7, 24), mpq_class(3, 8), 3}, Sense::kLe, 6},
    };
    auto r = lp_max(pts, extra, q({4, 6, 10, 20, 60}));
    require(r.feasible, ErrorCode::kInfeasible, "lp infeasible");
    std::cout << rational_str(r.value);
    std::cout << " at (";
    for (std::size_t i = 0; i < r.x.size(); ++i) std::cout << (i ? "," : "") << rational_str(r.x[i]);
    std::cout << ")\n";
    return kOk;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown optimizer '" + what + "'");
}

// ---------------------------------------------------------------------------
// bounds table

int run_bounds(int max_n, const std::string& kind) {
  std::ostringstream csv;
  json j = json::array();
  csv << "n,value,method\n";
  for (int n = 1; n <= max_n; ++n) {
    std::string value, method;
    if (kind == "dhj") {
      auto r = max_fujimura(n);
      value = r.weight.get_str();
      method = r.exact ? "fujimura" : "fujimura-bound";
    } else if (kind == "moser") {
      if (n <= 3) {
        value = std::to_string(max_set(n, 3, Predicate::kMoser, false).size);
        method = "exhaustive";
      } else if (n == 4) {
        value = std::to_string(moser_max_4d().size);
        method = "slices";
      } else {
        auto r = max_moser_b(n);
        value = r.weight.get_str();
        method = "moser-b";
      }
    } else if (kind == "cap") {
      require(n <= 4, ErrorCode::kBudgetExceeded, "cap table needs --max-n <= 4");
      value = std::to_string(max_set(n, 3, Predicate::kCapSet, false).size);
      method = "exhaustive";
    } else if (kind == "coding") {
      value = std::to_string(coding_bound(n).value);
      method = "coding";
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown table kind '" + kind + "'");
    }
    std::cout << value << '\n';
    csv << n << ',' << value << ',' << method << '\n';
    j.push_back({{"n", n}, {"value", value}, {"method", method}});
  }
  const std::string stem = "bounds_" + kind;
  emit(stem + (cfg.format == "json" ? ".json" : ".csv"), cfg.format == "json" ? j.dump(2) + "\n" : csv.str());
  emit_manifest(stem);
  return kOk;
}

// ---------------------------------------------------------------------------
// orbits

int run_orbits() {
  const Predicate p = pred();
  OrbitCensus c;
  const GroupKind g = cfg.pred == "line-free" ? GroupKind::kCombinatorial : GroupKind::kGeometric;
  if (cfg.n == 3 && cfg.k == 3 && p == Predicate::kMoser) {
    c = moser3_census();
  } else {
    const Shape sh(cfg.n, cfg.k);
    require(sh.cells() <= 16, ErrorCode::kBudgetExceeded, "orbits classify needs k^n <= 16 (or n = 3 Moser)");
    std::vector<PointSet> sets;
    enumerate_all(cfg.n, cfg.k, p, [&](Mask m) { sets.push_back(mask_set(sh, m)); });
    c = classify_orbits(sets, g);
  }
  std::cout << c.sets << " sets, " << c.classes << " classes\n";
  std::ostringstream csv;
  csv << "orbit_size,classes\n";
  for (auto [size, count] : c.histogram) csv << size << ',' << count << '\n';
  std::cout << csv.str();
  const std::string stem = "orbits_" + cfg.pred + "_n" + std::to_string(cfg.n);
  emit(stem + ".csv", csv.str());
  emit_manifest(stem);
  return kOk;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kGroupTooLarge:
    case ErrorCode::kDimensionOverflow:
      return kBudget;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kMalformedInput:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kDegenerateSphere:
      return kUsage;
    default:
      return kMismatch;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density Hales-Jewett and Moser cube toolkit"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "Random seed recorded in every artifact");
  app.add_option("--budget", cfg.budget, "Wall-clock budget in seconds")->check(CLI::NonNegativeNumber);
  app.add_option("-o,--out", cfg.out, "Output directory (HJM_DATA_DIR overrides)");
  app.add_option("--format", cfg.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("-v,--verbose", cfg.verbose, "Verbose progress on stderr");

  auto dims = [](CLI::App* s) {
    s->add_option("-n", cfg.n, "Dimension")->check(CLI::Range(0, 1000));
    s->add_option("-k", cfg.k, "Alphabet size")->check(CLI::Range(1, 64));
    s->add_option("--pred", cfg.pred, "Predicate")->check(CLI::IsMember({"line-free", "moser", "cap-set"}));
  };

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "Re-verify a certificate, table, checkpoint or manifest");
  verify->add_option("path", cert_path)->required();

  auto* search = app.add_subcommand("search", "Exhaustive and heuristic searches");
  search->require_subcommand(1);
  auto* s_max = search->add_subcommand("max", "Largest set");
  auto* s_enum = search->add_subcommand("enumerate", "Count all sets");
  auto* s_par = search->add_subcommand("pareto", "Pareto frontier of statistics");
  auto* s_cnt = search->add_subcommand("count-stats", "Count Moser sets with given statistics");
  auto* s_heu = search->add_subcommand("heuristic", "Randomised local search");
  std::string stats_arg;
  std::uint64_t moves = 1000000;
  for (auto* s : {s_max, s_enum, s_par, s_cnt, s_heu}) dims(s);
  s_cnt->add_option("--stats", stats_arg, "Comma-separated a_0..a_n")->required();
  s_heu->add_option("--moves", moves, "Number of moves");

  Pareto4Options p4;
  auto* pareto4 = app.add_subcommand("pareto4", "Sharded four-dimensional Pareto search");
  pareto4->add_option("--shard", p4.shard, "Single shard id");
  pareto4->add_flag("--all", p4.all, "All shards");
  pareto4->add_option("--min-corners", p4.min_corners, "Shards with at least this many corners");
  pareto4->add_flag("--resume", p4.resume, "Continue from checkpoints");
  pareto4->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 256));
  pareto4->add_option("--every", p4.every, "Checkpoint interval in seconds");

  ConstructOptions co;
  auto* construct = app.add_subcommand("construct", "Lower-bound constructions");
  construct->add_option("name", co.name)->required();
  dims(construct);
  construct->add_option("-i", co.i, "Sphere index");
  construct->add_option("-j", co.j, "Residue for dhj");
  construct->add_option("-m", co.m, "Block count for medium");
  construct->add_option("--type", co.type, "Good set type xyzw");
  construct->add_option("--extra", co.extra, "A' words for shell");

  std::string opt_what, opt_frontier;
  auto* optimize = app.add_subcommand("optimize", "Exact optimisers and LP bounds");
  optimize->add_option("what", opt_what)->required()->check(CLI::IsMember({"fujimura", "moser-b", "lp", "props-bound"}));
  optimize->add_option("-n", cfg.n, "Dimension");
  optimize->add_option("--frontier", opt_frontier, "4D frontier CSV for lp");

  int max_n = 6;
  std::string table_kind = "moser";
  auto* bounds = app.add_subcommand("bounds", "Tables of bounds");
  auto* b_table = bounds->add_subcommand("table", "Emit a table");
  bounds->require_subcommand(1);
  b_table->add_option("--max-n", max_n)->check(CLI::Range(1, 30));
  b_table->add_option("--kind", table_kind)->check(CLI::IsMember({"dhj", "moser", "cap", "coding"}));

  auto* orbits = app.add_subcommand("orbits", "Orbit classification");
  auto* o_classify = orbits->add_subcommand("classify", "Census of sets up to symmetry");
  orbits->require_subcommand(1);
  dims(o_classify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  // The output directory is left out so reruns elsewhere match byte for byte.
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "-o" || a == "--out") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0) continue;
    cfg.command += (cfg.command.empty() ? "" : " ") + a;
  }

  try {
    if (*verify) return verify_path(cert_path);
    if (*s_max) {
      auto r = max_set(cfg.n, cfg.k, pred(), false);
      std::cout << r.size << '\n';
      const std::string stem = "max_" + cfg.pred + "_n" + std::to_string(cfg.n) + "_k" + std::to_string(cfg.k);
      emit_cert(stem + ".json", make_certificate(r.witnesses.front(), kind_of(pred()), prov("search max")));
      emit_manifest(stem);
      return kOk;
    }
    if (*s_enum) {
      std::cout << enumerate_all(cfg.n, cfg.k, pred()) << '\n';
      return kOk;
    }
    if (*s_par) {
      require(cfg.k == 3, ErrorCode::kInvalidArgument, "pareto needs k = 3");
      auto f = pareto(cfg.n, pred());
      const std::string stem = "pareto_" + cfg.pred + "_n" + std::to_string(cfg.n);
      if (cfg.format == "json")
        emit(stem + ".json", frontier_json(f));
      else
        emit(stem + ".csv", frontier_csv(f, stem + "_w", true));
      for (const auto& v : f.vectors()) std::cout << v.str() << '\n';
      std::cout << "extremal:";
      for (const auto& v : f.extremal()) std::cout << ' ' << v.str();
      std::cout << '\n';
      emit_manifest(stem);
      return kOk;
    }
    if (*s_cnt) {
      auto a = parse_ints(stats_arg);
      std::cout << count_by_statistics(StatVector(static_cast<int>(a.size()) - 1, a)) << '\n';
      return kOk;
    }
    if (*s_heu) {
      auto c = heuristic_max(cfg.n, cfg.k, pred(), moves, cfg.seed);
      std::cout << c.set().size() << '\n';
      const std::string stem = "heuristic_" + cfg.pred + "_n" + std::to_string(cfg.n) + "_s" + std::to_string(cfg.seed);
      emit_cert(stem + ".json", c);
      emit_manifest(stem);
      return kOk;
    }
    if (*pareto4) return run_pareto4(p4);
    if (*construct) return run_construct(co);
    if (*optimize) return run_optimize(opt_what, opt_frontier);
    if (*b_table) return run_bounds(max_n, table_kind);
    if (*o_classify) return run_orbits();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

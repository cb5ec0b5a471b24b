#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "racelab/metrics.hpp"
#include "racelab/oracle.hpp"

namespace racelab::cli {

namespace {

std::string races_at(const std::multimap<std::size_t, RaceKind>& by_event, std::size_t index) {
  std::string out;
  auto [lo, hi] = by_event.equal_range(index);
  for (auto it = lo; it != hi; ++it) {
    if (!out.empty()) out += ',';
    out += race_kind_name(it->second);
  }
  return out.empty() ? "none" : out;
}

std::multimap<std::size_t, RaceKind> index_races(const oracle::RaceSet& set) {
  std::multimap<std::size_t, RaceKind> out;
  for (const auto& [index, kind] : set) out.emplace(index, kind);
  return out;
}

/// Expected per-event timestamps and races for one engine.
struct Reference {
  std::vector<VectorClock> stamps;
  std::multimap<std::size_t, RaceKind> races;
};

Reference reference_from_engine(EngineKind kind, const Trace& trace, const EngineConfig& cfg) {
  auto engine = make_engine(kind, cfg);
  Reference ref;
  oracle::RaceSet races;
  for (const Event& ev : trace.events()) {
    for (const RaceReport& r : engine->process(ev)) races.emplace(r.event_index, r.kind);
    ref.stamps.push_back(engine->timestamp(ev.thread));
  }
  ref.races = index_races(races);
  return ref;
}

struct Candidate {
  std::string label;
  EngineKind kind;
  EngineConfig cfg;
  const Trace* trace;
  const Reference* ref;
  std::unique_ptr<Engine> engine;
};

}  // namespace

std::optional<Divergence> diff_engines(const Trace& trace, const DiffOptions& opts) {
  std::vector<bool> all(trace.size(), true);
  const Trace full = trace.with_marks(all);

  const EngineConfig base = EngineConfig::for_trace(trace, opts.mode);
  EngineConfig full_cfg = EngineConfig::for_trace(trace, DetectionMode::SampledOnly);

  Reference sampled_ref;
  Reference full_ref;
  if (trace.size() <= opts.oracle_limit) {
    const oracle::HbMatrix hb = oracle::hb_closure(trace);
    const oracle::Tables tables = oracle::declarative_timestamps(trace, hb);
    sampled_ref.stamps = tables.ct_smp;
    full_ref.stamps = tables.ct_ft;
    const auto scope =
        opts.mode == DetectionMode::Extended ? oracle::RaceScope::FirstAccess : oracle::RaceScope::SampledOnly;
    sampled_ref.races = index_races(oracle::racy_events(trace, hb, scope));
    full_ref.races = index_races(oracle::racy_events(full, hb, oracle::RaceScope::SampledOnly));
  } else {
    sampled_ref = reference_from_engine(EngineKind::Sampling, trace, base);
    full_ref = reference_from_engine(EngineKind::Djitp, full, full_cfg);
  }

  EngineConfig no_opt = base;
  no_opt.local_epoch_opt = false;
  std::vector<Candidate> candidates;
  candidates.push_back({"djitp", EngineKind::Djitp, full_cfg, &full, &full_ref, nullptr});
  candidates.push_back({"sampling", EngineKind::Sampling, base, &trace, &sampled_ref, nullptr});
  candidates.push_back({"uclock", EngineKind::Uclock, base, &trace, &sampled_ref, nullptr});
  candidates.push_back({"orderedlist", EngineKind::OrderedList, base, &trace, &sampled_ref, nullptr});
  candidates.push_back({"orderedlist/no-local-epoch", EngineKind::OrderedList, no_opt, &trace, &sampled_ref, nullptr});
  for (Candidate& c : candidates) c.engine = make_engine(c.kind, c.cfg);

  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (Candidate& c : candidates) {
      const Event& ev = (*c.trace)[i];
      std::multimap<std::size_t, RaceKind> got;
      for (const RaceReport& r : c.engine->process(ev)) got.emplace(r.event_index, r.kind);
      const std::string expected_races = races_at(c.ref->races, ev.index);
      const std::string actual_races = races_at(got, ev.index);
      if (expected_races != actual_races) return Divergence{c.label, "races", ev.index, expected_races, actual_races};
      const VectorClock stamp = c.engine->timestamp(ev.thread);
      if (stamp != c.ref->stamps[i])
        return Divergence{c.label, "timestamp", ev.index, racelab::render(c.ref->stamps[i]), racelab::render(stamp)};
    }
  }
  return std::nullopt;
}

std::string render(const Divergence& d) {
  return "DIVERGENCE engine=" + d.engine + " kind=" + d.what + " event=e" + std::to_string(d.event_index) +
         " expected=" + d.expected + " actual=" + d.actual;
}

namespace {

struct GenArgs {
  GenConfig cfg;
  std::uint64_t seed = 1;
};

void add_gen_options(CLI::App& cmd, GenArgs& g) {
  cmd.add_option("--threads", g.cfg.threads, "Number of threads")->check(CLI::PositiveNumber);
  cmd.add_option("--locks", g.cfg.locks, "Number of locks")->check(CLI::PositiveNumber);
  cmd.add_option("--vars", g.cfg.vars, "Number of variables")->check(CLI::PositiveNumber);
  cmd.add_option("--events", g.cfg.events, "Trace length")->check(CLI::PositiveNumber);
  cmd.add_option("--p-sync", g.cfg.p_sync, "Probability of a synchronization step")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--contention", g.cfg.contention, "Probability of reusing the last released lock")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--accesses-per-cs", g.cfg.accesses_per_cs, "Mean accesses per critical section")
      ->check(CLI::NonNegativeNumber);
}

DetectionMode parse_mode(const std::string& s) {
  return s == "extended" ? DetectionMode::Extended : DetectionMode::SampledOnly;
}

SamplingPolicy policy_for(const std::optional<double>& rate, std::uint64_t seed) {
  return rate ? SamplingPolicy::bernoulli(*rate, seed) : SamplingPolicy::pre_marked();
}

std::string trace_label(const std::string& path) { return std::filesystem::path(path).filename().string(); }

/// Writes to the named file, or to `fallback` when the name is empty or "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      out_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary);
    if (!file_) throw std::runtime_error("cannot write '" + path + "'");
    out_ = &file_;
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

int cmd_gen(const GenArgs& g, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Trace trace = generate_trace(g.cfg, g.seed);
  std::ostream& summary = (out_path.empty() || out_path == "-") ? err : out;
  {
    Sink sink(out_path, out);
    *sink << serialize_trace(trace);
  }
  summary << "events=" << trace.size() << " threads=" << trace.num_threads() << " locks=" << trace.num_locks()
          << " vars=" << trace.num_vars() << " accesses=" << trace.access_count() << '\n';
  return kExitClean;
}

struct AnalyzeArgs {
  std::string trace;
  std::string engine = "orderedlist";
  std::optional<double> rate;
  std::uint64_t seed = 0;
  std::string mode = "sampled-only";
  std::string local_epoch = "on";
  std::string out_races;
  std::string out_metrics;
  std::string format = "json";
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const EngineKind kind = parse_engine(a.engine);
  const Trace trace = apply_sampling(read_trace_file(a.trace), policy_for(a.rate, a.seed));
  EngineConfig cfg = EngineConfig::for_trace(trace, parse_mode(a.mode));
  cfg.local_epoch_opt = a.local_epoch == "on";
  AnalysisResult result = analyze(kind, trace, cfg);
  std::sort(result.races.begin(), result.races.end());
  {
    Sink sink(a.out_races, out);
    for (const RaceReport& r : result.races) *sink << render(r, trace) << '\n';
  }
  if (!a.out_metrics.empty()) {
    Sink sink(a.out_metrics, out);
    RunRecord rec{std::string(engine_token(kind)), trace_label(a.trace), a.rate, a.seed, result.metrics, std::nullopt};
    emit(*sink, {rec}, a.format == "csv" ? MetricsFormat::Csv : MetricsFormat::Json);
  }
  return result.races.empty() ? kExitClean : kExitFound;
}

struct DiffArgs {
  std::string trace;
  std::optional<double> rate;
  std::uint64_t seed = 0;
  std::string mode = "sampled-only";
  std::size_t oracle_limit = 2000;
};

int cmd_diff(const DiffArgs& a, std::ostream& out) {
  const Trace trace = apply_sampling(read_trace_file(a.trace), policy_for(a.rate, a.seed));
  DiffOptions opts;
  opts.mode = parse_mode(a.mode);
  opts.oracle_limit = a.oracle_limit;
  if (auto d = diff_engines(trace, opts)) {
    out << render(*d) << '\n';
    return kExitFound;
  }
  out << "EQUIVALENT\n";
  return kExitClean;
}

struct BenchArgs {
  std::vector<std::string> traces;
  GenArgs gen;
  std::size_t generated = 1;
  std::vector<double> rates{0.003, 0.03, 0.1, 1.0};
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::string local_epoch = "on";
  std::string mode = "sampled-only";
  std::string format = "csv";
  std::string out;
  bool timing = false;
};

int cmd_bench(const BenchArgs& b, std::ostream& out) {
  std::vector<std::pair<std::string, Trace>> inputs;
  for (const std::string& path : b.traces) inputs.emplace_back(trace_label(path), read_trace_file(path));
  if (inputs.empty()) {
    for (std::size_t i = 0; i < b.generated; ++i)
      inputs.emplace_back("gen-" + std::to_string(b.gen.seed + i), generate_trace(b.gen.cfg, b.gen.seed + i));
  }
  std::vector<RunRecord> records;
  for (const auto& [label, base] : inputs) {
    for (double rate : b.rates) {
      for (std::size_t s = 0; s < b.seeds; ++s) {
        const std::uint64_t seed = b.seed + s;
        const Trace trace = apply_sampling(base, SamplingPolicy::bernoulli(rate, seed));
        for (EngineKind kind : all_engines()) {
          EngineConfig cfg = EngineConfig::for_trace(trace, parse_mode(b.mode));
          cfg.local_epoch_opt = b.local_epoch == "on";
          const auto start = std::chrono::steady_clock::now();
          const AnalysisResult result = analyze(kind, trace, cfg);
          const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
          records.push_back({std::string(engine_token(kind)), label, rate, seed, result.metrics,
                             b.timing ? std::optional<double>(elapsed.count()) : std::nullopt});
        }
      }
    }
  }
  Sink sink(b.out, out);
  emit(*sink, records, b.format == "json" ? MetricsFormat::Json : MetricsFormat::Csv, b.timing);
  return kExitClean;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offline sampling race-detection laboratory", "racelab"};
  app.require_subcommand(1);

  const auto modes = CLI::IsMember({"sampled-only", "extended"});
  const auto on_off = CLI::IsMember({"on", "off"});
  const auto formats = CLI::IsMember({"json", "csv"});

  GenArgs gen;
  std::string gen_out;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random lock-disciplined trace");
  add_gen_options(*gen_cmd, gen);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--out", gen_out, "Output trace file (default stdout)");

  AnalyzeArgs an;
  CLI::App* an_cmd = app.add_subcommand("analyze", "Run one engine over a trace");
  an_cmd->add_option("--trace", an.trace, "Trace file")->required();
  // Engine tokens are validated after parsing so unknown names exit with the error code.
  an_cmd->add_option("--engine", an.engine, "djitp | sampling | uclock | orderedlist");
  an_cmd->add_option("--rate", an.rate, "Bernoulli sampling rate; omit to keep the marks in the file")
      ->check(CLI::Range(0.0, 1.0));
  an_cmd->add_option("--seed", an.seed, "Sampling seed");
  an_cmd->add_option("--mode", an.mode, "sampled-only | extended")->check(modes);
  an_cmd->add_option("--local-epoch-opt", an.local_epoch, "on | off (orderedlist)")->check(on_off);
  an_cmd->add_option("--out-races", an.out_races, "Race report file (default stdout)");
  an_cmd->add_option("--out-metrics", an.out_metrics, "Metrics file ('-' for stdout)");
  an_cmd->add_option("--format", an.format, "json | csv")->check(formats);

  DiffArgs df;
  CLI::App* df_cmd = app.add_subcommand("diff", "Compare all engines and the reference on one trace");
  df_cmd->add_option("--trace", df.trace, "Trace file")->required();
  df_cmd->add_option("--rate", df.rate, "Bernoulli sampling rate; omit to keep the marks in the file")
      ->check(CLI::Range(0.0, 1.0));
  df_cmd->add_option("--seed", df.seed, "Sampling seed");
  df_cmd->add_option("--mode", df.mode, "sampled-only | extended")->check(modes);
  df_cmd->add_option("--oracle-limit", df.oracle_limit, "Largest trace checked against the declarative reference");

  BenchArgs bn;
  CLI::App* bn_cmd = app.add_subcommand("bench", "Metrics for every engine across sampling rates");
  bn_cmd->add_option("--trace", bn.traces, "Trace files (repeatable); omit to generate traces");
  add_gen_options(*bn_cmd, bn.gen);
  bn_cmd->add_option("--gen-seed", bn.gen.seed, "Seed of the first generated trace");
  bn_cmd->add_option("--traces", bn.generated, "Number of generated traces")->check(CLI::PositiveNumber);
  bn_cmd->add_option("--rates", bn.rates, "Sampling rates")->check(CLI::Range(0.0, 1.0))->delimiter(',');
  bn_cmd->add_option("--seed", bn.seed, "First sampling seed");
  bn_cmd->add_option("--seeds", bn.seeds, "Sampling seeds per rate")->check(CLI::PositiveNumber);
  bn_cmd->add_option("--mode", bn.mode, "sampled-only | extended")->check(modes);
  bn_cmd->add_option("--local-epoch-opt", bn.local_epoch, "on | off (orderedlist)")->check(on_off);
  bn_cmd->add_option("--format", bn.format, "json | csv")->check(formats);
  bn_cmd->add_option("--out", bn.out, "Output file (default stdout)");
  bn_cmd->add_flag("--timing", bn.timing, "Add a wall-clock seconds column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitError;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, gen_out, out, err);
    if (an_cmd->parsed()) return cmd_analyze(an, out);
    if (df_cmd->parsed()) return cmd_diff(df, out);
    if (bn_cmd->parsed()) return cmd_bench(bn, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace racelab::cli

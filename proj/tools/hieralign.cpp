// Command-line surface: align, synth, evaluate, benchmark, visualize.
// Exit codes: 0 success, 1 usage error, 2 bad input data, 3 internal error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"

#include "hieralign/benchgen.hpp"
#include "hieralign/eval.hpp"
#include "hieralign/hier.hpp"
#include "hieralign/io.hpp"
#include "hieralign/jump.hpp"
#include "hieralign/rng.hpp"
#include "hieralign/svg.hpp"
#include "hieralign/threads.hpp"
#include "hieralign/version.hpp"

namespace fs = std::filesystem;
using namespace hieralign;
using nlohmann::ordered_json;

namespace {

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return 1;
}

void ensure_parent_dir(const fs::path& p) {
  const fs::path dir = p.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
}

// Provenance record written beside every primary output.
void write_manifest(const fs::path& path, const std::string& command,
                    const ordered_json& inputs, const ordered_json& config,
                    const ordered_json& seed, double duration_seconds) {
  ordered_json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["config"] = config;
  j["seed"] = seed;
  j["tool_version"] = kToolVersion;
  j["duration_seconds"] = duration_seconds;
  write_text_file(path, j.dump(2) + "\n");
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

const std::vector<std::string> kKnownAlgos = {"hier", "jump", "subseq"};

SegmentAlignment run_algo(const std::string& algo,
                          std::span<const BootlegFragment> fragments,
                          const PerformanceSequence& perf, const AlignConfig& acfg,
                          const JumpConfig& jcfg, int threads) {
  if (algo == "hier") return hierarchical_align(fragments, perf, acfg, threads);
  if (algo == "jump") return jump_dtw_align(fragments, perf, jcfg);
  if (algo == "subseq") return subsequence_align(fragments, perf);
  throw std::invalid_argument("unknown algo \"" + algo + "\"");
}

ordered_json algo_config_json(const std::string& algo, const AlignConfig& acfg,
                              const JumpConfig& jcfg) {
  ordered_json config = ordered_json::object();
  if (algo == "hier") {
    config["alpha"] = acfg.alpha;
    config["gamma"] = acfg.gamma;
    config["allow_backward_jumps"] = acfg.allow_backward_jumps;
    config["allow_forward_jumps"] = acfg.allow_forward_jumps;
  } else if (algo == "jump") {
    config["jump_penalty"] = jcfg.jump_penalty;
  }
  return config;
}

void check_lengths_match(const PerformanceSequence& perf, const TimeMap& tm,
                         const std::string& perf_path, const std::string& tm_path) {
  if (perf.columns.size() != tm.times.size()) {
    throw data_error(tm_path + ": holds " + std::to_string(tm.times.size()) +
                     " timestamps but " + perf_path + " holds " +
                     std::to_string(perf.columns.size()) + " columns");
  }
}

// ---------------------------------------------------------------------------
// align

struct AlignOpts {
  std::string sheet, perf, timemap, out, out_timeline;
  std::string algo = "hier";
  double alpha = 0.5;
  double gamma = 1.0;
  double jump_penalty = 0.0;
  bool no_backward_jumps = false;
  bool no_forward_jumps = false;
};

int run_align(const AlignOpts& o) {
  if (std::find(kKnownAlgos.begin(), kKnownAlgos.end(), o.algo) == kKnownAlgos.end()) {
    return usage_error("--algo must be one of hier, jump, subseq");
  }
  Stopwatch watch;

  const std::vector<BootlegFragment> sheet = load_sheet(o.sheet);
  const PerformanceSequence perf = load_performance(o.perf);
  const TimeMap timemap = load_timemap(o.timemap);
  check_lengths_match(perf, timemap, o.perf, o.timemap);

  AlignConfig acfg;
  acfg.alpha = o.alpha;
  acfg.gamma = o.gamma;
  acfg.allow_backward_jumps = !o.no_backward_jumps;
  acfg.allow_forward_jumps = !o.no_forward_jumps;
  JumpConfig jcfg;
  jcfg.jump_penalty = o.jump_penalty;

  const SegmentAlignment aln = run_algo(o.algo, sheet, perf, acfg, jcfg, 0);
  const LineTimeline timeline = alignment_to_timeline(aln, timemap);

  const fs::path out_path(o.out);
  fs::path timeline_path(o.out_timeline);
  if (timeline_path.empty()) {
    timeline_path = out_path.parent_path() / (out_path.stem().string() + ".timeline.json");
  }
  ensure_parent_dir(out_path);
  ensure_parent_dir(timeline_path);
  save_alignment(out_path, o.algo, aln, algo_config_json(o.algo, acfg, jcfg));
  save_timeline(timeline_path, timeline);

  ordered_json inputs;
  inputs["sheet"] = o.sheet;
  inputs["perf"] = o.perf;
  inputs["timemap"] = o.timemap;
  ordered_json config = algo_config_json(o.algo, acfg, jcfg);
  config["algo"] = o.algo;
  write_manifest(out_path.string() + ".manifest.json", "align", inputs, config, nullptr,
                 watch.seconds());

  std::printf("%s: score %s, %zu matched stretches -> %s\n", o.algo.c_str(),
              fmt6(aln.score).c_str(), aln.matches.size(), o.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOpts {
  std::string piece_dir, out_dir;
  std::string schema = "none";
  std::uint64_t seed = 0;
};

int run_synth(const SynthOpts& o) {
  const std::optional<SchemaKind> kind = schema_from_string(o.schema);
  if (!kind) return usage_error("unknown schema \"" + o.schema + "\"");
  Stopwatch watch;

  const fs::path in_dir(o.piece_dir);
  const std::vector<BootlegFragment> sheet = load_sheet(in_dir / "sheet.bscore.json");
  const PerformanceSequence perf = load_performance(in_dir / "perf.bscore.json");
  const TimeMap timemap = load_timemap(in_dir / "timemap.json");
  const LineTimeline gt = load_timeline(in_dir / "gt.json");
  check_lengths_match(perf, timemap, (in_dir / "perf.bscore.json").string(),
                      (in_dir / "timemap.json").string());

  const JumpSchema schema = sample_schema(static_cast<int>(sheet.size()), *kind, o.seed);
  const SplicedPiece spliced = splice_performance(perf, timemap, gt, schema);

  const fs::path out_dir(o.out_dir);
  fs::create_directories(out_dir);
  save_sheet(out_dir / "sheet.bscore.json", sheet);
  save_performance(out_dir / "perf.bscore.json", spliced.perf);
  save_timemap(out_dir / "timemap.json", spliced.timemap);
  save_timeline(out_dir / "gt.json", spliced.gt);
  save_schema(out_dir / "schema.json", schema);
  save_jump_times(out_dir / "jumps.json", spliced.splice_times);

  ordered_json inputs;
  inputs["piece_dir"] = o.piece_dir;
  ordered_json config;
  config["schema"] = o.schema;
  write_manifest(out_dir / "manifest.json", "synth", inputs, config, o.seed,
                 watch.seconds());

  std::printf("%s schema on %zu lines -> %zu columns, %zu jumps -> %s\n", o.schema.c_str(),
              sheet.size(), spliced.perf.columns.size(), spliced.splice_times.size(),
              o.out_dir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvalOpts {
  std::string pred, gt, out;
  std::vector<double> collars;
};

int run_evaluate(const EvalOpts& o) {
  Stopwatch watch;
  const LineTimeline pred = load_timeline(o.pred);
  const LineTimeline gt = load_timeline(o.gt);
  std::vector<double> collars = o.collars;
  if (collars.empty()) collars = {0.0, 0.5, 1.0};

  if (!pred.segments.empty() && !gt.segments.empty()) {
    const double pred_lo = pred.segments.front().t_start;
    const double pred_hi = pred.segments.back().t_end;
    const double gt_lo = gt.segments.front().t_start;
    const double gt_hi = gt.segments.back().t_end;
    if (std::abs(pred_lo - gt_lo) > 1e-9 || std::abs(pred_hi - gt_hi) > 1e-9) {
      std::fprintf(stderr,
                   "warning: prediction covers [%s, %s] but ground truth covers "
                   "[%s, %s]; uncovered ground-truth time scores as incorrect\n",
                   fmt6(pred_lo).c_str(), fmt6(pred_hi).c_str(), fmt6(gt_lo).c_str(),
                   fmt6(gt_hi).c_str());
    }
  }

  std::vector<EvalReport> reports;
  for (const double collar : collars) {
    reports.push_back(accuracy_with_collar(pred, gt, collar));
  }

  const fs::path out_path(o.out);
  ensure_parent_dir(out_path);
  save_eval_reports(out_path, reports);

  ordered_json inputs;
  inputs["pred"] = o.pred;
  inputs["gt"] = o.gt;
  ordered_json config;
  config["collars"] = collars;
  write_manifest(out_path.string() + ".manifest.json", "evaluate", inputs, config, nullptr,
                 watch.seconds());

  for (const EvalReport& r : reports) {
    std::printf("collar %s: accuracy %s over %s scored seconds\n", fmt6(r.collar).c_str(),
                fmt6(r.accuracy).c_str(), fmt6(r.scored_duration).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchOpts {
  std::string corpus_dir, out, viz_dir;
  std::string algos = "hier,jump,subseq";
  std::string schemas = "none,repeat1,repeat2,repeat3,dsalfine";
  std::vector<double> collars;
  int seeds = 5;
  std::uint64_t master_seed = 0;
  double corruption = 0.0;
  double alpha = 0.5;
  double gamma = 1.0;
  double jump_penalty = 0.0;
};

struct PieceFixture {
  std::string name;
  std::vector<BootlegFragment> sheet;
  PerformanceSequence perf;
  TimeMap timemap;
  LineTimeline gt;
};

struct BenchRow {
  std::string piece, schema;
  int seed;
  std::string algo;
  double collar, accuracy;

  friend bool operator<(const BenchRow& a, const BenchRow& b) {
    return std::tie(a.piece, a.schema, a.seed, a.algo, a.collar) <
           std::tie(b.piece, b.schema, b.seed, b.algo, b.collar);
  }
};

int run_benchmark(const BenchOpts& o) {
  const std::vector<std::string> algos = split_list(o.algos);
  if (algos.empty()) return usage_error("--algos names no algorithms");
  for (const std::string& a : algos) {
    if (std::find(kKnownAlgos.begin(), kKnownAlgos.end(), a) == kKnownAlgos.end()) {
      return usage_error("unknown algo \"" + a + "\"");
    }
  }
  const std::vector<std::string> schema_names = split_list(o.schemas);
  if (schema_names.empty()) return usage_error("--schemas names no schemas");
  std::vector<SchemaKind> kinds;
  for (const std::string& s : schema_names) {
    const std::optional<SchemaKind> k = schema_from_string(s);
    if (!k) return usage_error("unknown schema \"" + s + "\"");
    kinds.push_back(*k);
  }
  if (o.seeds < 1) return usage_error("--seeds must be >= 1");
  if (!(o.corruption >= 0.0 && o.corruption <= 1.0)) {
    return usage_error("--corruption must lie in [0, 1]");
  }
  std::vector<double> collars = o.collars;
  if (collars.empty()) collars = {0.0, 0.5, 1.0};

  Stopwatch watch;

  std::vector<PieceFixture> pieces;
  {
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(o.corpus_dir)) {
      if (entry.is_directory() && fs::exists(entry.path() / "sheet.bscore.json")) {
        dirs.push_back(entry.path());
      }
    }
    std::sort(dirs.begin(), dirs.end());
    for (const fs::path& dir : dirs) {
      PieceFixture f;
      f.name = dir.filename().string();
      if (f.name == "ALL") {
        throw data_error(dir.string() + ": piece name ALL is reserved for aggregate rows");
      }
      f.sheet = load_sheet(dir / "sheet.bscore.json");
      f.perf = load_performance(dir / "perf.bscore.json");
      f.timemap = load_timemap(dir / "timemap.json");
      f.gt = load_timeline(dir / "gt.json");
      check_lengths_match(f.perf, f.timemap, (dir / "perf.bscore.json").string(),
                          (dir / "timemap.json").string());
      pieces.push_back(std::move(f));
    }
  }
  if (pieces.empty()) {
    throw data_error(o.corpus_dir + ": no piece directories (need sheet.bscore.json)");
  }

  AlignConfig acfg;
  acfg.alpha = o.alpha;
  acfg.gamma = o.gamma;
  JumpConfig jcfg;
  jcfg.jump_penalty = o.jump_penalty;

  // One job per (piece, schema, seed); each runs every algo so the strips of a
  // query end up in one SVG.
  struct Job {
    const PieceFixture* piece;
    SchemaKind kind;
    int seed_index;
  };
  std::vector<Job> jobs;
  for (const PieceFixture& piece : pieces) {
    for (const SchemaKind kind : kinds) {
      const int seed_count = kind == SchemaKind::none ? 1 : o.seeds;
      for (int t = 0; t < seed_count; ++t) jobs.push_back({&piece, kind, t});
    }
  }

  const bool viz = !o.viz_dir.empty();
  if (viz) fs::create_directories(o.viz_dir);

  std::vector<std::vector<BenchRow>> job_rows(jobs.size());
  std::vector<std::vector<std::string>> job_failures(jobs.size());

  parallel_for(static_cast<int>(jobs.size()), configured_threads(), [&](int idx) {
    const Job& job = jobs[idx];
    const std::string schema_name = to_string(job.kind);
    const std::string query_tag = std::to_string(o.master_seed) + "/" + job.piece->name +
                                  "/" + schema_name + "/" + std::to_string(job.seed_index);
    const auto record_failure = [&](const std::string& algo, const std::string& msg) {
      job_failures[idx].push_back(job.piece->name + "," + schema_name + "," +
                                  std::to_string(job.seed_index) + "," + algo + ": " + msg);
    };

    SplicedPiece spliced;
    try {
      const JumpSchema schema =
          sample_schema(static_cast<int>(job.piece->sheet.size()), job.kind,
                        fnv1a64(query_tag));
      spliced = splice_performance(job.piece->perf, job.piece->timemap, job.piece->gt,
                                   schema);
    } catch (const std::exception& e) {
      record_failure("-", e.what());
      return;
    }
    PerformanceSequence perf_used = spliced.perf;
    if (o.corruption > 0.0) {
      perf_used = corrupt_performance(perf_used, o.corruption, fnv1a64(query_tag + "/corrupt"));
    }

    std::vector<std::pair<std::string, LineTimeline>> preds;
    for (const std::string& algo : algos) {
      try {
        const SegmentAlignment aln =
            run_algo(algo, job.piece->sheet, perf_used, acfg, jcfg, 1);
        const LineTimeline timeline = alignment_to_timeline(aln, spliced.timemap);
        for (const double collar : collars) {
          const EvalReport r = accuracy_with_collar(timeline, spliced.gt, collar);
          job_rows[idx].push_back({job.piece->name, schema_name, job.seed_index, algo,
                                   collar, r.accuracy});
        }
        preds.emplace_back(algo, timeline);
      } catch (const std::exception& e) {
        record_failure(algo, e.what());
      }
    }

    if (viz) {
      const std::string svg = render_strips(preds, spliced.gt, spliced.splice_times);
      const fs::path svg_path = fs::path(o.viz_dir) / (job.piece->name + "_" + schema_name +
                                                       "_" + std::to_string(job.seed_index) +
                                                       ".svg");
      write_text_file(svg_path, svg);
    }
  });

  std::vector<BenchRow> rows;
  std::vector<std::string> failures;
  for (const auto& r : job_rows) rows.insert(rows.end(), r.begin(), r.end());
  for (const auto& f : job_failures) failures.insert(failures.end(), f.begin(), f.end());
  if (rows.empty()) throw data_error("every benchmark query failed");
  std::sort(rows.begin(), rows.end());
  std::sort(failures.begin(), failures.end());

  // Mean accuracy per (schema, algo, collar), appended as piece=ALL, seed=-1.
  std::map<std::tuple<std::string, std::string, double>, std::pair<double, int>> agg;
  for (const BenchRow& r : rows) {
    auto& [sum, count] = agg[{r.schema, r.algo, r.collar}];
    sum += r.accuracy;
    count += 1;
  }

  std::string csv = "piece,schema,seed,algo,collar,accuracy\n";
  for (const BenchRow& r : rows) {
    csv += r.piece + "," + r.schema + "," + std::to_string(r.seed) + "," + r.algo + "," +
           fmt6(r.collar) + "," + fmt6(r.accuracy) + "\n";
  }
  for (const auto& [key, acc] : agg) {
    const auto& [schema, algo, collar] = key;
    csv += "ALL," + schema + ",-1," + algo + "," + fmt6(collar) + "," +
           fmt6(acc.first / acc.second) + "\n";
  }

  const fs::path out_path(o.out);
  ensure_parent_dir(out_path);
  write_text_file(out_path, csv);
  if (!failures.empty()) {
    std::string sidecar;
    for (const std::string& f : failures) sidecar += f + "\n";
    write_text_file(out_path.string() + ".failures.txt", sidecar);
  }

  ordered_json inputs;
  inputs["corpus_dir"] = o.corpus_dir;
  ordered_json config;
  config["algos"] = algos;
  config["schemas"] = schema_names;
  config["seeds"] = o.seeds;
  config["corruption"] = o.corruption;
  config["collars"] = collars;
  config["alpha"] = o.alpha;
  config["gamma"] = o.gamma;
  config["jump_penalty"] = o.jump_penalty;
  config["viz_dir"] = o.viz_dir;
  write_manifest(out_path.string() + ".manifest.json", "benchmark", inputs, config,
                 o.master_seed, watch.seconds());

  std::printf("%zu pieces, %zu queries -> %zu rows (+%zu aggregates), %zu failures -> %s\n",
              pieces.size(), jobs.size(), rows.size(), agg.size(), failures.size(),
              o.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// visualize

struct VizOpts {
  std::vector<std::string> preds;
  std::string gt, jumps, out;
};

int run_visualize(const VizOpts& o) {
  Stopwatch watch;
  std::vector<std::pair<std::string, LineTimeline>> preds;
  for (const std::string& spec : o.preds) {
    const size_t eq = spec.find('=');
    std::string name, path;
    if (eq == std::string::npos) {
      path = spec;
      name = fs::path(spec).stem().string();
    } else {
      name = spec.substr(0, eq);
      path = spec.substr(eq + 1);
    }
    if (name.empty() || path.empty()) {
      return usage_error("--preds entries must look like name=path, got \"" + spec + "\"");
    }
    preds.emplace_back(name, load_timeline(path));
  }
  const LineTimeline gt = load_timeline(o.gt);
  std::vector<double> jump_times;
  if (!o.jumps.empty()) jump_times = load_jump_times(o.jumps);

  const std::string svg = render_strips(preds, gt, jump_times);
  const fs::path out_path(o.out);
  ensure_parent_dir(out_path);
  write_text_file(out_path, svg);

  ordered_json inputs;
  inputs["preds"] = o.preds;
  inputs["gt"] = o.gt;
  inputs["jumps"] = o.jumps;
  write_manifest(out_path.string() + ".manifest.json", "visualize", inputs,
                 ordered_json::object(), nullptr, watch.seconds());

  std::printf("%zu prediction strips -> %s\n", preds.size(), o.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-aware alignment of performances to sheet-music lines"};
  app.require_subcommand(1);

  AlignOpts align_opts;
  CLI::App* align_cmd = app.add_subcommand(
      "align", "Align a performance to sheet lines and emit alignment + timeline");
  align_cmd->add_option("--sheet", align_opts.sheet, "sheet .bscore.json")->required();
  align_cmd->add_option("--perf", align_opts.perf, "performance .bscore.json")->required();
  align_cmd->add_option("--timemap", align_opts.timemap, "column timestamps JSON")->required();
  align_cmd->add_option("--algo", align_opts.algo, "hier | jump | subseq")
      ->capture_default_str();
  align_cmd->add_option("--alpha", align_opts.alpha, "stay/skip transition weight")
      ->capture_default_str();
  align_cmd->add_option("--gamma", align_opts.gamma, "jump penalty scale")
      ->capture_default_str();
  align_cmd->add_option("--jump-penalty", align_opts.jump_penalty,
                        "additive per-jump cost (jump algo)")
      ->capture_default_str();
  align_cmd->add_flag("--no-backward-jumps", align_opts.no_backward_jumps,
                      "forbid repeat-like jumps (hier algo)");
  align_cmd->add_flag("--no-forward-jumps", align_opts.no_forward_jumps,
                      "forbid cut-like jumps (hier algo)");
  align_cmd->add_option("--out", align_opts.out, "alignment JSON path")->required();
  align_cmd->add_option("--out-timeline", align_opts.out_timeline,
                        "timeline JSON path (default: <out stem>.timeline.json)");

  SynthOpts synth_opts;
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Splice a piece fixture along a sampled jump schema");
  synth_cmd->add_option("--piece-dir", synth_opts.piece_dir,
                        "directory with sheet.bscore.json, perf.bscore.json, "
                        "timemap.json, gt.json")
      ->required();
  synth_cmd->add_option("--schema", synth_opts.schema,
                        "none | repeat1 | repeat2 | repeat3 | dsalfine")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_opts.seed, "schema sampling seed")
      ->capture_default_str();
  synth_cmd->add_option("--out-dir", synth_opts.out_dir, "output fixture directory")
      ->required();

  EvalOpts eval_opts;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "Score a predicted timeline against ground truth");
  eval_cmd->add_option("--pred", eval_opts.pred, "predicted timeline JSON")->required();
  eval_cmd->add_option("--gt", eval_opts.gt, "ground-truth timeline JSON")->required();
  eval_cmd->add_option("--collar", eval_opts.collars,
                       "scoring collar seconds (repeatable; default 0 0.5 1)");
  eval_cmd->add_option("--out", eval_opts.out, "report JSON path")->required();

  BenchOpts bench_opts;
  CLI::App* bench_cmd = app.add_subcommand(
      "benchmark", "Sweep algos x schemas x seeds over a corpus of piece fixtures");
  bench_cmd->add_option("--corpus-dir", bench_opts.corpus_dir,
                        "directory of piece fixture directories")
      ->required();
  bench_cmd->add_option("--algos", bench_opts.algos, "comma-separated algo list")
      ->capture_default_str();
  bench_cmd->add_option("--schemas", bench_opts.schemas, "comma-separated schema list")
      ->capture_default_str();
  bench_cmd->add_option("--seeds", bench_opts.seeds,
                        "schema samples per piece (schema none always runs one)")
      ->capture_default_str();
  bench_cmd->add_option("--master-seed", bench_opts.master_seed,
                        "seed all per-query seeds derive from")
      ->capture_default_str();
  bench_cmd->add_option("--corruption", bench_opts.corruption,
                        "per-column corruption probability")
      ->capture_default_str();
  bench_cmd->add_option("--collar", bench_opts.collars,
                        "scoring collar seconds (repeatable; default 0 0.5 1)");
  bench_cmd->add_option("--alpha", bench_opts.alpha, "hier stay/skip weight")
      ->capture_default_str();
  bench_cmd->add_option("--gamma", bench_opts.gamma, "hier jump penalty scale")
      ->capture_default_str();
  bench_cmd->add_option("--jump-penalty", bench_opts.jump_penalty,
                        "jump algo additive per-jump cost")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_opts.out, "CSV path")->required();
  bench_cmd->add_option("--viz-dir", bench_opts.viz_dir,
                        "also write one error-strip SVG per query here");

  VizOpts viz_opts;
  CLI::App* viz_cmd = app.add_subcommand(
      "visualize", "Render prediction error strips against ground truth");
  viz_cmd->add_option("--preds", viz_opts.preds,
                      "predicted timelines as name=path (repeatable)")
      ->required();
  viz_cmd->add_option("--gt", viz_opts.gt, "ground-truth timeline JSON")->required();
  viz_cmd->add_option("--jumps", viz_opts.jumps, "jump times JSON to mark");
  viz_cmd->add_option("--out", viz_opts.out, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*align_cmd) return run_align(align_opts);
    if (*synth_cmd) return run_synth(synth_opts);
    if (*eval_cmd) return run_evaluate(eval_opts);
    if (*bench_cmd) return run_benchmark(bench_opts);
    if (*viz_cmd) return run_visualize(viz_opts);
  } catch (const data_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 0;
}

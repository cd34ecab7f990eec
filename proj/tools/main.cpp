#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "timewalk/io.hpp"
#include "timewalk/replay.hpp"
#include "timewalk/synthetic.hpp"
#include "timewalk/validity.hpp"
#include "timewalk/walk_engine.hpp"
#include "timewalk/window_manager.hpp"

namespace tw = timewalk;
using nlohmann::json;

namespace {

struct WalkOptions {
  std::string input;
  std::string output;
  std::string stats_path;
  std::uint32_t walk_length = 80;
  std::uint32_t walks_per_node = 10;
  std::uint64_t num_walks = 0;  // > 0 selects sampled mode
  std::string bias = "exp-weight";
  std::string start_bias = "uniform";
  double p = 1.0;
  double q = 1.0;
  std::string direction = "forward";
  bool undirected = false;
  std::uint64_t seed = 0;
  std::string variant = "coop";
  tw::TierThresholds thresholds{};
  bool binary_output = false;
  tw::Timestamp window = 0;  // 0 = unbounded for bulk mode
  tw::Timestamp batch_duration = 0;
};

void add_walk_flags(CLI::App* cmd, WalkOptions& opt) {
  cmd->add_option("--walk-length", opt.walk_length, "Maximum entries per walk")->capture_default_str();
  cmd->add_option("--walks-per-node", opt.walks_per_node, "Walks started from every active node")->capture_default_str();
  cmd->add_option("--num-walks", opt.num_walks, "Sampled-start mode: total walks (overrides per-node starts)");
  cmd->add_option("--bias", opt.bias, "Per-hop bias: uniform|linear|exp-index|exp-weight|node2vec")->capture_default_str();
  cmd->add_option("--start-bias", opt.start_bias, "Start-edge bias: uniform|linear|exp-index|exp-weight")->capture_default_str();
  cmd->add_option("--p", opt.p, "node2vec return parameter")->capture_default_str();
  cmd->add_option("--q", opt.q, "node2vec in-out parameter")->capture_default_str();
  cmd->add_option("--direction", opt.direction, "forward|backward")->capture_default_str();
  cmd->add_flag("--undirected", opt.undirected, "Treat edges as undirected");
  cmd->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--variant", opt.variant, "Scheduler variant: coop|coop-direct|fullwalk")->capture_default_str();
  cmd->add_option("--w-warp", opt.thresholds.w_warp, "Solo/warp boundary")->capture_default_str();
  cmd->add_option("--block-dim", opt.thresholds.block_dim, "Warp/block boundary")->capture_default_str();
  cmd->add_option("--w-max", opt.thresholds.w_max, "Per-task walk cap before mega-hub splitting")->capture_default_str();
  cmd->add_option("--g-warp-cap", opt.thresholds.g_warp_cap, "Warp-tier metadata cache cap")->capture_default_str();
  cmd->add_option("--g-block-cap", opt.thresholds.g_block_cap, "Block-tier metadata cache cap")->capture_default_str();
}

tw::BiasKind parse_bias(const std::string& name) {
  if (name == "uniform") return tw::BiasKind::UniformIndex;
  if (name == "linear") return tw::BiasKind::LinearIndex;
  if (name == "exp-index") return tw::BiasKind::ExponentialIndex;
  if (name == "exp-weight" || name == "node2vec") return tw::BiasKind::ExponentialWeight;
  throw CLI::ValidationError("--bias", "unknown bias '" + name + "'");
}

tw::Variant parse_variant(const std::string& name) {
  if (name == "coop") return tw::Variant::Coop;
  if (name == "coop-direct") return tw::Variant::CoopDirect;
  if (name == "fullwalk") return tw::Variant::FullWalk;
  throw CLI::ValidationError("--variant", "unknown variant '" + name + "'");
}

tw::WalkDirection parse_direction(const std::string& name) {
  if (name == "forward") return tw::WalkDirection::Forward;
  if (name == "backward") return tw::WalkDirection::Backward;
  throw CLI::ValidationError("--direction", "unknown direction '" + name + "'");
}

tw::WalkConfig make_walk_config(const WalkOptions& opt) {
  tw::WalkConfig config;
  config.walk_length = opt.walk_length;
  config.start_mode = opt.num_walks > 0 ? tw::StartMode::Sampled : tw::StartMode::PerNode;
  config.walks_per_node = opt.walks_per_node;
  config.total_walks = opt.num_walks;
  config.bias = parse_bias(opt.bias);
  config.start_bias = parse_bias(opt.start_bias);
  if (opt.bias == "node2vec") config.node2vec = tw::Node2VecParams{opt.p, opt.q};
  config.direction = parse_direction(opt.direction);
  config.seed = opt.seed;
  return config;
}

tw::DirectionMode store_mode(const WalkOptions& opt) {
  if (opt.undirected) return tw::DirectionMode::Undirected;
  return parse_direction(opt.direction) == tw::WalkDirection::Forward
             ? tw::DirectionMode::DirectedForward
             : tw::DirectionMode::DirectedBackward;
}

json stats_record(const tw::BatchRecord& record) {
  return json{{"batch", record.batch_index},
              {"ingested", record.ingest.ingested},
              {"dropped_late", record.ingest.dropped_late},
              {"evicted", record.ingest.evicted},
              {"retained", record.ingest.retained},
              {"rebuild_duration", record.ingest.rebuild_duration},
              {"peak_bytes", record.ingest.peak_bytes},
              {"steps", record.walk.steps},
              {"solo", record.walk.tiers.solo},
              {"warp_cached", record.walk.tiers.warp_cached},
              {"warp_direct", record.walk.tiers.warp_direct},
              {"block_cached", record.walk.tiers.block_cached},
              {"block_direct", record.walk.tiers.block_direct},
              {"multi_block", record.walk.tiers.multi_block},
              {"walks", record.walk.walks},
              {"hops", record.walk.hops},
              {"walk_wall_seconds", record.walk.wall_seconds}};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

int cmd_gen(const std::string& kind, std::uint64_t nodes, std::uint64_t edges,
            tw::Timestamp t_max, std::uint32_t feeders, std::uint32_t rungs,
            std::uint64_t seed, const std::string& output, bool binary) {
  std::vector<tw::TemporalEdge> graph;
  if (kind == "uniform") {
    graph = tw::make_uniform_graph(nodes, edges, t_max, seed);
  } else if (kind == "hub-skewed") {
    graph = tw::make_hub_skewed_graph(nodes, edges, seed);
  } else if (kind == "mega-hub") {
    graph = tw::make_mega_hub_graph(feeders, seed);
  } else if (kind == "time-ladder") {
    graph = tw::make_time_ladder_graph(edges, rungs, seed);
  } else {
    throw CLI::ValidationError("--kind", "unknown graph kind '" + kind + "'");
  }
  tw::write_edges(output, graph, binary);
  std::cout << "wrote " << graph.size() << " edges to " << output << "\n";
  return 0;
}

int cmd_walk(const WalkOptions& opt) {
  const auto edges = tw::read_edges(opt.input);
  const tw::Timestamp window =
      opt.window > 0 ? opt.window : tw::kTimeInfinite;  // bulk: never evict
  tw::WindowManager manager({window, store_mode(opt)});
  manager.ingest_batch(edges);

  tw::WalkStats stats;
  const tw::WalkSet walks = tw::generate_walks(*manager.snapshot(), make_walk_config(opt),
                                               opt.thresholds, parse_variant(opt.variant), &stats);
  tw::write_walks(opt.output, walks, opt.binary_output);

  if (!opt.stats_path.empty()) {
    auto out = open_out(opt.stats_path);
    tw::BatchRecord record{0, manager.last_batch_stats(), stats};
    out << stats_record(record).dump() << "\n";
  }
  std::cout << "walks=" << stats.walks << " hops=" << stats.hops << " steps=" << stats.steps
            << " wall_seconds=" << stats.wall_seconds << "\n";
  return 0;
}

int cmd_replay(const WalkOptions& opt) {
  const auto edges = tw::read_edges(opt.input);
  if (opt.batch_duration <= 0) throw CLI::ValidationError("--batch-duration", "must be positive");

  tw::ReplayConfig config;
  config.batch_duration = opt.batch_duration;
  if (opt.window > 0) {
    config.window_duration = opt.window;
  } else if (!edges.empty()) {
    // Default: one third of the stream's time span, at least one batch.
    tw::Timestamp lo = edges.front().time, hi = edges.front().time;
    for (const auto& e : edges) {
      lo = std::min(lo, e.time);
      hi = std::max(hi, e.time);
    }
    config.window_duration = std::max((hi - lo) / 3, opt.batch_duration);
  } else {
    config.window_duration = opt.batch_duration;
  }
  config.mode = store_mode(opt);
  config.walk = make_walk_config(opt);
  config.thresholds = opt.thresholds;
  config.variant = parse_variant(opt.variant);

  std::optional<std::ofstream> stats_out;
  if (!opt.stats_path.empty()) stats_out = open_out(opt.stats_path);
  std::optional<std::ofstream> walks_out;
  if (!opt.output.empty()) walks_out = open_out(opt.output);

  const std::uint64_t batches = tw::replay_stream(
      edges, config, [&](const tw::BatchRecord& record, const tw::WalkSet& walks) {
        if (stats_out) *stats_out << stats_record(record).dump() << "\n";
        if (walks_out) tw::write_walks_text(*walks_out, walks);
      });
  std::cout << "replayed " << batches << " batches\n";
  return 0;
}

int cmd_validate(const std::string& walks_path, const std::string& edges_path, bool undirected,
                 bool non_strict, const std::string& direction, const std::string& stats_path) {
  const auto edges = tw::read_edges(edges_path);
  const tw::EdgeOracle oracle(edges, undirected);
  const auto records = tw::read_walks(walks_path);
  const auto dir = parse_direction(direction);

  std::vector<tw::WalkCheckResult> results;
  results.reserve(records.size());
  for (const auto& record : records) {
    if (record.timed()) {
      results.push_back(tw::check_timed_walk(record.nodes, record.times, oracle, dir, !non_strict));
    } else {
      results.push_back(tw::check_untimed_walk_greedy(record.nodes, oracle, !non_strict));
    }
  }
  const tw::ValidityReport report = tw::summarize(results);

  std::cout << "total_walks " << report.total_walks << "\n"
            << "valid_walks " << report.valid_walks << "\n"
            << "total_hops " << report.total_hops << "\n"
            << "valid_hops " << report.valid_hops << "\n"
            << "walk_percent " << report.walk_percent() << "\n"
            << "hop_percent " << report.hop_percent() << "\n";
  if (!stats_path.empty()) {
    auto out = open_out(stats_path);
    out << json{{"total_walks", report.total_walks},
                {"valid_walks", report.valid_walks},
                {"total_hops", report.total_hops},
                {"valid_hops", report.valid_hops},
                {"walk_percent", report.walk_percent()},
                {"hop_percent", report.hop_percent()}}
               .dump()
        << "\n";
  }
  return 0;
}

// --- bench suites -----------------------------------------------------------

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int bench_scaling(std::uint64_t max_edges, std::uint64_t seed, std::ostream* stats) {
  std::cout << "suite=scaling (time-ladder graphs, 10000 sampled walks of length 80)\n";
  std::cout << "edges\tbuild_s\twalks_s\tper_walk_us\n";
  for (std::uint64_t edges = 1000; edges <= max_edges; edges *= 10) {
    const auto graph = tw::make_time_ladder_graph(edges, 256, seed);
    const double t0 = now_seconds();
    const auto store = tw::EdgeStore::build(graph, tw::DirectionMode::DirectedForward);
    const double t1 = now_seconds();

    tw::WalkConfig config;
    config.start_mode = tw::StartMode::Sampled;
    config.total_walks = 10000;
    config.walk_length = 80;
    config.bias = tw::BiasKind::UniformIndex;
    config.seed = seed;
    tw::WalkStats walk_stats;
    tw::generate_walks(store, config, {}, tw::Variant::Coop, &walk_stats);

    const double per_walk_us = walk_stats.wall_seconds * 1e6 / 10000.0;
    std::cout << graph.size() << '\t' << (t1 - t0) << '\t' << walk_stats.wall_seconds << '\t'
              << per_walk_us << "\n";
    if (stats) {
      *stats << json{{"suite", "scaling"},
                     {"edges", graph.size()},
                     {"build_seconds", t1 - t0},
                     {"walk_seconds", walk_stats.wall_seconds},
                     {"per_walk_us", per_walk_us}}
                    .dump()
             << "\n";
    }
  }
  return 0;
}

int bench_wwarp_sweep(std::uint64_t seed, std::ostream* stats) {
  const auto graph = tw::make_hub_skewed_graph(2000, 20000, seed);
  const auto store = tw::EdgeStore::build(graph, tw::DirectionMode::DirectedForward);
  tw::WalkConfig config;
  config.seed = seed;
  std::cout << "suite=wwarp-sweep (hub-skewed graph, per-node walks)\n";
  std::cout << "w_warp\thops\twall_s\tmhops_per_s\n";
  for (std::uint32_t w_warp : {1, 2, 4, 8, 16, 32, 64}) {
    tw::TierThresholds thresholds;
    thresholds.w_warp = w_warp;
    tw::WalkStats walk_stats;
    tw::generate_walks(store, config, thresholds, tw::Variant::Coop, &walk_stats);
    const double mhops = static_cast<double>(walk_stats.hops) / walk_stats.wall_seconds / 1e6;
    std::cout << w_warp << '\t' << walk_stats.hops << '\t' << walk_stats.wall_seconds << '\t'
              << mhops << "\n";
    if (stats) {
      *stats << json{{"suite", "wwarp-sweep"},
                     {"w_warp", w_warp},
                     {"hops", walk_stats.hops},
                     {"wall_seconds", walk_stats.wall_seconds},
                     {"mhops_per_s", mhops}}
                    .dump()
             << "\n";
    }
  }
  return 0;
}

int bench_ablation(std::uint64_t seed, std::ostream* stats) {
  const auto graph = tw::make_hub_skewed_graph(2000, 20000, seed);
  const auto store = tw::EdgeStore::build(graph, tw::DirectionMode::DirectedForward);
  tw::WalkConfig config;
  config.seed = seed;
  std::cout << "suite=ablation (hub-skewed graph)\n";
  std::cout << "variant\twall_s\tsteps\tsolo\twarp_c\twarp_d\tblock_c\tblock_d\tmulti\n";
  for (const auto& [name, variant] :
       {std::pair{"fullwalk", tw::Variant::FullWalk}, {"coop-direct", tw::Variant::CoopDirect},
        {"coop", tw::Variant::Coop}}) {
    tw::WalkStats walk_stats;
    tw::generate_walks(store, config, {}, variant, &walk_stats);
    const auto& tiers = walk_stats.tiers;
    std::cout << name << '\t' << walk_stats.wall_seconds << '\t' << walk_stats.steps << '\t'
              << tiers.solo << '\t' << tiers.warp_cached << '\t' << tiers.warp_direct << '\t'
              << tiers.block_cached << '\t' << tiers.block_direct << '\t' << tiers.multi_block
              << "\n";
    if (stats) {
      *stats << json{{"suite", "ablation"},
                     {"variant", name},
                     {"wall_seconds", walk_stats.wall_seconds},
                     {"steps", walk_stats.steps},
                     {"solo", tiers.solo},
                     {"warp_cached", tiers.warp_cached},
                     {"warp_direct", tiers.warp_direct},
                     {"block_cached", tiers.block_cached},
                     {"block_direct", tiers.block_direct},
                     {"multi_block", tiers.multi_block}}
                    .dump()
             << "\n";
    }
  }
  return 0;
}

int bench_memory(std::uint64_t seed, std::ostream* stats) {
  // 100 equal batches under a constant window.
  const std::uint64_t batch_edges = 100000;
  const std::uint64_t batches = 100;
  const tw::Timestamp batch_span = 1000;
  const auto stream =
      tw::make_uniform_graph(20000, batch_edges * batches, batch_span * batches - 1, seed);
  std::vector<tw::TemporalEdge> sorted = stream;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.time < b.time; });

  tw::ReplayConfig config;
  config.batch_duration = batch_span;
  config.window_duration = 3 * batch_span;
  config.generate = false;
  std::vector<std::uint64_t> peaks;
  tw::replay_stream(sorted, config, [&](const tw::BatchRecord& record, const tw::WalkSet&) {
    peaks.push_back(record.ingest.peak_bytes);
    if (stats) *stats << stats_record(record).dump() << "\n";
  });

  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (std::size_t i = 10; i < peaks.size(); ++i) {
    lo = std::min(lo, peaks[i]);
    hi = std::max(hi, peaks[i]);
  }
  std::cout << "suite=memory batches=" << peaks.size() << " peak_first=" << peaks.front()
            << " peak_last=" << peaks.back()
            << " max_min_ratio_after_10=" << (lo ? static_cast<double>(hi) / lo : 0.0) << "\n";
  return 0;
}

int bench_window_sweep(std::uint64_t seed, std::ostream* stats) {
  const std::uint64_t total_edges = 200000;
  const tw::Timestamp batch_span = 1000;
  const std::uint64_t batches = 100;
  auto streamed =
      tw::make_uniform_graph(5000, total_edges, batch_span * batches - 1, seed);
  std::sort(streamed.begin(), streamed.end(),
            [](const auto& a, const auto& b) { return a.time < b.time; });

  std::cout << "suite=window-sweep (sampling latency vs window duration)\n";
  std::cout << "window_batches\tavg_walk_s\tavg_retained\n";
  for (tw::Timestamp window_batches = 1; window_batches <= 10; ++window_batches) {
    tw::ReplayConfig config;
    config.batch_duration = batch_span;
    config.window_duration = window_batches * batch_span;
    config.walk.seed = seed;
    double total_walk_s = 0.0;
    double total_retained = 0.0;
    std::uint64_t count = 0;
    tw::replay_stream(streamed, config, [&](const tw::BatchRecord& record, const tw::WalkSet&) {
      total_walk_s += record.walk.wall_seconds;
      total_retained += static_cast<double>(record.ingest.retained);
      ++count;
    });
    const double avg_walk = count ? total_walk_s / static_cast<double>(count) : 0.0;
    const double avg_retained = count ? total_retained / static_cast<double>(count) : 0.0;
    std::cout << window_batches << '\t' << avg_walk << '\t' << avg_retained << "\n";
    if (stats) {
      *stats << json{{"suite", "window-sweep"},
                     {"window_batches", window_batches},
                     {"avg_walk_seconds", avg_walk},
                     {"avg_retained", avg_retained}}
                    .dump()
             << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-memory streaming temporal random walk engine"};
  app.require_subcommand(1);

  // gen
  std::string gen_kind = "uniform";
  std::uint64_t gen_nodes = 1000, gen_edges = 10000;
  tw::Timestamp gen_t_max = 100000;
  std::uint32_t gen_feeders = 2000, gen_rungs = 256;
  std::uint64_t gen_seed = 0;
  std::string gen_output;
  bool gen_binary = false;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic temporal graph");
  gen->add_option("--kind", gen_kind, "uniform|hub-skewed|mega-hub|time-ladder")->capture_default_str();
  gen->add_option("--nodes", gen_nodes, "Node count (uniform) / background nodes (hub-skewed)")->capture_default_str();
  gen->add_option("--edges", gen_edges, "Edge count")->capture_default_str();
  gen->add_option("--t-max", gen_t_max, "Largest timestamp (uniform)")->capture_default_str();
  gen->add_option("--feeders", gen_feeders, "Feeder count (mega-hub)")->capture_default_str();
  gen->add_option("--rungs", gen_rungs, "Distinct timestamps per node (time-ladder)")->capture_default_str();
  gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
  gen->add_option("--output", gen_output, "Output path")->required();
  gen->add_flag("--binary", gen_binary, "Write packed binary instead of TSV");

  // walk
  WalkOptions walk_opt;
  auto* walk = app.add_subcommand("walk", "Bulk mode: ingest everything as one window, generate walks");
  walk->add_option("--input", walk_opt.input, "Edge file (TSV or packed binary)")->required();
  walk->add_option("--output", walk_opt.output, "Walk output path")->required();
  walk->add_option("--stats", walk_opt.stats_path, "Stats record output path");
  walk->add_option("--window", walk_opt.window, "Optional window duration (default: keep everything)");
  walk->add_flag("--binary-output", walk_opt.binary_output, "Write the binary walk format");
  add_walk_flags(walk, walk_opt);

  // replay
  WalkOptions replay_opt;
  auto* replay = app.add_subcommand("replay", "Streaming mode: split the input into batches and slide the window");
  replay->add_option("--input", replay_opt.input, "Edge file")->required();
  replay->add_option("--batch-duration", replay_opt.batch_duration, "Batch span (time units)")->required();
  replay->add_option("--window", replay_opt.window, "Window duration (default: one third of the stream span)");
  replay->add_option("--output", replay_opt.output, "Append per-batch walks to this file");
  replay->add_option("--stats", replay_opt.stats_path, "Per-batch stats records (JSON lines)");
  add_walk_flags(replay, replay_opt);

  // validate
  std::string val_walks, val_edges, val_direction = "forward", val_stats;
  bool val_undirected = false, val_non_strict = false;
  auto* validate = app.add_subcommand("validate", "Audit walks for temporal causality");
  validate->add_option("--walks", val_walks, "Walk file (text or binary)")->required();
  validate->add_option("--edges", val_edges, "Edge file the walks must respect")->required();
  validate->add_flag("--undirected", val_undirected, "Edges usable in both directions");
  validate->add_flag("--non-strict", val_non_strict, "Allow equal timestamps");
  validate->add_option("--direction", val_direction, "forward|backward")->capture_default_str();
  validate->add_option("--stats", val_stats, "Write the report as a JSON record");

  // bench
  std::string bench_suite;
  std::uint64_t bench_seed = 0, bench_max_edges = 1000000;
  std::string bench_stats;
  auto* bench = app.add_subcommand("bench", "Benchmark suites");
  bench->add_option("--suite", bench_suite, "scaling|wwarp-sweep|ablation|memory|window-sweep")->required();
  bench->add_option("--seed", bench_seed, "RNG seed")->capture_default_str();
  bench->add_option("--max-edges", bench_max_edges, "Largest size for the scaling suite")->capture_default_str();
  bench->add_option("--stats", bench_stats, "Per-measurement JSON records");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_kind, gen_nodes, gen_edges, gen_t_max, gen_feeders, gen_rungs, gen_seed,
                     gen_output, gen_binary);
    }
    if (walk->parsed()) return cmd_walk(walk_opt);
    if (replay->parsed()) return cmd_replay(replay_opt);
    if (validate->parsed()) {
      return cmd_validate(val_walks, val_edges, val_undirected, val_non_strict, val_direction,
                          val_stats);
    }
    if (bench->parsed()) {
      std::optional<std::ofstream> stats_out;
      if (!bench_stats.empty()) stats_out = open_out(bench_stats);
      std::ostream* stats = stats_out ? &*stats_out : nullptr;
      if (bench_suite == "scaling") return bench_scaling(bench_max_edges, bench_seed, stats);
      if (bench_suite == "wwarp-sweep") return bench_wwarp_sweep(bench_seed, stats);
      if (bench_suite == "ablation") return bench_ablation(bench_seed, stats);
      if (bench_suite == "memory") return bench_memory(bench_seed, stats);
      if (bench_suite == "window-sweep") return bench_window_sweep(bench_seed, stats);
      throw CLI::ValidationError("--suite", "unknown suite '" + bench_suite + "'");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "timewalk/walk_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "timewalk/primitives.hpp"
#include "timewalk/rng.hpp"

namespace timewalk {

namespace {

/// Locate the causal slice [c, e) of a node region [lo, hi) given the node's
/// timestamp-group marks (global or a task-local copy).
std::pair<std::size_t, std::size_t> causal_slice(std::span<const TsGroupMark> marks,
                                                 std::size_t lo, std::size_t hi, Timestamp t,
                                                 WalkDirection dir) {
  const std::size_t g_total = marks.size();
  if (dir == WalkDirection::Forward) {
    const std::size_t g = static_cast<std::size_t>(
        std::upper_bound(marks.begin(), marks.end(), t,
                         [](Timestamp lhs, const TsGroupMark& mark) { return lhs < mark.time; }) -
        marks.begin());
    return {g == g_total ? hi : marks[g].start, hi};
  }
  const std::size_t g = static_cast<std::size_t>(
      std::lower_bound(marks.begin(), marks.end(), t,
                       [](const TsGroupMark& mark, Timestamp rhs) { return mark.time < rhs; }) -
      marks.begin());
  return {lo, g == g_total ? hi : marks[g].start};
}

/// Timestamp of a node-view position: the time of the group containing it.
/// The marks are resident (or task-local), so this avoids touching the
/// shared time column on the hop hot path.
Timestamp time_at_position(std::span<const TsGroupMark> marks, std::size_t pos) {
  const auto it = std::upper_bound(
      marks.begin(), marks.end(), pos,
      [](std::size_t lhs, const TsGroupMark& mark) { return lhs < mark.start; });
  return (it - 1)->time;
}

/// Weighted pick over [c, e) when the precomputed per-node prefix run has
/// fully underflowed (possible for backward slices far from the node's
/// newest edge). Rebuilds exp weights anchored at the slice's own maximum.
std::size_t draw_weighted_local(const EdgeStore& store, double u, std::size_t c,
                                std::size_t e) {
  const Timestamp anchor = store.ref_time(e - 1);
  double total = 0.0;
  for (std::size_t pos = c; pos < e; ++pos) {
    total += std::exp(static_cast<double>(store.ref_time(pos) - anchor));
  }
  const double r = u * total;
  double cum = 0.0;
  for (std::size_t pos = c; pos < e; ++pos) {
    cum += std::exp(static_cast<double>(store.ref_time(pos) - anchor));
    if (r < cum) return pos - c;
  }
  return e - 1 - c;
}

std::size_t draw_index(const EdgeStore& store, BiasKind bias, double u, std::size_t lo,
                       std::size_t c, std::size_t e) {
  const std::size_t n = e - c;
  switch (bias) {
    case BiasKind::UniformIndex:
      return pick_index_uniform(u, n);
    case BiasKind::LinearIndex:
      return pick_index_linear(u, n);
    case BiasKind::ExponentialIndex:
      return pick_index_exponential(u, n);
    case BiasKind::ExponentialWeight: {
      const auto prefix = store.weight_prefix();
      const double base = c > lo ? prefix[c - 1] : 0.0;
      const double mass = prefix[e - 1] - base;
      if (!(mass > 0.0) || !std::isfinite(mass)) return draw_weighted_local(store, u, c, e);
      return pick_weighted_range(u, prefix, c, e, base);
    }
  }
  throw std::logic_error("draw_index: unknown bias");
}

/// Advance one walk by one hop. Returns false when the causal neighborhood
/// is empty (the walk dies without recording).
bool hop_walk(const EdgeStore& store, const WalkConfig& config, const CounterRng& rng,
              std::uint32_t w, std::span<const TsGroupMark> marks, WalkStates& states,
              WalkSet& walks) {
  const InternalNode v = states.current[w];
  const Timestamp t = states.time[w];
  const auto [lo, hi] = store.node_region(v);
  const auto [c, e] = causal_slice(marks, lo, hi, t, config.direction);
  if (c == e) {
    states.alive[w] = 0;
    return false;
  }

  const std::uint64_t hop_index = states.length[w];
  std::size_t idx;
  if (config.node2vec && states.has_prev[w]) {
    const Node2VecParams& nv = *config.node2vec;
    const InternalNode prev = states.prev[w];
    auto adjacent = [&](NodeId a, NodeId b) {
      const auto ia = static_cast<InternalNode>(a);
      const auto ib = static_cast<InternalNode>(b);
      return config.node2vec_temporal_adjacency
                 ? store.adjacent_after(ia, ib, t, config.direction)
                 : store.adjacent(ia, ib);
    };
    idx = 0;
    for (int r = 0; r < kNode2VecMaxRetries; ++r) {
      const double u = rng.uniform(w, hop_index, 2 * static_cast<std::uint64_t>(r));
      idx = draw_index(store, config.bias, u, lo, c, e);
      const InternalNode candidate = store.ref_neighbor(c + idx, v);
      const double u_accept = rng.uniform(w, hop_index, 2 * static_cast<std::uint64_t>(r) + 1);
      if (node2vec_accept(static_cast<NodeId>(prev), static_cast<NodeId>(candidate), nv,
                          adjacent, u_accept)) {
        break;
      }
      // retries exhausted: the last proposal stands
    }
  } else {
    const double u = rng.uniform(w, hop_index, 0);
    idx = draw_index(store, config.bias, u, lo, c, e);
  }

  const std::size_t pos = c + idx;
  const InternalNode next = store.ref_neighbor(pos, v);
  const Timestamp next_time = time_at_position(marks, pos);

  const std::uint32_t slot = states.length[w];
  walks.nodes[w * walks.stride + slot] = store.external_id(next);
  walks.times[w * walks.stride + slot] = next_time;
  states.length[w] = slot + 1;
  if (config.node2vec) {
    states.prev[w] = v;
    states.has_prev[w] = 1;
  }
  states.current[w] = next;
  states.time[w] = next_time;
  if (states.length[w] >= walks.stride) states.alive[w] = 0;
  return true;
}

void seed_walk(WalkStates& states, WalkSet& walks, std::uint64_t w, NodeId start_external,
               InternalNode start_internal, Timestamp sentinel) {
  walks.nodes[w * walks.stride] = start_external;
  walks.times[w * walks.stride] = sentinel;
  states.current[w] = start_internal;
  states.time[w] = sentinel;
  states.length[w] = 1;
  states.alive[w] = walks.stride > 1 ? 1 : 0;
}

void count_tier(TierCounts& counts, const DispatchTask& task) {
  if (task.sub_task_count > 1) {
    ++counts.multi_block;
    return;
  }
  switch (task.tier) {
    case Tier::Solo: ++counts.solo; break;
    case Tier::WarpCached: ++counts.warp_cached; break;
    case Tier::WarpDirect: ++counts.warp_direct; break;
    case Tier::BlockCached: ++counts.block_cached; break;
    case Tier::BlockDirect: ++counts.block_direct; break;
  }
}

void run_task_list(const std::vector<DispatchTask>& tasks, const StepPlan& plan,
                   const EdgeStore& store, const WalkConfig& config, bool use_scratch,
                   WalkStates& states, WalkSet& walks, int chunk) {
#pragma omp parallel
  {
    TaskScratch scratch;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(tasks.size()); i += chunk) {
      const std::int64_t end = std::min<std::int64_t>(i + chunk, tasks.size());
      for (std::int64_t k = i; k < end; ++k) {
        execute_task(tasks[k], plan, store, config, use_scratch, scratch, states, walks);
      }
    }
  }
}

}  // namespace

void TierThresholds::validate() const {
  if (w_warp < 1 || w_warp > block_dim || block_dim > w_max) {
    throw std::invalid_argument("tier thresholds: need 1 <= w_warp <= block_dim <= w_max");
  }
  if (g_warp_cap > g_block_cap) {
    throw std::invalid_argument("tier thresholds: need g_warp_cap <= g_block_cap");
  }
}

void WalkConfig::validate() const {
  if (walk_length < 1) throw std::invalid_argument("walk config: walk_length must be >= 1");
  if (start_mode == StartMode::PerNode && walks_per_node == 0) {
    throw std::invalid_argument("walk config: walks_per_node must be positive");
  }
  if (node2vec && (node2vec->p <= 0.0 || node2vec->q <= 0.0)) {
    throw std::invalid_argument("walk config: node2vec p and q must be positive");
  }
}

void init_walks(const EdgeStore& store, const WalkConfig& config, WalkStates& states,
                WalkSet& walks) {
  config.validate();
  const CounterRng rng(config.seed);
  const Timestamp sentinel = start_sentinel(config.direction);

  std::uint64_t walk_count = 0;
  std::vector<InternalNode> start_nodes;
  if (config.start_mode == StartMode::PerNode) {
    for (InternalNode v = 0; v < store.node_count(); ++v) {
      const auto [lo, hi] = store.node_region(v);
      if (lo != hi) start_nodes.push_back(v);
    }
    walk_count = start_nodes.size() * static_cast<std::uint64_t>(config.walks_per_node);
    walks.stride = config.walk_length;
  } else {
    if (store.empty()) {
      throw std::invalid_argument("init_walks: sampled starts need a non-empty store");
    }
    walk_count = config.total_walks;
    // The start edge always fits: two entries even when walk_length is 1.
    walks.stride = std::max<std::uint32_t>(config.walk_length, 2);
  }

  if (walk_count >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("init_walks: walk count exceeds 32-bit id space");
  }

  walks.walk_count = walk_count;
  walks.nodes.assign(walk_count * walks.stride, 0);
  walks.times.assign(walk_count * walks.stride, 0);
  walks.lengths.assign(walk_count, 0);
  states.current.assign(walk_count, 0);
  states.time.assign(walk_count, 0);
  states.prev.assign(walk_count, 0);
  states.has_prev.assign(walk_count, 0);
  states.alive.assign(walk_count, 0);
  states.length.assign(walk_count, 0);

  if (config.start_mode == StartMode::PerNode) {
    std::uint64_t w = 0;
    for (const InternalNode v : start_nodes) {
      for (std::uint32_t j = 0; j < config.walks_per_node; ++j, ++w) {
        seed_walk(states, walks, w, store.external_id(v), v, sentinel);
      }
    }
  } else {
    const bool forward = config.direction == WalkDirection::Forward;
    for (std::uint64_t w = 0; w < walk_count; ++w) {
      const double u1 = rng.uniform(w, 0, 0);
      const double u2 = rng.uniform(w, 0, 1);
      const std::size_t eidx = sample_start_edge(store, config.start_bias, u1, u2);
      const InternalNode s = store.edge_source_internal(eidx);
      const InternalNode d = store.edge_target_internal(eidx);
      const Timestamp t = store.edge_time(eidx);
      // Forward walks traverse the start edge source -> target; backward
      // walks traverse it target -> source.
      const InternalNode from = forward ? s : d;
      const InternalNode to = forward ? d : s;
      seed_walk(states, walks, w, store.external_id(from), from, sentinel);
      walks.nodes[w * walks.stride + 1] = store.external_id(to);
      walks.times[w * walks.stride + 1] = t;
      states.length[w] = 2;
      states.current[w] = to;
      states.time[w] = t;
      if (config.node2vec) {
        states.prev[w] = from;
        states.has_prev[w] = 1;
      }
      states.alive[w] = walks.stride > 2 ? 1 : 0;
    }
  }

  for (std::uint64_t w = 0; w < walk_count; ++w) walks.lengths[w] = states.length[w];
}

std::size_t sample_start_edge(const EdgeStore& store, BiasKind bias, double u1, double u2) {
  if (store.empty()) throw std::invalid_argument("sample_start_edge: empty store");
  const std::size_t groups = store.ts_group_count();
  std::size_t g;
  switch (bias) {
    case BiasKind::UniformIndex: g = pick_index_uniform(u1, groups); break;
    case BiasKind::LinearIndex: g = pick_index_linear(u1, groups); break;
    case BiasKind::ExponentialIndex: g = pick_index_exponential(u1, groups); break;
    case BiasKind::ExponentialWeight: g = pick_weighted(u1, store.ts_group_weight_prefix()); break;
    default: throw std::logic_error("sample_start_edge: unknown bias");
  }
  const auto [lo, hi] = store.edge_slice_for_ts_group(g);
  auto off = static_cast<std::size_t>(u2 * static_cast<double>(hi - lo));
  if (off >= hi - lo) off = hi - lo - 1;
  return lo + off;
}

StepPlan schedule_step(const WalkStates& states, const std::vector<std::uint32_t>& candidates,
                       const EdgeStore& store, const TierThresholds& thresholds) {
  thresholds.validate();
  StepPlan plan;
  primitives::partition_flagged(candidates, states.alive, plan.walk_ids);
  const std::size_t n = plan.walk_ids.size();
  if (n == 0) return plan;

  std::vector<std::uint64_t> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = states.current[plan.walk_ids[i]];
  primitives::radix_sort_pairs(keys, plan.walk_ids);

  const auto runs = primitives::run_length_encode(keys);
  for (const auto& run : runs) {
    const auto v = static_cast<InternalNode>(run.key);
    const std::uint32_t walk_population = run.length;
    const std::size_t group_count = store.timestamp_group_count_internal(v);

    if (walk_population < thresholds.w_warp) {
      plan.solo.push_back({v, Tier::Solo, run.start, run.start + run.length, 0, 1});
      continue;
    }
    if (walk_population <= thresholds.block_dim) {
      auto& list = group_count <= thresholds.g_warp_cap ? plan.warp_cached : plan.warp_direct;
      const Tier tier = group_count <= thresholds.g_warp_cap ? Tier::WarpCached : Tier::WarpDirect;
      list.push_back({v, tier, run.start, run.start + run.length, 0, 1});
      continue;
    }
    const bool cached = group_count <= thresholds.g_block_cap;
    auto& list = cached ? plan.block_cached : plan.block_direct;
    const Tier tier = cached ? Tier::BlockCached : Tier::BlockDirect;
    if (walk_population <= thresholds.w_max) {
      list.push_back({v, tier, run.start, run.start + run.length, 0, 1});
      continue;
    }
    // Mega-hub: split into ceil(W / w_max) contiguous sub-tasks.
    const std::uint32_t pieces = (walk_population + thresholds.w_max - 1) / thresholds.w_max;
    for (std::uint32_t piece = 0; piece < pieces; ++piece) {
      const std::uint32_t begin = run.start + piece * thresholds.w_max;
      const std::uint32_t end = std::min(run.start + run.length, begin + thresholds.w_max);
      list.push_back({v, tier, begin, end, piece, pieces});
    }
  }
  return plan;
}

void execute_task(const DispatchTask& task, const StepPlan& plan, const EdgeStore& store,
                  const WalkConfig& config, bool use_scratch, TaskScratch& scratch,
                  WalkStates& states, WalkSet& walks) {
  const CounterRng rng(config.seed);
  std::span<const TsGroupMark> marks = store.group_marks(task.node);
  if (use_scratch) {
    // One metadata load per task; every member walk reads the local copy.
    scratch.group_marks.assign(marks.begin(), marks.end());
    marks = scratch.group_marks;
  }
  for (std::uint32_t i = task.begin; i < task.end; ++i) {
    hop_walk(store, config, rng, plan.walk_ids[i], marks, states, walks);
  }
}

WalkSet generate_walks(const EdgeStore& store, const WalkConfig& config,
                       const TierThresholds& thresholds, Variant variant, WalkStats* stats) {
  using clock = std::chrono::steady_clock;
  const auto started = clock::now();
  config.validate();
  thresholds.validate();
  if (!store.supports(config.direction)) {
    throw std::invalid_argument("generate_walks: store direction mode does not serve the requested walk direction");
  }

  WalkStates states;
  WalkSet walks;
  init_walks(store, config, states, walks);

  WalkStats local;
  WalkStats& out = stats ? *stats : local;
  out = WalkStats{};

  if (variant == Variant::FullWalk) {
    const CounterRng rng(config.seed);
    std::uint32_t max_hops = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(max : max_hops)
    for (std::int64_t w = 0; w < static_cast<std::int64_t>(walks.walk_count); ++w) {
      const std::uint32_t init_len = states.length[w];
      while (states.alive[w]) {
        hop_walk(store, config, rng, static_cast<std::uint32_t>(w),
                 store.group_marks(states.current[w]), states, walks);
      }
      max_hops = std::max(max_hops, states.length[w] - init_len);
    }
    out.steps = max_hops;
  } else {
    const bool cache_metadata = variant == Variant::Coop;
    std::vector<std::uint32_t> candidates(walks.walk_count);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      candidates[i] = static_cast<std::uint32_t>(i);
    }
    while (true) {
      // Two stage boundaries per step: after compaction (the alive count is
      // known) and after tier counting (launch sizes are known).
      StepPlan plan = schedule_step(states, candidates, store, thresholds);
      if (plan.empty()) break;
      ++out.steps;
      for (const auto* list : {&plan.solo, &plan.warp_cached, &plan.warp_direct,
                               &plan.block_cached, &plan.block_direct}) {
        for (const auto& task : *list) count_tier(out.tiers, task);
      }
      // Tier launches: solo tasks batched many per worker, cooperative tasks
      // one per worker with task-local scratch.
      run_task_list(plan.solo, plan, store, config, false, states, walks, 64);
      run_task_list(plan.warp_cached, plan, store, config, cache_metadata, states, walks, 1);
      run_task_list(plan.warp_direct, plan, store, config, false, states, walks, 1);
      run_task_list(plan.block_cached, plan, store, config, cache_metadata, states, walks, 1);
      run_task_list(plan.block_direct, plan, store, config, false, states, walks, 1);
      candidates = std::move(plan.walk_ids);
    }
  }

  for (std::uint64_t w = 0; w < walks.walk_count; ++w) {
    walks.lengths[w] = states.length[w];
    if (states.length[w] >= 2) {
      ++out.walks;
      out.hops += states.length[w] - 1;
    }
  }
  out.wall_seconds = std::chrono::duration<double>(clock::now() - started).count();
  return walks;
}

WalkSet generate_walks_fullwalk(const EdgeStore& store, const WalkConfig& config,
                                WalkStats* stats) {
  return generate_walks(store, config, TierThresholds{}, Variant::FullWalk, stats);
}

}  // namespace timewalk

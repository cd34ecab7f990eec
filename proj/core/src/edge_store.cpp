#include "timewalk/edge_store.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "timewalk/primitives.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace timewalk {

namespace {

std::size_t vec_bytes_impl() { return 0; }

template <class T, class... Rest>
std::size_t vec_bytes_impl(const std::vector<T>& v, const Rest&... rest) {
  return v.capacity() * sizeof(T) + vec_bytes_impl(rest...);
}

}  // namespace

EdgeStore EdgeStore::build(std::span<const TemporalEdge> edges, DirectionMode mode,
                           BuildTelemetry* telemetry) {
  EdgeStore store;
  store.mode_ = mode;
  const std::size_t m = edges.size();
  if (m >= std::numeric_limits<std::uint32_t>::max() / 2) {
    throw std::invalid_argument("edge store: edge count exceeds 32-bit reference space");
  }
  for (const TemporalEdge& e : edges) {
    if (e.time < 0) throw std::invalid_argument("edge store: negative timestamp");
    if (e.source < 0 || e.target < 0) throw std::invalid_argument("edge store: negative node id");
  }

  std::size_t scratch_bytes = 0;

  // View 1: order edges by (time, source, target) with three stable radix
  // passes, least-significant component first.
  std::vector<std::uint32_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<std::uint32_t>(i);
  {
    std::vector<std::uint64_t> keys(m);
    for (std::size_t i = 0; i < m; ++i) keys[i] = static_cast<std::uint64_t>(edges[i].target);
    primitives::radix_sort_pairs(keys, order);
    for (std::size_t i = 0; i < m; ++i) keys[i] = static_cast<std::uint64_t>(edges[order[i]].source);
    primitives::radix_sort_pairs(keys, order);
    for (std::size_t i = 0; i < m; ++i) keys[i] = static_cast<std::uint64_t>(edges[order[i]].time);
    primitives::radix_sort_pairs(keys, order);
    scratch_bytes += m * (2 * sizeof(std::uint64_t) + 2 * sizeof(std::uint32_t));
  }

  // Densify node ids with one more radix sort over (endpoint id, slot)
  // pairs. Internal ids come out ordered by external id, which is canonical
  // for any input permutation.
  store.endpoints_.resize(m);
  store.time_.resize(m);
  {
    std::vector<std::uint64_t> endpoint(2 * m);
    std::vector<std::uint32_t> slot(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      const TemporalEdge& e = edges[order[i]];
      store.time_[i] = e.time;
      endpoint[2 * i] = static_cast<std::uint64_t>(e.source);
      endpoint[2 * i + 1] = static_cast<std::uint64_t>(e.target);
      slot[2 * i] = static_cast<std::uint32_t>(2 * i);
      slot[2 * i + 1] = static_cast<std::uint32_t>(2 * i + 1);
    }
    primitives::radix_sort_pairs(endpoint, slot);
    for (std::size_t k = 0; k < endpoint.size(); ++k) {
      if (k == 0 || endpoint[k] != endpoint[k - 1]) {
        store.internal_to_external_.push_back(static_cast<NodeId>(endpoint[k]));
      }
      const auto id = static_cast<InternalNode>(store.internal_to_external_.size() - 1);
      const std::uint32_t s = slot[k];
      Endpoints& pair = store.endpoints_[s >> 1];
      (s & 1 ? pair.dst : pair.src) = id;
    }
    scratch_bytes += 2 * m * (2 * sizeof(std::uint64_t) + 2 * sizeof(std::uint32_t));
  }
  const std::size_t node_count = store.internal_to_external_.size();
  store.external_to_internal_.reserve(node_count);
  for (InternalNode v = 0; v < node_count; ++v) {
    store.external_to_internal_.emplace(store.internal_to_external_[v], v);
  }

  // Timestamp group boundaries over the sorted array.
  for (std::size_t i = 0; i < m; ++i) {
    if (i == 0 || store.time_[i] != store.time_[i - 1]) {
      store.ts_group_offsets_.push_back(i);
      store.ts_group_time_.push_back(store.time_[i]);
    }
  }
  store.ts_group_offsets_.push_back(m);

  // Group-level cumulative exp weights for weighted start selection,
  // anchored at the newest group so no weight exceeds 1.
  if (!store.ts_group_time_.empty()) {
    const Timestamp anchor = store.ts_group_time_.back();
    store.ts_group_weight_prefix_.resize(store.ts_group_time_.size());
    double acc = 0.0;
    for (std::size_t g = 0; g < store.ts_group_time_.size(); ++g) {
      acc += std::exp(static_cast<double>(store.ts_group_time_[g] - anchor));
      store.ts_group_weight_prefix_[g] = acc;
    }
  }

  // View 2: node-grouped reference permutation plus per-node timestamp
  // sub-groups and cumulative weights, all in sequential passes over the
  // time-sorted edges. Entries are generated in global time order, so the
  // stable counting scatter leaves each node's region time-sorted.
  // Undirected mode contributes one entry per endpoint.
  const bool undirected = mode == DirectionMode::Undirected;
  const int sides = undirected ? 2 : 1;
  const std::size_t entry_count = undirected ? 2 * m : m;
  auto owner_of = [&store, mode](std::size_t edge_idx, int side) -> InternalNode {
    if (mode == DirectionMode::DirectedBackward) return store.endpoints_[edge_idx].dst;
    if (mode == DirectionMode::Undirected && side == 1) return store.endpoints_[edge_idx].dst;
    return store.endpoints_[edge_idx].src;
  };

  // Passes over the node view split the node-id space across threads; each
  // thread scans every edge in time order but touches only its own nodes, so
  // the result is identical at any thread count.
  int view_threads = 1;
#ifdef _OPENMP
  if (m >= (std::size_t{1} << 18)) view_threads = omp_get_max_threads();
#endif
  const std::size_t nodes_per_thread = (node_count + view_threads - 1) / view_threads;

  // pass 1: region sizes, per-node group counts, per-node anchors
  std::vector<std::size_t> region_size(node_count, 0);
  std::vector<std::size_t> group_count(node_count, 0);
  std::vector<Timestamp> anchor(node_count, 0);
  std::vector<Timestamp> last_time(node_count, -1);
#pragma omp parallel num_threads(view_threads) if (view_threads > 1)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const InternalNode v_lo = static_cast<InternalNode>(std::min(node_count, nodes_per_thread * tid));
    const InternalNode v_hi = static_cast<InternalNode>(std::min(node_count, nodes_per_thread * (tid + 1)));
    for (std::size_t i = 0; i < m; ++i) {
      const Timestamp t = store.time_[i];
      for (int s = 0; s < sides; ++s) {
        const InternalNode v = owner_of(i, s);
        if (v < v_lo || v >= v_hi) continue;
        ++region_size[v];
        if (last_time[v] != t) {
          ++group_count[v];
          last_time[v] = t;
        }
        anchor[v] = t;  // ends at the region's newest timestamp
      }
    }
  }

  store.node_group_offsets_.resize(node_count + 1);
  store.node_ts_index_.resize(node_count + 1);
  std::size_t entry_acc = 0, group_acc = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    store.node_group_offsets_[v] = entry_acc;
    store.node_ts_index_[v] = group_acc;
    entry_acc += region_size[v];
    group_acc += group_count[v];
  }
  store.node_group_offsets_[node_count] = entry_acc;
  store.node_ts_index_[node_count] = group_acc;

  // pass 2: stable scatter with group boundaries and weight prefixes fused in
  store.node_ref_edge_.resize(entry_count);
  store.node_ts_groups_.resize(group_acc);
  store.node_weight_prefix_.resize(entry_count);
  {
    std::vector<std::size_t> entry_cursor(store.node_group_offsets_.begin(),
                                          store.node_group_offsets_.end() - 1);
    std::vector<std::size_t> group_cursor(store.node_ts_index_.begin(),
                                          store.node_ts_index_.end() - 1);
    std::vector<double> weight_acc(node_count, 0.0);
    std::fill(last_time.begin(), last_time.end(), Timestamp{-1});
#pragma omp parallel num_threads(view_threads) if (view_threads > 1)
    {
#ifdef _OPENMP
      const int tid = omp_get_thread_num();
#else
      const int tid = 0;
#endif
      const InternalNode v_lo = static_cast<InternalNode>(std::min(node_count, nodes_per_thread * tid));
      const InternalNode v_hi = static_cast<InternalNode>(std::min(node_count, nodes_per_thread * (tid + 1)));
      for (std::size_t i = 0; i < m; ++i) {
        const Timestamp t = store.time_[i];
        for (int s = 0; s < sides; ++s) {
          const InternalNode v = owner_of(i, s);
          if (v < v_lo || v >= v_hi) continue;
          const std::size_t pos = entry_cursor[v]++;
          store.node_ref_edge_[pos] = static_cast<std::uint32_t>(i);
          if (last_time[v] != t) {
            store.node_ts_groups_[group_cursor[v]] = {t, static_cast<std::uint32_t>(pos)};
            ++group_cursor[v];
            last_time[v] = t;
          }
          weight_acc[v] += std::exp(static_cast<double>(t - anchor[v]));
          store.node_weight_prefix_[pos] = weight_acc[v];
        }
      }
    }
    scratch_bytes += node_count * (3 * sizeof(std::size_t) + 2 * sizeof(Timestamp) + sizeof(double));
  }

  // Sorted unique traversal neighbors for the adjacency predicate. Dedup
  // per node in parallel into the reference-array image, then compact.
  store.node_adj_offsets_.resize(node_count + 1, 0);
  {
    std::vector<InternalNode> dedup(entry_count);
    std::vector<std::size_t> unique_count(node_count, 0);
#pragma omp parallel num_threads(view_threads) if (view_threads > 1)
    {
      std::vector<InternalNode> scratch;
#pragma omp for schedule(dynamic, 1024) nowait
      for (std::int64_t v = 0; v < static_cast<std::int64_t>(node_count); ++v) {
        const std::size_t lo = store.node_group_offsets_[v];
        const std::size_t hi = store.node_group_offsets_[v + 1];
        scratch.clear();
        scratch.reserve(hi - lo);
        for (std::size_t pos = lo; pos < hi; ++pos) {
          scratch.push_back(store.ref_neighbor(pos, static_cast<InternalNode>(v)));
        }
        std::sort(scratch.begin(), scratch.end());
        scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
        unique_count[v] = scratch.size();
        std::copy(scratch.begin(), scratch.end(), dedup.begin() + static_cast<std::ptrdiff_t>(lo));
      }
    }
    for (std::size_t v = 0; v < node_count; ++v) {
      store.node_adj_offsets_[v + 1] = store.node_adj_offsets_[v] + unique_count[v];
    }
    store.node_adj_.resize(store.node_adj_offsets_[node_count]);
    for (std::size_t v = 0; v < node_count; ++v) {
      std::copy_n(dedup.begin() + static_cast<std::ptrdiff_t>(store.node_group_offsets_[v]),
                  unique_count[v],
                  store.node_adj_.begin() + static_cast<std::ptrdiff_t>(store.node_adj_offsets_[v]));
    }
    scratch_bytes += entry_count * sizeof(InternalNode) + node_count * sizeof(std::size_t);
  }

  if (telemetry) telemetry->scratch_bytes = scratch_bytes;
  return store;
}

std::pair<std::size_t, std::size_t> EdgeStore::edge_slice_for_ts_group(
    std::size_t group_index) const {
  if (group_index >= ts_group_count()) {
    throw std::out_of_range("edge_slice_for_ts_group: group index out of range");
  }
  return {ts_group_offsets_[group_index], ts_group_offsets_[group_index + 1]};
}

std::optional<InternalNode> EdgeStore::find_node(NodeId external) const {
  auto it = external_to_internal_.find(external);
  if (it == external_to_internal_.end()) return std::nullopt;
  return it->second;
}

NeighborRange EdgeStore::temporal_neighborhood(NodeId v, Timestamp t,
                                               WalkDirection dir) const {
  auto internal = find_node(v);
  if (!internal) return {};
  return temporal_neighborhood_internal(*internal, t, dir);
}

NeighborRange EdgeStore::temporal_neighborhood_internal(InternalNode v, Timestamp t,
                                                        WalkDirection dir) const {
  if (!supports(dir)) {
    throw std::invalid_argument("temporal_neighborhood: walk direction not served by this store's direction mode");
  }
  const auto [lo, hi] = node_region(v);
  if (lo == hi) return {lo, lo, 0};
  const auto marks = group_marks(v);
  const std::size_t g_total = marks.size();
  if (dir == WalkDirection::Forward) {
    // first group strictly after t
    const std::size_t g = static_cast<std::size_t>(
        std::upper_bound(marks.begin(), marks.end(), t,
                         [](Timestamp lhs, const TsGroupMark& mark) { return lhs < mark.time; }) -
        marks.begin());
    const std::size_t c = g == g_total ? hi : marks[g].start;
    return {c, hi, g_total - g};
  }
  // backward: groups strictly before t
  const std::size_t g = static_cast<std::size_t>(
      std::lower_bound(marks.begin(), marks.end(), t,
                       [](const TsGroupMark& mark, Timestamp rhs) { return mark.time < rhs; }) -
      marks.begin());
  const std::size_t c = g == g_total ? hi : marks[g].start;
  return {lo, c, g};
}

std::size_t EdgeStore::timestamp_group_count(NodeId v) const {
  auto internal = find_node(v);
  if (!internal) return 0;
  return timestamp_group_count_internal(*internal);
}

bool EdgeStore::adjacent(InternalNode a, InternalNode b) const {
  const std::size_t lo = node_adj_offsets_[a];
  const std::size_t hi = node_adj_offsets_[a + 1];
  return std::binary_search(node_adj_.begin() + lo, node_adj_.begin() + hi, b);
}

bool EdgeStore::adjacent_after(InternalNode a, InternalNode b, Timestamp t,
                               WalkDirection dir) const {
  const auto range = temporal_neighborhood_internal(a, t, dir);
  for (std::size_t pos = range.start; pos < range.end; ++pos) {
    if (ref_neighbor(pos, a) == b) return true;
  }
  return false;
}

std::vector<TemporalEdge> EdgeStore::export_suffix(Timestamp cutoff) const {
  auto it = std::lower_bound(time_.begin(), time_.end(), cutoff);
  const std::size_t from = static_cast<std::size_t>(it - time_.begin());
  std::vector<TemporalEdge> out;
  out.reserve(edge_count() - from);
  for (std::size_t i = from; i < edge_count(); ++i) out.push_back(edge_at(i));
  return out;
}

std::size_t EdgeStore::memory_bytes() const {
  std::size_t bytes = vec_bytes_impl(endpoints_, time_, ts_group_offsets_, ts_group_time_,
                                     ts_group_weight_prefix_, node_ref_edge_,
                                     node_group_offsets_, node_ts_index_, node_ts_groups_,
                                     node_weight_prefix_, node_adj_offsets_, node_adj_,
                                     internal_to_external_);
  // hash map: buckets plus one heap node per entry
  bytes += external_to_internal_.bucket_count() * sizeof(void*);
  bytes += external_to_internal_.size() * (sizeof(NodeId) + sizeof(InternalNode) + 2 * sizeof(void*));
  return bytes;
}

}  // namespace timewalk

// Copyright 2026 The coseed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coseed/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "coseed/rng.hpp"
#include "text_util.hpp"

namespace coseed {

namespace {

using text::for_each_line;
using text::is_skippable;
using text::parse_double;
using text::parse_u64;
using text::tokenize;

template <typename Item, typename KeyFn>
void build_csr(std::size_t n, const std::vector<Item>& items, KeyFn key,
               std::vector<std::size_t>& offsets) {
  offsets.assign(n + 1, 0);
  for (const Item& it : items) ++offsets[key(it) + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
}

}  // namespace

BaseGraph::BaseGraph(std::size_t node_count, std::vector<Arc> arcs, bool directed,
                     std::vector<std::uint64_t> original_ids)
    : node_count_(node_count), directed_(directed), original_ids_(std::move(original_ids)) {
  if (original_ids_.empty()) {
    original_ids_.resize(node_count_);
    for (std::size_t v = 0; v < node_count_; ++v) original_ids_[v] = v;
  } else if (original_ids_.size() != node_count_) {
    throw DomainError("original id table size differs from node count");
  }
  arcs_.reserve(directed ? arcs.size() : 2 * arcs.size());
  for (const Arc& a : arcs) {
    if (a.from >= node_count_ || a.to >= node_count_) {
      throw DomainError("arc endpoint out of range");
    }
    if (a.from == a.to) continue;
    arcs_.push_back(a);
    if (!directed) arcs_.push_back({a.to, a.from});
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

  build_csr(node_count_, arcs_, [](const Arc& a) { return a.from; }, out_offsets_);
  out_targets_.resize(arcs_.size());
  for (std::size_t i = 0; i < arcs_.size(); ++i) out_targets_[i] = arcs_[i].to;

  build_csr(node_count_, arcs_, [](const Arc& a) { return a.to; }, in_offsets_);
  in_sources_.resize(arcs_.size());
  std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (const Arc& a : arcs_) in_sources_[cursor[a.to]++] = a.from;
}

std::span<const NodeId> BaseGraph::out_neighbors(NodeId v) const {
  return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const NodeId> BaseGraph::in_neighbors(NodeId v) const {
  return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::size_t BaseGraph::degree(NodeId v) const {
  std::size_t out = out_offsets_[v + 1] - out_offsets_[v];
  if (!directed_) return out;
  return out + (in_offsets_[v + 1] - in_offsets_[v]);
}

BaseGraph load_edge_list(std::string_view text, bool directed, std::vector<std::string>* warnings) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  bool warned = false;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (is_skippable(line)) return;
    auto tokens = tokenize(line);
    if (tokens.size() < 2) throw ParseError("expected \"u v\"", line_no);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!parse_u64(tokens[0], u) || !parse_u64(tokens[1], v)) {
      throw ParseError("node ids must be non-negative integers", line_no);
    }
    if (tokens.size() > 2 && !warned && warnings != nullptr) {
      warnings->push_back("line " + std::to_string(line_no) +
                          ": extra columns (edge weights) are ignored");
      warned = true;
    }
    raw.emplace_back(u, v);
  });

  std::vector<std::uint64_t> ids;
  ids.reserve(2 * raw.size());
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > std::numeric_limits<NodeId>::max()) {
    throw CapacityError("too many distinct node ids");
  }
  std::unordered_map<std::uint64_t, NodeId> dense;
  dense.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) dense.emplace(ids[i], static_cast<NodeId>(i));

  std::vector<Arc> arcs;
  arcs.reserve(raw.size());
  for (auto [u, v] : raw) arcs.push_back({dense.at(u), dense.at(v)});
  const std::size_t node_count = ids.size();
  return BaseGraph(node_count, std::move(arcs), directed, std::move(ids));
}

BaseGraph load_edge_list_file(const std::filesystem::path& path, bool directed,
                              std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open edge list " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_edge_list(buf.str(), directed, warnings);
}

void write_edge_list(std::ostream& out, const BaseGraph& graph) {
  out << "# nodes=" << graph.node_count() << " directed=" << (graph.directed() ? 1 : 0) << '\n';
  for (const Arc& a : graph.arcs()) {
    if (!graph.directed() && a.from > a.to) continue;
    out << graph.original_id(a.from) << ' ' << graph.original_id(a.to) << '\n';
  }
}

InfluenceNetwork::InfluenceNetwork(std::size_t node_count, std::vector<WeightedArc> arcs)
    : node_count_(node_count) {
  arcs_.reserve(arcs.size());
  for (const WeightedArc& a : arcs) {
    if (a.from >= node_count || a.to >= node_count) {
      throw DomainError("arc endpoint out of range");
    }
    if (a.from == a.to) throw DomainError("self-loops are not allowed in an influence network");
    if (!(a.prob >= 0.0 && a.prob <= 1.0)) {
      throw DomainError("arc probability outside [0, 1]");
    }
    if (a.prob > 0.0) arcs_.push_back(a);
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const WeightedArc& x, const WeightedArc& y) {
    return std::tie(x.from, x.to) < std::tie(y.from, y.to);
  });
  for (std::size_t i = 1; i < arcs_.size(); ++i) {
    if (arcs_[i].from == arcs_[i - 1].from && arcs_[i].to == arcs_[i - 1].to) {
      throw DomainError("duplicate arc in influence network");
    }
  }

  build_csr(node_count_, arcs_, [](const WeightedArc& a) { return a.from; }, out_offsets_);
  out_.resize(arcs_.size());
  for (std::size_t i = 0; i < arcs_.size(); ++i) out_[i] = {arcs_[i].to, arcs_[i].prob};

  build_csr(node_count_, arcs_, [](const WeightedArc& a) { return a.to; }, in_offsets_);
  in_.resize(arcs_.size());
  std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (const WeightedArc& a : arcs_) in_[cursor[a.to]++] = {a.from, a.prob};
}

std::span<const Neighbor> InfluenceNetwork::out_arcs(NodeId v) const {
  return {out_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const Neighbor> InfluenceNetwork::in_arcs(NodeId v) const {
  return {in_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

double InfluenceNetwork::probability(NodeId from, NodeId to) const {
  if (from >= node_count_ || to >= node_count_) return 0.0;
  auto row = out_arcs(from);
  auto it = std::lower_bound(row.begin(), row.end(), to,
                             [](const Neighbor& nb, NodeId t) { return nb.node < t; });
  return (it != row.end() && it->node == to) ? it->prob : 0.0;
}

BaseGraph InfluenceNetwork::structure() const {
  std::vector<Arc> arcs;
  arcs.reserve(arcs_.size());
  for (const WeightedArc& a : arcs_) arcs.push_back({a.from, a.to});
  return BaseGraph(node_count_, std::move(arcs), true);
}

std::vector<double> draw_lambdas(std::size_t node_count, double lambda_max,
                                 std::uint64_t rng_seed) {
  if (!(lambda_max >= 0.0 && lambda_max <= 1.0)) {
    throw DomainError("lambda_max must lie in [0, 1]");
  }
  Engine engine = make_engine(rng_seed, 0);
  std::vector<double> lambdas(node_count);
  for (double& l : lambdas) l = lambda_max * uniform01(engine);
  return lambdas;
}

InfluenceNetwork assign_lambda_probabilities(const BaseGraph& base,
                                             std::span<const double> lambdas) {
  if (lambdas.size() != base.node_count()) throw DomainError("one lambda per node required");
  std::vector<WeightedArc> arcs;
  arcs.reserve(base.arc_count());
  for (const Arc& a : base.arcs()) {
    arcs.push_back({a.from, a.to, lambdas[a.from] * lambdas[a.to]});
  }
  return InfluenceNetwork(base.node_count(), std::move(arcs));
}

InfluenceNetwork assign_lambda_probabilities(const BaseGraph& base, double lambda_max,
                                             std::uint64_t rng_seed) {
  auto lambdas = draw_lambdas(base.node_count(), lambda_max, rng_seed);
  return assign_lambda_probabilities(base, lambdas);
}

InfluenceNetwork assign_uniform_probabilities(const BaseGraph& base, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("uniform probability must lie in [0, 1]");
  std::vector<WeightedArc> arcs;
  arcs.reserve(base.arc_count());
  for (const Arc& a : base.arcs()) arcs.push_back({a.from, a.to, p});
  return InfluenceNetwork(base.node_count(), std::move(arcs));
}

std::size_t swap_count(std::uint32_t s, std::size_t node_count) {
  return static_cast<std::size_t>(s) * node_count / 100;
}

std::vector<NodeId> node_swap_permutation(std::size_t node_count, std::size_t swaps,
                                          std::uint64_t rng_seed) {
  std::vector<NodeId> sigma(node_count);
  for (std::size_t v = 0; v < node_count; ++v) sigma[v] = static_cast<NodeId>(v);
  if (node_count == 0) return sigma;
  Engine engine = make_engine(rng_seed, 0);
  std::uniform_int_distribution<std::size_t> pick(0, node_count - 1);
  // Composing transposition t_k on the right keeps p_k(a, b) = p(sigma(a), sigma(b)).
  for (std::size_t k = 0; k < swaps; ++k) {
    std::size_t u = pick(engine);
    std::size_t v = pick(engine);
    std::swap(sigma[u], sigma[v]);
  }
  return sigma;
}

InfluenceNetwork node_swap_variant(const InfluenceNetwork& net, std::uint32_t s,
                                   std::uint64_t rng_seed) {
  const std::size_t n = net.node_count();
  auto sigma = node_swap_permutation(n, swap_count(s, n), rng_seed);
  std::vector<NodeId> inverse(n);
  for (std::size_t v = 0; v < n; ++v) inverse[sigma[v]] = static_cast<NodeId>(v);
  std::vector<WeightedArc> arcs;
  arcs.reserve(net.arc_count());
  for (const WeightedArc& a : net.arcs()) {
    arcs.push_back({inverse[a.from], inverse[a.to], a.prob});
  }
  return InfluenceNetwork(n, std::move(arcs));
}

std::vector<InfluenceNetwork> replicate_for_advertisers(const BaseGraph& base, std::size_t m,
                                                        const ReplicationMode& mode,
                                                        std::uint64_t rng_seed) {
  if (m == 0) throw DomainError("at least one advertiser is required");
  std::vector<InfluenceNetwork> out;
  out.reserve(m);
  using Kind = ReplicationMode::Kind;
  switch (mode.kind) {
    case Kind::kIndependent:
      for (std::size_t j = 0; j < m; ++j) {
        out.push_back(assign_lambda_probabilities(base, mode.lambda_max, derive_seed(rng_seed, j)));
      }
      break;
    case Kind::kIdentical: {
      auto shared = assign_lambda_probabilities(base, mode.lambda_max, rng_seed);
      out.assign(m, shared);
      break;
    }
    case Kind::kSwapped: {
      auto shared = assign_lambda_probabilities(base, mode.lambda_max, rng_seed);
      for (std::size_t j = 0; j < m; ++j) {
        out.push_back(node_swap_variant(shared, mode.s, derive_seed(rng_seed, 1000 + j)));
      }
      break;
    }
    case Kind::kUniform: {
      auto shared = assign_uniform_probabilities(base, mode.p);
      out.assign(m, shared);
      break;
    }
  }
  return out;
}

void write_probability_dump(std::ostream& out, std::span<const InfluenceNetwork> networks,
                            const BaseGraph& ids) {
  out << "# nodes=" << ids.node_count() << " advertisers=" << networks.size() << '\n';
  auto old_flags = out.flags();
  auto old_precision = out.precision();
  out << std::setprecision(17);
  for (std::size_t j = 0; j < networks.size(); ++j) {
    if (networks[j].node_count() != ids.node_count()) {
      throw ConfigError("network node count differs from the id graph");
    }
    for (const WeightedArc& a : networks[j].arcs()) {
      out << ids.original_id(a.from) << ' ' << ids.original_id(a.to) << ' ' << j << ' ' << a.prob
          << '\n';
    }
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

std::vector<InfluenceNetwork> read_probability_dump(std::string_view text, const BaseGraph& ids) {
  std::unordered_map<std::uint64_t, NodeId> dense;
  for (std::size_t v = 0; v < ids.node_count(); ++v) {
    dense.emplace(ids.original_id(static_cast<NodeId>(v)), static_cast<NodeId>(v));
  }
  std::size_t declared_m = 0;
  std::map<std::size_t, std::vector<WeightedArc>> per_advertiser;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (is_skippable(line)) {
      auto pos = line.find("advertisers=");
      if (pos != std::string_view::npos) {
        std::uint64_t m = 0;
        auto tail = tokenize(line.substr(pos + 12));
        if (!tail.empty() && parse_u64(tail[0], m)) declared_m = m;
      }
      return;
    }
    auto tokens = tokenize(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    std::uint64_t j = 0;
    double p = 0.0;
    if (tokens.size() != 4 || !parse_u64(tokens[0], u) || !parse_u64(tokens[1], v) ||
        !parse_u64(tokens[2], j) || !parse_double(tokens[3], p)) {
      throw ParseError("expected \"u v j p\"", line_no);
    }
    auto iu = dense.find(u);
    auto iv = dense.find(v);
    if (iu == dense.end() || iv == dense.end()) {
      throw ParseError("node id not present in the graph", line_no);
    }
    per_advertiser[j].push_back({iu->second, iv->second, p});
  });
  std::size_t m = declared_m;
  if (!per_advertiser.empty()) m = std::max(m, per_advertiser.rbegin()->first + 1);
  std::vector<InfluenceNetwork> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto it = per_advertiser.find(j);
    out.emplace_back(ids.node_count(), it == per_advertiser.end() ? std::vector<WeightedArc>{}
                                                                  : std::move(it->second));
  }
  return out;
}

}  // namespace coseed

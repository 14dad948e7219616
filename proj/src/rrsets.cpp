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

#include "coseed/rrsets.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>
#include <thread>

#include "coseed/rng.hpp"

namespace coseed {

namespace {

struct SampleChunk {
  std::vector<NodeId> roots;
  std::vector<std::size_t> lengths;
  std::vector<NodeId> members;
};

// Reverse BFS from a uniform root. Each in-arc of a visited node is flipped
// once, when the node is dequeued.
void sample_range(const InfluenceNetwork& net, std::size_t lo, std::size_t hi,
                  std::uint64_t rng_seed, SampleChunk& out) {
  const std::size_t n = net.node_count();
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t epoch = 0;
  std::vector<NodeId> queue;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = lo; i < hi; ++i) {
    Engine engine = make_engine(rng_seed, i);
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
    const NodeId root = static_cast<NodeId>(pick(engine));
    queue.clear();
    queue.push_back(root);
    stamp[root] = epoch;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Neighbor& nb : net.in_arcs(queue[head])) {
        if (stamp[nb.node] == epoch) continue;
        if (uniform01(engine) < nb.prob) {
          stamp[nb.node] = epoch;
          queue.push_back(nb.node);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    out.roots.push_back(root);
    out.lengths.push_back(queue.size());
    out.members.insert(out.members.end(), queue.begin(), queue.end());
  }
}

template <typename T>
void put(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    bytes[b] = static_cast<unsigned char>((static_cast<std::uint64_t>(value) >> (8 * b)) & 0xff);
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw ParseError("truncated RR collection", 0);
  }
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return static_cast<T>(v);
}

constexpr char kMagic[8] = {'C', 'S', 'R', 'R', 'S', 'E', 'T', '1'};

}  // namespace

RRCollection RRCollection::from_sets(AdvertiserId advertiser, std::size_t node_count,
                                     std::vector<NodeId> roots,
                                     std::vector<std::vector<NodeId>> sets) {
  if (roots.size() != sets.size()) throw DomainError("one root per RR set required");
  RRCollection c;
  c.advertiser_ = advertiser;
  c.node_count_ = node_count;
  c.roots_ = std::move(roots);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto& s = sets[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= node_count) throw DomainError("RR set member out of range");
    if (!std::binary_search(s.begin(), s.end(), c.roots_[i])) {
      throw DomainError("RR set must contain its root");
    }
    c.members_.insert(c.members_.end(), s.begin(), s.end());
    c.set_offsets_.push_back(c.members_.size());
  }
  c.build_index();
  return c;
}

void RRCollection::build_index() {
  index_offsets_.assign(node_count_ + 1, 0);
  for (NodeId v : members_) ++index_offsets_[v + 1];
  for (std::size_t v = 0; v < node_count_; ++v) index_offsets_[v + 1] += index_offsets_[v];
  index_.resize(members_.size());
  std::vector<std::size_t> cursor(index_offsets_.begin(), index_offsets_.end() - 1);
  for (std::size_t i = 0; i + 1 < set_offsets_.size(); ++i) {
    for (std::size_t k = set_offsets_[i]; k < set_offsets_[i + 1]; ++k) {
      index_[cursor[members_[k]]++] = static_cast<std::uint32_t>(i);
    }
  }
}

bool RRCollection::operator==(const RRCollection& other) const {
  return advertiser_ == other.advertiser_ && node_count_ == other.node_count_ &&
         roots_ == other.roots_ && set_offsets_ == other.set_offsets_ && members_ == other.members_;
}

RRCollection sample_rr_sets(const InfluenceNetwork& net, AdvertiserId advertiser, std::size_t count,
                            std::uint64_t rng_seed, unsigned threads) {
  if (count == 0) throw DomainError("at least one RR set is required");
  if (net.node_count() == 0) throw DomainError("cannot sample RR sets on an empty graph");
  if (count > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("too many RR sets for 32-bit set indices");
  }
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<SampleChunk> chunks(threads);
  if (threads == 1) {
    sample_range(net, 0, count, rng_seed, chunks[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t lo = count * w / threads;
      const std::size_t hi = count * (w + 1) / threads;
      pool.emplace_back([&, w, lo, hi] { sample_range(net, lo, hi, rng_seed, chunks[w]); });
    }
    for (auto& th : pool) th.join();
  }

  RRCollection c;
  c.advertiser_ = advertiser;
  c.node_count_ = net.node_count();
  std::size_t total = 0;
  for (const auto& ch : chunks) total += ch.members.size();
  c.roots_.reserve(count);
  c.set_offsets_.reserve(count + 1);
  c.members_.reserve(total);
  for (auto& ch : chunks) {
    c.roots_.insert(c.roots_.end(), ch.roots.begin(), ch.roots.end());
    for (std::size_t len : ch.lengths) c.set_offsets_.push_back(c.set_offsets_.back() + len);
    c.members_.insert(c.members_.end(), ch.members.begin(), ch.members.end());
    ch = SampleChunk{};
  }
  c.build_index();
  return c;
}

std::size_t coverage_count(const RRCollection& coll, std::span<const NodeId> seeds) {
  std::vector<std::uint8_t> hit(coll.size(), 0);
  std::size_t count = 0;
  for (NodeId v : seeds) {
    if (v >= coll.node_count()) throw DomainError("seed id out of range");
    for (std::uint32_t i : coll.sets_containing(v)) {
      if (!hit[i]) {
        hit[i] = 1;
        ++count;
      }
    }
  }
  return count;
}

double estimate_reach(const RRCollection& coll, std::span<const NodeId> seeds) {
  if (coll.size() == 0) return 0.0;
  const double scale = static_cast<double>(coll.node_count()) / static_cast<double>(coll.size());
  return scale * static_cast<double>(coverage_count(coll, seeds));
}

std::size_t default_sample_count(std::size_t node_count) { return 10 * node_count; }

CoverageTracker::CoverageTracker(const RRCollection& coll)
    : coll_(&coll), covered_(coll.size(), 0) {}

std::size_t CoverageTracker::uncovered_hits(NodeId v) const {
  std::size_t c = 0;
  for (std::uint32_t i : coll_->sets_containing(v)) c += covered_[i] == 0;
  return c;
}

std::size_t CoverageTracker::cover(NodeId v) {
  std::size_t fresh = 0;
  for (std::uint32_t i : coll_->sets_containing(v)) {
    if (!covered_[i]) {
      covered_[i] = 1;
      ++fresh;
    }
  }
  covered_count_ += fresh;
  return fresh;
}

void CoverageTracker::reset() {
  std::fill(covered_.begin(), covered_.end(), 0);
  covered_count_ = 0;
}

void write_rr_binary(std::ostream& out, const RRCollection& coll) {
  out.write(kMagic, sizeof(kMagic));
  put<std::uint64_t>(out, coll.node_count());
  put<std::uint64_t>(out, coll.size());
  put<std::uint32_t>(out, coll.advertiser());
  for (std::size_t i = 0; i < coll.size(); ++i) {
    auto s = coll.set(i);
    put<std::uint32_t>(out, coll.root(i));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    for (NodeId v : s) put<std::uint32_t>(out, v);
  }
}

RRCollection read_rr_binary(std::istream& in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ParseError("not an RR collection file", 0);
  }
  const auto n = get<std::uint64_t>(in);
  const auto rho = get<std::uint64_t>(in);
  const auto advertiser = get<std::uint32_t>(in);
  std::vector<NodeId> roots;
  std::vector<std::vector<NodeId>> sets;
  roots.reserve(rho);
  sets.reserve(rho);
  for (std::uint64_t i = 0; i < rho; ++i) {
    roots.push_back(get<std::uint32_t>(in));
    const auto len = get<std::uint32_t>(in);
    if (len > n) throw ParseError("RR set longer than the node count", 0);
    std::vector<NodeId> s(len);
    for (auto& v : s) v = get<std::uint32_t>(in);
    sets.push_back(std::move(s));
  }
  return RRCollection::from_sets(advertiser, n, std::move(roots), std::move(sets));
}

}  // namespace coseed

// Copyright 2026 The Authors.
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

#include "bm/exchange.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace bm {

std::uint64_t sequence_hash(const BaseSequence& s, int leftover) {
  std::uint64_t h = fnv1a(s.data(), s.size() * sizeof(EdgeSet));
  std::int64_t l = leftover;
  return fnv1a(&l, sizeof(l), h);
}

bool sequence_less(const BaseSequence& a, const BaseSequence& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      lex_less);
}

Fingerprint fingerprint(const BaseSequence& s) {
  Fingerprint fp{};
  // Bitwise ripple-carry addition of the membership vectors.
  for (EdgeSet b : s) {
    EdgeSet carry = b;
    for (auto& plane : fp) {
      EdgeSet next = plane & carry;
      plane ^= carry;
      carry = next;
    }
  }
  return fp;
}

std::vector<int> edge_counts(const BaseSequence& s, int edge_count) {
  std::vector<int> c(edge_count, 0);
  for (EdgeSet b : s) for_each(b, [&](int e) { ++c[e]; });
  return c;
}

bool compatible(const BaseSequence& s1, const BaseSequence& s2) {
  if (s1.size() != s2.size())
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(s1.size()) + " vs " + std::to_string(s2.size()));
  return edge_counts(s1, kMaxEdges) == edge_counts(s2, kMaxEdges);
}

bool is_base_sequence(const FrameMatroid& m, const BaseSequence& s) {
  for (EdgeSet b : s)
    if (!m.is_base(b)) return false;
  return true;
}

bool is_extended_sequence(const FrameMatroid& m,
                          const ExtendedBaseSequence& s) {
  if (s.leftover < 0 || s.leftover >= m.edge_count()) return false;
  if (s.anchor < 0 || s.anchor >= m.graph().vertex_count()) return false;
  if (!has(m.graph().incident(s.anchor), s.leftover)) return false;
  EdgeSet used = bit(s.leftover);
  for (EdgeSet b : s.bases) {
    if (!m.is_base(b) || (b & used)) return false;
    used |= b;
  }
  return used == m.ground();
}

namespace {

void require_sequence(const FrameMatroid& m, const BaseSequence& s) {
  for (EdgeSet b : s)
    if (!m.is_base(b)) throw Error(ErrorCode::NotABase, to_string(b));
}

// Calls f(i, j, e, f, new_i, new_j) for each symmetric exchange, in
// (i, j, e, f) order.
template <class F>
void for_each_exchange(const FrameMatroid& m, const EdgeSet* s, int k, F&& fn) {
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      EdgeSet bi = s[i], bj = s[j];
      for_each(bi & ~bj, [&](int e) {
        for_each(bj & ~bi, [&](int f) {
          EdgeSet ni = (bi & ~bit(e)) | bit(f);
          if (!m.is_base(ni)) return;
          EdgeSet nj = (bj & ~bit(f)) | bit(e);
          if (!m.is_base(nj)) return;
          fn(i, j, e, f, ni, nj);
        });
      });
    }
}

template <class F>
void for_each_edge_exchange(const FrameMatroid& m, const EdgeSet* s, int k,
                            int h, int u, F&& fn) {
  EdgeSet at_u = m.graph().incident(u);
  for (int i = 0; i < k; ++i)
    for_each(s[i] & at_u, [&](int e) {
      EdgeSet ni = (s[i] & ~bit(e)) | bit(h);
      if (m.is_base(ni)) fn(i, e, ni);
    });
}

// Flat arena of fixed-width states with open-addressing dedup.
class SeqStore {
 public:
  explicit SeqStore(int width) : w_(width), table_(1024, -1) {}

  int size() const { return static_cast<int>(data_.size() / w_); }
  const std::uint64_t* at(int idx) const { return data_.data() + idx * w_; }

  // Index of the state and whether it was new.
  std::pair<int, bool> insert(const std::uint64_t* s) {
    if (2 * (size() + 1) > static_cast<int>(table_.size())) grow();
    std::size_t mask = table_.size() - 1;
    for (std::size_t p = hash(s) & mask;; p = (p + 1) & mask) {
      int at_p = table_[p];
      if (at_p < 0) {
        int idx = size();
        data_.insert(data_.end(), s, s + w_);
        table_[p] = idx;
        return {idx, true};
      }
      if (std::equal(s, s + w_, at(at_p))) return {at_p, false};
    }
  }

  int find(const std::uint64_t* s) const {
    std::size_t mask = table_.size() - 1;
    for (std::size_t p = hash(s) & mask;; p = (p + 1) & mask) {
      int at_p = table_[p];
      if (at_p < 0) return -1;
      if (std::equal(s, s + w_, at(at_p))) return at_p;
    }
  }

 private:
  std::size_t hash(const std::uint64_t* s) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < w_; ++i) {
      h ^= s[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
  void grow() {
    std::vector<int> old(table_.size() * 2, -1);
    table_.swap(old);
    std::size_t mask = table_.size() - 1;
    for (int idx = 0; idx < size(); ++idx) {
      std::size_t p = hash(at(idx)) & mask;
      while (table_[p] >= 0) p = (p + 1) & mask;
      table_[p] = idx;
    }
  }

  int w_;
  std::vector<std::uint64_t> data_;
  std::vector<int> table_;
};

std::vector<std::uint64_t> pack(const BaseSequence& s, int leftover) {
  std::vector<std::uint64_t> out(s.begin(), s.end());
  out.push_back(static_cast<std::uint64_t>(static_cast<std::int64_t>(leftover)));
  return out;
}

BaseSequence unpack(const std::uint64_t* p, int k) {
  return BaseSequence(p, p + k);
}

int unpack_leftover(const std::uint64_t* p, int k) {
  return static_cast<int>(static_cast<std::int64_t>(p[k]));
}

void fill_hashes(ExchangeCertificate& cert) {
  BaseSequence s = cert.start;
  int h = cert.start_leftover;
  for (Move& mv : cert.moves) {
    mv.before_hash = sequence_hash(s, h);
    if (mv.kind == MoveKind::BB) {
      s[mv.i] = (s[mv.i] & ~bit(mv.e)) | bit(mv.f);
      s[mv.j] = (s[mv.j] & ~bit(mv.f)) | bit(mv.e);
    } else {
      s[mv.i] = (s[mv.i] & ~bit(mv.e)) | bit(h);
      h = mv.e;
    }
    mv.after_hash = sequence_hash(s, h);
  }
}

}  // namespace

std::vector<BaseSequence> neighbors_symmetric(const FrameMatroid& m,
                                              const BaseSequence& s) {
  require_sequence(m, s);
  std::vector<BaseSequence> out;
  for_each_exchange(m, s.data(), static_cast<int>(s.size()),
                    [&](int i, int j, int, int, EdgeSet ni, EdgeSet nj) {
                      BaseSequence t = s;
                      t[i] = ni;
                      t[j] = nj;
                      out.push_back(std::move(t));
                    });
  std::sort(out.begin(), out.end(), sequence_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ExtendedBaseSequence> neighbors_extended(
    const FrameMatroid& m, int u, const ExtendedBaseSequence& s) {
  if (!is_extended_sequence(m, s) || s.anchor != u)
    throw Error(ErrorCode::PreconditionViolated,
                "not a u-extended base sequence");
  std::vector<ExtendedBaseSequence> out;
  int k = static_cast<int>(s.bases.size());
  for_each_exchange(m, s.bases.data(), k,
                    [&](int i, int j, int, int, EdgeSet ni, EdgeSet nj) {
                      ExtendedBaseSequence t = s;
                      t.bases[i] = ni;
                      t.bases[j] = nj;
                      out.push_back(std::move(t));
                    });
  for_each_edge_exchange(m, s.bases.data(), k, s.leftover, u,
                         [&](int i, int e, EdgeSet ni) {
                           ExtendedBaseSequence t = s;
                           t.bases[i] = ni;
                           t.leftover = e;
                           out.push_back(std::move(t));
                         });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.bases != b.bases) return sequence_less(a.bases, b.bases);
    return a.leftover < b.leftover;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool apply_move(const FrameMatroid& m, BaseSequence& s, int& leftover,
                int anchor, const Move& mv) {
  int k = static_cast<int>(s.size());
  if (mv.i < 0 || mv.i >= k || mv.e < 0 || mv.e >= m.edge_count()) return false;
  if (mv.kind == MoveKind::BB) {
    if (mv.j < 0 || mv.j >= k || mv.j == mv.i || mv.f < 0 ||
        mv.f >= m.edge_count())
      return false;
    if (!has(s[mv.i], mv.e) || !has(s[mv.j], mv.f)) return false;
    EdgeSet ni = (s[mv.i] & ~bit(mv.e)) | bit(mv.f);
    EdgeSet nj = (s[mv.j] & ~bit(mv.f)) | bit(mv.e);
    if (!m.is_base(ni) || !m.is_base(nj)) return false;
    s[mv.i] = ni;
    s[mv.j] = nj;
    return true;
  }
  if (anchor < 0 || leftover < 0) return false;
  if (!has(s[mv.i], mv.e) || !has(m.graph().incident(anchor), mv.e))
    return false;
  EdgeSet ni = (s[mv.i] & ~bit(mv.e)) | bit(leftover);
  if (!m.is_base(ni)) return false;
  s[mv.i] = ni;
  leftover = mv.e;
  return true;
}

PathResult search_path(const FrameMatroid& m, const BaseSequence& start,
                       int leftover, const SearchSpec& spec) {
  int k = static_cast<int>(start.size());
  PathResult res;
  SeqStore store(k + 1);
  struct Link {
    int parent;
    Move mv;
  };
  std::vector<Link> links;
  auto init = pack(start, leftover);
  store.insert(init.data());
  links.push_back({-1, {}});

  auto finish = [&](int idx) {
    res.status = PathStatus::Found;
    res.cert.extended = spec.extended;
    res.cert.anchor = spec.anchor;
    res.cert.start = start;
    res.cert.start_leftover = leftover;
    res.cert.end = unpack(store.at(idx), k);
    res.cert.end_leftover = unpack_leftover(store.at(idx), k);
    for (int x = idx; links[x].parent >= 0; x = links[x].parent)
      res.cert.moves.push_back(links[x].mv);
    std::reverse(res.cert.moves.begin(), res.cert.moves.end());
    fill_hashes(res.cert);
    res.explored = store.size();
  };

  if (spec.goal && spec.goal(start, leftover)) {
    finish(0);
    return res;
  }
  std::vector<std::uint64_t> child(k + 1);
  for (int idx = 0; idx < store.size(); ++idx) {
    std::vector<std::uint64_t> cur(store.at(idx), store.at(idx) + k + 1);
    int h = unpack_leftover(cur.data(), k);
    int found = -1;
    bool limit = false;
    auto offer = [&](const Move& mv) {
      if (found >= 0 || limit) return;
      BaseSequence cs = unpack(child.data(), k);
      int ch = unpack_leftover(child.data(), k);
      if (spec.admissible && !spec.admissible(cs, ch)) return;
      auto [at, fresh] = store.insert(child.data());
      if (!fresh) return;
      links.push_back({idx, mv});
      if (spec.goal && spec.goal(cs, ch)) {
        found = at;
        return;
      }
      if (store.size() > spec.node_limit) limit = true;
    };
    for_each_exchange(m, cur.data(), k,
                      [&](int i, int j, int e, int f, EdgeSet ni, EdgeSet nj) {
                        child = cur;
                        child[i] = ni;
                        child[j] = nj;
                        Move mv;
                        mv.kind = MoveKind::BB;
                        mv.i = i;
                        mv.j = j;
                        mv.e = e;
                        mv.f = f;
                        offer(mv);
                      });
    if (spec.extended)
      for_each_edge_exchange(m, cur.data(), k, h, spec.anchor,
                             [&](int i, int e, EdgeSet ni) {
                               child = cur;
                               child[i] = ni;
                               child[k] = static_cast<std::uint64_t>(e);
                               Move mv;
                               mv.kind = MoveKind::EB;
                               mv.i = i;
                               mv.e = e;
                               offer(mv);
                             });
    if (found >= 0) {
      finish(found);
      return res;
    }
    if (limit) {
      res.status = PathStatus::LimitHit;
      res.explored = store.size();
      return res;
    }
  }
  res.status = PathStatus::NotConnected;
  res.explored = store.size();
  return res;
}

PathResult exchange_path(const FrameMatroid& m, const BaseSequence& s1,
                         const BaseSequence& s2, const PathOptions& opts) {
  if (!compatible(s1, s2))
    throw Error(ErrorCode::NotCompatible, "sequences are not compatible");
  require_sequence(m, s1);
  require_sequence(m, s2);
  BaseSequence sorted2 = s2;
  std::sort(sorted2.begin(), sorted2.end());
  SearchSpec spec;
  spec.node_limit = opts.node_limit;
  if (opts.modulo_permutation)
    spec.goal = [&](const BaseSequence& s, int) {
      BaseSequence t = s;
      std::sort(t.begin(), t.end());
      return t == sorted2;
    };
  else
    spec.goal = [&](const BaseSequence& s, int) { return s == s2; };
  return search_path(m, s1, -1, spec);
}

PathResult extended_path(const FrameMatroid& m, int u,
                         const ExtendedBaseSequence& s1,
                         const ExtendedBaseSequence& s2, long node_limit) {
  if (!is_extended_sequence(m, s1) || !is_extended_sequence(m, s2) ||
      s1.anchor != u || s2.anchor != u)
    throw Error(ErrorCode::PreconditionViolated,
                "not u-extended base sequences");
  SearchSpec spec;
  spec.extended = true;
  spec.anchor = u;
  spec.node_limit = node_limit;
  spec.goal = [&](const BaseSequence& s, int h) {
    return h == s2.leftover && s == s2.bases;
  };
  return search_path(m, s1.bases, s1.leftover, spec);
}

ReplayResult replay(const FrameMatroid& m, const ExchangeCertificate& cert) {
  ReplayResult r;
  BaseSequence s = cert.start;
  int h = cert.start_leftover;
  if (cert.extended) {
    if (!is_extended_sequence(m, {s, h, cert.anchor})) {
      r.error = "start is not an extended base sequence";
      return r;
    }
  } else if (!is_base_sequence(m, s)) {
    r.error = "start is not a base sequence";
    return r;
  }
  for (std::size_t t = 0; t < cert.moves.size(); ++t) {
    const Move& mv = cert.moves[t];
    if (mv.kind == MoveKind::EB && !cert.extended) {
      r.error = "EB move in a plain certificate";
      return r;
    }
    if (mv.before_hash && mv.before_hash != sequence_hash(s, h)) {
      r.error = "hash chain broken before move " + std::to_string(t);
      return r;
    }
    if (!apply_move(m, s, h, cert.anchor, mv)) {
      r.error = "illegal move " + std::to_string(t);
      return r;
    }
    if (mv.after_hash && mv.after_hash != sequence_hash(s, h)) {
      r.error = "hash chain broken after move " + std::to_string(t);
      return r;
    }
  }
  if (s != cert.end || h != cert.end_leftover) {
    r.error = "replay does not reach the recorded end";
    return r;
  }
  r.ok = true;
  return r;
}

namespace {

std::string hex(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex << x;
  return os.str();
}

void write_sequence(std::ostringstream& os, const char* tag,
                    const BaseSequence& s, int h) {
  os << tag << ' ' << hex(sequence_hash(s, h)) << ' ' << h;
  for (EdgeSet b : s) os << ' ' << hex(b);
  os << '\n';
}

}  // namespace

std::string serialize_certificate(const ExchangeCertificate& cert,
                                  std::uint64_t graph_hash) {
  std::ostringstream os;
  os << "graph " << hex(graph_hash) << '\n';
  os << "k " << cert.start.size() << '\n';
  os << "anchor " << (cert.extended ? cert.anchor : -1) << '\n';
  write_sequence(os, "start", cert.start, cert.start_leftover);
  write_sequence(os, "end", cert.end, cert.end_leftover);
  for (const Move& mv : cert.moves) {
    if (mv.kind == MoveKind::BB)
      os << "BB " << mv.i << ' ' << mv.j << ' ' << mv.e << ' ' << mv.f << '\n';
    else
      os << "EB " << mv.i << ' ' << mv.e << '\n';
  }
  return os.str();
}

std::pair<ExchangeCertificate, std::uint64_t> parse_certificate(
    const std::string& text) {
  ExchangeCertificate cert;
  std::uint64_t gh = 0;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::size_t k = 0;
  bool have_start = false, have_end = false;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError,
                "certificate line " + std::to_string(lineno) + ": " + why);
  };
  auto read_sequence = [&](std::istringstream& ls, BaseSequence& s, int& h) {
    std::string fp;
    if (!(ls >> fp >> h)) fail("missing fingerprint or leftover");
    s.clear();
    std::string word;
    while (ls >> word) s.push_back(std::stoull(word, nullptr, 16));
    if (s.size() != k) fail("sequence length differs from k");
    if (hex(sequence_hash(s, h)) != fp) fail("fingerprint mismatch");
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    try {
      if (tag == "graph") {
        std::string x;
        ls >> x;
        gh = std::stoull(x, nullptr, 16);
      } else if (tag == "k") {
        if (!(ls >> k)) fail("bad k");
      } else if (tag == "anchor") {
        if (!(ls >> cert.anchor)) fail("bad anchor");
        cert.extended = cert.anchor >= 0;
      } else if (tag == "start") {
        read_sequence(ls, cert.start, cert.start_leftover);
        have_start = true;
      } else if (tag == "end") {
        read_sequence(ls, cert.end, cert.end_leftover);
        have_end = true;
      } else if (tag == "BB") {
        Move mv;
        if (!(ls >> mv.i >> mv.j >> mv.e >> mv.f)) fail("bad BB move");
        cert.moves.push_back(mv);
      } else if (tag == "EB") {
        Move mv;
        mv.kind = MoveKind::EB;
        if (!(ls >> mv.i >> mv.e)) fail("bad EB move");
        cert.moves.push_back(mv);
      } else {
        fail("unknown record '" + tag + "'");
      }
    } catch (const std::invalid_argument&) {
      fail("malformed number");
    } catch (const std::out_of_range&) {
      fail("number out of range");
    }
  }
  if (!have_start || !have_end) fail("missing start or end");
  return {cert, gh};
}

WhiteReport white_verify(const FrameMatroid& m, int k,
                         const WhiteOptions& opts) {
  if (k < 1 || k > 7)
    throw Error(ErrorCode::PreconditionViolated, "k must be in 1..7");
  const auto& bs = m.bases();
  WhiteReport rep;
  rep.k = k;
  long n = static_cast<long>(bs.size());
  rep.bases = n;
  long total = 1;
  for (int t = 0; t < k; ++t) {
    if (total > opts.state_limit / std::max(1L, n))
      throw Error(ErrorCode::SizeExceeded,
                  std::to_string(n) + "^" + std::to_string(k) +
                      " tuples exceed the state limit");
    total *= n;
  }
  rep.tuples = total;
  if (n == 0) return rep;
  int me = m.edge_count();
  // swap[(b * m + e) * m + f] = index of B_b - e + f, or -1.
  std::vector<int> swap(static_cast<std::size_t>(n) * me * me, -1);
  for (long b = 0; b < n; ++b)
    for_each(bs[b], [&](int e) {
      for_each(m.ground() & ~bs[b], [&](int f) {
        swap[(b * me + e) * me + f] = m.base_index((bs[b] & ~bit(e)) | bit(f));
      });
    });
  std::vector<long> pw(k + 1, 1);
  for (int t = 1; t <= k; ++t) pw[t] = pw[t - 1] * n;
  auto digit = [&](long id, int t) { return static_cast<int>((id / pw[t]) % n); };
  auto neighbours = [&](long id, auto&& fn) {
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        int bi = digit(id, i), bj = digit(id, j);
        EdgeSet si = bs[bi], sj = bs[bj];
        for_each(si & ~sj, [&](int e) {
          for_each(sj & ~si, [&](int f) {
            int ni = swap[(static_cast<long>(bi) * me + e) * me + f];
            if (ni < 0) return;
            int nj = swap[(static_cast<long>(bj) * me + f) * me + e];
            if (nj < 0) return;
            fn(id + (ni - bi) * pw[i] + (nj - bj) * pw[j]);
          });
        });
      }
  };

  std::vector<int> comp(total, -1);
  int ncomp = 0;
  std::vector<long> queue;
  for (long s = 0; s < total; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    queue.assign(1, s);
    for (std::size_t q = 0; q < queue.size(); ++q)
      neighbours(queue[q], [&](long t) {
        if (comp[t] < 0) {
          comp[t] = ncomp;
          queue.push_back(t);
        }
      });
    ++ncomp;
  }

  struct FpHash {
    std::size_t operator()(const Fingerprint& f) const {
      return fnv1a(f.data(), sizeof(f));
    }
  };
  std::unordered_map<Fingerprint, int, FpHash> class_id;
  std::vector<int> cls(total);
  std::vector<long> class_size;
  for (long s = 0; s < total; ++s) {
    Fingerprint fp{};
    for (int t = 0; t < k; ++t) {
      EdgeSet carry = bs[digit(s, t)];
      for (auto& plane : fp) {
        EdgeSet next = plane & carry;
        plane ^= carry;
        carry = next;
      }
    }
    auto [it, fresh] =
        class_id.emplace(fp, static_cast<int>(class_size.size()));
    if (fresh) class_size.push_back(0);
    cls[s] = it->second;
    class_size[it->second]++;
  }
  rep.classes = static_cast<long>(class_size.size());
  // Members grouped by class, in increasing state id.
  std::vector<long> start(rep.classes + 1, 0);
  for (long c = 0; c < rep.classes; ++c) start[c + 1] = start[c] + class_size[c];
  std::vector<long> members(total), fill(start.begin(), start.end() - 1);
  for (long s = 0; s < total; ++s) members[fill[cls[s]]++] = s;

  auto decode = [&](long id) {
    BaseSequence seq(k);
    for (int t = 0; t < k; ++t) seq[t] = bs[digit(id, t)];
    return seq;
  };
  std::vector<int> local(total, -1);
  std::vector<int> dist;
  auto eccentricity = [&](long src, long first, long count) {
    for (long x = 0; x < count; ++x) local[members[first + x]] = static_cast<int>(x);
    dist.assign(count, -1);
    dist[local[src]] = 0;
    std::vector<long> q{src};
    int ecc = 0;
    for (std::size_t p = 0; p < q.size(); ++p) {
      int d = dist[local[q[p]]];
      ecc = std::max(ecc, d);
      neighbours(q[p], [&](long t) {
        if (dist[local[t]] < 0) {
          dist[local[t]] = d + 1;
          q.push_back(t);
        }
      });
    }
    return ecc;
  };

  for (long c = 0; c < rep.classes; ++c) {
    long first = start[c], count = class_size[c];
    rep.largest_class = std::max(rep.largest_class, count);
    int c0 = comp[members[first]];
    long other = -1;
    for (long x = 1; x < count && other < 0; ++x)
      if (comp[members[first + x]] != c0) other = members[first + x];
    bool connected = other < 0;
    if (!connected) {
      if (!rep.counterexample)
        rep.counterexample = {decode(members[first]), decode(other)};
      ++rep.counterexamples;
    } else if (count > 1) {
      if (count <= opts.exact_diameter_limit) {
        for (long x = 0; x < count; ++x)
          rep.max_diameter = std::max(
              rep.max_diameter, eccentricity(members[first + x], first, count));
      } else {
        rep.max_diameter =
            std::max(rep.max_diameter, eccentricity(members[first], first, count));
        rep.diameter_exact = false;
      }
    }
    if (opts.on_class && count <= opts.class_limit) {
      std::vector<BaseSequence> seqs;
      seqs.reserve(count);
      for (long x = 0; x < count; ++x) seqs.push_back(decode(members[first + x]));
      opts.on_class(seqs, connected);
    }
  }
  return rep;
}

std::vector<ExtendedBaseSequence> extended_sequences(const FrameMatroid& m,
                                                     int u, int k, long limit) {
  const auto& bs = m.bases();
  std::vector<ExtendedBaseSequence> out;
  BaseSequence cur(k);
  std::function<void(int, EdgeSet, int)> rec = [&](int pos, EdgeSet rest,
                                                   int h) {
    if (pos == k - 1) {
      if (m.is_base(rest)) {
        cur[pos] = rest;
        out.push_back({cur, h, u});
        if (static_cast<long>(out.size()) > limit)
          throw Error(ErrorCode::SizeExceeded,
                      "too many extended base sequences");
      }
      return;
    }
    for (EdgeSet b : bs)
      if (!(b & ~rest)) {
        cur[pos] = b;
        rec(pos + 1, rest & ~b, h);
      }
  };
  if (k < 1) return out;
  for_each(m.graph().incident(u),
           [&](int h) { rec(0, m.ground() & ~bit(h), h); });
  return out;
}

ExtendedReport extended_verify(const FrameMatroid& m, int u, int k,
                               const ExtendedOptions& opts) {
  ExtendedReport rep;
  rep.degree_condition = m.graph().degree(u) == 2 * k + 2;
  rep.size_condition = m.edge_count() == k * m.rank() + 1;
  if (!rep.size_condition)
    throw Error(ErrorCode::PreconditionViolated, "|E| differs from k*r+1");
  if (!rep.degree_condition && !opts.override_degree)
    throw Error(ErrorCode::PreconditionViolated, "d(u) differs from 2k+2");
  auto states = extended_sequences(m, u, k, opts.state_limit);
  rep.states = static_cast<long>(states.size());
  SeqStore store(k + 1);
  for (const auto& s : states) store.insert(pack(s.bases, s.leftover).data());
  std::vector<int> parent(states.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < states.size(); ++a)
    for (const auto& t : neighbors_extended(m, u, states[a])) {
      int b = store.find(pack(t.bases, t.leftover).data());
      if (b < 0)
        throw Error(ErrorCode::PreconditionViolated,
                    "neighbour outside the enumerated state set");
      parent[find(static_cast<int>(a))] = find(b);
    }
  int first_other = -1;
  for (std::size_t a = 0; a < states.size(); ++a) {
    if (find(static_cast<int>(a)) == static_cast<int>(a)) ++rep.components;
    if (first_other < 0 && find(static_cast<int>(a)) != find(0))
      first_other = static_cast<int>(a);
  }
  if (first_other >= 0) rep.counterexample = {states[0], states[first_other]};
  return rep;
}

BinomialCertificate binomial_certificate(const ExchangeCertificate& cert) {
  for (const Move& mv : cert.moves)
    if (mv.kind == MoveKind::EB)
      throw Error(ErrorCode::ContainsEBMove, "EB moves have no binomial");
  BinomialCertificate out;
  BaseSequence s = cert.start;
  std::vector<EdgeSet> mono(s.begin(), s.end());
  std::sort(mono.begin(), mono.end());
  bool ok = true;
  for (const Move& mv : cert.moves) {
    Binomial b;
    EdgeSet bi = s[mv.i], bj = s[mv.j];
    EdgeSet ni = (bi & ~bit(mv.e)) | bit(mv.f);
    EdgeSet nj = (bj & ~bit(mv.f)) | bit(mv.e);
    b.lhs = {std::min(bi, bj), std::max(bi, bj)};
    b.rhs = {std::min(ni, nj), std::max(ni, nj)};
    out.relations.push_back(b);
    s[mv.i] = ni;
    s[mv.j] = nj;
    // Rewrite the current monomial with the relation.
    for (EdgeSet x : b.lhs) {
      auto it = std::find(mono.begin(), mono.end(), x);
      if (it == mono.end()) {
        ok = false;
        break;
      }
      mono.erase(it);
    }
    mono.insert(mono.end(), b.rhs.begin(), b.rhs.end());
    std::sort(mono.begin(), mono.end());
  }
  std::vector<EdgeSet> end(cert.end.begin(), cert.end.end());
  std::sort(end.begin(), end.end());
  out.telescopes = ok && mono == end;
  return out;
}

}  // namespace bm

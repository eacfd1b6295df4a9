#include "graypaste/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>

namespace graypaste::rewrite {

namespace {

constexpr size_t kTessellationCap = 200000;
constexpr size_t kDerivationStateCap = 200000;
constexpr int kDerivationDepth = 8;
constexpr size_t kExhaustivePairCap = 20000;

std::string string_text(const FaceString& s) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << " ";
    os << s[i];
  }
  os << "]";
  return os.str();
}

}  // namespace

FaceString Step::to() const {
  if (pos < 0 || static_cast<size_t>(pos) + 1 >= from.size())
    throw SchemeError("invalid-swap", "swap position out of range");
  FaceString out = from;
  std::swap(out[static_cast<size_t>(pos)], out[static_cast<size_t>(pos) + 1]);
  return out;
}

FaceString Word::target() const { return steps.empty() ? source : steps.back().to(); }

bool Word::has_inverses() const {
  return std::any_of(steps.begin(), steps.end(), [](const Step& s) { return s.inverse; });
}

Engine::Engine(const PastingScheme& scheme, int face_limit)
    : n_(static_cast<int>(scheme.interior_faces().size())),
      face_limit_(face_limit),
      prec_(relations::prec_relation(scheme)),
      closure_(relations::transitive_closure(relations::triangle_relation(scheme))) {
  check_limit();
}

Engine::Engine(relations::FaceRelation prec, relations::FaceRelation triangle_closure,
               int face_limit)
    : n_(prec.size()),
      face_limit_(face_limit),
      prec_(std::move(prec)),
      closure_(std::move(triangle_closure)) {
  if (closure_.size() != n_) throw engine_bug("relation sizes disagree");
  check_limit();
}

void Engine::check_limit() const {
  if (n_ > face_limit_)
    throw SchemeError("face-limit",
                      "scheme has " + std::to_string(n_) +
                          " interior faces, over the configured limit of " +
                          std::to_string(face_limit_) +
                          "; raise it with --limit or GRAYPASTE_LIMIT",
                      nlohmann::json{{"faces", n_}, {"limit", face_limit_}});
}

bool Engine::swappable(int a, int b) const {
  return !closure_.contains(a, b) && !closure_.contains(b, a);
}

const std::vector<FaceString>& Engine::objects() const {
  if (!objects_built_) {
    objects_ = relations::linear_extensions(closure_);
    object_index_.clear();
    for (size_t i = 0; i < objects_.size(); ++i) object_index_[objects_[i]] = static_cast<int>(i);
    objects_built_ = true;
  }
  return objects_;
}

bool Engine::is_object(const FaceString& s) const {
  if (static_cast<int>(s.size()) != n_) return false;
  std::vector<bool> seen(static_cast<size_t>(n_), false);
  for (int f : s) {
    if (f < 0 || f >= n_ || seen[static_cast<size_t>(f)]) return false;
    seen[static_cast<size_t>(f)] = true;
  }
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (closure_.contains(s[j], s[i])) return false;
  return true;
}

int Engine::object_index(const FaceString& s) const {
  objects();
  auto it = object_index_.find(s);
  return it == object_index_.end() ? -1 : it->second;
}

std::vector<int> Engine::applicable_rewrites(const FaceString& s) const {
  std::vector<int> out;
  for (size_t i = 0; i + 1 < s.size(); ++i)
    if (prec_.contains(s[i + 1], s[i])) out.push_back(static_cast<int>(i));
  return out;
}

int Engine::rho(const FaceString& s) const {
  int count = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (prec_.contains(s[j], s[i])) ++count;
  return count;
}

FaceString Engine::apply_swap(const FaceString& s, int pos) const {
  if (pos < 0 || static_cast<size_t>(pos) + 1 >= s.size())
    throw SchemeError("invalid-swap", "swap position out of range");
  const int a = s[static_cast<size_t>(pos)];
  const int b = s[static_cast<size_t>(pos) + 1];
  if (!swappable(a, b))
    throw SchemeError("invalid-swap", "the composition order constrains " +
                                          closure_.labels()[static_cast<size_t>(a)] +
                                          " against " +
                                          closure_.labels()[static_cast<size_t>(b)]);
  FaceString out = s;
  std::swap(out[static_cast<size_t>(pos)], out[static_cast<size_t>(pos) + 1]);
  return out;
}

Step Engine::make_step(const FaceString& from, int pos) const {
  if (pos < 0 || static_cast<size_t>(pos) + 1 >= from.size())
    throw SchemeError("invalid-swap", "swap position out of range");
  const int a = from[static_cast<size_t>(pos)];
  const int b = from[static_cast<size_t>(pos) + 1];
  if (!swappable(a, b))
    throw SchemeError("invalid-swap", "faces are constrained by the composition order");
  Step st;
  st.from = from;
  st.pos = pos;
  if (prec_.contains(b, a))
    st.inverse = false;
  else if (prec_.contains(a, b))
    st.inverse = true;
  else
    throw SchemeError("invalid-swap", "adjacent faces are incomparable in both senses");
  return st;
}

NormalizeResult Engine::normalize(const FaceString& s, Strategy strategy,
                                  std::uint64_t seed) const {
  if (!is_object(s))
    throw SchemeError("not-an-object",
                      "string " + string_text(s) + " is not an admissible composition order");
  std::mt19937_64 rng(seed);
  NormalizeResult res;
  res.word.source = s;
  FaceString cur = s;
  int guard = n_ * n_ + 16;
  while (true) {
    std::vector<int> apps = applicable_rewrites(cur);
    if (apps.empty()) break;
    if (--guard < 0) throw engine_bug("rewriting did not terminate");
    int pos = 0;
    switch (strategy) {
      case Strategy::Leftmost:
        pos = apps.front();
        break;
      case Strategy::Rightmost:
        pos = apps.back();
        break;
      case Strategy::Random: {
        std::uniform_int_distribution<size_t> pick(0, apps.size() - 1);
        pos = apps[pick(rng)];
        break;
      }
    }
    Step st = make_step(cur, pos);
    if (st.inverse) throw engine_bug("oriented rewrite classified as inverse");
    cur = st.to();
    res.word.steps.push_back(std::move(st));
  }
  res.normal_form = cur;
  return res;
}

std::vector<std::pair<int, int>> Engine::exchange_edges() const {
  const auto& objs = objects();
  std::vector<std::pair<int, int>> out;
  for (size_t oi = 0; oi < objs.size(); ++oi) {
    for (int pos : applicable_rewrites(objs[oi])) {
      const int ti = object_index(apply_swap(objs[oi], pos));
      if (ti < 0) throw engine_bug("swap left the object set");
      out.emplace_back(std::min<int>(static_cast<int>(oi), ti),
                       std::max<int>(static_cast<int>(oi), ti));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Engine::exchange_graph_connected() const {
  const auto& objs = objects();
  if (objs.size() <= 1) return true;
  std::vector<std::vector<int>> adj(objs.size());
  for (const auto& [a, b] : exchange_edges()) {
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<bool> vis(objs.size(), false);
  std::deque<int> q{0};
  vis[0] = true;
  size_t seen = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[static_cast<size_t>(v)])
      if (!vis[static_cast<size_t>(w)]) {
        vis[static_cast<size_t>(w)] = true;
        ++seen;
        q.push_back(w);
      }
  }
  return seen == objs.size();
}

std::vector<Fork> Engine::local_branchings() const {
  std::vector<Fork> out;
  for (const FaceString& s : objects()) {
    std::vector<int> apps = applicable_rewrites(s);
    for (size_t ai = 0; ai < apps.size(); ++ai)
      for (size_t aj = ai; aj < apps.size(); ++aj) {
        const int i = apps[ai];
        const int j = apps[aj];
        Fork f;
        f.at = s;
        f.pos_left = i;
        f.pos_right = j;
        f.route_left.source = s;
        f.route_right.source = s;
        auto push_route = [&](Word& w, std::initializer_list<int> positions) {
          FaceString cur = s;
          for (int p : positions) {
            Step st = make_step(cur, p);
            cur = st.to();
            w.steps.push_back(std::move(st));
          }
        };
        if (i == j) {
          f.kind = ForkKind::Identical;
          push_route(f.route_left, {i});
          push_route(f.route_right, {i});
        } else if (j - i >= 2) {
          f.kind = ForkKind::Square;
          push_route(f.route_left, {i, j});
          push_route(f.route_right, {j, i});
        } else {
          f.kind = ForkKind::Hexagon;
          push_route(f.route_left, {i, i + 1, i});
          push_route(f.route_right, {i + 1, i, i + 1});
        }
        out.push_back(std::move(f));
      }
  }
  return out;
}

UniqueNormalFormReport Engine::check_unique_normal_form(
    const std::vector<std::uint64_t>& random_seeds) const {
  UniqueNormalFormReport r;
  r.graph_connected = exchange_graph_connected();
  r.strategies = {"leftmost", "rightmost"};
  for (std::uint64_t s : random_seeds) r.strategies.push_back("random(seed=" + std::to_string(s) + ")");

  std::optional<FaceString> nf;
  bool agree = true;
  for (const FaceString& s : objects()) {
    if (applicable_rewrites(s).empty()) ++r.sink_count;
    std::vector<FaceString> results;
    results.push_back(normalize(s, Strategy::Leftmost).normal_form);
    results.push_back(normalize(s, Strategy::Rightmost).normal_form);
    for (std::uint64_t seed : random_seeds)
      results.push_back(normalize(s, Strategy::Random, seed).normal_form);
    for (const FaceString& got : results) {
      if (!nf) nf = got;
      if (got != *nf) agree = false;
    }
  }
  r.strategies_agree = agree;
  if (agree) r.normal_form = nf;
  return r;
}

std::vector<Word> Engine::words_to_normal_form(const FaceString& s, size_t cap) const {
  if (!is_object(s))
    throw SchemeError("not-an-object",
                      "string " + string_text(s) + " is not an admissible composition order");
  std::vector<Word> out;
  std::vector<Step> acc;
  // Recursive enumeration of the reduction tree; leftmost branch comes first.
  auto rec = [&](auto&& self, const FaceString& cur) -> void {
    std::vector<int> apps = applicable_rewrites(cur);
    if (apps.empty()) {
      if (out.size() >= cap)
        throw SchemeError("word-limit", "more than " + std::to_string(cap) +
                                            " reduction words from " + string_text(s));
      out.push_back(Word{s, acc});
      return;
    }
    for (int pos : apps) {
      Step st = make_step(cur, pos);
      FaceString next = st.to();
      acc.push_back(std::move(st));
      self(self, next);
      acc.pop_back();
    }
  };
  rec(rec, s);
  return out;
}

Word Engine::oriented_word_between(const FaceString& from, const FaceString& to) const {
  for (const FaceString* s : {&from, &to})
    if (!is_object(*s))
      throw SchemeError("not-an-object",
                        "string " + string_text(*s) + " is not an admissible composition order");
  Word w;
  w.source = from;
  if (from == to) return w;

  std::map<FaceString, std::pair<FaceString, int>> parent;
  parent[from] = {from, -1};
  std::deque<FaceString> q{from};
  bool found = false;
  while (!q.empty() && !found) {
    FaceString cur = q.front();
    q.pop_front();
    for (int pos : applicable_rewrites(cur)) {
      FaceString nxt = apply_swap(cur, pos);
      if (parent.count(nxt)) continue;
      parent[nxt] = {cur, pos};
      if (nxt == to) {
        found = true;
        break;
      }
      q.push_back(nxt);
    }
  }
  if (!found)
    throw SchemeError("no-oriented-path", "no oriented rewrite sequence from " +
                                              string_text(from) + " to " + string_text(to));
  std::vector<int> positions;
  FaceString cur = to;
  while (cur != from) {
    auto [prev, pos] = parent.at(cur);
    positions.push_back(pos);
    cur = prev;
  }
  std::reverse(positions.begin(), positions.end());
  FaceString state = from;
  for (int pos : positions) {
    Step st = make_step(state, pos);
    if (st.inverse) throw engine_bug("oriented search produced an inverse step");
    state = st.to();
    w.steps.push_back(std::move(st));
  }
  return w;
}

bool Engine::word_well_formed(const Word& w) const {
  if (!is_object(w.source)) return false;
  FaceString cur = w.source;
  for (const Step& st : w.steps) {
    if (st.from != cur) return false;
    if (st.pos < 0 || static_cast<size_t>(st.pos) + 1 >= cur.size()) return false;
    const int a = cur[static_cast<size_t>(st.pos)];
    const int b = cur[static_cast<size_t>(st.pos) + 1];
    if (!swappable(a, b)) return false;
    const bool oriented_ok = prec_.contains(b, a);
    const bool inverse_ok = prec_.contains(a, b);
    if (st.inverse ? !inverse_ok : !oriented_ok) return false;
    cur = st.to();
  }
  return true;
}

namespace {

std::vector<Step> tail_of(const std::vector<Step>& steps) {
  return {steps.begin() + 1, steps.end()};
}

std::vector<Step> concat(std::vector<Step> a, const std::vector<Step>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::vector<RelationApplication> Engine::tessellate(const Word& w1, const Word& w2) const {
  for (const Word* w : {&w1, &w2}) {
    if (!word_well_formed(*w)) throw SchemeError("malformed-word", "word is not well-formed");
    if (w->has_inverses())
      throw SchemeError("not-oriented", "tessellation expects oriented words");
  }
  if (w1.source != w2.source || w1.target() != w2.target())
    throw SchemeError("not-parallel",
                      "words do not share both endpoints: " + string_text(w1.source) + " -> " +
                          string_text(w1.target()) + " versus " + string_text(w2.source) +
                          " -> " + string_text(w2.target()));

  std::vector<RelationApplication> out;

  auto rec = [&](auto&& self, const std::vector<Step>& a, const std::vector<Step>& b,
                 int base) -> void {
    if (out.size() > kTessellationCap)
      throw SchemeError("tessellation-limit", "tessellation grew past " +
                                                  std::to_string(kTessellationCap) +
                                                  " relation applications");
    if (a.empty() && b.empty()) return;
    if (a.empty() || b.empty()) throw engine_bug("parallel oriented words of unequal length");
    if (a.front() == b.front()) {
      self(self, tail_of(a), tail_of(b), base + 1);
      return;
    }
    const FaceString& s = a.front().from;
    const int i = a.front().pos;
    const int j = b.front().pos;
    if (i == j) throw engine_bug("distinct first steps at the same position");

    auto route = [&](std::initializer_list<int> positions) {
      std::vector<Step> r;
      FaceString cur = s;
      for (int p : positions) {
        Step st = make_step(cur, p);
        cur = st.to();
        r.push_back(std::move(st));
      }
      return r;
    };
    std::vector<Step> ra, rb;
    ApplicationKind kind;
    if (std::abs(i - j) >= 2) {
      kind = ApplicationKind::Exchange;
      ra = route({i, j});
      rb = route({j, i});
    } else {
      kind = ApplicationKind::Hexagon;
      const int p = std::min(i, j);
      std::vector<Step> low = route({p, p + 1, p});
      std::vector<Step> high = route({p + 1, p, p + 1});
      if (i == p) {
        ra = std::move(low);
        rb = std::move(high);
      } else {
        ra = std::move(high);
        rb = std::move(low);
      }
    }
    if (!(ra.front() == a.front()) || !(rb.front() == b.front()))
      throw engine_bug("fork closure does not extend the given words");
    const FaceString m = ra.back().to();
    if (m != rb.back().to()) throw engine_bug("fork closure routes disagree");

    const FaceString t = a.back().to();
    std::vector<Step> joining = oriented_word_between(m, t).steps;

    self(self, tail_of(a), concat(tail_of(ra), joining), base + 1);
    out.push_back(RelationApplication{kind, base, ra, rb});
    self(self, concat(tail_of(rb), joining), tail_of(b), base + 1);
  };

  rec(rec, w1.steps, w2.steps, 0);

  Word check = replay(w1, out);
  if (!(check == w2)) throw engine_bug("tessellation replay mismatch");
  return out;
}

Word Engine::replay(const Word& w, const std::vector<RelationApplication>& apps) const {
  if (!word_well_formed(w)) throw SchemeError("malformed-word", "word is not well-formed");
  Word cur = w;
  for (size_t k = 0; k < apps.size(); ++k) {
    const RelationApplication& app = apps[k];
    const size_t loc = static_cast<size_t>(app.loc);
    if (app.loc < 0 || loc > cur.steps.size() ||
        loc + app.before.size() > cur.steps.size())
      throw SchemeError("replay-mismatch",
                        "application " + std::to_string(k) + " is out of range");
    for (size_t i = 0; i < app.before.size(); ++i)
      if (!(cur.steps[loc + i] == app.before[i]))
        throw SchemeError("replay-mismatch", "application " + std::to_string(k) +
                                                 " does not match the word at index " +
                                                 std::to_string(app.loc));
    cur.steps.erase(cur.steps.begin() + static_cast<std::ptrdiff_t>(loc),
                    cur.steps.begin() + static_cast<std::ptrdiff_t>(loc + app.before.size()));
    cur.steps.insert(cur.steps.begin() + static_cast<std::ptrdiff_t>(loc), app.after.begin(),
                     app.after.end());
    if (!word_well_formed(cur))
      throw SchemeError("replay-mismatch", "application " + std::to_string(k) +
                                               " produced an ill-formed word");
  }
  return cur;
}

namespace {

// Key for a word with a fixed source: the (position, mark) sequence.
using WordKey = std::vector<std::pair<int, int>>;

WordKey key_of(const std::vector<Step>& steps) {
  WordKey k;
  k.reserve(steps.size());
  for (const Step& st : steps) k.emplace_back(st.pos, st.inverse ? 1 : 0);
  return k;
}

RelationApplication invert(const RelationApplication& app) {
  return RelationApplication{app.kind, app.loc, app.after, app.before};
}

}  // namespace

std::optional<std::vector<RelationApplication>> Engine::derive_relation_instance(
    const Word& lhs, const Word& rhs, const std::vector<int>& window_positions) const {
  for (const Word* w : {&lhs, &rhs})
    if (!word_well_formed(*w)) throw SchemeError("malformed-word", "word is not well-formed");
  if (lhs.source != rhs.source || lhs.target() != rhs.target())
    throw SchemeError("not-parallel", "relation instance sides do not share endpoints");

  // Conjugating an unoriented instance through its oriented form inserts a
  // full route plus its inverse, three pairs in the worst (hexagon) case.
  const size_t max_len = std::max(lhs.steps.size(), rhs.steps.size()) + 6;

  // All primitive moves applicable to `steps` (a word out of lhs.source):
  // cancelling pair removal/insertion, oriented disjoint exchange, oriented
  // hexagon route change.
  auto moves = [&](const std::vector<Step>& steps) {
    std::vector<RelationApplication> out;
    std::vector<FaceString> at;  // string before each step index
    at.reserve(steps.size() + 1);
    at.push_back(lhs.source);
    for (const Step& st : steps) at.push_back(st.to());

    for (size_t k = 0; k + 1 < steps.size(); ++k) {
      const Step& u = steps[k];
      const Step& v = steps[k + 1];
      if (u.pos == v.pos && u.inverse != v.inverse && v.from == u.to() && v.to() == u.from)
        out.push_back(RelationApplication{ApplicationKind::Cancel, static_cast<int>(k),
                                          {u, v},
                                          {}});
    }
    if (steps.size() + 2 <= max_len) {
      for (size_t k = 0; k <= steps.size(); ++k)
        for (int p : window_positions) {
          if (p < 0 || static_cast<size_t>(p) + 1 >= at[k].size()) continue;
          const int x = at[k][static_cast<size_t>(p)];
          const int y = at[k][static_cast<size_t>(p) + 1];
          if (!swappable(x, y) || !(prec_.contains(x, y) || prec_.contains(y, x))) continue;
          Step st1 = make_step(at[k], p);
          Step st2 = make_step(st1.to(), p);
          out.push_back(RelationApplication{ApplicationKind::Cancel, static_cast<int>(k),
                                            {},
                                            {st1, st2}});
        }
    }
    for (size_t k = 0; k + 1 < steps.size(); ++k) {
      const Step& u = steps[k];
      const Step& v = steps[k + 1];
      if (u.inverse || v.inverse || std::abs(u.pos - v.pos) < 2) continue;
      Step st1 = make_step(at[k], v.pos);
      if (st1.inverse) continue;
      Step st2 = make_step(st1.to(), u.pos);
      if (st2.inverse || st2.to() != v.to()) continue;
      out.push_back(RelationApplication{ApplicationKind::Exchange, static_cast<int>(k),
                                        {u, v},
                                        {st1, st2}});
    }
    for (size_t k = 0; k + 2 < steps.size(); ++k) {
      const Step& u = steps[k];
      const Step& v = steps[k + 1];
      const Step& x = steps[k + 2];
      if (u.inverse || v.inverse || x.inverse) continue;
      int p = -1;
      bool low_route = false;
      if (u.pos == x.pos && v.pos == u.pos + 1) {
        p = u.pos;
        low_route = true;  // [p, p+1, p] -> [p+1, p, p+1]
      } else if (u.pos == x.pos && v.pos == u.pos - 1) {
        p = v.pos;  // [p+1, p, p+1] -> [p, p+1, p]
      } else {
        continue;
      }
      std::vector<int> repl = low_route ? std::vector<int>{p + 1, p, p + 1}
                                        : std::vector<int>{p, p + 1, p};
      std::vector<Step> after;
      FaceString cur = at[k];
      bool fine = true;
      for (int q : repl) {
        if (q < 0 || static_cast<size_t>(q) + 1 >= cur.size()) {
          fine = false;
          break;
        }
        const int c0 = cur[static_cast<size_t>(q)];
        const int c1 = cur[static_cast<size_t>(q) + 1];
        if (!swappable(c0, c1) || !prec_.contains(c1, c0)) {
          fine = false;
          break;
        }
        Step st = make_step(cur, q);
        cur = st.to();
        after.push_back(std::move(st));
      }
      if (!fine || cur != x.to()) continue;
      out.push_back(RelationApplication{ApplicationKind::Hexagon, static_cast<int>(k),
                                        {u, v, x},
                                        after});
    }
    return out;
  };

  struct Side {
    std::map<WordKey, std::vector<RelationApplication>> chains;  // from the side's root
    std::deque<std::pair<std::vector<Step>, int>> frontier;      // word, depth
  };
  Side fwd, bwd;
  fwd.chains[key_of(lhs.steps)] = {};
  fwd.frontier.emplace_back(lhs.steps, 0);
  bwd.chains[key_of(rhs.steps)] = {};
  bwd.frontier.emplace_back(rhs.steps, 0);

  auto finish = [&](const std::vector<RelationApplication>& from_lhs,
                    const std::vector<RelationApplication>& from_rhs) {
    std::vector<RelationApplication> chain = from_lhs;
    for (auto it = from_rhs.rbegin(); it != from_rhs.rend(); ++it) chain.push_back(invert(*it));
    return chain;
  };

  if (auto hit = bwd.chains.find(key_of(lhs.steps)); hit != bwd.chains.end())
    return finish({}, hit->second);

  size_t states = 2;
  const int half = (kDerivationDepth + 1) / 2;
  for (int depth = 0; depth < half; ++depth) {
    for (Side* side : {&fwd, &bwd}) {
      const bool forward = side == &fwd;
      Side& other = forward ? bwd : fwd;
      std::deque<std::pair<std::vector<Step>, int>> next;
      while (!side->frontier.empty()) {
        auto [word, d] = side->frontier.front();
        side->frontier.pop_front();
        const auto base_chain = side->chains.at(key_of(word));
        for (const RelationApplication& app : moves(word)) {
          std::vector<Step> nw = word;
          nw.erase(nw.begin() + app.loc,
                   nw.begin() + app.loc + static_cast<std::ptrdiff_t>(app.before.size()));
          nw.insert(nw.begin() + app.loc, app.after.begin(), app.after.end());
          WordKey key = key_of(nw);
          if (side->chains.count(key)) continue;
          if (++states > kDerivationStateCap) return std::nullopt;
          std::vector<RelationApplication> chain = base_chain;
          chain.push_back(app);
          side->chains.emplace(key, chain);
          if (auto hit = other.chains.find(key); hit != other.chains.end())
            return forward ? finish(chain, hit->second) : finish(hit->second, chain);
          next.emplace_back(std::move(nw), d + 1);
        }
      }
      side->frontier = std::move(next);
    }
  }
  return std::nullopt;
}

GroupoidCaseCounts Engine::verify_groupoid_cases(const std::vector<FaceString>& over) const {
  GroupoidCaseCounts counts;
  auto comparable = [&](int a, int b) {
    return swappable(a, b) && (prec_.contains(a, b) || prec_.contains(b, a));
  };
  auto run = [&](const Word& lhs, const Word& rhs, const std::vector<int>& window) {
    bool good = false;
    try {
      auto chain = derive_relation_instance(lhs, rhs, window);
      if (chain) good = replay(lhs, *chain) == rhs;
    } catch (const SchemeError&) {
      good = false;
    }
    if (good)
      ++counts.replayed;
    else
      ++counts.failed;
  };

  for (const FaceString& s : over) {
    for (int p = 0; p + 1 < n_; ++p) {
      if (!comparable(s[static_cast<size_t>(p)], s[static_cast<size_t>(p) + 1])) continue;
      for (int q = p + 2; q + 1 < n_; ++q) {
        if (!comparable(s[static_cast<size_t>(q)], s[static_cast<size_t>(q) + 1])) continue;
        Step l1 = make_step(s, p);
        Step l2 = make_step(l1.to(), q);
        Step r1 = make_step(s, q);
        Step r2 = make_step(r1.to(), p);
        Word lhs{s, {l1, l2}};
        Word rhs{s, {r1, r2}};
        const bool o1 = !l1.inverse;
        const bool o2 = !r1.inverse;
        if (o1 && o2)
          ++counts.b_both_oriented;
        else if (!o1 && !o2)
          ++counts.b_neither_oriented;
        else
          ++counts.b_mixed;
        run(lhs, rhs, {p, q});
      }
    }
    for (int p = 0; p + 2 < n_; ++p) {
      const int a = s[static_cast<size_t>(p)];
      const int b = s[static_cast<size_t>(p) + 1];
      const int c = s[static_cast<size_t>(p) + 2];
      if (!comparable(a, b) || !comparable(b, c) || !comparable(a, c)) continue;
      auto route = [&](std::initializer_list<int> positions) {
        Word w;
        w.source = s;
        FaceString cur = s;
        for (int q : positions) {
          Step st = make_step(cur, q);
          cur = st.to();
          w.steps.push_back(std::move(st));
        }
        return w;
      };
      Word lhs = route({p, p + 1, p});
      Word rhs = route({p + 1, p, p + 1});
      const int inv = (prec_.contains(b, a) ? 1 : 0) + (prec_.contains(c, b) ? 1 : 0) +
                      (prec_.contains(c, a) ? 1 : 0);
      if (inv == 3)
        ++counts.c_three_oriented;
      else if (inv == 0)
        ++counts.c_none_oriented;
      else if (inv == 2)
        ++counts.c_two_oriented;
      else
        ++counts.c_one_oriented;
      run(lhs, rhs, {p, p + 1});
    }
  }
  return counts;
}

GroupoidCaseCounts Engine::verify_groupoid_relation_cases() const {
  return verify_groupoid_cases(objects());
}

int Engine::max_rho() const {
  int best = 0;
  for (const FaceString& s : objects()) best = std::max(best, rho(s));
  return best;
}

Certificate Engine::check_contractibility(const CertificateOptions& opts) const {
  Certificate cert;
  cert.seed = opts.seed;
  const auto& objs = objects();
  cert.objects = static_cast<int>(objs.size());
  const int mr = max_rho();
  const bool small_enough =
      cert.objects <= kExhaustiveObjectLimit && mr <= kExhaustiveRhoLimit;

  std::string mode = opts.mode;
  if (mode == "auto") mode = small_enough ? "exhaustive" : "sampled";
  if (mode == "exhaustive" && !small_enough)
    throw SchemeError("exhaustive-too-large",
                      "instance has " + std::to_string(cert.objects) + " orders (max swap count " +
                          std::to_string(mr) + "); rerun with a sampling mode and a seed",
                      nlohmann::json{{"objects", cert.objects},
                                     {"max_rho", mr},
                                     {"object_limit", kExhaustiveObjectLimit},
                                     {"rho_limit", kExhaustiveRhoLimit}});
  if (mode == "sampled" && !opts.seed)
    throw SchemeError("seed-required", "sampling requires an explicit seed");
  if (mode != "exhaustive" && mode != "sampled")
    throw SchemeError("bad-mode", "unknown mode '" + mode + "'");
  cert.tessellation_mode = mode;

  cert.unique_nf = check_unique_normal_form(opts.strategy_seeds);
  cert.graph_connected = cert.unique_nf.graph_connected;
  cert.normal_form = cert.unique_nf.normal_form;
  cert.exchange_edges = static_cast<int>(exchange_edges().size());
  if (!cert.unique_nf.graph_connected)
    cert.counterexamples.push_back("exchange graph is disconnected");
  if (cert.unique_nf.sink_count != 1)
    cert.counterexamples.push_back("expected exactly one fully reduced order, found " +
                                   std::to_string(cert.unique_nf.sink_count));
  if (!cert.unique_nf.strategies_agree)
    cert.counterexamples.push_back("reduction strategies disagree on the normal form");

  try {
    for (const Fork& f : local_branchings()) {
      ++cert.branchings_total;
      switch (f.kind) {
        case ForkKind::Identical:
          ++cert.branchings_identical;
          break;
        case ForkKind::Square:
          ++cert.branchings_square;
          break;
        case ForkKind::Hexagon:
          ++cert.branchings_hexagon;
          break;
      }
      if (!word_well_formed(f.route_left) || !word_well_formed(f.route_right) ||
          f.route_left.target() != f.route_right.target())
        cert.counterexamples.push_back("branching at " + string_text(f.at) + " positions " +
                                       std::to_string(f.pos_left) + "," +
                                       std::to_string(f.pos_right) + " does not close");
    }
  } catch (const SchemeError& e) {
    cert.counterexamples.push_back(std::string("branching enumeration failed: ") + e.what());
  }

  std::mt19937_64 rng(opts.seed.value_or(0));
  auto check_pair = [&](const Word& w1, const Word& w2) {
    ++cert.tessellation_pairs;
    try {
      std::vector<RelationApplication> apps = tessellate(w1, w2);
      if (replay(w1, apps) == w2)
        ++cert.tessellation_replayed;
      else
        cert.counterexamples.push_back("tessellation replay diverged from " +
                                       string_text(w1.source));
    } catch (const SchemeError& e) {
      cert.counterexamples.push_back(std::string("tessellation failed: ") + e.what());
    }
  };
  if (mode == "exhaustive") {
    size_t projected = 0;
    for (const FaceString& s : objs) {
      std::vector<Word> words = words_to_normal_form(s);
      projected += words.size();
      if (projected > kExhaustivePairCap)
        throw SchemeError("exhaustive-too-large",
                          "too many reduction words to tessellate exhaustively; rerun with a "
                          "sampling mode and a seed");
      for (size_t k = 1; k < words.size(); ++k) check_pair(words.front(), words[k]);
    }
  } else {
    std::uniform_int_distribution<size_t> pick(0, objs.size() - 1);
    for (int k = 0; k < opts.sampled_pairs; ++k) {
      const FaceString& s = objs[pick(rng)];
      Word w1 = normalize(s, Strategy::Random, rng()).word;
      Word w2 = normalize(s, Strategy::Random, rng()).word;
      check_pair(w1, w2);
    }
  }

  if (mode == "exhaustive") {
    cert.groupoid = verify_groupoid_cases(objs);
  } else {
    std::vector<FaceString> subset = objs;
    std::shuffle(subset.begin(), subset.end(), rng);
    if (subset.size() > 16) subset.resize(16);
    cert.groupoid = verify_groupoid_cases(subset);
  }
  if (cert.groupoid.failed > 0)
    cert.counterexamples.push_back(std::to_string(cert.groupoid.failed) +
                                   " relation instance(s) could not be derived and replayed");
  return cert;
}

}  // namespace graypaste::rewrite

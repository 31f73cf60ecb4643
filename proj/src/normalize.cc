// Copyright 2026 The mtree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mtree/normalize.h"

#include <algorithm>
#include <optional>
#include <utility>

#include "mtree/marked_tree.h"
#include "mtree/prover.h"

namespace mtree {

namespace {

using Steps = std::vector<RuleInstance>;

Steps Cat(Steps a, const Steps& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Steps Slice(const Steps& s, std::size_t from, std::size_t to) {
  return Steps(s.begin() + static_cast<std::ptrdiff_t>(from),
               s.begin() + static_cast<std::ptrdiff_t>(to));
}

// Replays both segments from t and compares endpoints.
void Validate(const ModalTree& t, const Steps& in, const Steps& out,
              const std::string& what) {
  ModalTree a, b;
  try {
    a = ApplyAll(t, in);
  } catch (const NotApplicable& e) {
    throw CommutationError(what + ": input segment does not replay: " +
                           e.what());
  }
  try {
    b = ApplyAll(t, out);
  } catch (const NotApplicable& e) {
    throw CommutationError(what + ": output segment does not replay: " +
                           e.what() + " in " + ToString(out) + " from " +
                           DebugString(t));
  }
  if (a != b) {
    throw CommutationError(what + ": endpoints differ for " + ToString(in) +
                           " vs " + ToString(out) + " from " + DebugString(t));
  }
}

RuleInstance MustResolve(const MarkedTree& t, const Anchor& a,
                         const char* what) {
  auto r = Resolve(t, a);
  if (!r) {
    throw CommutationError(std::string(what) + ": anchored node vanished");
  }
  return *r;
}

Anchor MakeChildAnchor(RuleKind kind, NodeId node, NodeId c1, NodeId c2 = 0,
                       Label beta = 0) {
  Anchor a;
  a.kind = kind;
  a.node = node;
  a.c1 = c1;
  a.c2 = c2;
  a.beta = beta;
  return a;
}

bool IsKind(const RuleInstance& r, RuleKind k) { return r.kind == k; }

struct PiFirst {
  RuleInstance pi;
  Steps rest;
};

// x then pi (pi_plus), x not pi_plus and not J  ==>  pi' then x once or
// twice (copy first, when pi duplicates what x touched).
PiFirst SwapPastPiPlus(const ModalTree& plain, const RuleInstance& x,
                       const RuleInstance& pi) {
  MarkedTree t(plain);
  const Anchor ax = MakeAnchor(t, x);
  MarkedTree u = t;
  u.Apply(x);
  const MarkedNode& w = u.At(pi.pos);
  const NodeId w_id = w.id;
  const NodeId y_id = w.children.at(pi.i - 1).node.id;
  NodeId y_t = y_id;
  const auto parent = t.Parent(y_id);
  if (!parent || *parent != w_id) {
    // Only four lifts a grandchild up to w.
    if (!IsKind(x, RuleKind::kFour) || !parent) {
      throw CommutationError("SwapPastPiPlus: duplicated child not found");
    }
    y_t = *parent;
  }
  MarkedTree cur = t;
  const RuleInstance pi2 = MustResolve(
      t, MakeChildAnchor(RuleKind::kPiPlus, w_id, y_t), "SwapPastPiPlus");
  ApplyInfo info;
  cur.Apply(pi2, &info);
  const bool twice =
      t.InSubtree(ax.node, y_t) ||
      ((IsKind(x, RuleKind::kM) || IsKind(x, RuleKind::kFour)) &&
       ax.node == w_id && ax.c1 == y_t);
  PiFirst out{pi2, {}};
  if (twice) {
    const RuleInstance r =
        MustResolve(cur, Rename(ax, info.copies), "SwapPastPiPlus");
    cur.Apply(r);
    out.rest.push_back(r);
  }
  const RuleInstance r = MustResolve(cur, ax, "SwapPastPiPlus");
  cur.Apply(r);
  out.rest.push_back(r);
  Validate(plain, {x, pi}, Cat({out.pi}, out.rest), "SwapPastPiPlus");
  return out;
}

// sigma then mu  ==>  mu' then sigmas.
PiFirst SwapSigmaPast(const ModalTree& plain, const RuleInstance& sig,
                      const RuleInstance& mu) {
  if (IsKind(mu, RuleKind::kPiPlus)) return SwapPastPiPlus(plain, sig, mu);
  MarkedTree t(plain);
  MarkedTree u = t;
  u.Apply(sig);
  MarkedTree v = u;
  v.Apply(mu);
  const RuleInstance mu2 =
      MustResolve(t, MakeAnchor(u, mu), "SwapSigmaPast");
  MarkedTree cur = t;
  cur.Apply(mu2);
  PiFirst out{mu2, AlignById(cur, v)};
  Validate(plain, {sig, mu}, Cat({out.pi}, out.rest), "SwapSigmaPast");
  return out;
}

// rho then mu  ==>  mu' then rho' (dropped when mu erased rho's node).
std::pair<RuleInstance, std::optional<RuleInstance>> SwapRhoPast(
    const ModalTree& plain, const RuleInstance& rho, const RuleInstance& mu) {
  MarkedTree t(plain);
  const Anchor ar = MakeAnchor(t, rho);
  MarkedTree u = t;
  u.Apply(rho);
  const RuleInstance mu2 = MustResolve(t, MakeAnchor(u, mu), "SwapRhoPast");
  if (auto why = WhyNotApplicable(plain, mu2)) {
    if (IsKind(mu, RuleKind::kFour)) {
      throw NoNormalForm(ToString(rho) + " empties the intermediate node of " +
                         ToString(mu) + " on " + DebugString(plain) +
                         "; the four step cannot precede the atomic step");
    }
    throw CommutationError("SwapRhoPast: " + *why);
  }
  MarkedTree cur = t;
  cur.Apply(mu2);
  std::optional<RuleInstance> rho2 = Resolve(cur, ar);
  Steps out{mu2};
  if (rho2) out.push_back(*rho2);
  Validate(plain, {rho, mu}, out, "SwapRhoPast");
  return {mu2, rho2};
}

// delta (pi_minus or four) then mu (m or J)  ==>  one or two mu-steps, then
// delta'.
std::pair<Steps, RuleInstance> SwapDeltaModal(const ModalTree& plain,
                                              const RuleInstance& delta,
                                              const RuleInstance& mu) {
  MarkedTree t(plain);
  const Anchor ad = MakeAnchor(t, delta);
  MarkedTree u = t;
  u.Apply(delta);
  const Anchor am = MakeAnchor(u, mu);
  std::vector<Anchor> mus{am};
  Anchor d2 = ad;
  if (IsKind(delta, RuleKind::kFour)) {
    const NodeId w = ad.node;
    const NodeId z = ad.c1;
    const NodeId g = t.At(*t.Find(z)).children.at(0).node.id;
    if (am.node == w && am.c1 == g) {
      // The step acts on the edge four created (m) or uses the lifted node
      // as upper child (J): do it on both edges of the original chain.
      if (IsKind(mu, RuleKind::kM)) {
        mus = {MakeChildAnchor(RuleKind::kM, w, z, 0, am.beta),
               MakeChildAnchor(RuleKind::kM, z, g, 0, am.beta)};
      } else {
        mus = {MakeChildAnchor(RuleKind::kJ, w, z, am.c2),
               MakeChildAnchor(RuleKind::kJ, z, g, am.c2)};
      }
    } else if (IsKind(mu, RuleKind::kJ) && am.node == w && am.c2 == g) {
      // Lifted node moves down as lower child: move the whole chain.
      mus = {MakeChildAnchor(RuleKind::kJ, w, am.c1, z)};
      d2 = MakeChildAnchor(RuleKind::kFour, am.c1, z);
    }
  }
  MarkedTree cur = t;
  Steps out;
  for (const Anchor& a : mus) {
    const RuleInstance r = MustResolve(cur, a, "SwapDeltaModal");
    cur.Apply(r);
    out.push_back(r);
  }
  const RuleInstance d = MustResolve(cur, d2, "SwapDeltaModal");
  Validate(plain, {delta, mu}, Cat(out, {d}), "SwapDeltaModal");
  return {out, d};
}

// J then pi (pi_plus)  ==>  pi_plus steps, J steps, sigma steps.
ReplicativeFirst SwapJPastPiPlus(const ModalTree& plain, const RuleInstance& jr,
                                 const RuleInstance& pi) {
  MarkedTree t(plain);
  const Anchor aj = MakeAnchor(t, jr);
  const NodeId x = aj.node, a = aj.c1, b = aj.c2;
  MarkedTree u = t;
  u.Apply(jr);
  const MarkedNode& wn = u.At(pi.pos);
  const NodeId w = wn.id;
  const NodeId y = wn.children.at(pi.i - 1).node.id;

  MarkedTree cur = t;
  ReplicativeFirst out;
  auto dup = [&](NodeId node, NodeId child) {
    const RuleInstance r = MustResolve(
        cur, MakeChildAnchor(RuleKind::kPiPlus, node, child), "SwapJPastPiPlus");
    ApplyInfo info;
    cur.Apply(r, &info);
    out.replicative.push_back(r);
    return info.copies;
  };
  auto join = [&](const Anchor& an) {
    const RuleInstance r = MustResolve(cur, an, "SwapJPastPiPlus");
    cur.Apply(r);
    out.modal.push_back(r);
  };

  if (y == b) {
    // Only the lower flag is duplicated.
    const auto cb = dup(x, b);
    join(MakeChildAnchor(RuleKind::kJ, x, a, cb.at(b)));
    join(aj);
    const ModalTree target = Apply(u.Erase(), pi);
    auto sig = AlignStructurally(cur.Erase(), target);
    if (!sig) throw CommutationError("SwapJPastPiPlus: no realigning sigmas");
    out.structural = *sig;
  } else if (w == x && y == a) {
    // The upper flag is duplicated, carrying the lower one with it.
    const auto cb = dup(x, b);
    const auto ca = dup(x, a);
    join(MakeChildAnchor(RuleKind::kJ, x, ca.at(a), cb.at(b)));
    join(aj);
  } else if (t.InSubtree(x, y)) {
    // The whole site of J is duplicated.
    const auto cy = dup(w, y);
    join(Rename(aj, cy));
    join(aj);
  } else {
    dup(w, y);
    join(aj);
  }
  Validate(plain, {jr, pi},
           Cat(Cat(out.replicative, out.modal), out.structural),
           "SwapJPastPiPlus");
  return out;
}

struct Measure {
  std::size_t flags = 0;
  std::size_t length = 0;
  bool operator<(const Measure& o) const {
    return flags < o.flags || (flags == o.flags && length < o.length);
  }
};

struct PushCtx {
  std::size_t swaps = 0;
  static constexpr std::size_t kMaxSwaps = 2'000'000;
};

struct Split {
  Steps reps;
  Steps rest;
};

Split Push(const ModalTree& t, const Steps& xs, const Steps& ps, PushCtx* ctx,
           std::optional<Measure> parent);

// x then ps (all pi_plus)  ==>  ps' then steps without pi_plus.
Split PushOne(const ModalTree& t, const RuleInstance& x, const Steps& ps,
              PushCtx* ctx, std::optional<Measure> parent) {
  if (ps.empty()) return {{}, {x}};
  if (++ctx->swaps > PushCtx::kMaxSwaps) {
    throw CommutationError("replicative commutation exceeded work limit");
  }
  std::optional<Measure> m = parent;
  Steps first, rest;
  if (IsKind(x, RuleKind::kJ)) {
    const Measure here{JFlagOccurrences(t, x, ps), ps.size()};
    if (parent && !(here < *parent)) {
      throw CommutationError(
          "J flag measure did not decrease (" + std::to_string(here.flags) +
          "," + std::to_string(here.length) + ") vs (" +
          std::to_string(parent->flags) + "," + std::to_string(parent->length) +
          ")");
    }
    m = here;
    ReplicativeFirst rf = SwapJPastPiPlus(t, x, ps[0]);
    first = std::move(rf.replicative);
    rest = Cat(std::move(rf.modal), rf.structural);
  } else {
    PiFirst pf = SwapPastPiPlus(t, x, ps[0]);
    first = {pf.pi};
    rest = std::move(pf.rest);
  }
  Split tail = Push(ApplyAll(t, first), rest, Slice(ps, 1, ps.size()), ctx, m);
  return {Cat(first, tail.reps), std::move(tail.rest)};
}

// xs then ps (all pi_plus)  ==>  ps' then xs' (no pi_plus), with each step of
// xs replaced in place by its commuted copies.
Split Push(const ModalTree& t, const Steps& xs, const Steps& ps, PushCtx* ctx,
           std::optional<Measure> parent) {
  if (xs.empty() || ps.empty()) return {ps, xs};
  const Steps init = Slice(xs, 0, xs.size() - 1);
  const ModalTree before_last = ApplyAll(t, init);
  Split last = PushOne(before_last, xs.back(), ps, ctx, parent);
  Split head = Push(t, init, last.reps, ctx, parent);
  return {std::move(head.reps), Cat(std::move(head.rest), last.rest)};
}

// Moves every sigma of `steps` to the end.
Split SinkSigmas(const ModalTree& t, const Steps& steps) {
  Split out;  // reps: the non-sigma steps; rest: the sigma tail.
  for (const RuleInstance& s : steps) {
    if (IsKind(s, RuleKind::kSigma)) {
      out.rest.push_back(s);
      continue;
    }
    MovedStep mv = CommuteStructural(ApplyAll(t, out.reps), out.rest, s);
    out.reps.push_back(mv.step);
    out.rest = std::move(mv.rest);
  }
  return out;
}

std::vector<ModalTree> Prefixes(const ModalTree& t, const Steps& steps) {
  std::vector<ModalTree> trees{t};
  for (const RuleInstance& r : steps) trees.push_back(Apply(trees.back(), r));
  return trees;
}

}  // namespace

std::vector<RuleInstance> NormalShape::Steps() const {
  std::vector<RuleInstance> out = replicative;
  out.insert(out.end(), modal.begin(), modal.end());
  out.insert(out.end(), decreasing.begin(), decreasing.end());
  out.insert(out.end(), atomic.begin(), atomic.end());
  out.insert(out.end(), structural.begin(), structural.end());
  return out;
}

std::size_t NormalShape::size() const {
  return replicative.size() + modal.size() + decreasing.size() + atomic.size() +
         structural.size();
}

bool IsNormal(const std::vector<RuleInstance>& steps) {
  KindClass last = KindClass::kReplicative;
  for (const RuleInstance& r : steps) {
    const KindClass c = ClassOf(r.kind);
    if (c < last) return false;
    last = c;
  }
  return true;
}

JFlagSet JFlags(const ModalTree& t, const RuleInstance& r) {
  if (r.kind != RuleKind::kJ) throw NotApplicable(ToString(r) + ": not a J step");
  if (auto why = WhyNotApplicable(t, r)) {
    throw NotApplicable(ToString(r) + ": " + *why);
  }
  if (r.pos.empty()) return JFlagSet{{}, {r.i}, {r.j}};
  const std::size_t l = r.pos[0];
  RuleInstance inner = r;
  inner.pos.erase(inner.pos.begin());
  const JFlagSet rec = JFlags(Subtree(t, {l}), inner);
  return JFlagSet{{l}, Concat({l}, rec.upper), Concat({l}, rec.lower)};
}

std::vector<RuleInstance> CommuteOverPiPlus(const ModalTree& t,
                                            const std::vector<RuleInstance>& pre,
                                            const RuleInstance& pi) {
  for (const RuleInstance& r : pre) {
    if (IsKind(r, RuleKind::kPiPlus) || IsKind(r, RuleKind::kJ)) {
      throw std::invalid_argument("CommuteOverPiPlus: " + ToString(r) +
                                  " is pi_plus or J");
    }
  }
  const auto trees = Prefixes(t, pre);
  RuleInstance cur = pi;
  Steps tail;
  for (std::size_t k = pre.size(); k-- > 0;) {
    PiFirst pf = SwapPastPiPlus(trees[k], pre[k], cur);
    cur = pf.pi;
    tail = Cat(std::move(pf.rest), tail);
  }
  Steps out = Cat({cur}, tail);
  Validate(t, Cat(pre, {pi}), out, "CommuteOverPiPlus");
  return out;
}

MovedStep CommuteStructural(const ModalTree& t,
                            const std::vector<RuleInstance>& sigmas,
                            const RuleInstance& mu) {
  if (IsKind(mu, RuleKind::kSigma)) {
    throw std::invalid_argument("CommuteStructural: mu is a sigma step");
  }
  const auto trees = Prefixes(t, sigmas);
  RuleInstance cur = mu;
  Steps tail;
  for (std::size_t k = sigmas.size(); k-- > 0;) {
    PiFirst pf = SwapSigmaPast(trees[k], sigmas[k], cur);
    cur = pf.pi;
    tail = Cat(std::move(pf.rest), tail);
  }
  Validate(t, Cat(sigmas, {mu}), Cat({cur}, tail), "CommuteStructural");
  return {cur, tail};
}

MovedStep CommuteAtomic(const ModalTree& t,
                        const std::vector<RuleInstance>& rhos,
                        const RuleInstance& mu) {
  const auto trees = Prefixes(t, rhos);
  RuleInstance cur = mu;
  Steps tail;
  for (std::size_t k = rhos.size(); k-- > 0;) {
    auto [mu2, rho2] = SwapRhoPast(trees[k], rhos[k], cur);
    cur = mu2;
    if (rho2) tail.insert(tail.begin(), *rho2);
  }
  Validate(t, Cat(rhos, {mu}), Cat({cur}, tail), "CommuteAtomic");
  return {cur, tail};
}

ModalOverDecreasing CommuteDecreasing(const ModalTree& t,
                                      const std::vector<RuleInstance>& deltas,
                                      const RuleInstance& mu) {
  const auto trees = Prefixes(t, deltas);
  Steps mus{mu};
  Steps tail;
  for (std::size_t k = deltas.size(); k-- > 0;) {
    ModalTree at = trees[k];
    RuleInstance delta = deltas[k];
    Steps next;
    for (const RuleInstance& m : mus) {
      auto [moved, d2] = SwapDeltaModal(at, delta, m);
      at = ApplyAll(at, moved);
      next = Cat(std::move(next), moved);
      delta = d2;
    }
    mus = std::move(next);
    tail.insert(tail.begin(), delta);
  }
  Validate(t, Cat(deltas, {mu}), Cat(mus, tail), "CommuteDecreasing");
  return {mus, tail};
}

std::size_t JFlagOccurrences(const ModalTree& t, const RuleInstance& j,
                             const std::vector<RuleInstance>& reps) {
  MarkedTree m(t);
  const Anchor a = MakeAnchor(m, j);
  const NodeId upper = m.At(*m.Find(a.c1)).token;
  const NodeId lower = m.At(*m.Find(a.c2)).token;
  m.Apply(j);
  m.ApplyAll(reps);
  return m.CountToken(upper) + m.CountToken(lower);
}

ReplicativeFirst CommuteJOverReplicatives(const ModalTree& t,
                                          const RuleInstance& j,
                                          const std::vector<RuleInstance>& reps) {
  if (!IsKind(j, RuleKind::kJ)) {
    throw std::invalid_argument("CommuteJOverReplicatives: not a J step");
  }
  PushCtx ctx;
  Split s = PushOne(t, j, reps, &ctx, std::nullopt);
  Split sunk = SinkSigmas(ApplyAll(t, s.reps), s.rest);
  ReplicativeFirst out{std::move(s.reps), std::move(sunk.reps),
                       std::move(sunk.rest)};
  Validate(t, Cat({j}, reps),
           Cat(Cat(out.replicative, out.modal), out.structural),
           "CommuteJOverReplicatives");
  return out;
}

ReplicativeFirst CommuteMOverReplicatives(const ModalTree& t,
                                          const RuleInstance& m,
                                          const std::vector<RuleInstance>& reps) {
  if (!IsKind(m, RuleKind::kM)) {
    throw std::invalid_argument("CommuteMOverReplicatives: not an m step");
  }
  PushCtx ctx;
  Split s = PushOne(t, m, reps, &ctx, std::nullopt);
  ReplicativeFirst out{std::move(s.reps), std::move(s.rest), {}};
  Validate(t, Cat({m}, reps), Cat(out.replicative, out.modal),
           "CommuteMOverReplicatives");
  return out;
}

ReplicativeFirst CommuteModalBlockOverPiPlus(
    const ModalTree& t, const std::vector<RuleInstance>& modal,
    const RuleInstance& pi) {
  PushCtx ctx;
  Split s = Push(t, modal, {pi}, &ctx, std::nullopt);
  Split sunk = SinkSigmas(ApplyAll(t, s.reps), s.rest);
  ReplicativeFirst out{std::move(s.reps), std::move(sunk.reps),
                       std::move(sunk.rest)};
  Validate(t, Cat(modal, {pi}),
           Cat(Cat(out.replicative, out.modal), out.structural),
           "CommuteModalBlockOverPiPlus");
  return out;
}

std::vector<RuleInstance> CompressStructural(
    const ModalTree& t, const std::vector<RuleInstance>& sigmas) {
  const MarkedTree from(t);
  MarkedTree to = from;
  to.ApplyAll(sigmas);
  Steps out = AlignById(from, to);
  Validate(t, sigmas, out, "CompressStructural");
  return out;
}

namespace {

NormalShape SplitByClass(const Steps& steps) {
  NormalShape s;
  for (const RuleInstance& r : steps) {
    switch (ClassOf(r.kind)) {
      case KindClass::kReplicative:
        s.replicative.push_back(r);
        break;
      case KindClass::kModal:
        s.modal.push_back(r);
        break;
      case KindClass::kDecreasing:
        s.decreasing.push_back(r);
        break;
      case KindClass::kAtomic:
        s.atomic.push_back(r);
        break;
      case KindClass::kStructural:
        s.structural.push_back(r);
        break;
    }
  }
  return s;
}

// Bounded search for any normal sequence with the same endpoints.
std::optional<NormalShape> SearchNormal(const Derivation& d, const System& sys,
                                        const ModalTree& end) {
  std::size_t peak = NodeCount(d.start);
  Label top = 0;
  ModalTree t = d.start;
  for (const RuleInstance& r : d.steps) {
    t = Apply(t, r);
    peak = std::max(peak, NodeCount(t));
  }
  for (const Position& k : Positions(d.start)) {
    for (const Edge& e : Subtree(d.start, k).children) top = std::max(top, e.label);
  }
  std::vector<Label> labels;
  for (Label b = 0; b <= top; ++b) labels.push_back(b);
  SearchBudget budget;
  budget.max_steps = d.steps.size() + 2;
  budget.max_nodes = 2 * peak;
  budget.max_states = 200000;
  const ProofResult r =
      SearchTrees(d.start, end, sys, budget, labels, /*strict_normal=*/true);
  if (r.verdict != Verdict::kProved) return std::nullopt;
  return SplitByClass(r.derivation->steps);
}

NormalShape NormalizeConstructive(const Derivation& d, const ModalTree& end) {
  NormalShape s;
  PushCtx ctx;
  for (const RuleInstance& mu : d.steps) {
    const ModalTree t_p = ApplyAll(d.start, s.replicative);
    const ModalTree t_m = ApplyAll(t_p, s.modal);
    const ModalTree t_d = ApplyAll(t_m, s.decreasing);
    const ModalTree t_a = ApplyAll(t_d, s.atomic);
    switch (ClassOf(mu.kind)) {
      case KindClass::kStructural:
        s.structural.push_back(mu);
        s.structural = CompressStructural(t_a, s.structural);
        break;
      case KindClass::kAtomic: {
        MovedStep mv = CommuteStructural(t_a, s.structural, mu);
        s.atomic.push_back(mv.step);
        s.structural = CompressStructural(Apply(t_a, mv.step), mv.rest);
        break;
      }
      case KindClass::kDecreasing: {
        MovedStep mv = CommuteStructural(t_a, s.structural, mu);
        MovedStep av = CommuteAtomic(t_d, s.atomic, mv.step);
        s.decreasing.push_back(av.step);
        s.atomic = std::move(av.rest);
        s.structural = CompressStructural(
            ApplyAll(Apply(t_d, av.step), s.atomic), mv.rest);
        break;
      }
      case KindClass::kModal: {
        MovedStep mv = CommuteStructural(t_a, s.structural, mu);
        MovedStep av = CommuteAtomic(t_d, s.atomic, mv.step);
        ModalOverDecreasing dv = CommuteDecreasing(t_m, s.decreasing, av.step);
        s.modal = Cat(std::move(s.modal), dv.modal);
        s.decreasing = std::move(dv.decreasing);
        s.atomic = std::move(av.rest);
        const ModalTree before_sigma = ApplyAll(
            ApplyAll(ApplyAll(t_m, dv.modal), s.decreasing), s.atomic);
        s.structural = CompressStructural(before_sigma, mv.rest);
        break;
      }
      case KindClass::kReplicative: {
        const Steps tail =
            Cat(Cat(Cat(s.modal, s.decreasing), s.atomic), s.structural);
        Split pushed = Push(t_p, tail, {mu}, &ctx, std::nullopt);
        s.replicative = Cat(std::move(s.replicative), pushed.reps);
        const ModalTree t_p2 = ApplyAll(t_p, pushed.reps);
        Split sunk = SinkSigmas(t_p2, pushed.rest);
        s.modal.clear();
        s.decreasing.clear();
        s.atomic.clear();
        for (const RuleInstance& r : sunk.reps) {
          switch (ClassOf(r.kind)) {
            case KindClass::kModal:
              if (!s.decreasing.empty() || !s.atomic.empty()) {
                throw CommutationError("Normalize: modal step out of order");
              }
              s.modal.push_back(r);
              break;
            case KindClass::kDecreasing:
              if (!s.atomic.empty()) {
                throw CommutationError("Normalize: decreasing step out of order");
              }
              s.decreasing.push_back(r);
              break;
            case KindClass::kAtomic:
              s.atomic.push_back(r);
              break;
            default:
              throw CommutationError("Normalize: unexpected step " +
                                     ToString(r));
          }
        }
        s.structural =
            CompressStructural(ApplyAll(t_p2, sunk.reps), sunk.rest);
        break;
      }
    }
  }
  if (!IsNormal(s.Steps())) {
    throw CommutationError("Normalize: result is not in normal shape");
  }
  if (ApplyAll(d.start, s.Steps()) != end) {
    throw CommutationError("Normalize: endpoint differs");
  }
  return s;
}

}  // namespace

NormalShape Normalize(const Derivation& d, const System& sys) {
  const ModalTree end = Check(d, sys);
  try {
    return NormalizeConstructive(d, end);
  } catch (const NoNormalForm& e) {
    if (auto found = SearchNormal(d, sys, end)) {
      if (!IsNormal(found->Steps()) || ApplyAll(d.start, found->Steps()) != end) {
        throw CommutationError("Normalize: fallback search returned a bad sequence");
      }
      return *found;
    }
    throw NoNormalForm(std::string(e.what()) +
                       "; bounded search found no normal sequence either");
  }
}

BigBound BoundReport::Modal(std::size_t decreasing_len,
                            std::size_t replicative_len) const {
  const BigBound two = BigBound::Of(2);
  if (!with_j) return Pow(two, BigBound::Of(decreasing_len + length));
  const BigBound inner =
      Pow(BigBound::Of(replicative_len + width + 1), BigBound::Of(height));
  return Pow(two, BigBound::Of(decreasing_len) +
                      BigBound::Of(2 * length) * inner);
}

std::string BoundReport::ModalFormula() const {
  if (!with_j) return "2^(|Od| + " + std::to_string(length) + ")";
  return "2^(|Od| + " + std::to_string(2 * length) + " * (|O+| + " +
         std::to_string(width + 1) + ")^" + std::to_string(height) + ")";
}

std::vector<std::string> BoundReport::Violations(const NormalShape& shape) const {
  std::vector<std::string> out;
  auto check = [&out](const char* name, std::size_t n, const BigBound& b) {
    if (!b.Admits(n)) {
      out.push_back(std::string(name) + " block has " + std::to_string(n) +
                    " steps, bound " + b.ToString());
    }
  };
  check("replicative", shape.replicative.size(), replicative);
  check("modal", shape.modal.size(),
        Modal(shape.decreasing.size(), shape.replicative.size()));
  check("decreasing+atomic", shape.decreasing.size() + shape.atomic.size(),
        decreasing_atomic);
  check("structural", shape.structural.size(), structural);
  return out;
}

BoundReport TheoremBounds(const Derivation& d, const System& sys) {
  const ModalTree end = Check(d, sys);
  BoundReport b;
  b.with_j = sys.j();
  b.length = d.steps.size();
  b.width = Width(d.start);
  b.height = Height(d.start);
  b.end_nodes = NodeCount(end);
  const BigBound two = BigBound::Of(2);
  if (b.with_j) {
    b.replicative =
        Pow(BigBound::Of(b.width + 1),
            Pow(BigBound::Of(b.height + 1), BigBound::Of(2 * b.length)));
  } else {
    b.replicative = BigBound::Of(b.length);
  }
  b.decreasing_atomic = Pow(two, BigBound::Of(b.length));
  b.structural = BigBound::Of(b.end_nodes - 1);
  return b;
}

}  // namespace mtree

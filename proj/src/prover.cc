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

#include "mtree/prover.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

#include "mtree/embed.h"

namespace mtree {

bool Models(const ModalTree& t, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kTop:
      return true;
    case Formula::Kind::kVar:
      return std::find(t.atoms.begin(), t.atoms.end(), f.name()) !=
             t.atoms.end();
    case Formula::Kind::kAnd:
      return Models(t, f.left()) && Models(t, f.right());
    case Formula::Kind::kDia:
      for (const Edge& e : t.children) {
        if (e.label == f.label() && Models(e.tree, f.body())) return true;
      }
      return false;
  }
  return false;
}

bool EntailsKPlus(const Formula& phi, const Formula& psi) {
  return Models(ToTree(phi), psi);
}

void SearchBudget::Validate() const {
  if (max_steps < 1 || max_nodes < 1 || max_states < 1 || threads < 1) {
    throw std::invalid_argument("search budget fields must all be >= 1");
  }
}

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kProved:
      return "proved";
    case Verdict::kRefuted:
      return "refuted";
    case Verdict::kUnknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

using Steps = std::vector<RuleInstance>;

class Completion {
 public:
  bool Matchable(const ModalTree& s, const ModalTree& t) {
    const auto key = std::make_pair(&s, &t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = s.children.size() == t.children.size() &&
              AtomsAvailable(s.atoms, t.atoms) && Match(s, t).has_value();
    memo_[key] = ok;
    return ok;
  }

  // Target slot j is filled by source child result[j].
  std::optional<std::vector<std::size_t>> Match(const ModalTree& s,
                                                const ModalTree& t) {
    const std::size_t k = t.children.size();
    std::vector<std::vector<std::size_t>> adj(k);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        if (s.children[i].label == t.children[j].label &&
            Matchable(s.children[i].tree, t.children[j].tree)) {
          adj[j].push_back(i);
        }
      }
    }
    std::vector<std::ptrdiff_t> owner(k, -1);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<bool> seen(k, false);
      if (!Augment(j, adj, &owner, &seen)) return std::nullopt;
    }
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) {
      out[static_cast<std::size_t>(owner[i])] = i;
    }
    return out;
  }

  void Build(const ModalTree& s, const ModalTree& t, const Position& pos,
             Steps* atoms, Steps* sigmas) {
    AtomSteps(s.atoms, t.atoms, pos, atoms);
    const auto m = *Match(s, t);
    std::vector<std::size_t> current(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) current[i] = i;
    for (std::size_t j = 0; j < m.size(); ++j) {
      Build(s.children[m[j]].tree, t.children[j].tree, Concat(pos, {m[j] + 1}),
            atoms, sigmas);
    }
    const Steps here = SortingSigmas(pos, current, m);
    sigmas->insert(sigmas->end(), here.begin(), here.end());
  }

 private:
  static bool AtomsAvailable(const std::vector<std::string>& have,
                             const std::vector<std::string>& want) {
    const std::set<std::string> h(have.begin(), have.end());
    return std::all_of(want.begin(), want.end(),
                       [&h](const std::string& a) { return h.count(a) > 0; });
  }

  static bool Augment(std::size_t j,
                      const std::vector<std::vector<std::size_t>>& adj,
                      std::vector<std::ptrdiff_t>* owner,
                      std::vector<bool>* seen) {
    for (std::size_t i : adj[j]) {
      if ((*seen)[i]) continue;
      (*seen)[i] = true;
      if ((*owner)[i] < 0 ||
          Augment(static_cast<std::size_t>((*owner)[i]), adj, owner, seen)) {
        (*owner)[i] = static_cast<std::ptrdiff_t>(j);
        return true;
      }
    }
    return false;
  }

  // Keeps the longest suffix of `want` that embeds in `have`, prepends the
  // rest of `want`, then deletes the unkept source atoms.
  static void AtomSteps(const std::vector<std::string>& have,
                        const std::vector<std::string>& want,
                        const Position& pos, Steps* out) {
    std::vector<bool> kept(have.size(), false);
    std::size_t k = want.size();
    std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(have.size()) - 1;
    while (k > 0) {
      std::ptrdiff_t p = idx;
      while (p >= 0 && have[static_cast<std::size_t>(p)] != want[k - 1]) --p;
      if (p < 0) break;
      kept[static_cast<std::size_t>(p)] = true;
      idx = p - 1;
      --k;
    }
    std::vector<std::string> cur = have;
    for (std::size_t g = k; g-- > 0;) {
      const auto it = std::find(cur.begin(), cur.end(), want[g]);
      out->push_back(RhoPlus(pos, static_cast<std::size_t>(it - cur.begin()) + 1));
      cur.insert(cur.begin(), want[g]);
    }
    for (std::size_t p = have.size(); p-- > 0;) {
      if (!kept[p]) out->push_back(RhoMinus(pos, k + p + 1));
    }
  }

  std::map<std::pair<const ModalTree*, const ModalTree*>, bool> memo_;
};

struct StateKey {
  ModalTree tree;
  int phase;
  friend bool operator==(const StateKey& a, const StateKey& b) {
    return a.phase == b.phase && a.tree == b.tree;
  }
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    return HashTree(k.tree) * 31 + static_cast<std::size_t>(k.phase);
  }
};

int PhaseOf(RuleKind k) {
  switch (ClassOf(k)) {
    case KindClass::kReplicative:
      return 0;
    case KindClass::kModal:
      return 1;
    default:
      return 2;
  }
}

class Searcher {
 public:
  Searcher(const ModalTree& target, const System& sys,
           const SearchBudget& budget, const std::vector<Label>& betas,
           bool strict)
      : target_(target),
        sys_(sys),
        budget_(budget),
        betas_(betas.begin(), betas.end()),
        target_nodes_(NodeCount(target)),
        strict_(strict) {}

  ProofResult Run(const ModalTree& start) {
    ProofResult res;
    for (std::size_t limit = 0; limit <= budget_.max_steps; ++limit) {
      visited_.clear();
      hit_depth_ = false;
      if (budget_.threads > 1 && limit > 0) {
        RunParallel(start, limit);
      } else {
        Steps path;
        Dfs(start, 0, limit, &path);
      }
      if (found_) break;
      if (out_of_states_) {
        res.diagnostics = "state budget exhausted at depth " +
                          std::to_string(limit);
        break;
      }
      if (!hit_depth_) {
        res.diagnostics = "search space exhausted at depth " +
                          std::to_string(limit) + " under node cap " +
                          std::to_string(budget_.max_nodes);
        break;
      }
      res.diagnostics = "step budget " + std::to_string(budget_.max_steps) +
                        " exhausted";
    }
    res.states = states_;
    if (found_) {
      Derivation d{start, solution_};
      const ModalTree end = Check(d, sys_);
      if (end != target_) {
        throw std::logic_error("prover produced a derivation with wrong end");
      }
      res.verdict = Verdict::kProved;
      res.derivation = std::move(d);
      const std::size_t n = solution_.size();
      res.diagnostics = "found derivation of " + std::to_string(n) +
                        (n == 1 ? " step" : " steps");
    }
    return res;
  }

 private:
  std::vector<std::pair<RuleInstance, int>> Moves(const ModalTree& t,
                                                  int phase) const {
    std::vector<std::pair<RuleInstance, int>> out;
    for (const RuleInstance& r : EnumerateApplicable(t, sys_.kinds())) {
      if (ClassOf(r.kind) == KindClass::kAtomic ||
          ClassOf(r.kind) == KindClass::kStructural) {
        continue;
      }
      const int q = PhaseOf(r.kind);
      if (q < phase) continue;
      if (r.kind == RuleKind::kM && betas_.count(r.beta) == 0) continue;
      out.emplace_back(r, q);
    }
    // Atom deletion that empties the intermediate node of a four step.
    if (sys_.four() && !strict_) {
      for (const Position& k : Positions(t)) {
        if (k.empty()) continue;
        const Position parent(k.begin(), k.end() - 1);
        const Label in = Subtree(t, parent).children[k.back() - 1].label;
        const ModalTree& z = Subtree(t, k);
        if (z.children.size() != 1 || z.children[0].label != in) continue;
        for (std::size_t i = 1; i <= z.atoms.size(); ++i) {
          out.emplace_back(RhoMinus(k, i), 2);
        }
      }
    }
    return out;
  }

  bool Visit(const ModalTree& t, int phase, std::size_t remaining) {
    StateKey key{t, phase};
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = visited_.try_emplace(std::move(key), remaining);
    if (inserted) return true;
    if (it->second >= remaining) return false;
    it->second = remaining;
    return true;
  }

  void Dfs(const ModalTree& t, int phase, std::size_t remaining, Steps* path) {
    if (found_ || out_of_states_) return;
    if (++states_ > budget_.max_states) {
      out_of_states_ = true;
      return;
    }
    Completion c;
    if (c.Matchable(t, target_)) {
      Steps atoms, sigmas;
      c.Build(t, target_, {}, &atoms, &sigmas);
      std::lock_guard<std::mutex> lock(mu_);
      if (!found_) {
        solution_ = *path;
        solution_.insert(solution_.end(), atoms.begin(), atoms.end());
        solution_.insert(solution_.end(), sigmas.begin(), sigmas.end());
        found_ = true;
      }
      return;
    }
    if (remaining == 0) {
      hit_depth_ = true;
      return;
    }
    if (!Visit(t, phase, remaining)) return;
    for (const auto& [r, q] : Moves(t, phase)) {
      ModalTree next = Apply(t, r);
      const std::size_t n = NodeCount(next);
      if (n > budget_.max_nodes) continue;
      if (q >= 1 && n < target_nodes_) continue;
      path->push_back(r);
      Dfs(next, q, remaining - 1, path);
      path->pop_back();
      if (found_ || out_of_states_) return;
    }
  }

  void RunParallel(const ModalTree& start, std::size_t limit) {
    Steps root_path;
    Dfs(start, 0, 0, &root_path);
    hit_depth_ = false;
    if (found_ || out_of_states_) return;
    const auto moves = Moves(start, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t k = next++; k < moves.size() && !found_; k = next++) {
        const auto& [r, q] = moves[k];
        ModalTree t = Apply(start, r);
        const std::size_t n = NodeCount(t);
        if (n > budget_.max_nodes || (q >= 1 && n < target_nodes_)) continue;
        Steps path{r};
        Dfs(t, q, limit - 1, &path);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < budget_.threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const ModalTree& target_;
  System sys_;
  SearchBudget budget_;
  std::set<Label> betas_;
  std::size_t target_nodes_;
  bool strict_;
  std::mutex mu_;
  std::unordered_map<StateKey, std::size_t, StateKeyHash> visited_;
  std::atomic<std::size_t> states_{0};
  std::atomic<bool> found_{false};
  std::atomic<bool> out_of_states_{false};
  std::atomic<bool> hit_depth_{false};
  Steps solution_;
};

void CollectLabels(const ModalTree& t, std::set<Label>* out) {
  for (const Edge& e : t.children) {
    out->insert(e.label);
    CollectLabels(e.tree, out);
  }
}

}  // namespace

std::optional<std::vector<RuleInstance>> CompletionSteps(const ModalTree& from,
                                                         const ModalTree& to) {
  Completion c;
  if (!c.Matchable(from, to)) return std::nullopt;
  Steps atoms, sigmas;
  c.Build(from, to, {}, &atoms, &sigmas);
  atoms.insert(atoms.end(), sigmas.begin(), sigmas.end());
  return atoms;
}

ProofResult SearchTrees(const ModalTree& start, const ModalTree& target,
                        const System& sys, const SearchBudget& budget,
                        const std::vector<Label>& beta_labels,
                        bool strict_normal) {
  budget.Validate();
  Searcher s(target, sys, budget, beta_labels, strict_normal);
  return s.Run(start);
}

ProofResult Prove(const Formula& phi, const Formula& psi, const System& sys,
                  const SearchBudget& budget) {
  budget.Validate();
  const bool kplus = sys == System::KPlus();
  if (kplus && !EntailsKPlus(phi, psi)) {
    ProofResult r;
    r.verdict = Verdict::kRefuted;
    r.diagnostics = "countermodel: the tree of the premise does not satisfy " +
                    Print(psi) + " at its root";
    return r;
  }
  const ModalTree target = ToTree(psi);
  std::set<Label> labels{0};
  CollectLabels(target, &labels);
  ProofResult r = SearchTrees(ToTree(phi), target, sys, budget,
                              std::vector<Label>(labels.begin(), labels.end()));
  if (kplus && r.verdict == Verdict::kUnknown) {
    r.diagnostics += "; semantically valid in K+ but no derivation within budget";
  }
  return r;
}

Equivalence Equiv(const Formula& phi, const Formula& psi, const System& sys,
                  const SearchBudget& budget) {
  const ProofResult a = Prove(phi, psi, sys, budget);
  if (a.verdict == Verdict::kRefuted) return Equivalence::kNotEquivalent;
  const ProofResult b = Prove(psi, phi, sys, budget);
  if (b.verdict == Verdict::kRefuted) return Equivalence::kNotEquivalent;
  if (a.verdict == Verdict::kProved && b.verdict == Verdict::kProved) {
    return Equivalence::kEquivalent;
  }
  return Equivalence::kUnknown;
}

}  // namespace mtree

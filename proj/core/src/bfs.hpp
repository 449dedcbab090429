#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <thread>
#include <unordered_set>
#include <vector>

#include "scmlab/rewrite.hpp"
#include "text_util.hpp"

namespace scmlab::detail {

inline unsigned resolve_threads(const SearchOptions& opts) {
  if (opts.threads) return *opts.threads;
  if (const char* env = std::getenv("SCMLAB_THREADS")) {
    if (auto v = parse_size(env)) return static_cast<unsigned>(*v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <class State>
struct SearchHooks {
  std::function<void(const State&, std::vector<State>&)> expand;
  std::function<std::size_t(const State&)> length;
  /// Terminal word to report when `state` is accepting.
  std::function<std::optional<Word>(const State&)> accept;
};

/// Level-synchronous BFS. Each level is sorted before expansion and
/// successors are merged in frontier order, so the result does not depend on
/// the worker count.
template <class State, class Hash = std::hash<State>>
BoundedLanguage bounded_search(std::vector<State> initial, const SearchHooks<State>& hooks,
                               const SearchCaps& caps, unsigned threads,
                               std::vector<State>* visited_out = nullptr) {
  caps.validate();
  BoundedLanguage out;
  std::unordered_set<State, Hash> visited;
  std::vector<State> frontier;
  for (auto& s : initial) {
    if (hooks.length(s) > caps.max_form_len) {
      out.saturated = true;
      continue;
    }
    if (visited.insert(s).second) frontier.push_back(std::move(s));
  }

  std::vector<std::vector<State>> succ;
  for (std::size_t depth = 0; !frontier.empty(); ++depth) {
    std::sort(frontier.begin(), frontier.end());
    for (const auto& s : frontier)
      if (auto w = hooks.accept(s); w && w->size() <= caps.max_word_len) out.words.push_back(*w);

    succ.assign(frontier.size(), {});
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) hooks.expand(frontier[k], succ[k]);
    };
    const std::size_t n = frontier.size();
    if (threads > 1 && n >= 64) {
      const std::size_t workers = std::min<std::size_t>(threads, n / 32);
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back(work, n * t / workers, n * (t + 1) / workers);
      for (auto& th : pool) th.join();
    } else {
      work(0, n);
    }

    if (caps.max_steps && depth >= *caps.max_steps) {
      for (const auto& v : succ)
        if (!v.empty()) out.saturated = true;
      break;
    }

    std::vector<State> next;
    bool over_budget = false;
    for (auto& v : succ) {
      for (auto& s : v) {
        if (hooks.length(s) > caps.max_form_len) {
          out.saturated = true;
          continue;
        }
        if (!visited.insert(s).second) continue;
        next.push_back(std::move(s));
        if (caps.max_states && visited.size() > *caps.max_states) {
          over_budget = true;
          break;
        }
      }
      if (over_budget) break;
    }
    if (over_budget) {
      out.saturated = true;
      out.budget_exhausted = true;
      break;
    }
    frontier = std::move(next);
  }

  std::sort(out.words.begin(), out.words.end());
  out.words.erase(std::unique(out.words.begin(), out.words.end()), out.words.end());
  out.states_explored = visited.size();
  if (visited_out) {
    visited_out->assign(visited.begin(), visited.end());
    std::sort(visited_out->begin(), visited_out->end());
  }
  return out;
}

}  // namespace scmlab::detail

// Copyright 2026 The atomcompact Authors
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

#include "atomcompact/cell.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "atomcompact/error.hpp"

namespace atomcompact {

std::string TaggedTuple::str() const {
  std::string out = tag + "(";
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += " ";
    out += atoms[i].str();
  }
  return out + ")";
}

namespace cells {

namespace {

// Calls `emit` once per element of the cartesian product of option counts.
void for_each_choice(const std::vector<size_t>& counts, const std::function<void(const std::vector<size_t>&)>& emit) {
  std::vector<size_t> pick(counts.size(), 0);
  for (size_t c : counts)
    if (c == 0) return;
  while (true) {
    emit(pick);
    size_t i = 0;
    while (i < counts.size() && ++pick[i] == counts[i]) pick[i++] = 0;
    if (i == counts.size()) return;
  }
}

struct Merge {
  std::vector<int> left, right;
  int total = 0;
};

void merges(int a, int b, int i, int j, Merge& cur, std::vector<Merge>& out) {
  if (i == a && j == b) {
    out.push_back(cur);
    return;
  }
  int next = cur.total;
  ++cur.total;
  if (i < a) {
    cur.left[i] = next;
    merges(a, b, i + 1, j, cur, out);
  }
  if (j < b) {
    cur.right[j] = next;
    merges(a, b, i, j + 1, cur, out);
  }
  if (i < a && j < b) {
    cur.left[i] = next;
    cur.right[j] = next;
    merges(a, b, i + 1, j + 1, cur, out);
  }
  --cur.total;
}

std::map<int, int> interval_sizes(const Cell& cell) {
  std::map<int, std::set<int>> ranks;
  for (const auto& c : cell.coords)
    if (c.slot % 2 == 0) ranks[c.slot].insert(c.rank);
  std::map<int, int> out;
  for (auto& [slot, r] : ranks) out[slot] = static_cast<int>(r.size());
  return out;
}

}  // namespace

Cell canonical(Theory theory, Cell cell) {
  if (theory == Theory::Eq) {
    std::map<int, int> renumber;
    for (auto& c : cell.coords) {
      if (c.slot != kBlockSlot) {
        c.rank = 0;
        continue;
      }
      auto [it, inserted] = renumber.emplace(c.rank, static_cast<int>(renumber.size()));
      c.rank = it->second;
    }
    return cell;
  }
  std::map<int, std::set<int>> ranks;
  for (const auto& c : cell.coords)
    if (c.slot % 2 == 0) ranks[c.slot].insert(c.rank);
  for (auto& c : cell.coords) {
    if (c.slot % 2 != 0) {
      c.rank = 0;
      continue;
    }
    const auto& r = ranks[c.slot];
    c.rank = static_cast<int>(std::distance(r.begin(), r.find(c.rank)));
  }
  return cell;
}

std::vector<Cell> refine(Theory theory, const Cell& cell, const Support& from, const Support& to) {
  if (!to.includes(from)) fail(ErrorCode::InvalidArgument, "refine target " + to.str() + " does not contain " + from.str());
  std::vector<int> moved(from.size());
  for (size_t i = 0; i < from.size(); ++i) moved[i] = static_cast<int>(*to.index_of(from[i]));
  std::vector<Cell> out;

  if (theory == Theory::Eq) {
    std::vector<int> fresh;
    for (size_t i = 0; i < to.size(); ++i)
      if (!from.contains(to[i])) fresh.push_back(static_cast<int>(i));
    int blocks = static_cast<int>(free_count(theory, cell));
    // choice[b] == -1 keeps block b free; otherwise it is pinned to fresh[choice[b]].
    std::vector<int> choice(blocks, -1);
    std::vector<bool> used(fresh.size(), false);
    std::function<void(int)> rec = [&](int b) {
      if (b == blocks) {
        Cell next;
        for (const auto& c : cell.coords) {
          if (c.slot != kBlockSlot)
            next.coords.push_back({moved[c.slot], 0});
          else if (choice[c.rank] >= 0)
            next.coords.push_back({fresh[choice[c.rank]], 0});
          else
            next.coords.push_back({kBlockSlot, c.rank});
        }
        out.push_back(canonical(theory, next));
        return;
      }
      choice[b] = -1;
      rec(b + 1);
      for (size_t f = 0; f < fresh.size(); ++f) {
        if (used[f]) continue;
        used[f] = true;
        choice[b] = static_cast<int>(f);
        rec(b + 1);
        used[f] = false;
      }
      choice[b] = -1;
    };
    rec(0);
    return out;
  }

  const int k = static_cast<int>(from.size());
  const int kn = static_cast<int>(to.size());
  auto sizes = interval_sizes(cell);
  struct Unit {
    int old_slot;
    std::vector<std::vector<int>> placements;  // per option: new slot of each ordered block
  };
  std::vector<Unit> units;
  for (auto [slot, m] : sizes) {
    int j = slot / 2;
    int lo = j == 0 ? -1 : moved[j - 1];
    int hi = j == k ? kn : moved[j];
    int first = 2 * (lo + 1), last = 2 * hi;
    Unit unit{slot, {}};
    std::vector<int> cur(m);
    std::function<void(int, int)> rec = [&](int b, int min_slot) {
      if (b == m) {
        unit.placements.push_back(cur);
        return;
      }
      for (int s = min_slot; s <= last; ++s) {
        cur[b] = s;
        // A point slot holds at most one block.
        rec(b + 1, s % 2 == 1 ? s + 1 : s);
      }
    };
    rec(0, first);
    units.push_back(std::move(unit));
  }
  std::vector<size_t> counts;
  for (const auto& u : units) counts.push_back(u.placements.size());
  for_each_choice(counts, [&](const std::vector<size_t>& pick) {
    std::map<int, const std::vector<int>*> placement;
    for (size_t u = 0; u < units.size(); ++u) placement[units[u].old_slot] = &units[u].placements[pick[u]];
    Cell next;
    for (const auto& c : cell.coords) {
      if (c.slot % 2 == 1) {
        next.coords.push_back({2 * moved[c.slot / 2] + 1, 0});
      } else {
        int s = (*placement[c.slot])[c.rank];
        next.coords.push_back({s, s % 2 == 1 ? 0 : c.rank});
      }
    }
    out.push_back(canonical(theory, next));
  });
  return out;
}

std::vector<std::vector<int>> weak_orders(size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      std::set<int> used(cur.begin(), cur.end());
      if (used.empty() || (*used.rbegin() + 1 == static_cast<int>(used.size()))) out.push_back(cur);
      return;
    }
    for (size_t r = 0; r < n; ++r) {
      cur[i] = static_cast<int>(r);
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<Cell> all(Theory theory, size_t arity, const Support& support) {
  std::vector<Cell> out;
  if (theory == Theory::Eq) {
    Cell cur;
    std::function<void(size_t, int)> rec = [&](size_t i, int blocks) {
      if (i == arity) {
        out.push_back(cur);
        return;
      }
      for (size_t a = 0; a < support.size(); ++a) {
        cur.coords.push_back({static_cast<int>(a), 0});
        rec(i + 1, blocks);
        cur.coords.pop_back();
      }
      for (int b = 0; b <= blocks; ++b) {
        cur.coords.push_back({kBlockSlot, b});
        rec(i + 1, b == blocks ? blocks + 1 : blocks);
        cur.coords.pop_back();
      }
    };
    rec(0, 0);
  } else {
    Support empty;
    for (const auto& order : weak_orders(arity)) {
      Cell base;
      for (int r : order) base.coords.push_back({0, r});
      for (auto& c : refine(theory, base, empty, support)) out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cell classify(Theory theory, std::span<const SymAtom> tuple, const Support& support) {
  Cell cell;
  if (theory == Theory::Eq) {
    std::vector<const SymAtom*> blocks;
    for (const auto& v : tuple) {
      if (v.is_concrete()) {
        if (auto idx = support.index_of(v.concrete())) {
          cell.coords.push_back({static_cast<int>(*idx), 0});
          continue;
        }
      }
      auto it = std::find_if(blocks.begin(), blocks.end(), [&](const SymAtom* b) { return *b == v; });
      int id = static_cast<int>(it - blocks.begin());
      if (it == blocks.end()) blocks.push_back(&v);
      cell.coords.push_back({kBlockSlot, id});
    }
    return cell;
  }
  std::vector<SymAtom> points;
  for (const auto& a : support.atoms()) points.emplace_back(a);
  for (const auto& v : tuple) {
    auto it = std::lower_bound(points.begin(), points.end(), v,
                               [](const SymAtom& p, const SymAtom& x) { return compare(p, x) < 0; });
    int j = static_cast<int>(it - points.begin());
    if (it != points.end() && compare(*it, v) == 0)
      cell.coords.push_back({2 * j + 1, 0});
    else
      cell.coords.push_back({2 * j, 0});
  }
  // Rank inside each interval by the order of the values.
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (cell.coords[i].slot % 2 == 1) continue;
    int rank = 0;
    std::vector<const SymAtom*> below;
    for (size_t j = 0; j < tuple.size(); ++j) {
      if (cell.coords[j].slot != cell.coords[i].slot || compare(tuple[j], tuple[i]) >= 0) continue;
      if (std::none_of(below.begin(), below.end(), [&](const SymAtom* b) { return compare(*b, tuple[j]) == 0; })) {
        below.push_back(&tuple[j]);
        ++rank;
      }
    }
    cell.coords[i].rank = rank;
  }
  return cell;
}

Cell classify(Theory theory, std::span<const Atom> tuple, const Support& support) {
  SymTuple lifted = lift(tuple);
  return classify(theory, lifted, support);
}

std::vector<Atom> witness(Theory theory, const Cell& cell, const Support& support) {
  std::vector<Atom> out;
  if (theory == Theory::Eq) {
    Rational start = support.empty() ? Rational(0) : Rational(support[support.size() - 1].value() + 1);
    if (start < 0) start = 0;
    for (const auto& c : cell.coords)
      out.push_back(c.slot == kBlockSlot ? Atom(Rational(start + c.rank)) : support[c.slot]);
    return out;
  }
  auto sizes = interval_sizes(cell);
  const int k = static_cast<int>(support.size());
  for (const auto& c : cell.coords) {
    if (c.slot % 2 == 1) {
      out.push_back(support[c.slot / 2]);
      continue;
    }
    int j = c.slot / 2;
    int m = sizes[c.slot];
    Rational r(c.rank);
    if (j > 0 && j < k) {
      const Rational& lo = support[j - 1].value();
      const Rational& hi = support[j].value();
      out.emplace_back(Rational(lo + (hi - lo) * (r + 1) / (m + 1)));
    } else if (j > 0) {
      out.emplace_back(Rational(support[j - 1].value() + r + 1));
    } else if (j < k) {
      out.emplace_back(Rational(support[j].value() - m + r));
    } else {
      out.emplace_back(r);
    }
  }
  return out;
}

std::vector<Cell> product(Theory theory, const Cell& left, const Cell& right) {
  std::vector<Cell> out;
  if (theory == Theory::Eq) {
    int m1 = static_cast<int>(free_count(theory, left));
    int m2 = static_cast<int>(free_count(theory, right));
    std::vector<int> match(m2, -1);
    std::vector<bool> used(m1, false);
    std::function<void(int, int)> rec = [&](int b, int fresh) {
      if (b == m2) {
        Cell next = left;
        for (const auto& c : right.coords)
          next.coords.push_back(c.slot == kBlockSlot ? Coord{kBlockSlot, match[c.rank]} : c);
        out.push_back(canonical(theory, next));
        return;
      }
      match[b] = m1 + fresh;
      rec(b + 1, fresh + 1);
      for (int a = 0; a < m1; ++a) {
        if (used[a]) continue;
        used[a] = true;
        match[b] = a;
        rec(b + 1, fresh);
        used[a] = false;
      }
    };
    rec(0, 0);
  } else {
    auto ls = interval_sizes(left);
    auto rs = interval_sizes(right);
    std::set<int> slots;
    for (auto& [s, n] : ls) slots.insert(s);
    for (auto& [s, n] : rs) slots.insert(s);
    std::vector<int> slot_list(slots.begin(), slots.end());
    std::vector<std::vector<Merge>> options;
    for (int s : slot_list) {
      int a = ls.count(s) ? ls[s] : 0;
      int b = rs.count(s) ? rs[s] : 0;
      Merge cur{std::vector<int>(a), std::vector<int>(b), 0};
      std::vector<Merge> found;
      merges(a, b, 0, 0, cur, found);
      options.push_back(std::move(found));
    }
    std::vector<size_t> counts;
    for (const auto& o : options) counts.push_back(o.size());
    for_each_choice(counts, [&](const std::vector<size_t>& pick) {
      std::map<int, const Merge*> chosen;
      for (size_t i = 0; i < slot_list.size(); ++i) chosen[slot_list[i]] = &options[i][pick[i]];
      Cell next;
      for (const auto& c : left.coords)
        next.coords.push_back(c.slot % 2 == 1 ? c : Coord{c.slot, chosen[c.slot]->left[c.rank]});
      for (const auto& c : right.coords)
        next.coords.push_back(c.slot % 2 == 1 ? c : Coord{c.slot, chosen[c.slot]->right[c.rank]});
      out.push_back(canonical(theory, next));
    });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cell project(Theory theory, const Cell& cell, std::span<const size_t> coords) {
  Cell out;
  for (size_t i : coords) {
    if (i >= cell.arity()) fail(ErrorCode::ArityMismatch, "projection index out of range");
    out.coords.push_back(cell.coords[i]);
  }
  return canonical(theory, out);
}

size_t free_count(Theory theory, const Cell& cell) {
  std::set<std::pair<int, int>> seen;
  for (const auto& c : cell.coords) {
    if (theory == Theory::Eq ? c.slot == kBlockSlot : c.slot % 2 == 0) seen.insert({c.slot, c.rank});
  }
  return seen.size();
}

std::string str(Theory theory, const Cell& cell, const Support& support) {
  std::string out = "[";
  for (size_t i = 0; i < cell.coords.size(); ++i) {
    const auto& c = cell.coords[i];
    if (i) out += ",";
    if (theory == Theory::Eq)
      out += c.slot == kBlockSlot ? "b" + std::to_string(c.rank) : support[c.slot].str();
    else
      out += c.slot % 2 == 1 ? support[c.slot / 2].str()
                             : "i" + std::to_string(c.slot / 2) + "." + std::to_string(c.rank);
  }
  return out + "]";
}

}  // namespace cells
}  // namespace atomcompact

namespace atomcompact::cells {

std::vector<Atom> sample_pool(Theory theory, const Support& support, size_t per_gap) {
  std::vector<Atom> out(support.atoms().begin(), support.atoms().end());
  if (theory == Theory::Eq) {
    Rational start = support.empty() ? Rational(0) : Rational(support[support.size() - 1].value() + 1);
    if (start < 0) start = 0;
    for (size_t i = 0; i < per_gap; ++i) out.emplace_back(Rational(start + static_cast<long>(i)));
    return out;
  }
  const size_t k = support.size();
  const long n = static_cast<long>(per_gap);
  for (size_t j = 0; j <= k; ++j) {
    for (long i = 1; i <= n; ++i) {
      if (k == 0) {
        out.emplace_back(Rational(i - 1 - n / 2));
      } else if (j == 0) {
        out.emplace_back(Rational(support[0].value() - i));
      } else if (j == k) {
        out.emplace_back(Rational(support[k - 1].value() + i));
      } else {
        const Rational& lo = support[j - 1].value();
        const Rational& hi = support[j].value();
        out.emplace_back(Rational(lo + (hi - lo) * i / (n + 1)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace atomcompact::cells

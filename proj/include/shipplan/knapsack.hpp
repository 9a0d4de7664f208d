#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "shipplan/types.hpp"

namespace shipplan {

// Exact 0/1 knapsack by dynamic programming over capacity.
//
// The DP is computed over item suffixes so the reconstruction can walk items
// front to back and take an item whenever doing so still reaches the optimum.
// With items supplied in a fixed order this makes the selected set
// deterministic: the earliest items that admit an optimal completion win.

struct KnapsackPick {
    std::vector<int> selected;  // indices into the input span, ascending
    int64_t value{0};
};

class KnapsackSolver {
  public:
    struct Item {
        int64_t weight;
        int64_t value;
    };

    KnapsackPick solve(const std::vector<Item>& items, int64_t capacity) {
        KnapsackPick pick;
        if (capacity < 0) throw config_error("knapsack capacity must be nonnegative");
        const int n = int(items.size());
        if (n == 0 || capacity == 0) return pick;
        int64_t value_sum = 0;
        for (const auto& it : items) {
            if (it.weight < 1 || it.value < 1)
                throw config_error("knapsack items need integer weight and value >= 1");
            value_sum += it.value;
        }
        if (value_sum > std::numeric_limits<int32_t>::max())
            throw config_error("knapsack value range exceeds the 32-bit DP table");

        const int64_t cap = capacity;
        const size_t stride = size_t(cap) + 1;
        table_.assign(size_t(n + 1) * stride, 0);

        for (int i = n - 1; i >= 0; --i) {
            const int64_t w = items[size_t(i)].weight;
            const int32_t v = int32_t(items[size_t(i)].value);
            const int32_t* below = table_.data() + size_t(i + 1) * stride;
            int32_t* row = table_.data() + size_t(i) * stride;
            int64_t c = 0;
            for (; c < w && c <= cap; ++c) row[c] = below[c];
            for (; c <= cap; ++c) {
                int32_t keep = below[c];
                int32_t take = v + below[c - w];
                row[c] = take > keep ? take : keep;
            }
        }

        pick.value = table_[size_t(cap)];
        int64_t c = cap;
        for (int i = 0; i < n; ++i) {
            const int64_t w = items[size_t(i)].weight;
            const int32_t v = int32_t(items[size_t(i)].value);
            const int32_t* here = table_.data() + size_t(i) * stride;
            const int32_t* below = table_.data() + size_t(i + 1) * stride;
            if (w <= c && v + below[c - w] == here[c]) {
                pick.selected.push_back(i);
                c -= w;
            }
        }
        return pick;
    }

  private:
    std::vector<int32_t> table_;
};

// Id-facing wrapper. Items are ordered by id before solving, so among
// optimal selections the lexicographically smallest id-set is returned.
struct KnapsackResult {
    std::set<std::string> selected;
    int64_t value{0};
};

struct KnapsackItem {
    std::string id;
    int64_t weight_kg;
    int64_t value_dollars;
};

inline KnapsackResult knapsack(std::vector<KnapsackItem> items, int64_t capacity_kg) {
    std::sort(items.begin(), items.end(),
              [](const KnapsackItem& a, const KnapsackItem& b) { return a.id < b.id; });
    std::vector<KnapsackSolver::Item> flat;
    flat.reserve(items.size());
    for (const auto& it : items) flat.push_back({it.weight_kg, it.value_dollars});
    KnapsackSolver solver;
    KnapsackPick pick = solver.solve(flat, capacity_kg);
    KnapsackResult res;
    res.value = pick.value;
    for (int i : pick.selected) res.selected.insert(items[size_t(i)].id);
    return res;
}

}  // namespace shipplan

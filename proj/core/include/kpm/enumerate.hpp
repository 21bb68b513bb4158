#pragma once

#include <functional>
#include <vector>

namespace kpm {

// Visit every tuple of a mixed-radix odometer in lexicographic order.
// f returns false to stop early; the function returns false iff stopped.
template <class F>
bool for_each_tuple(const std::vector<int>& radix, F&& f) {
    std::vector<int> t(radix.size(), 0);
    for (int r : radix)
        if (r <= 0) return true;  // empty product
    while (true) {
        if (!f(static_cast<const std::vector<int>&>(t))) return false;
        int i = static_cast<int>(radix.size()) - 1;
        while (i >= 0) {
            if (++t[i] < radix[i]) break;
            t[i] = 0;
            --i;
        }
        if (i < 0) return true;
    }
}

// Visit every r-subset of [0, n) in lexicographic order.
template <class F>
bool for_each_combination(int n, int r, F&& f) {
    if (r < 0 || r > n) return true;
    std::vector<int> c(r);
    for (int i = 0; i < r; ++i) c[i] = i;
    while (true) {
        if (!f(static_cast<const std::vector<int>&>(c))) return false;
        int i = r - 1;
        while (i >= 0 && c[i] == n - r + i) --i;
        if (i < 0) return true;
        ++c[i];
        for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace kpm

#pragma once

#include "cpxcp/oracle.hpp"

namespace cpxcp::test {

// Dihedral group of order 2n as rotations/reflections r^i s^j with the
// defining rule s r = r^{-1} s; built without the engine.
inline MulTable dihedral_table(int n) {
    MulTable t;
    t.n = 2 * n;
    t.table.assign(static_cast<std::size_t>(t.n) * t.n, 0);
    auto idx = [&](int i, int j) { return ((i % n + n) % n) + n * j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < 2; ++l) {
                    int rot = j == 0 ? i + k : i - k;
                    t.table[static_cast<std::size_t>(idx(i, j)) * t.n + idx(k, l)] =
                        idx(rot, (j + l) % 2);
                }
    t.elem_labels.resize(static_cast<std::size_t>(t.n));
    return t;
}

// Quaternion group {1,-1,i,-i,j,-j,k,-k} from the literal quaternion rules.
inline MulTable quaternion_table() {
    // index: 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
    auto mulq = [](int a, int b) {
        auto sign = [](int v) { return v & 1 ? -1 : 1; };
        auto unit = [](int v) { return v >> 1; };  // 0:1 1:i 2:j 3:k
        static const int tab[4][4] = {
            {0, 1, 2, 3},
            {1, 0, 3, 2},
            {2, 3, 0, 1},
            {3, 2, 1, 0},
        };
        static const int sgn[4][4] = {
            {1, 1, 1, 1},
            {1, -1, 1, -1},
            {1, -1, -1, 1},
            {1, 1, -1, -1},
        };
        int u = tab[unit(a)][unit(b)];
        int s = sign(a) * sign(b) * sgn[unit(a)][unit(b)];
        return 2 * u + (s < 0 ? 1 : 0);
    };
    MulTable t;
    t.n = 8;
    t.table.assign(64, 0);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) t.table[static_cast<std::size_t>(a) * 8 + b] = mulq(a, b);
    t.elem_labels.resize(8);
    return t;
}

}  // namespace cpxcp::test

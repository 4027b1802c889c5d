#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "symcoord/partition.hpp"

namespace symcoord {

/// Element of A_{K,nu}: positive a and positive b_k with a + sum b_k = |K| + nu + 1.
struct IndexTupleA {
    int a = 0;
    std::map<int, int> b;  // key: element of K
};

/// Element of B_{J,alpha}: positive a and c_beta >= |J_beta| with
/// a + sum_{beta != alpha} c_beta = sum |J_alpha|.
struct IndexTupleB {
    int a = 0;
    std::map<int, int> c;  // key: block index beta != alpha
};

inline std::vector<IndexTupleA> enumerate_A(const std::vector<int>& K, int nu) {
    if (nu < 0) throw std::invalid_argument("nu must be non-negative");
    std::vector<IndexTupleA> out;
    int total = static_cast<int>(K.size()) + nu + 1;
    IndexTupleA cur;
    std::function<void(size_t, int)> rec = [&](size_t idx, int rem) {
        if (idx == K.size()) {
            if (rem >= 1) {
                cur.a = rem;
                out.push_back(cur);
            }
            return;
        }
        int slots = static_cast<int>(K.size() - idx);  // remaining b's, plus a, each >= 1
        for (int bk = 1; rem - bk >= slots; ++bk) {
            cur.b[K[idx]] = bk;
            rec(idx + 1, rem - bk);
        }
        cur.b.erase(K[idx]);
    };
    rec(0, total);
    return out;
}

/// block_sizes[i] = |J_{i+1}|; alpha is a 0-based block index.
inline std::vector<IndexTupleB> enumerate_B(const std::vector<int>& block_sizes, int alpha) {
    if (alpha < 0 || alpha >= static_cast<int>(block_sizes.size()))
        throw std::invalid_argument("alpha out of range");
    for (int s : block_sizes)
        if (s < 1) throw std::invalid_argument("block sizes must be positive");
    int total = 0;
    for (int s : block_sizes) total += s;
    std::vector<int> others;
    for (int b = 0; b < static_cast<int>(block_sizes.size()); ++b)
        if (b != alpha) others.push_back(b);
    std::vector<IndexTupleB> out;
    IndexTupleB cur;
    std::function<void(size_t, int)> rec = [&](size_t idx, int rem) {
        if (idx == others.size()) {
            if (rem >= 1) {
                cur.a = rem;
                out.push_back(cur);
            }
            return;
        }
        int beta = others[idx];
        int minRemaining = 1;  // for a
        for (size_t j = idx + 1; j < others.size(); ++j) minRemaining += block_sizes[others[j]];
        for (int cb = block_sizes[beta]; rem - cb >= minRemaining; ++cb) {
            cur.c[beta] = cb;
            rec(idx + 1, rem - cb);
        }
        cur.c.erase(beta);
    };
    rec(0, total);
    return out;
}

/// Xi_{alpha,c}: maps beta -> kappa_beta with kappa = 0 where c_beta = 0 and
/// 1 <= kappa_beta <= c_beta where c_beta > 0.
inline std::vector<std::map<int, int>> enumerate_Xi(const std::map<int, int>& c) {
    std::vector<std::map<int, int>> out;
    std::vector<std::pair<int, int>> entries(c.begin(), c.end());
    std::map<int, int> cur;
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == entries.size()) {
            out.push_back(cur);
            return;
        }
        auto [beta, cb] = entries[idx];
        if (cb == 0) {
            cur[beta] = 0;
            rec(idx + 1);
        } else {
            for (int k = 1; k <= cb; ++k) {
                cur[beta] = k;
                rec(idx + 1);
            }
        }
        cur.erase(beta);
    };
    rec(0);
    return out;
}

/// |X_iota^lambda|: set partitions of {1..r} with label pattern sigma into blocks
/// whose size multiset is lambda, all labels distinct within each block.
/// Brute-force enumeration; this is the oracle for the asymptotic analysis.
inline long count_X(const DerivativePattern& pattern, const Partition& lambda) {
    const Partition& sigma = pattern.sigma;
    int r = sigma.weight();
    if (r != lambda.weight())
        throw std::invalid_argument("count_X requires weight(sigma) == weight(lambda)");
    if (r > 8) throw std::invalid_argument("count_X supports weight <= 8");
    if (r == 0) return 1;

    std::vector<int> label(r);
    {
        int pos = 0, lab = 0;
        for (int s : sigma.parts()) {
            for (int q = 0; q < s; ++q) label[pos++] = lab;
            ++lab;
        }
    }
    std::vector<int> sizes = lambda.parts();
    std::sort(sizes.begin(), sizes.end());

    long count = 0;
    // enumerate set partitions via restricted growth strings
    std::vector<int> rgs(r, 0);
    std::function<void(int, int)> rec = [&](int pos, int maxBlock) {
        if (pos == r) {
            int nblocks = maxBlock + 1;
            std::vector<int> bs(nblocks, 0);
            for (int i = 0; i < r; ++i) ++bs[rgs[i]];
            std::sort(bs.begin(), bs.end());
            if (bs != sizes) return;
            // distinct labels within each block
            for (int b = 0; b < nblocks; ++b) {
                std::vector<int> seen;
                for (int i = 0; i < r; ++i)
                    if (rgs[i] == b) {
                        for (int s : seen)
                            if (s == label[i]) return;
                        seen.push_back(label[i]);
                    }
            }
            ++count;
            return;
        }
        for (int b = 0; b <= maxBlock + 1; ++b) {
            rgs[pos] = b;
            rec(pos + 1, std::max(maxBlock, b));
        }
    };
    rgs[0] = 0;
    rec(1, 0);
    return count;
}

}  // namespace symcoord

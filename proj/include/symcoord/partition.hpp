#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcoord/rational.hpp"

namespace symcoord {

/// Integer partition, stored as a weakly decreasing sequence of positive parts.
/// The empty partition (weight 0) is a valid value.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        for (int p : parts_)
            if (p < 1) throw std::invalid_argument("partition parts must be positive");
    }

    static Partition parse(const std::string& s) {
        // "[3,1,1]" or "3,1,1" or "[]"
        std::string body = s;
        if (!body.empty() && body.front() == '[') body = body.substr(1);
        if (!body.empty() && body.back() == ']') body.pop_back();
        std::vector<int> parts;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) parts.push_back(std::stoi(tok));
        }
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }

    int weight() const {
        int r = 0;
        for (int p : parts_) r += p;
        return r;
    }

    int max_part() const { return parts_.empty() ? 0 : parts_.front(); }

    int multiplicity(int h) const {
        int m = 0;
        for (int p : parts_) m += (p == h);
        return m;
    }

    /// part value -> multiplicity, positive entries only
    std::map<int, int> multiplicities() const {
        std::map<int, int> m;
        for (int p : parts_) ++m[p];
        return m;
    }

    Partition conjugate() const {
        std::vector<int> t;
        for (int i = 1; i <= max_part(); ++i) {
            int c = 0;
            for (int p : parts_) c += (p >= i);
            t.push_back(c);
        }
        return Partition(std::move(t));
    }

    /// lambda - d*eps_h: replace one instance of part h by h-d (dropped if h==d).
    Partition lower_part(int h, int d) const {
        if (multiplicity(h) == 0) throw std::invalid_argument("part not present");
        if (d > h) throw std::invalid_argument("cannot lower part below zero");
        std::vector<int> np;
        bool done = false;
        for (int p : parts_) {
            if (!done && p == h) {
                if (h > d) np.push_back(h - d);
                done = true;
            } else {
                np.push_back(p);
            }
        }
        return Partition(std::move(np));
    }

    /// parts of *this followed by parts of other (multiset union)
    Partition merged(const Partition& other) const {
        std::vector<int> np = parts_;
        np.insert(np.end(), other.parts_.begin(), other.parts_.end());
        return Partition(std::move(np));
    }

    Partition with_part(int h) const {
        std::vector<int> np = parts_;
        np.push_back(h);
        return Partition(std::move(np));
    }

    /// prod_h m_h!
    Int multiplicity_factorial() const {
        Int f = 1;
        for (auto& [h, m] : multiplicities()) f *= factorial(m);
        return f;
    }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + "]";
    }

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

/// All partitions of r in reverse-lexicographic order of parts:
/// (r), (r-1,1), ..., (1,...,1).  r=0 yields the single empty partition.
inline std::vector<Partition> enumerate_partitions(int r) {
    if (r < 0) throw std::invalid_argument("negative weight");
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxp) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rem, maxp); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(r, r);
    return out;
}

/// Dominance order: every prefix sum of mu >= that of lambda.  Weights must agree.
inline bool dominates(const Partition& mu, const Partition& lambda) {
    if (mu.weight() != lambda.weight())
        throw std::invalid_argument("dominance requires equal weights");
    int sm = 0, sl = 0;
    size_t n = std::max(mu.parts().size(), lambda.parts().size());
    for (size_t i = 0; i < n; ++i) {
        sm += i < mu.parts().size() ? mu.parts()[i] : 0;
        sl += i < lambda.parts().size() ? lambda.parts()[i] : 0;
        if (sm < sl) return false;
    }
    return true;
}

/// Coincidence pattern of a simple derivative: sigma[p] = number of repeats of the
/// p-th distinct index.
struct DerivativePattern {
    Partition sigma;
    int order() const { return sigma.weight(); }
};

}  // namespace symcoord

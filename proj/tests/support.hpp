#pragma once

#include "lsa/parabolic_affine.hpp"
#include "lsa/reflections.hpp"

#include <random>
#include <vector>

namespace lsa::testing {

// Random walk of valid reflections started at P(base, X) for a random base and X.
inline AffinePartition random_partition(const SystemPtr& sys, const std::vector<SimpleSystem>& bases,
                                        std::mt19937& rng, int steps = 12) {
    const SimpleSystem& base = bases[std::uniform_int_distribution<std::size_t>(0, bases.size() - 1)(rng)];
    std::vector<RootId> X;
    for (RootId r : base.roots)
        if (rng() % 2) X.push_back(r);
    AffinePartition p = partition_from(sys, base, X);
    std::uniform_int_distribution<RootId> pick(0, sys->size() - 1);
    for (int i = 0; i < steps; ++i) {
        RootId a = pick(rng);
        Thr t = p.threshold(a);
        if (!is_finite(t)) continue;
        try {
            p = reflect_affine(p, {a, static_cast<long>(t)});
        } catch (const Error&) {
        }
    }
    return p;
}

// Membership-only set arithmetic on a window; nothing here reads thresholds directly.
struct WindowOracle {
    const AffineSet& p;
    long window;
    long depth = 64;

    const FiniteRootSystem& sys() const { return p.sys(); }
    RootId zero() const { return sys().size(); }

    // (alpha + Z_{<0} delta) n P is finite: some step below is missing within depth
    bool good(const AffineRoot& r) const {
        if (!p.contains(r)) return false;
        for (long k = 1; k <= depth; ++k)
            if (!p.contains(r.fin, r.level - k)) return true;
        return false;
    }

    std::optional<AffineRoot> add(const AffineRoot& x, const AffineRoot& y) const {
        const RootId z = zero();
        RootId c;
        if (x.fin == z) c = y.fin;
        else if (y.fin == z) c = x.fin;
        else {
            c = sys().sum(x.fin, y.fin);
            if (c == kZeroSum) c = z;
        }
        if (c < 0) return std::nullopt;
        long l = x.level + y.level;
        if (c == z && l == 0) return std::nullopt;
        return AffineRoot{c, l};
    }

    AffineRoot neg(const AffineRoot& x) const {
        return {x.fin == zero() ? x.fin : sys().neg(x.fin), -x.level};
    }

    bool closed() const {
        auto roots = p.materialize(window);
        for (const auto& x : roots)
            for (const auto& y : roots) {
                auto s = add(x, y);
                if (s && std::abs(s->level) <= window && !p.contains(*s)) return false;
            }
        return true;
    }

    bool covers() const {
        for (const auto& r : affine_roots(sys(), window))
            if (!p.contains(r) && !p.contains(neg(r))) return false;
        return true;
    }
};

struct GbViolations {
    long clause[5] = {0, 0, 0, 0, 0};
    long total() const { return clause[0] + clause[1] + clause[2] + clause[3] + clause[4]; }
};

inline GbViolations check_good_bad(const AffinePartition& p, long window) {
    WindowOracle o{p, window};
    GbViolations v;
    auto roots = p.materialize(window);
    for (const auto& x : roots) {
        const bool gx = o.good(x);
        for (const auto& y : roots) {
            const bool gy = o.good(y);
            if (auto s = o.add(x, y); s && p.contains(*s)) {
                if ((!gx || !gy) && o.good(*s)) ++v.clause[0];
                if (gx && gy && !o.good(*s)) ++v.clause[1];
            }
            if (auto d = o.add(x, o.neg(y)); d && p.contains(*d))
                if (gx && gy && !o.good(*d)) ++v.clause[2];
        }
        if (x.fin != o.zero()) {
            AffineRoot base{x.fin, 0}, nbase{p.sys().neg(x.fin), 0};
            if (!gx && !(p.contains(base) && !o.good(base))) ++v.clause[3];
            if (gx && !o.good(base) && !o.good(nbase)) ++v.clause[4];
        }
    }
    return v;
}

}  // namespace lsa::testing

#include "lsa/parabolic_finite.hpp"
#include "lsa/reflections.hpp"

#include <algorithm>

namespace lsa {

bool is_additively_closed(const FiniteRootSystem& sys, const RootSet& s) {
    auto ids = members(s);
    for (RootId a : ids)
        for (RootId b : ids) {
            RootId c = sys.sum(a, b);
            if (c >= 0 && !s.test(c)) return false;
        }
    return true;
}

FiniteParabolic finite_parabolic(const FiniteRootSystem& sys, const RootSet& s) {
    if (s.size() != static_cast<std::size_t>(sys.size())) throw Error(ErrorCode::NotParabolic, "size mismatch");
    RootSet neg = sys.negate(s);
    if (!(s | neg).all()) throw Error(ErrorCode::NotParabolic, "P u -P misses roots");
    if (!is_additively_closed(sys, s)) throw Error(ErrorCode::NotParabolic, "P is not additively closed");
    FiniteParabolic p;
    p.roots = s;
    p.symmetric = s & neg;
    p.kind = p.symmetric.none() ? ParabolicKind::Partition : ParabolicKind::ParabolicSet;
    return p;
}

FiniteParabolic make_parabolic_set(const FiniteRootSystem& sys, const SimpleSystem& base,
                                   const std::vector<RootId>& R) {
    if (R.empty()) throw Error(ErrorCode::RNotSimpleSubset, "R must be nonempty");
    RootSet negr = sys.empty_set();
    for (RootId r : R) {
        if (!base.contains(r)) throw Error(ErrorCode::RNotSimpleSubset, sys.label(r) + " is not simple");
        negr.set(sys.neg(r));
    }
    return finite_parabolic(sys, positive_system(sys, base) | additive_closure(sys, negr));
}

SimpleSystem descend_into(const FiniteRootSystem& sys, const RootSet& p, std::vector<std::size_t>* trace) {
    SimpleSystem base = distinguished_simple_system(sys);
    std::size_t outside = (positive_system(sys, base) - p).count();
    if (trace) trace->push_back(outside);
    while (outside > 0) {
        RootId pick = kNoRoot;
        for (RootId a : base.roots)
            if (!p.test(a) && (pick == kNoRoot || a < pick)) pick = a;
        if (pick == kNoRoot) throw Error(ErrorCode::NotParabolic, "descent stalled");
        base = reflect_simple_system(sys, base, pick);
        std::size_t now = (positive_system(sys, base) - p).count();
        if (now >= outside) throw Error(ErrorCode::NotParabolic, "descent did not decrease");
        outside = now;
        if (trace) trace->push_back(outside);
    }
    return base;
}

namespace {

ParabolicDescriptor descriptor_for(const SimpleSystem& base, const RootSet& negp) {
    ParabolicDescriptor d{base, {}};
    for (RootId a : base.roots)
        if (negp.test(a)) d.R.push_back(a);
    return d;
}

}  // namespace

ParabolicDescriptor decompose_parabolic_set(const FiniteRootSystem& sys, const FiniteParabolic& p) {
    FiniteParabolic q = finite_parabolic(sys, p.roots);
    if (q.kind == ParabolicKind::Partition) throw Error(ErrorCode::IsPartition, "P has empty symmetric part");
    RootSet negp = sys.negate(q.roots);
    auto d = descriptor_for(descend_into(sys, q.roots), negp);
    if (!d.R.empty() && make_parabolic_set(sys, d.base, d.R) == q) return d;
    for (const auto& b : enumerate_simple_systems(sys)) {
        if (!positive_system(sys, b).is_subset_of(q.roots)) continue;
        d = descriptor_for(b, negp);
        if (!d.R.empty() && make_parabolic_set(sys, b, d.R) == q) return d;
    }
    throw Error(ErrorCode::NotParabolic, "no descriptor generates P");
}

SimpleSystem partition_base(const FiniteRootSystem& sys, const FiniteParabolic& p) {
    FiniteParabolic q = finite_parabolic(sys, p.roots);
    if (q.kind != ParabolicKind::Partition) throw Error(ErrorCode::NotParabolic, "P is not a partition");
    RootSet decomposable = sys.empty_set();
    auto ids = members(q.roots);
    for (RootId a : ids)
        for (RootId b : ids) {
            RootId c = sys.sum(a, b);
            if (c >= 0) decomposable.set(c);
        }
    SimpleSystem base{members(q.roots - decomposable)};
    if (!is_base(sys, base.roots) || positive_system(sys, base) != q.roots)
        throw Error(ErrorCode::NotParabolic, "indecomposables do not form a base");
    return base;
}

bool contains_even_part(const FiniteRootSystem& sys, const FiniteParabolic& p) {
    return sys.even_set().is_subset_of(p.roots);
}

AlgebraType classify_type(const FiniteRootSystem& sys) { return sys.type(); }

bool is_distinguished(const FiniteRootSystem& sys, const SimpleSystem& base) {
    int odd = 0;
    for (RootId r : base.roots) odd += sys.is_odd(r);
    return odd == 1;
}

FiniteParabolicList enumerate_finite_parabolics(const FiniteRootSystem& sys, int budget) {
    if (sys.size() > budget)
        throw Error(ErrorCode::EnumerationBudgetExceeded,
                    std::to_string(sys.size()) + " roots exceed the budget of " + std::to_string(budget));
    std::vector<RootId> reps;
    for (RootId r = 0; r < sys.size(); ++r)
        if (r < sys.neg(r)) reps.push_back(r);
    std::vector<int> slot(sys.size());
    for (std::size_t i = 0; i < reps.size(); ++i) slot[reps[i]] = slot[sys.neg(reps[i])] = static_cast<int>(i);

    FiniteParabolicList out;
    RootSet cur = sys.empty_set();
    // consistent if every sum of chosen roots whose pair is decided lies in cur
    auto consistent = [&](std::size_t decided) {
        auto ids = members(cur);
        for (RootId a : ids)
            for (RootId b : ids) {
                RootId c = sys.sum(a, b);
                if (c >= 0 && static_cast<std::size_t>(slot[c]) < decided && !cur.test(c)) return false;
            }
        return true;
    };
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (i == reps.size()) {
            auto p = finite_parabolic(sys, cur);
            (p.kind == ParabolicKind::Partition ? out.partitions : out.parabolic_sets).push_back(p);
            return;
        }
        RootId r = reps[i], n = sys.neg(r);
        for (int choice = 0; choice < 3; ++choice) {
            if (choice != 1) cur.set(r);
            if (choice != 0) cur.set(n);
            if (consistent(i + 1)) self(self, i + 1);
            cur.reset(r);
            cur.reset(n);
        }
    };
    dfs(dfs, 0);
    return out;
}

}  // namespace lsa

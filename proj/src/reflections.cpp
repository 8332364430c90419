#include "lsa/reflections.hpp"
#include "lsa/parallel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace lsa {

namespace {

using Key = std::vector<RootId>;

std::string set_label(const FiniteRootSystem& sys, const SimpleSystem& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.roots.size(); ++i) {
        if (i) out += ", ";
        out += sys.label(s.roots[i]);
    }
    return out + "}";
}

}  // namespace

std::string kind_name(ReflectionKind k) {
    switch (k) {
        case ReflectionKind::OddIsotropic: return "odd";
        case ReflectionKind::Even: return "even";
        case ReflectionKind::NonIsotropicOdd: return "odd-nonisotropic";
    }
    return "?";
}

ReflectionKind reflection_kind(const FiniteRootSystem& sys, RootId alpha) {
    if (sys.is_even(alpha)) return ReflectionKind::Even;
    return sys.is_isotropic(alpha) ? ReflectionKind::OddIsotropic : ReflectionKind::NonIsotropicOdd;
}

SimpleSystem reflect_simple_system(const FiniteRootSystem& sys, const SimpleSystem& base, RootId alpha) {
    if (alpha < 0 || alpha >= sys.size()) throw Error(ErrorCode::NotARoot, "not a root");
    SimpleSystem out;
    out.roots.reserve(base.roots.size());
    switch (reflection_kind(sys, alpha)) {
        case ReflectionKind::OddIsotropic: {
            if (!base.contains(alpha))
                throw Error(ErrorCode::NotSimple, sys.label(alpha) + " is not in the base");
            for (RootId b : base.roots) {
                if (b == alpha)
                    out.roots.push_back(sys.neg(alpha));
                else if (sys.form(alpha, b) == 0)
                    out.roots.push_back(b);
                else {
                    RootId s = sys.sum(alpha, b);
                    if (s < 0) throw Error(ErrorCode::NotABase, "odd reflection left the root set");
                    out.roots.push_back(s);
                }
            }
            return out;
        }
        case ReflectionKind::NonIsotropicOdd: {
            RootId t = sys.twice(alpha);
            if (t == kNoRoot) throw Error(ErrorCode::NotARoot, "2" + sys.label(alpha) + " is not a root");
            return reflect_simple_system(sys, base, t);
        }
        case ReflectionKind::Even: {
            const QVec& a = sys.root(alpha);
            for (RootId b : base.roots) {
                Rational c = sys.coroot_pairing(alpha, b);
                out.roots.push_back(sys.require(sys.root(b) - c * a));
            }
            return out;
        }
    }
    return out;
}

SimpleSystem reflect_simple_system(const FiniteRootSystem& sys, const SimpleSystem& base, RootId alpha,
                                   ReflectionKind kind) {
    if (alpha < 0 || alpha >= sys.size()) throw Error(ErrorCode::NotARoot, "not a root");
    if (reflection_kind(sys, alpha) != kind)
        throw Error(ErrorCode::NotIsotropic,
                    sys.label(alpha) + " does not admit a reflection of kind " + kind_name(kind));
    return reflect_simple_system(sys, base, alpha);
}

SimpleSystem apply_chain(const FiniteRootSystem& sys, const SimpleSystem& base,
                         const std::vector<ReflectionStep>& steps) {
    SimpleSystem s = base;
    for (const auto& st : steps) s = reflect_simple_system(sys, s, st.root, st.kind);
    return s;
}

std::vector<ReflectionStep> applicable_reflections(const FiniteRootSystem& sys, const SimpleSystem& base) {
    std::vector<ReflectionStep> out;
    for (RootId a : base.roots)
        if (sys.is_isotropic(a)) out.push_back({a, ReflectionKind::OddIsotropic});
    RootSet pos = positive_system(sys, base);
    for (RootId r : members(pos))
        if (sys.is_even(r)) out.push_back({r, ReflectionKind::Even});
    std::sort(out.begin(), out.end(), [&](const ReflectionStep& x, const ReflectionStep& y) {
        if (x.kind != y.kind) return x.kind < y.kind;
        return x.root < y.root;  // ids follow coordinate order
    });
    return out;
}

std::vector<SimpleSystem> enumerate_simple_systems(const FiniteRootSystem& sys, std::size_t budget) {
    std::map<Key, SimpleSystem> seen;
    SimpleSystem start = distinguished_simple_system(sys);
    seen.emplace(start.sorted(), start);
    std::vector<SimpleSystem> frontier = {start};
    while (!frontier.empty()) {
        std::vector<std::vector<SimpleSystem>> next(frontier.size());
        parallel_for(frontier.size(), [&](std::size_t i) {
            for (const auto& st : applicable_reflections(sys, frontier[i]))
                next[i].push_back(reflect_simple_system(sys, frontier[i], st.root));
        });
        std::vector<SimpleSystem> grown;
        for (auto& group : next)
            for (auto& s : group)
                if (seen.emplace(s.sorted(), s).second) {
                    if (seen.size() > budget)
                        throw Error(ErrorCode::EnumerationBudgetExceeded,
                                    "more than " + std::to_string(budget) + " bases");
                    grown.push_back(std::move(s));
                }
        frontier = std::move(grown);
    }
    std::vector<SimpleSystem> out;
    out.reserve(seen.size());
    for (auto& [k, s] : seen) out.push_back(s);
    return out;
}

ReflectionChain reflection_chain(const FiniteRootSystem& sys, const SimpleSystem& from, const SimpleSystem& to,
                                 std::size_t budget) {
    if (!is_base(sys, from.roots)) throw Error(ErrorCode::NotABase, set_label(sys, from) + " is not a base");
    if (!is_base(sys, to.roots)) throw Error(ErrorCode::NotABase, set_label(sys, to) + " is not a base");
    const Key goal = to.sorted();
    struct Node {
        SimpleSystem base;
        int parent;
        ReflectionStep step;
    };
    std::vector<Node> nodes = {{from, -1, {}}};
    std::set<Key> seen = {from.sorted()};
    std::deque<int> queue = {0};
    int hit = from.sorted() == goal ? 0 : -1;
    while (hit < 0 && !queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (const auto& st : applicable_reflections(sys, nodes[cur].base)) {
            SimpleSystem nb = reflect_simple_system(sys, nodes[cur].base, st.root);
            Key k = nb.sorted();
            if (!seen.insert(k).second) continue;
            if (seen.size() > budget)
                throw Error(ErrorCode::EnumerationBudgetExceeded, "chain search exceeded budget");
            nodes.push_back({std::move(nb), cur, st});
            if (k == goal) {
                hit = static_cast<int>(nodes.size()) - 1;
                break;
            }
            queue.push_back(static_cast<int>(nodes.size()) - 1);
        }
    }
    if (hit < 0) throw Error(ErrorCode::NotABase, "target is not reachable from source");
    ReflectionChain chain;
    chain.source = from;
    chain.target = nodes[hit].base;
    for (int i = hit; nodes[i].parent >= 0; i = nodes[i].parent) chain.steps.push_back(nodes[i].step);
    std::reverse(chain.steps.begin(), chain.steps.end());
    return chain;
}

std::string format_chain(const FiniteRootSystem& sys, const ReflectionChain& chain) {
    std::string out = set_label(sys, chain.source);
    SimpleSystem cur = chain.source;
    for (const auto& st : chain.steps) {
        cur = reflect_simple_system(sys, cur, st.root);
        out += " -r_{" + sys.label(st.root) + "}-> " + set_label(sys, cur);
    }
    return out;
}

}  // namespace lsa

#include "lsa/parabolic_affine.hpp"
#include "lsa/linalg.hpp"
#include "lsa/parabolic_finite.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace lsa {

namespace {

RootId sum_index(const FiniteRootSystem& sys, RootId a, RootId b) {
    const RootId z = sys.size();
    if (a == z) return b;
    if (b == z) return a;
    RootId c = sys.sum(a, b);
    if (c == kZeroSum) return z;
    return c;
}

RootId neg_index(const FiniteRootSystem& sys, RootId a) { return a == sys.size() ? a : sys.neg(a); }

bool raw_contains(const std::vector<Thr>& s, RootId z, RootId fin, long level) {
    Thr t = s[fin];
    if (t == kPosInf) return false;
    if (fin == z && level == 0) return false;
    return t == kNegInf || level >= t;
}

std::string level_suffix(long level) {
    if (level == 0) return "";
    std::string out = level > 0 ? "+" : "-";
    long a = std::abs(level);
    if (a != 1) out += std::to_string(a);
    return out + "delta";
}

std::vector<RootId> sorted_unique(std::vector<RootId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

std::string class_name(RootClass c) {
    switch (c) {
        case RootClass::Good: return "good";
        case RootClass::Bad: return "bad";
        case RootClass::NotInP: return "not-in-P";
    }
    return "?";
}

AffineSet::AffineSet(SystemPtr sys, std::vector<Thr> thresholds, bool mirrored)
    : sys_(std::move(sys)), s_(std::move(thresholds)), mirrored_(mirrored) {
    if (static_cast<int>(s_.size()) != sys_->size() + 1)
        throw Error(ErrorCode::InvalidInput, "threshold map needs one entry per finite root plus zero");
}

bool AffineSet::contains(RootId fin, long level) const {
    if (mirrored_) return raw_contains(s_, zero(), neg_index(*sys_, fin), -level);
    return raw_contains(s_, zero(), fin, level);
}

bool AffineSet::closed() const {
    const FiniteRootSystem& sys = *sys_;
    const RootId z = zero();
    auto eff = [&](RootId a) { return a == z && s_[a] == 0 ? Thr(1) : s_[a]; };
    for (RootId a = 0; a <= z; ++a) {
        if (s_[a] == kPosInf) continue;
        for (RootId b = 0; b <= z; ++b) {
            if (s_[b] == kPosInf) continue;
            RootId c = sum_index(sys, a, b);
            if (c < 0) continue;
            if (s_[a] == kNegInf || s_[b] == kNegInf) {
                if (s_[c] != kNegInf) return false;
                continue;
            }
            Thr m = eff(a) + eff(b);
            if (c == z && m == 0) m = 1;
            if (s_[c] == kPosInf || (s_[c] != kNegInf && s_[c] > m)) return false;
        }
    }
    return true;
}

bool AffineSet::covers() const {
    const FiniteRootSystem& sys = *sys_;
    for (RootId a = 0; a < sys.size(); ++a) {
        Thr x = s_[a], y = s_[sys.neg(a)];
        if (x == kNegInf || y == kNegInf) continue;
        if (x == kPosInf || y == kPosInf) return false;
        if (x + y > 1) return false;
    }
    return s_[zero()] == kNegInf || s_[zero()] <= 1;
}

bool AffineSet::is_partition() const {
    const FiniteRootSystem& sys = *sys_;
    if (s_[zero()] != 1) return false;
    for (RootId a = 0; a < sys.size(); ++a) {
        Thr x = s_[a], y = s_[sys.neg(a)];
        bool ok = (is_finite(x) && is_finite(y) && x + y == 1) || (x == kNegInf && y == kPosInf) ||
                  (x == kPosInf && y == kNegInf);
        if (!ok) return false;
    }
    return closed();
}

std::vector<AffineRoot> affine_roots(const FiniteRootSystem& sys, long window) {
    std::vector<AffineRoot> out;
    for (RootId a = 0; a < sys.size(); ++a)
        for (long n = -window; n <= window; ++n) out.push_back({a, n});
    for (long n = -window; n <= window; ++n)
        if (n != 0) out.push_back({sys.size(), n});
    return out;
}

std::vector<AffineRoot> AffineSet::materialize(long window) const {
    std::vector<AffineRoot> out;
    for (const auto& r : affine_roots(*sys_, window))
        if (contains(r)) out.push_back(r);
    return out;
}

std::string AffineSet::label(const AffineRoot& r) const {
    if (r.fin == zero()) return (std::abs(r.level) == 1 ? std::string(r.level < 0 ? "-" : "") : std::to_string(r.level)) + "delta";
    return sys_->label(r.fin) + level_suffix(r.level);
}

AffinePartition make_partition(const SystemPtr& sys, std::vector<Thr> thresholds, bool mirrored) {
    AffineSet p(sys, std::move(thresholds), mirrored);
    if (!p.is_partition()) throw Error(ErrorCode::InvalidInput, "thresholds do not describe a parabolic partition");
    return p;
}

AffinePartition partition_from(const SystemPtr& sys, const SimpleSystem& base, const std::vector<RootId>& X) {
    for (RootId x : X)
        if (!base.contains(x)) throw Error(ErrorCode::XNotSubset, sys->label(x) + " is not in the base");
    RootSet pos = positive_system(*sys, base);
    RootSet posx = additive_closure(*sys, make_set(*sys, X));
    std::vector<Thr> s(sys->size() + 1);
    for (RootId r = 0; r < sys->size(); ++r) {
        if (posx.test(r)) s[r] = 0;
        else if (posx.test(sys->neg(r))) s[r] = 1;
        else s[r] = pos.test(r) ? kNegInf : kPosInf;
    }
    s[sys->size()] = 1;
    return make_partition(sys, std::move(s));
}

AffinePartition natural_partition(const SystemPtr& sys, const SimpleSystem& base) {
    return partition_from(sys, base, {});
}

AffinePartition standard_partition(const SystemPtr& sys, const SimpleSystem& base) {
    return partition_from(sys, base, base.roots);
}

RootClass classify_root(const AffinePartition& p, const AffineRoot& r) {
    if (!p.contains(r)) return RootClass::NotInP;
    if (p.mirrored()) return RootClass::Bad;
    return is_finite(p.threshold(r.fin)) ? RootClass::Good : RootClass::Bad;
}

AffinePartition reflect_affine(const AffinePartition& p, const AffineStep& step) {
    const FiniteRootSystem& sys = p.sys();
    if (step.root < 0 || step.root >= sys.size())
        throw Error(ErrorCode::InvalidReflection, "reflections are taken along real roots");
    if (p.mirrored()) {
        AffineSet q = reflect_affine(p.negated(), {sys.neg(step.root), -step.level});
        return q.negated();
    }
    auto s = p.thresholds();
    const RootId a = step.root;
    auto name = [&] { return p.label({a, step.level}); };
    if (s[a] != step.level)
        throw Error(ErrorCode::InvalidReflection, name() + " is not the lowest root of its string in P");
    const RootId t = sys.twice(a);
    if (t != kNoRoot && s[t] != 2 * step.level)
        throw Error(ErrorCode::InvalidReflection, "twice " + name() + " is not the lowest root of its string");
    auto flip = [&](RootId r) {
        s[r] += 1;
        Thr& o = s[sys.neg(r)];
        if (is_finite(o)) o -= 1;
    };
    flip(a);
    if (t != kNoRoot) flip(t);
    AffineSet q(p.sys_ptr(), std::move(s));
    if (!q.is_partition()) throw Error(ErrorCode::InvalidReflection, "reflecting along " + name() + " breaks closure");
    return q;
}

AffinePartition apply_affine_chain(const AffinePartition& p, const std::vector<AffineStep>& chain) {
    AffineSet q = p;
    for (const auto& st : chain) q = reflect_affine(q, st);
    return q;
}

SimpleSystem finite_base(const AffinePartition& p) {
    const FiniteRootSystem& sys = p.sys();
    RootSet fin = sys.empty_set();
    for (RootId r = 0; r < sys.size(); ++r)
        if (p.contains(r, 0)) fin.set(r);
    return partition_base(sys, finite_parabolic(sys, fin));
}

std::vector<RootId> good_simple_roots(const AffinePartition& p, const SimpleSystem& base) {
    std::vector<RootId> out;
    for (RootId a : base.roots)
        if (classify_root(p, {a, 0}) == RootClass::Good) out.push_back(a);
    return out;
}

long good_defect(const AffinePartition& p, const SimpleSystem& base) {
    long total = 0;
    for (RootId r : members(additive_closure(p.sys(), make_set(p.sys(), good_simple_roots(p, base)))))
        total += std::abs(static_cast<long>(p.threshold(r)));
    return total;
}

Descent descent_to_standard_goods(const AffinePartition& p) {
    const FiniteRootSystem& sys = p.sys();
    if (p.mirrored()) {
        Descent d = descent_to_standard_goods(p.negated());
        for (auto& st : d.chain) st = {sys.neg(st.root), -st.level};
        d.result = d.result.negated();
        return d;
    }
    if (!p.is_partition()) throw Error(ErrorCode::InvalidInput, "descent needs a parabolic partition");
    const SimpleSystem base = finite_base(p);
    auto coeffs = *base_coefficients(sys, base.roots);
    auto height = [&](RootId r) { return std::accumulate(coeffs[r].begin(), coeffs[r].end(), 0); };

    Descent d{{}, p, {}};
    AffineSet& cur = d.result;
    while (true) {
        const auto X = good_simple_roots(cur, base);
        const auto posx = members(additive_closure(sys, make_set(sys, X)));
        const long defect = good_defect(cur, base);
        d.defects.push_back(defect);
        if (defect == 0) break;
        auto s = [&](RootId r) { return cur.threshold(r); };

        std::map<int, std::vector<RootId>> outside;  // height -> roots not in D_z
        for (RootId a : posx) {
            const int z = height(a);
            if (z < 2) continue;
            bool in_d = false;
            for (RootId b : posx) {
                if (height(b) != z - 1) continue;
                for (RootId g : X)
                    if (sys.sum(b, g) == a && s(a) == s(b) + s(g)) in_d = true;
            }
            if (!in_d) outside[z].push_back(a);
        }
        RootId pick = kNoRoot;
        if (!outside.empty()) {
            auto& top = outside.rbegin()->second;
            pick = *std::min_element(top.begin(), top.end());
        } else {
            for (RootId a : X)
                if (s(a) < 0 && (pick == kNoRoot || a < pick)) pick = a;
        }
        std::vector<RootId> order;
        if (pick != kNoRoot) order.push_back(pick);
        std::vector<RootId> rest(posx.begin(), posx.end());
        std::sort(rest.begin(), rest.end(), [&](RootId x, RootId y) {
            return height(x) != height(y) ? height(x) > height(y) : x < y;
        });
        order.insert(order.end(), rest.begin(), rest.end());
        bool moved = false;
        for (RootId a : order) {
            if (s(a) >= 0) continue;
            AffineStep st{a, static_cast<long>(s(a))};
            try {
                AffineSet next = reflect_affine(cur, st);
                if (good_defect(next, base) >= defect) continue;
                cur = std::move(next);
                d.chain.push_back(st);
                moved = true;
                break;
            } catch (const Error&) {
            }
        }
        if (!moved) throw Error(ErrorCode::InvalidReflection, "descent found no admissible reflection");
    }
    RootSet pos = positive_system(sys, base);
    for (RootId r = 0; r < sys.size(); ++r) {
        Thr t = cur.threshold(r);
        if (is_finite(t) && t < (pos.test(r) ? 0 : 1))
            throw Error(ErrorCode::InvalidReflection, "descent ended outside the standard partition");
    }
    return d;
}

CanonicalForm canonical_form_partition(const AffinePartition& p) {
    Descent d = descent_to_standard_goods(p);
    AffineSet raw = p.mirrored() ? d.result.negated() : d.result;
    CanonicalForm c;
    c.base = finite_base(raw);
    c.X = good_simple_roots(raw, c.base);
    c.chain = d.chain;
    AffineSet target = partition_from(p.sys_ptr(), c.base, c.X);
    if (!(target == raw)) throw Error(ErrorCode::InvalidInput, "descent did not reach P(base, X)");
    c.result = d.result;
    return c;
}

AffineRoot AffineParabolicSet::negate(const AffineRoot& r) const {
    return {neg_index(set.sys(), r.fin), -r.level};
}

AffineParabolicSet make_affine_parabolic_set(const SystemPtr& sys, const SimpleSystem& base,
                                             const std::vector<RootId>& X, const std::vector<RootId>& S,
                                             bool delta_symmetric, const std::vector<AffineStep>& chain) {
    AffineParabolicSet ps;
    ps.base = base;
    ps.S = sorted_unique(S);
    ps.delta_symmetric = delta_symmetric;
    for (RootId r : S)
        if (!base.contains(r)) throw Error(ErrorCode::InvalidSCombination, "S must lie in the base");
    std::vector<Thr> s;
    if (delta_symmetric) {
        if (!X.empty() || !chain.empty())
            throw Error(ErrorCode::InvalidSCombination, "a delta-symmetric set takes no X and no chain");
        s = natural_partition(sys, base).thresholds();
        s[sys->size()] = kNegInf;
        for (RootId r : members(additive_closure(*sys, sys->negate(make_set(*sys, S))))) s[r] = kNegInf;
    } else {
        ps.X = sorted_unique(X);
        ps.chain = chain;
        if (ps.X.empty() || ps.S.empty())
            throw Error(ErrorCode::InvalidSCombination, "X and S must be nonempty when delta is not symmetric");
        for (RootId r : ps.S)
            if (!std::binary_search(ps.X.begin(), ps.X.end(), r))
                throw Error(ErrorCode::InvalidSCombination, "S must be a subset of X");
        for (RootId r : ps.X)
            if (!base.contains(r)) throw Error(ErrorCode::InvalidSCombination, "X must lie in the base");
        s = apply_affine_chain(partition_from(sys, base, ps.X), chain).thresholds();
        for (RootId r : members(additive_closure(*sys, sys->negate(make_set(*sys, S)))))
            if (s[r] == kPosInf || s[r] > 0) s[r] = 0;
    }
    ps.set = AffineSet(sys, std::move(s));
    if (!ps.set.is_parabolic())
        throw Error(ErrorCode::InvalidSCombination, "the data do not give an additively closed parabolic set");
    return ps;
}

std::vector<std::vector<RootId>> connected_components(const FiniteRootSystem& sys, const std::vector<RootId>& roots) {
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (sys.form(roots[i], roots[j]) != 0) parent[find(i)] = find(j);
    std::map<std::size_t, std::vector<RootId>> groups;
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < n; ++i) {
        auto r = find(i);
        if (!groups.count(r)) first.push_back(r);
        groups[r].push_back(roots[i]);
    }
    std::vector<std::vector<RootId>> out;
    for (auto r : first) out.push_back(groups[r]);
    return out;
}

namespace {

struct Signature {
    int rank = 0, even = 0, odd = 0;
    std::vector<Rational> norms;
    bool operator==(const Signature& o) const {
        return rank == o.rank && even == o.even && odd == o.odd && norms == o.norms;
    }
};

Signature signature_of(const FiniteRootSystem& sys, const std::vector<RootId>& simple) {
    Signature sig;
    sig.rank = static_cast<int>(simple.size());
    auto pos = members(additive_closure(sys, make_set(sys, simple)));
    std::vector<Rational> ev, od;
    Rational scale = 0;
    for (RootId r : pos) {
        (sys.is_even(r) ? ev : od).push_back(sys.norm(r));
        if (sys.is_even(r)) scale = std::max(scale, abs(sys.norm(r)));
    }
    sig.even = static_cast<int>(ev.size());
    sig.odd = static_cast<int>(od.size());
    if (scale == 0) scale = 1;
    auto canon = [&](int sign) {
        std::vector<Rational> a, b;
        for (auto& x : ev) a.push_back(sign * x / scale);
        for (auto& x : od) b.push_back(sign * x / scale);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        a.push_back(Rational(1000));
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    sig.norms = std::max(canon(1), canon(-1));
    return sig;
}

std::string even_cartan_name(const Signature& sig) {
    const int r = sig.rank, p = sig.even;
    if (p == r * (r + 1) / 2) return "sl(" + std::to_string(r + 1) + ")";
    if (r == 2 && p == 6) return "G2";
    if (r == 4 && p == 24) return "F4";
    if (p == r * (r - 1)) return "so(" + std::to_string(2 * r) + ")";
    if (p == r * r) {
        int shortest = 0;
        Rational lo = 1000;
        for (const auto& x : sig.norms) {
            if (x == 1000) break;
            if (abs(x) < lo) lo = abs(x), shortest = 0;
            if (abs(x) == lo) ++shortest;
        }
        if (r == 2) return "sp(4)";
        return shortest == r ? "so(" + std::to_string(2 * r + 1) + ")" : "sp(" + std::to_string(2 * r) + ")";
    }
    return "even rank " + std::to_string(r);
}

const std::vector<std::pair<Signature, std::string>>& super_table() {
    static std::vector<std::pair<Signature, std::string>> table;
    static std::once_flag once;
    std::call_once(once, [] {
        auto add = [](const AlgebraFamily& f, const std::string& name) {
            auto sys = FiniteRootSystem::build(f);
            table.emplace_back(signature_of(sys, sys.distinguished()), name);
        };
        for (int m = 1; m <= 6; ++m)
            for (int n = m; m + n <= 7; ++n) {
                if (m == n) add(AlgebraFamily::gl(m, n), "psl(" + std::to_string(m) + "," + std::to_string(n) + ")");
                else add(AlgebraFamily::sl(m, n), AlgebraFamily::sl(m, n).name());
            }
        for (int m = 1; m <= 8; ++m)
            for (int n = 2; n <= 6; n += 2)
                if (m / 2 + n / 2 <= 6) add(AlgebraFamily::osp(m, n), AlgebraFamily::osp(m, n).name());
    });
    return table;
}

}  // namespace

std::string component_tag(const FiniteRootSystem& sys, const std::vector<RootId>& component) {
    if (component.size() == 1 && sys.is_isotropic(component[0])) return "sl(1,1)";
    if (static_cast<int>(component.size()) == sys.rank() &&
        additive_closure(sys, make_set(sys, component)).count() * 2 == static_cast<std::size_t>(sys.size())) {
        const auto& f = sys.family();
        if (f.family == Family::GL)
            return f.m == f.n ? "psl(" + std::to_string(f.m) + "," + std::to_string(f.n) + ")"
                              : AlgebraFamily::sl(f.m, f.n).name();
        return f.name();
    }
    Signature sig = signature_of(sys, component);
    if (sig.odd == 0) return even_cartan_name(sig);
    for (const auto& [s, name] : super_table())
        if (s == sig) return name;
    return "rank " + std::to_string(sig.rank) + " superalgebra";
}

LeviDecomposition levi_structure(const AffineParabolicSet& ps) {
    const FiniteRootSystem& sys = ps.set.sys();
    LeviDecomposition out;
    for (auto& comp : connected_components(sys, ps.S)) {
        LeviComponent c;
        c.roots = comp;
        c.sl11 = comp.size() == 1 && sys.is_isotropic(comp[0]);
        c.tag = component_tag(sys, comp) + (ps.delta_symmetric ? "^" : "");
        out.commutes = out.commutes && !c.sl11;
        out.components.push_back(std::move(c));
    }
    const bool matrix = sys.family().family == Family::GL || sys.family().family == Family::SL;
    out.cartan_coordinates = sys.coordinate_names();
    if (!ps.delta_symmetric) return out;

    const int dim = sys.dim();
    QMat hb;
    if (sys.family().family == Family::GL) {
        hb = QMat::Identity(dim, dim);
    } else {
        hb.resize(dim, sys.rank());
        for (int i = 0; i < sys.rank(); ++i) hb.col(i) = sys.root(sys.distinguished()[i]);
    }
    const Eigen::Index k = hb.cols();
    const Eigen::Index ns = static_cast<Eigen::Index>(ps.S.size());
    QMat smat(dim, ns);
    for (Eigen::Index i = 0; i < ns; ++i) smat.col(i) = sys.root(ps.S[i]);
    std::vector<QVec> f;
    QMat kern = ns == 0 ? QMat(QMat::Identity(k, k)) : linalg::kernel(QMat(smat.transpose() * sys.gram() * hb));
    QMat cand = hb * kern;
    QMat all(dim, ns + cand.cols());
    all << smat, cand;
    if (linalg::rank(all) == k && cand.cols() + ns == k) {
        out.orthogonal = true;
        for (Eigen::Index i = 0; i < cand.cols(); ++i) f.push_back(cand.col(i));
    } else {
        QMat acc = smat;
        for (Eigen::Index i = 0; i < k; ++i) {
            QMat trial(dim, acc.cols() + 1);
            trial << acc, hb.col(i);
            if (linalg::rank(trial) > linalg::rank(acc)) {
                acc = trial;
                f.push_back(hb.col(i));
            }
        }
    }
    for (auto& v : f) {
        if (matrix) v = sys.gram() * v;
        v = primitive(v);
    }
    out.complement = std::move(f);
    return out;
}

bool borel_is_solvable(const FiniteRootSystem& sys, const SimpleSystem& base, const std::vector<RootId>& X) {
    for (RootId x : X)
        if (!base.contains(x)) throw Error(ErrorCode::XNotSubset, sys.label(x) + " is not in the base");
    for (const auto& comp : connected_components(sys, X))
        if (comp.size() != 1 || !sys.is_isotropic(comp[0])) return false;
    return true;
}

TriangularDecomposition triangular_decomposition(const AffineParabolicSet& ps, long window) {
    TriangularDecomposition t;
    for (const auto& r : affine_roots(ps.set.sys(), window)) {
        bool in = ps.set.contains(r), neg = ps.set.contains(ps.negate(r));
        if (in && neg) t.levi.push_back(r);
        else if (in) t.u_plus.push_back(r);
        else if (neg) t.u_minus.push_back(r);
    }
    return t;
}

}  // namespace lsa

#include "lsa/sl11.hpp"
#include "lsa/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace lsa::sl11 {

void add_to(ExtVector& v, const Tuple& t, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = v.try_emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

ExtVector ext_monomial(Tuple levels, const Rational& coeff) {
    ExtVector out;
    if (coeff == 0) return out;
    int sign = 1;
    for (std::size_t i = 1; i < levels.size(); ++i)
        for (std::size_t j = i; j > 0 && levels[j - 1] >= levels[j]; --j) {
            if (levels[j - 1] == levels[j]) return out;
            std::swap(levels[j - 1], levels[j]);
            sign = -sign;
        }
    out.emplace(std::move(levels), coeff * sign);
    return out;
}

ExtVector lower(long l, const ExtVector& v) {
    ExtVector out;
    for (const auto& [t, c] : v) {
        Tuple u;
        u.reserve(t.size() + 1);
        u.push_back(l);
        u.insert(u.end(), t.begin(), t.end());
        for (const auto& [w, x] : ext_monomial(std::move(u), c)) add_to(out, w, x);
    }
    return out;
}

ExtVector act_raising(const Zeta& z, long m, const ExtVector& v) {
    ExtVector out;
    for (const auto& [t, c] : v) {
        auto it = std::find(t.begin(), t.end(), -m);
        if (it == t.end()) continue;
        const auto i = it - t.begin();
        Tuple rest(t.begin(), it);
        rest.insert(rest.end(), it + 1, t.end());
        add_to(out, rest, c * (i % 2 ? -1 : 1) * z.ladder_factor(-m));
    }
    return out;
}

ExtVector act_ladder(const Zeta& z, const std::vector<long>& ms, const ExtVector& v) {
    ExtVector out = v;
    for (auto it = ms.rbegin(); it != ms.rend(); ++it) out = act_raising(z, *it, out);
    return out;
}

std::string to_string(const ExtVector& v) {
    if (v.empty()) return "0";
    std::string out;
    for (const auto& [t, c] : v) {
        if (!out.empty()) out += " + ";
        out += lsa::to_string(c);
        for (long l : t) out += " x(" + std::to_string(l) + ")";
        out += " 1";
    }
    return out;
}

BadSet bad_set(const Zeta& z) {
    const Rational ck = z.c * z.k;
    if (ck == 0) return {z.h == 0 ? BadSet::Kind::All : BadSet::Kind::Empty, 0};
    const Rational l = z.h / ck;
    if (!is_integer(l)) return {BadSet::Kind::Empty, 0};
    return {BadSet::Kind::Single, to_long(l)};
}

bool support_nonzero(const Zeta& z, int n, long ell) {
    if (n < 0) throw Error(ErrorCode::InvalidInput, "n must be nonnegative");
    if (n == 0) return ell == 0;
    const BadSet b = bad_set(z);
    if (b.kind == BadSet::Kind::All) return false;
    if (n == 1) return !b.contains(ell);
    return true;
}

std::vector<Tuple> level_set(int n, long ell, long bound) {
    std::vector<Tuple> out;
    if (n < 0) return out;
    Tuple cur;
    std::function<void(long, long)> rec = [&](long from, long left) {
        const int k = n - static_cast<int>(cur.size());
        if (k == 0) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (long l = from; l <= bound; ++l) {
            // smallest and largest sums of the remaining k entries starting at l
            const long lo = k * l + static_cast<long>(k) * (k - 1) / 2;
            const long hi = k * bound - static_cast<long>(k) * (k - 1) / 2;
            if (lo > left) break;
            if (hi < left) continue;
            cur.push_back(l);
            rec(l + 1, left - l);
            cur.pop_back();
        }
    };
    rec(-bound, ell);
    return out;
}

long sufficient_bound(const Zeta& z, int n, long ell) {
    const BadSet b = bad_set(z);
    const long extra = b.kind == BadSet::Kind::Single ? std::abs(b.value) : 0;
    return std::max<long>(std::abs(ell), static_cast<long>(n) * n + extra) + 1;
}

namespace {

bool ladder_nonzero(const Zeta& z, const Tuple& t) {
    std::vector<long> ms;
    for (long l : t) ms.push_back(-l);
    return !act_ladder(z, ms, ext_monomial(t)).empty();
}

}  // namespace

bool support_bruteforce(const Zeta& z, int n, long ell, long bound) {
    if (n == 0) return ell == 0;
    for (const Tuple& t : level_set(n, ell, bound))
        if (ladder_nonzero(z, t)) return true;
    return false;
}

long quotient_weight_dim(const Zeta& z, int n, long ell, long bound) {
    if (n == 0) return ell == 0 ? 1 : 0;
    const auto tuples = level_set(n, ell, bound);
    std::map<std::vector<long>, std::map<std::size_t, Rational>> pairing;
    for (std::size_t j = 0; j < tuples.size(); ++j) {
        std::vector<long> ladder;
        std::function<void(const ExtVector&)> rec = [&](const ExtVector& v) {
            if (v.empty()) return;
            if (static_cast<int>(ladder.size()) == n) {
                auto it = v.find(Tuple{});
                if (it != v.end()) pairing[ladder][j] += it->second;
                return;
            }
            std::set<long> ms;
            for (const auto& [t, c] : v)
                for (long l : t) ms.insert(-l);
            for (long m : ms) {
                ladder.insert(ladder.begin(), m);
                rec(act_raising(z, m, v));
                ladder.erase(ladder.begin());
            }
        };
        rec(ext_monomial(tuples[j]));
    }
    // connected blocks of the pairing
    std::vector<std::size_t> parent(tuples.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& [ladder, row] : pairing)
        for (const auto& [j, c] : row) parent[find(j)] = find(row.begin()->first);
    std::map<std::size_t, std::vector<std::size_t>> cols;
    std::map<std::size_t, std::vector<const std::map<std::size_t, Rational>*>> rows;
    for (std::size_t j = 0; j < tuples.size(); ++j) cols[find(j)].push_back(j);
    for (const auto& [ladder, row] : pairing) rows[find(row.begin()->first)].push_back(&row);
    long dim = 0;
    for (const auto& [root, rs] : rows) {
        const auto& cs = cols[root];
        std::map<std::size_t, Eigen::Index> at;
        for (std::size_t i = 0; i < cs.size(); ++i) at[cs[i]] = static_cast<Eigen::Index>(i);
        QMat a = QMat::Zero(static_cast<Eigen::Index>(rs.size()), static_cast<Eigen::Index>(cs.size()));
        for (std::size_t r = 0; r < rs.size(); ++r)
            for (const auto& [j, c] : *rs[r]) a(static_cast<Eigen::Index>(r), at[j]) = c;
        dim += linalg::rank(a);
    }
    return dim;
}

// ---------------------------------------------------------------- engine models

namespace {

struct Natural {
    engine::AlgebraPtr g;
    std::unique_ptr<engine::VermaModule> module;
    int xp = 0, xm = 0;

    // zeta(K) enters the engine scaled by c, the engine form gives (x_alpha | x_-alpha) = 1
    explicit Natural(const Zeta& z) {
        using namespace engine;
        g = LoopAlgebra::build(AlgebraFamily::sl(1, 1));
        const FiniteRootSystem& sys = g->roots();
        SimpleSystem base = distinguished_simple_system(sys);
        const RootId a = base.roots[0];
        xp = g->root_vector(a);
        xm = g->root_vector(sys.neg(a));
        Weight w = Weight::zero(*g);
        w.h(0) = z.h;
        w.k = z.c * z.k;
        w.d = z.d;
        module = std::make_unique<VermaModule>(g, Split::levi(*g, base, {}), w);
    }
};

}  // namespace

Witness natural_verma_proper_vector(const Zeta& z, int window) {
    using namespace engine;
    Natural nat(z);
    VermaModule& m = *nat.module;
    Witness w;
    w.vector = m.act(m.code(0, -1), ModVec{{Monomial{}, Rational(1)}});
    w.name = m.monomial_name(w.vector.begin()->first);
    w.level = -1;
    w.nonzero = !w.vector.empty();
    w.singular = true;
    for (long l = -window; l <= window; ++l) {
        w.singular = w.singular && m.act(m.code(nat.xp, l), w.vector).empty();
        ++w.checks;
    }
    for (long k = 1; k <= window; ++k) {
        w.singular = w.singular && m.act(m.code(0, k), w.vector).empty();
        ++w.checks;
    }
    // every monomial of the witness carries a Cartan loop factor, so it vanishes in V(zeta)
    for (const auto& [mono, c] : w.vector)
        w.zero_in_quotient = w.zero_in_quotient && std::any_of(mono.begin(), mono.end(), [](Code x) {
            return VermaModule::class_of(x) == GenClass::MLower;
        });
    return w;
}

GenericModel::GenericModel(const Zeta& z) {
    Natural nat(z);
    g_ = nat.g;
    module_ = std::move(nat.module);
    xp_ = nat.xp;
    xm_ = nat.xm;
}

ExtVector GenericModel::raise(long m, const Tuple& levels) {
    using namespace engine;
    ModVec v{{Monomial{}, Rational(1)}};
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) v = module_->act(module_->code(xm_, *it), v);
    ModVec r = module_->act(module_->code(xp_, m), v);
    ExtVector out;
    for (const auto& [mono, c] : r) {
        Tuple t;
        bool keep = true;
        for (Code x : mono) {
            if (VermaModule::class_of(x) != GenClass::ULower) {
                keep = false;
                break;
            }
            t.push_back(VermaModule::level_of(x));
        }
        if (keep) add_to(out, t, c);
    }
    return out;
}

}  // namespace lsa::sl11

#include "engine_support.hpp"
#include "support.hpp"

#include "lsa/parabolic_finite.hpp"
#include "lsa/sl11.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace lsa;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

RootId by_coeffs(const FiniteRootSystem& sys, const SimpleSystem& base, const IVec& c) {
    auto co = *base_coefficients(sys, base.roots);
    for (RootId r = 0; r < sys.size(); ++r)
        if (co[r] == c) return r;
    throw Error(ErrorCode::NotARoot, "no root with these coefficients");
}

std::vector<std::vector<RootId>> subsets(const std::vector<RootId>& xs, bool proper_only) {
    std::vector<std::vector<RootId>> out;
    const unsigned full = (1u << xs.size()) - 1;
    for (unsigned mask = 0; mask <= full; ++mask) {
        if (proper_only && mask == full) continue;
        std::vector<RootId> s;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (mask >> i & 1) s.push_back(xs[i]);
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- 1

Outcome golden_chain() {
    auto sys = std::make_shared<FiniteRootSystem>(FiniteRootSystem::build(AlgebraFamily::osp(2, 4)));
    SimpleSystem base = distinguished_simple_system(*sys);
    auto r = [&](IVec c) { return by_coeffs(*sys, base, c); };
    std::vector<Thr> s(sys->size() + 1);
    std::vector<std::pair<IVec, Thr>> pos = {{{1, 0, 0}, 0},  {{0, 1, 0}, 0},  {{0, 0, 1}, -1}, {{1, 1, 0}, 0},
                                             {{0, 1, 1}, -1}, {{1, 1, 1}, -2}, {{0, 2, 1}, -1}, {{1, 2, 1}, -2}};
    for (auto& [c, t] : pos) {
        s[r(c)] = t;
        s[sys->neg(r(c))] = 1 - t;
    }
    s[sys->size()] = 1;
    auto start = std::chrono::steady_clock::now();
    AffinePartition p = make_partition(sys, s);
    CanonicalForm cf = canonical_form_partition(p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::vector<AffineStep> want = {{r({1, 1, 1}), -2}, {r({1, 2, 1}), -2}, {r({0, 0, 1}), -1}, {r({0, 1, 1}), -1},
                                    {r({0, 2, 1}), -1}, {r({1, 1, 1}), -1}, {r({1, 2, 1}), -1}};
    AffinePartition st = standard_partition(sys, base);
    bool goods_inside = true;
    for (const auto& x : cf.result.materialize(kDefaultWindow))
        if (classify_root(cf.result, x) == RootClass::Good && !st.contains(x)) goods_inside = false;
    std::ostringstream d;
    d << cf.chain.size() << " steps, exact=" << (cf.chain == want) << ", G(P')<=P_st=" << goods_inside << ", "
      << secs << " s";
    return {cf.chain == want && goods_inside && secs < 1.0, d.str()};
}

// ---------------------------------------------------------------- 2

Outcome good_bad_properties() {
    std::mt19937 rng(2026);
    long checked = 0, violations = 0;
    for (const auto& f : {AlgebraFamily::sl(1, 2), AlgebraFamily::osp(2, 4)}) {
        auto sys = std::make_shared<FiniteRootSystem>(FiniteRootSystem::build(f));
        auto bases = enumerate_simple_systems(*sys);
        int made = 0;
        while (made < 200) {
            AffinePartition p = testing::random_partition(sys, bases, rng);
            if (!p.is_partition() || !p.contains(p.zero(), 1)) continue;
            violations += testing::check_good_bad(p, 6).total();
            ++made;
            ++checked;
        }
    }
    return {violations == 0, std::to_string(checked) + " partitions, " + std::to_string(violations) + " violations"};
}

// ---------------------------------------------------------------- 3

Outcome parabolic_oracle() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream d;
    for (const auto& f : {AlgebraFamily::gl(1, 1), AlgebraFamily::sl(1, 2), AlgebraFamily::osp(1, 2)}) {
        auto sys = FiniteRootSystem::build(f);
        std::set<RootSet> oracle, built;
        auto all = enumerate_finite_parabolics(sys);
        for (const auto& p : all.partitions) oracle.insert(p.roots);
        for (const auto& p : all.parabolic_sets) oracle.insert(p.roots);
        for (const auto& base : enumerate_simple_systems(sys)) {
            built.insert(positive_system(sys, base));
            for (const auto& R : subsets(base.roots, false))
                if (!R.empty()) built.insert(make_parabolic_set(sys, base, R).roots);
        }
        ok = ok && oracle == built;
        d << f.name() << " " << oracle.size() << "/" << built.size() << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    d << secs << " s";
    return {ok && secs < 60, d.str()};
}

// ---------------------------------------------------------------- 4

Outcome type_dichotomy() {
    bool ok = true;
    std::ostringstream d;
    for (const auto& f : {AlgebraFamily::osp(1, 2), AlgebraFamily::osp(3, 2)}) {
        auto sys = FiniteRootSystem::build(f);
        int found = 0;
        for (const auto& p : enumerate_finite_parabolics(sys).parabolic_sets)
            if (p.roots != sys.full_set() && contains_even_part(sys, p)) ++found;
        ok = ok && found == 0;
        d << f.name() << ": " << found << "; ";
    }
    auto sys = FiniteRootSystem::build(AlgebraFamily::sl(1, 2));
    std::set<RootSet> containing, expected;
    for (const auto& p : enumerate_finite_parabolics(sys).parabolic_sets)
        if (p.roots != sys.full_set() && contains_even_part(sys, p)) containing.insert(p.roots);
    for (const auto& base : enumerate_simple_systems(sys)) {
        if (!is_distinguished(sys, base)) continue;
        std::vector<RootId> even;
        for (RootId r : base.roots)
            if (sys.is_even(r)) even.push_back(r);
        expected.insert(make_parabolic_set(sys, base, even).roots);
    }
    ok = ok && containing == expected && !expected.empty();
    d << "sl(1,2): " << containing.size() << " containing, " << expected.size() << " from distinguished bases";
    return {ok, d.str()};
}

// ---------------------------------------------------------------- 5

Outcome heisenberg() {
    using namespace engine;
    auto start = std::chrono::steady_clock::now();
    auto g = LoopAlgebra::build(AlgebraFamily::gl(1, 1));
    bool ok = true;
    int probes = 0;
    for (Rational k : {Rational(1, 2), Rational(1), Rational(2)})
        for (int depth = 1; depth <= 5; ++depth) {
            Weight w = Weight::zero(*g);
            w.h(0) = 1;
            w.k = k;
            Truncation t;
            t.max_depth = depth;
            auto f = fock_module(g, {0}, w, t);
            ok = ok && probe_simplicity(*f).simple_at_truncation;
            ++probes;
        }
    Weight w = Weight::zero(*g);
    w.h(0) = 1;
    Truncation t;
    t.max_depth = 1;
    auto f = fock_module(g, {0}, w, t);
    auto rep = f->singular_vectors({IVec(2, 0), -1});
    const bool critical = rep.singular == 1 && f->element_name(rep.basis[0][0].first) == "h1(-1)v";
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream d;
    d << probes << " noncritical probes simple=" << ok << ", K=0 h1(-1)v singular=" << critical << ", " << secs << " s";
    return {ok && critical && secs < 10, d.str()};
}

// ---------------------------------------------------------------- 6

Outcome natural_probe() {
    using namespace engine;
    const std::vector<Rational> fin = {0, 1, -1, Rational(1, 2), Rational(-1, 2)};
    const std::vector<Rational> ks = {-2, -1, Rational(-1, 2), 0, Rational(1, 2), 1, 2};
    long cases = 0, mismatches = 0;
    for (const auto& f : {AlgebraFamily::gl(1, 1), AlgebraFamily::sl(1, 2)}) {
        auto g = LoopAlgebra::build(f);
        SimpleSystem base = distinguished_simple_system(g->roots());
        for (const Rational& a : fin)
            for (const Rational& b : fin)
                for (const Rational& k : ks) {
                    Weight w = Weight::zero(*g);
                    w.h(0) = a;
                    w.h(1) = b;
                    w.k = k;
                    Truncation t;
                    t.max_depth = 3;
                    auto m = verma_module(g, base, {}, w, t);
                    const bool singular = !probe_simplicity(*m).simple_at_truncation;
                    mismatches += singular != (k == 0);
                    ++cases;
                }
    }
    return {mismatches == 0, std::to_string(cases) + " weights at depth 3, " + std::to_string(mismatches) + " mismatches"};
}

// ---------------------------------------------------------------- 7

Outcome induced_probes() {
    using namespace engine;
    auto start = std::chrono::steady_clock::now();
    auto g = LoopAlgebra::build(AlgebraFamily::sl(1, 2));
    SimpleSystem base = distinguished_simple_system(g->roots());
    const std::vector<std::pair<Rational, Rational>> grid = {{0, 0}, {1, 0}, {0, 1}, {Rational(1, 2), -1}, {1, 2}};
    int simple_ok = 0, simple_total = 0, witnesses = 0;
    std::string names;
    // index 0 is alpha (isotropic), index 1 is beta
    for (int xi : {1, 0})
        for (Rational k : {Rational(1), Rational(2)}) {
            Truncation t;
            t.max_depth = 3;
            for (const auto& [a, b] : grid) {
                Weight w = Weight::zero(*g);
                w.h(0) = a;
                w.h(1) = b;
                w.k = k;
                auto m = induced_module(g, base, {base.roots[xi]}, w, true, t);
                simple_ok += probe_simplicity(*m).simple_at_truncation;
                ++simple_total;
            }
            Weight w = Weight::zero(*g);
            w.h(xi == 0 ? 1 : 0) = 1;
            w.k = k;
            auto n = induced_module(g, base, {base.roots[xi]}, w, false, t);
            auto p = probe_simplicity(*n);
            if (!p.simple_at_truncation) {
                ++witnesses;
                auto top = std::max_element(p.singular.begin(), p.singular.end(), [](const auto& x, const auto& y) {
                    return x.weight.level < y.weight.level;
                });
                const auto& e = top->basis.front().front().first;
                if (names.find(n->element_name(e)) == std::string::npos) names += " " + n->element_name(e);
            }
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream d;
    d << simple_ok << "/" << simple_total << " simple slices clean, " << witnesses << "/4 non-simple N witnessed ("
      << names.substr(names.empty() ? 0 : 1) << "), " << secs << " s";
    return {simple_ok == simple_total && witnesses == 4 && secs < 300, d.str()};
}

// ---------------------------------------------------------------- 8

sl11::Zeta zeta(Rational h, Rational k, Rational c = 1) {
    sl11::Zeta z;
    z.h = h;
    z.k = k;
    z.c = c;
    return z;
}

Outcome sl11_suite() {
    long mism = 0;
    std::ostringstream d;
    long a = 0;
    for (int n = 1; n <= 4; ++n)
        for (long l = -6; l <= 6; ++l) {
            if (sl11::support_nonzero(zeta(0, 0), n, l)) ++mism;
            if (sl11::quotient_weight_dim(zeta(0, 0), n, l, 6) != 0) ++mism;
            ++a;
        }
    d << "(a) " << a << " ";
    std::vector<sl11::Zeta> grid;
    for (Rational h : {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(1, 2), Rational(-3)})
        for (Rational k : {Rational(0), Rational(1), Rational(-1), Rational(1, 2), Rational(2), Rational(3)})
            grid.push_back(zeta(h, k));
    long b = 0, c = 0;
    for (const auto& z : grid)
        for (int n = 0; n <= 4; ++n)
            for (long l = -6; l <= 6; ++l) {
                const bool s = sl11::support_nonzero(z, n, l);
                if (n >= 2 && !z.vanishes()) {
                    mism += !s || !sl11::support_bruteforce(z, n, l, sl11::sufficient_bound(z, n, l));
                    ++b;
                }
                mism += sl11::support_bruteforce(z, n, l, sl11::sufficient_bound(z, n, l)) != s;
                ++c;
            }
    d << "(b) " << b << " (c) " << c << " ";
    std::mt19937 rng(500);
    long e = 0;
    for (int i = 0; i < 500; ++i) {
        sl11::Zeta z = zeta(testing::random_rational(rng), testing::random_rational(rng),
                            std::vector<Rational>{1, 2, Rational(1, 2), -1}[rng() % 4]);
        sl11::GenericModel model(z);
        const int n = rng() % 5;
        std::set<long> levels;
        while (static_cast<int>(levels.size()) < n) levels.insert(static_cast<long>(rng() % 13) - 6);
        sl11::Tuple t(levels.begin(), levels.end());
        long m = static_cast<long>(rng() % 13) - 6;
        if (rng() % 2 && n > 0) m = -t[rng() % n];
        mism += sl11::act_raising(z, m, sl11::ext_monomial(t)) != model.raise(m, t);
        ++e;
    }
    d << "(d) " << e << " cases, " << mism << " mismatches";
    return {mism == 0, d.str()};
}

// ---------------------------------------------------------------- 9

Outcome tec1_sweep() {
    long witnessed = 0, missing = 0, unchecked = 0;
    for (const auto& f : {AlgebraFamily::sl(1, 2), AlgebraFamily::gl(2, 1), AlgebraFamily::osp(2, 4),
                          AlgebraFamily::g3(), AlgebraFamily::d21a(Rational(1, 2))}) {
        auto sys = FiniteRootSystem::build(f);
        SimpleSystem base = distinguished_simple_system(sys);
        const bool matrix = f.family == Family::GL || f.family == Family::SL;
        for (const auto& X : subsets(base.roots, true))
            for (RootId alpha : engine::tec1_candidates(sys, base, X)) {
                try {
                    auto w = engine::tec1_witness(sys, base, X, alpha);
                    ++witnessed;
                    if (matrix && !w.matrix_checked) ++unchecked;
                } catch (const Error&) {
                    ++missing;
                }
            }
    }
    return {missing == 0 && unchecked == 0, std::to_string(witnessed) + " witnesses, " + std::to_string(missing) +
                                                " NoWitness, " + std::to_string(unchecked) + " not matrix-checked"};
}

// ---------------------------------------------------------------- 10

Outcome algebraic_invariants() {
    using namespace engine;
    std::mt19937 rng(1000);
    std::vector<std::pair<AlgebraPtr, SimpleSystem>> algs;
    for (const auto& f : {AlgebraFamily::gl(1, 1), AlgebraFamily::sl(1, 2), AlgebraFamily::gl(2, 1)}) {
        auto g = LoopAlgebra::build(f);
        algs.push_back({g, distinguished_simple_system(g->roots())});
    }
    long jac = 0, form = 0, act = 0;
    for (int i = 0; i < 1000; ++i) {
        const LoopAlgebra& g = *algs[i % algs.size()].first;
        auto x = testing::random_loop_vector(g, rng), y = testing::random_loop_vector(g, rng),
             z = testing::random_loop_vector(g, rng);
        Rational sxy = x.parity(g) && y.parity(g) ? -1 : 1;
        jac += bracket(g, x, bracket(g, y, z)) != bracket(g, bracket(g, x, y), z) + bracket(g, y, bracket(g, x, z)) * sxy;
        form += invariant_form(g, bracket(g, x, y), z) != invariant_form(g, x, bracket(g, y, z));
    }
    for (int i = 0; i < 1000; ++i) {
        const auto& [gp, base] = algs[i % algs.size()];
        const LoopAlgebra& g = *gp;
        std::vector<RootId> X;
        if (rng() % 2) X.push_back(base.roots[rng() % base.roots.size()]);
        VermaModule m(gp, Split::levi(g, base, X), testing::random_weight(g, rng));
        auto v = testing::random_module_vector(m, rng, 2);
        auto x = testing::random_loop_vector(g, rng, 2), y = testing::random_loop_vector(g, rng, 2);
        Rational sxy = x.parity(g) && y.parity(g) ? -1 : 1;
        ModVec lhs = m.act(x, m.act(y, v));
        add_to(lhs, m.act(y, m.act(x, v)), -sxy);
        act += lhs != m.act(bracket(g, x, y), v);
    }
    return {jac + form + act == 0, "1000 each; failures jacobi=" + std::to_string(jac) + " form=" +
                                       std::to_string(form) + " action=" + std::to_string(act)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"osp(2,4)^ golden chain", golden_chain},
        {"good/bad root properties on random partitions", good_bad_properties},
        {"finite parabolic oracle equivalence", parabolic_oracle},
        {"type dichotomy", type_dichotomy},
        {"Heisenberg dichotomy at truncation", heisenberg},
        {"natural Verma probe", natural_probe},
        {"induced module probes for sl(1,2)^", induced_probes},
        {"sl(1,1) suite", sl11_suite},
        {"nilradical root witness sweep", tec1_sweep},
        {"algebraic invariants", algebraic_invariants},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}

#include <doctest.h>

#include "lsa/parabolic_affine.hpp"
#include "lsa/reflections.hpp"

#include <random>

using namespace lsa;

namespace {

RootId by_coeffs(const FiniteRootSystem& sys, const SimpleSystem& base, IVec c) {
    auto co = *base_coefficients(sys, base.roots);
    for (RootId r = 0; r < sys.size(); ++r)
        if (co[r] == c) return r;
    FAIL("no root with these coefficients");
    return kNoRoot;
}

struct Osp24 {
    SystemPtr sys = std::make_shared<FiniteRootSystem>(FiniteRootSystem::build(AlgebraFamily::osp(2, 4)));
    SimpleSystem base = distinguished_simple_system(*sys);
    RootId r(IVec c) const { return by_coeffs(*sys, base, c); }

    AffinePartition example() const {
        std::vector<Thr> s(sys->size() + 1);
        std::vector<std::pair<IVec, Thr>> pos = {{{1, 0, 0}, 0},  {{0, 1, 0}, 0},  {{0, 0, 1}, -1},
                                                 {{1, 1, 0}, 0},  {{0, 1, 1}, -1}, {{1, 1, 1}, -2},
                                                 {{0, 2, 1}, -1}, {{1, 2, 1}, -2}};
        for (auto& [c, t] : pos) {
            s[r(c)] = t;
            s[sys->neg(r(c))] = 1 - t;
        }
        s[sys->size()] = 1;
        return make_partition(sys, s);
    }
};

}  // namespace

TEST_CASE("partition_from on sl(1,2)") {
    auto sys = std::make_shared<FiniteRootSystem>(FiniteRootSystem::build(AlgebraFamily::sl(1, 2)));
    auto base = distinguished_simple_system(*sys);
    RootId a = base.roots[0], b = base.roots[1];
    auto p = partition_from(sys, base, {b});
    CHECK(p.threshold(b) == 0);
    CHECK(p.threshold(sys->neg(b)) == 1);
    CHECK(p.threshold(a) == kNegInf);
    CHECK(p.threshold(sys->neg(a)) == kPosInf);
    CHECK(p.threshold(sys->size()) == 1);
    CHECK_THROWS_AS(partition_from(sys, base, {sys->neg(b)}), Error);

    auto nat = natural_partition(sys, base);
    CHECK(classify_root(nat, {sys->size(), 3}) == RootClass::Good);
    CHECK(classify_root(nat, {a, -5}) == RootClass::Bad);
    CHECK(classify_root(nat, {sys->neg(a), 5}) == RootClass::NotInP);
    auto st = standard_partition(sys, base);
    for (const auto& r : st.materialize(4)) CHECK(classify_root(st, r) == RootClass::Good);
    for (const auto& r : st.negated().materialize(4)) CHECK(classify_root(st.negated(), r) == RootClass::Bad);

    CHECK(descent_to_standard_goods(nat).chain.empty());
    auto cn = canonical_form_partition(nat);
    CHECK(cn.X.empty());
    CHECK(cn.base.same_set(base));
    auto cs = canonical_form_partition(st);
    CHECK(cs.X.size() == 2);
    CHECK(cs.chain.empty());
}

TEST_CASE("reflections of affine partitions") {
    auto sys = std::make_shared<FiniteRootSystem>(FiniteRootSystem::build(AlgebraFamily::sl(1, 2)));
    auto base = distinguished_simple_system(*sys);
    auto st = standard_partition(sys, base);
    RootId a = base.roots[0];
    auto q = reflect_affine(st, {a, 0});
    CHECK(q.is_partition());
    CHECK(q.contains(sys->neg(a), 0));
    CHECK(reflect_affine(q, {sys->neg(a), 0}) == st);
    CHECK_THROWS_AS(reflect_affine(st, {a, 1}), Error);
    CHECK_THROWS_AS(reflect_affine(st, {sys->size(), 1}), Error);
    // lowest imaginary-adjacent root of the standard partition
    RootId theta = highest_root(*sys, base);
    auto r0 = reflect_affine(st, {sys->neg(theta), 1});
    CHECK(r0.is_partition());
}

TEST_CASE("osp(2,4) worked chain") {
    Osp24 o;
    auto p = o.example();
    for (const auto& r : p.materialize(6)) CHECK(classify_root(p, r) == RootClass::Good);
    auto step1 = reflect_affine(p, {o.r({1, 1, 1}), -2});
    CHECK(step1.threshold(o.r({1, 1, 1})) == -1);

    auto c = canonical_form_partition(p);
    std::vector<AffineStep> want = {{o.r({1, 1, 1}), -2}, {o.r({1, 2, 1}), -2}, {o.r({0, 0, 1}), -1},
                                    {o.r({0, 1, 1}), -1}, {o.r({0, 2, 1}), -1}, {o.r({1, 1, 1}), -1},
                                    {o.r({1, 2, 1}), -1}};
    CHECK(c.chain == want);
    CHECK(c.base.same_set(o.base));
    CHECK(c.X.size() == 3);
    CHECK(c.result == standard_partition(o.sys, o.base));
    auto d = descent_to_standard_goods(p);
    for (std::size_t i = 1; i < d.defects.size(); ++i) CHECK(d.defects[i] < d.defects[i - 1]);
    CHECK(d.defects.back() == 0);

    // the mirrored partition descends along negated roots
    auto m = canonical_form_partition(p.negated());
    REQUIRE(m.chain.size() == want.size());
    CHECK(m.chain[0] == AffineStep{o.sys->neg(o.r({1, 1, 1})), 2});
    CHECK(m.result == standard_partition(o.sys, o.base).negated());
}

TEST_CASE("affine parabolic sets of sl(1,2)") {
    auto sys = std::make_shared<FiniteRootSystem>(FiniteRootSystem::build(AlgebraFamily::sl(1, 2)));
    auto base = distinguished_simple_system(*sys);
    RootId a = base.roots[0], b = base.roots[1];
    const RootId z = sys->size();

    auto pb = make_affine_parabolic_set(sys, base, {}, {b}, true);
    auto tb = triangular_decomposition(pb, 3);
    for (const auto& r : tb.levi) CHECK((r.fin == b || r.fin == sys->neg(b) || r.fin == z));
    CHECK(tb.levi.size() == 7 * 2 + 6);
    for (long n = -3; n <= 3; ++n) {
        CHECK(pb.in_levi({b, n}));
        CHECK(std::find(tb.u_plus.begin(), tb.u_plus.end(), AffineRoot{a, n}) != tb.u_plus.end());
        CHECK(std::find(tb.u_plus.begin(), tb.u_plus.end(), AffineRoot{sys->sum(a, b), n}) != tb.u_plus.end());
    }
    CHECK(tb.u_plus.size() == tb.u_minus.size());
    CHECK(tb.u_plus.size() + tb.u_minus.size() + tb.levi.size() == affine_roots(*sys, 3).size());

    auto lb = levi_structure(pb);
    REQUIRE(lb.components.size() == 1);
    CHECK(lb.components[0].tag == "sl(2)^");
    CHECK(lb.commutes);
    CHECK(lb.orthogonal);
    REQUIRE(lb.complement.size() == 1);
    QVec h(3);
    h << 2, 1, 1;
    CHECK(lb.complement[0] == h);

    auto pa = make_affine_parabolic_set(sys, base, {}, {a}, true);
    CHECK(pa.in_levi({a, 4}));
    CHECK(pa.in_levi({z, -2}));
    CHECK_FALSE(pa.in_levi({b, 0}));
    auto la = levi_structure(pa);
    REQUIRE(la.components.size() == 1);
    CHECK(la.components[0].sl11);
    CHECK_FALSE(la.commutes);
    CHECK_FALSE(la.orthogonal);

    auto empty = levi_structure(make_affine_parabolic_set(sys, base, {}, {}, true));
    CHECK(empty.components.empty());
    CHECK(empty.complement.size() == 2);

    CHECK(borel_is_solvable(*sys, base, {a}));
    CHECK_FALSE(borel_is_solvable(*sys, base, {b}));
    CHECK(borel_is_solvable(*sys, base, {}));

    CHECK_THROWS_AS(make_affine_parabolic_set(sys, base, {b}, {a}, false), Error);
    CHECK_THROWS_AS(make_affine_parabolic_set(sys, base, {}, {}, false), Error);
    auto nb = make_affine_parabolic_set(sys, base, {b}, {b}, false);
    auto t = triangular_decomposition(nb, 4);
    std::vector<AffineRoot> want = {{b, 0}, {sys->neg(b), 0}};
    std::sort(want.begin(), want.end());
    CHECK(t.levi == want);
}

TEST_CASE("osp(2,4) delta-free parabolic set") {
    Osp24 o;
    RootId a2 = o.base.roots[1];
    auto ps = make_affine_parabolic_set(o.sys, o.base, {a2}, {a2}, false);
    auto t = triangular_decomposition(ps, 6);
    std::vector<AffineRoot> want = {{a2, 0}, {o.sys->neg(a2), 0}};
    std::sort(want.begin(), want.end());
    CHECK(t.levi == want);
    auto l = levi_structure(ps);
    REQUIRE(l.components.size() == 1);
    CHECK(l.components[0].tag == "sl(2)");
    auto full = levi_structure(make_affine_parabolic_set(o.sys, o.base, o.base.roots, o.base.roots, false));
    CHECK(full.components[0].tag == "osp(2,4)");
}

TEST_CASE("component tags") {
    auto osp = FiniteRootSystem::build(AlgebraFamily::osp(2, 4));
    auto b = osp.distinguished();
    CHECK(component_tag(osp, {b[0], b[1]}) == "sl(1,2)");
    CHECK(component_tag(osp, {b[1], b[2]}) == "sp(4)");
    auto f4 = FiniteRootSystem::build(AlgebraFamily::f4());
    CHECK(component_tag(f4, f4.distinguished()) == "F(4)");
    auto rest = std::vector<RootId>(f4.distinguished().begin() + 1, f4.distinguished().end());
    CHECK(component_tag(f4, rest) == "so(7)");
    auto g3 = FiniteRootSystem::build(AlgebraFamily::g3());
    CHECK(component_tag(g3, {g3.distinguished()[1], g3.distinguished()[2]}) == "G2");
    auto gl = FiniteRootSystem::build(AlgebraFamily::gl(3, 2));
    auto gb = gl.distinguished();
    CHECK(component_tag(gl, {gb[0], gb[1]}) == "sl(3)");
    CHECK(component_tag(gl, {gb[1], gb[2], gb[3]}) == "psl(2,2)");
}

#include "lsa/loop_engine.hpp"
#include "lsa/parabolic_affine.hpp"
#include "lsa/parabolic_finite.hpp"
#include "lsa/parallel.hpp"
#include "lsa/reflections.hpp"
#include "lsa/sl11.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef LSA_FIXTURE_DIR
#define LSA_FIXTURE_DIR "fixtures"
#endif

using json = nlohmann::ordered_json;
using namespace lsa;

namespace {

struct Common {
    std::string format = "json";
    long window = -1;
    int jobs = 1;
    std::string config;
    std::string fixture;
};

struct AlgebraOpts {
    std::string family = "sl";
    int m = 1;
    int n = 2;
    std::string a = "1";
    std::string reflect;  // roots over the distinguished base, ';'-separated
};

struct Context {
    AlgebraOpts alg;
    std::string x = "empty";
    std::string r = "empty";
    std::string s = "empty";
    std::string set;
    bool delta_symmetric = false;
    bool bases = false;
    long budget = -1;
    // engine
    std::string module = "verma";
    std::string lh;
    std::string lK = "1";
    std::string ld = "0";
    std::string weight;
    long level = 0;
    int depth = 3;
    bool simple_levi = false;
    std::string cartan;
    // sl11
    std::string zh = "0", zk = "0", zc = "1";
    int nn = 1;
    long ell = 0;
    long m = 0;
    std::string levels;
    std::string ladder;
    long bound = -1;
};

json fixture_doc;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

IVec parse_ints(const std::string& s) {
    IVec out;
    for (const auto& t : split(s, ',')) {
        try {
            out.push_back(std::stoi(t));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput, "not an integer: '" + t + "'");
        }
    }
    return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& t : split(s, ',')) out.push_back(parse_rational(t));
    return out;
}

AlgebraFamily family_of(const AlgebraOpts& o) {
    switch (parse_family(o.family)) {
        case Family::GL: return AlgebraFamily::gl(o.m, o.n);
        case Family::SL: return AlgebraFamily::sl(o.m, o.n);
        case Family::OSP: return AlgebraFamily::osp(o.m, o.n);
        case Family::D21A: return AlgebraFamily::d21a(parse_rational(o.a));
        case Family::G3: return AlgebraFamily::g3();
        case Family::F4: return AlgebraFamily::f4();
    }
    throw Error(ErrorCode::UnsupportedFamily, o.family);
}

RootId root_by_coeffs(const FiniteRootSystem& sys, const SimpleSystem& base, const IVec& c) {
    auto co = *base_coefficients(sys, base.roots);
    for (RootId r = 0; r < sys.size(); ++r)
        if (co[r] == c) return r;
    throw Error(ErrorCode::NotARoot, "no root with coefficients [" + [&] {
        std::string s;
        for (int v : c) s += (s.empty() ? "" : ",") + std::to_string(v);
        return s;
    }() + "]");
}

struct Setup {
    SystemPtr sys;
    SimpleSystem dist;
    SimpleSystem base;
};

Setup setup(const AlgebraOpts& o) {
    Setup st;
    st.sys = std::make_shared<FiniteRootSystem>(FiniteRootSystem::build(family_of(o)));
    st.dist = distinguished_simple_system(*st.sys);
    st.base = st.dist;
    for (const auto& c : split(o.reflect, ';'))
        st.base = reflect_simple_system(*st.sys, st.base, root_by_coeffs(*st.sys, st.dist, parse_ints(c)));
    return st;
}

// "empty", "all" or 1-based positions in the base
std::vector<RootId> subset(const SimpleSystem& base, const std::string& s) {
    if (s == "empty" || s.empty()) return {};
    if (s == "all") return base.roots;
    std::vector<RootId> out;
    for (int i : parse_ints(s)) {
        if (i < 1 || i > static_cast<int>(base.roots.size()))
            throw Error(ErrorCode::XNotSubset, "position " + std::to_string(i) + " is not in the base");
        out.push_back(base.roots[i - 1]);
    }
    return out;
}

json root_labels(const FiniteRootSystem& sys, const std::vector<RootId>& roots) {
    json a = json::array();
    for (RootId r : roots) a.push_back(sys.label(r));
    return a;
}

json base_json(const FiniteRootSystem& sys, const SimpleSystem& base) { return root_labels(sys, base.roots); }

std::string step_label(const Setup& st, const AffineStep& s) {
    std::string out = s.root == st.sys->size() ? std::string() : label_in_base(*st.sys, st.dist, s.root);
    if (s.level == 0) return out;
    out += s.level > 0 ? "+" : "-";
    if (std::abs(s.level) != 1) out += std::to_string(std::abs(s.level));
    return out + "delta";
}

json chain_json(const Setup& st, const std::vector<AffineStep>& chain) {
    json a = json::array();
    for (const auto& s : chain)
        a.push_back({{"step", "r_{" + step_label(st, s) + "}"},
                     {"root", st.sys->label(s.root)},
                     {"level", s.level}});
    return a;
}

json thresholds_json(const AffinePartition& p) {
    json o = json::object();
    for (RootId r = 0; r < p.sys().size(); ++r) o[p.sys().label(r)] = thr_to_string(p.threshold(r));
    o["delta"] = thr_to_string(p.threshold(p.zero()));
    return o;
}

AffinePartition partition_from_fixture(const Setup& st) {
    const json& part = fixture_doc.at("partition");
    std::vector<Thr> s(st.sys->size() + 1, 0);
    for (const auto& e : part.at("positive")) {
        RootId r = root_by_coeffs(*st.sys, st.dist, e.at("root").get<IVec>());
        Thr t = e.at("s").get<Thr>();
        s[r] = t;
        s[st.sys->neg(r)] = 1 - t;
    }
    s[st.sys->size()] = part.value("zero", Thr(1));
    return make_partition(st.sys, s, part.value("mirrored", false));
}

AffinePartition input_partition(const Setup& st, const Context& c) {
    if (fixture_doc.contains("partition")) return partition_from_fixture(st);
    return partition_from(st.sys, st.base, subset(st.base, c.x));
}

// ---------------------------------------------------------------- roots and reflections

json cmd_roots(const Context& c) {
    Setup st = setup(c.alg);
    const FiniteRootSystem& sys = *st.sys;
    json out;
    out["algebra"] = sys.family().name();
    out["type"] = sys.type() == AlgebraType::TypeI ? "I" : "II";
    out["rank"] = sys.rank();
    out["coordinates"] = sys.coordinate_names();
    out["base"] = base_json(sys, st.base);
    RootSet pos = positive_system(sys, st.base);
    json roots = json::array();
    for (RootId r = 0; r < sys.size(); ++r)
        roots.push_back({{"id", r},
                         {"label", sys.label(r)},
                         {"in_base", label_in_base(sys, st.base, r)},
                         {"parity", sys.is_odd(r) ? "odd" : "even"},
                         {"isotropic", sys.is_isotropic(r)},
                         {"norm", to_string(sys.norm(r))},
                         {"positive", static_cast<bool>(pos[r])}});
    out["roots"] = roots;
    return out;
}

json cmd_reflect(const Context& c) {
    Setup st = setup({c.alg.family, c.alg.m, c.alg.n, c.alg.a, ""});
    const FiniteRootSystem& sys = *st.sys;
    json out;
    out["algebra"] = sys.family().name();
    if (c.bases) {
        auto all = enumerate_simple_systems(sys, c.budget < 0 ? kDefaultBaseBudget : c.budget);
        out["count"] = all.size();
        json list = json::array();
        for (const auto& b : all)
            list.push_back({{"base", base_json(sys, b)}, {"distinguished", is_distinguished(sys, b)}});
        out["bases"] = list;
        return out;
    }
    SimpleSystem base = st.dist;
    json steps = json::array();
    for (const auto& s : split(c.alg.reflect, ';')) {
        RootId r = root_by_coeffs(sys, st.dist, parse_ints(s));
        base = reflect_simple_system(sys, base, r);
        steps.push_back({{"root", sys.label(r)}, {"kind", kind_name(reflection_kind(sys, r))},
                         {"base", base_json(sys, base)}});
    }
    out["start"] = base_json(sys, st.dist);
    out["steps"] = steps;
    out["result"] = base_json(sys, base);
    out["shortest"] = format_chain(sys, reflection_chain(sys, st.dist, base));
    json app = json::array();
    for (const auto& s : applicable_reflections(sys, base))
        app.push_back({{"root", sys.label(s.root)}, {"kind", kind_name(s.kind)}});
    out["applicable"] = app;
    return out;
}

// ---------------------------------------------------------------- finite parabolics

json parabolic_json(const FiniteRootSystem& sys, const FiniteParabolic& p) {
    return {{"kind", p.kind == ParabolicKind::Partition ? "partition" : "parabolic_set"},
            {"roots", root_labels(sys, members(p.roots))},
            {"symmetric", root_labels(sys, members(p.symmetric))}};
}

json cmd_parabolic(const std::string& op, const Context& c) {
    Setup st = setup(c.alg);
    const FiniteRootSystem& sys = *st.sys;
    json out;
    out["algebra"] = sys.family().name();
    if (op == "enumerate") {
        auto list = enumerate_finite_parabolics(sys, c.budget < 0 ? kDefaultRootBudget : static_cast<int>(c.budget));
        out["partitions"] = list.partitions.size();
        out["parabolic_sets"] = list.parabolic_sets.size();
        json sets = json::array();
        for (const auto& p : list.parabolic_sets) {
            json e = parabolic_json(sys, p);
            e["contains_even_part"] = contains_even_part(sys, p);
            sets.push_back(e);
        }
        out["sets"] = sets;
        return out;
    }
    if (op == "classify") {
        out["type"] = classify_type(sys) == AlgebraType::TypeI ? "I" : "II";
        out["base"] = base_json(sys, st.base);
        out["distinguished"] = is_distinguished(sys, st.base);
        FiniteParabolic p = make_parabolic_set(sys, st.base, subset(st.base, c.r));
        out["set"] = parabolic_json(sys, p);
        out["contains_even_part"] = contains_even_part(sys, p);
        return out;
    }
    FiniteParabolic p;
    if (op == "decompose" && !c.set.empty()) {
        std::vector<RootId> ids;
        for (const auto& s : split(c.set, ';')) ids.push_back(root_by_coeffs(sys, st.dist, parse_ints(s)));
        p = finite_parabolic(sys, make_set(sys, ids));
    } else {
        p = make_parabolic_set(sys, st.base, subset(st.base, c.r));
    }
    out["set"] = parabolic_json(sys, p);
    if (op == "decompose") {
        if (p.kind == ParabolicKind::Partition) {
            out["base"] = base_json(sys, partition_base(sys, p));
        } else {
            ParabolicDescriptor d = decompose_parabolic_set(sys, p);
            out["base"] = base_json(sys, d.base);
            out["R"] = root_labels(sys, d.R);
        }
    }
    return out;
}

// ---------------------------------------------------------------- affine

json levi_json(const Setup& st, const Context& c) {
    const FiniteRootSystem& sys = *st.sys;
    auto ps = make_affine_parabolic_set(st.sys, st.base, c.delta_symmetric ? std::vector<RootId>{}
                                                                            : subset(st.base, c.x),
                                        subset(st.base, c.s), c.delta_symmetric);
    LeviDecomposition d = levi_structure(ps);
    json out;
    out["algebra"] = sys.family().name();
    out["base"] = base_json(sys, st.base);
    json comps = json::array();
    for (const auto& comp : d.components)
        comps.push_back({{"roots", root_labels(sys, comp.roots)}, {"tag", comp.tag}, {"sl11", comp.sl11}});
    out["components"] = comps;
    json f = json::array();
    for (const auto& v : d.complement) {
        json e = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) e.push_back(to_string(v(i)));
        f.push_back(e);
    }
    out["complement"] = f;
    out["cartan_coordinates"] = d.cartan_coordinates;
    out["orthogonal"] = d.orthogonal;
    out["commutes"] = d.commutes;
    return out;
}

json cmd_affine(const std::string& op, const Context& c, long window) {
    Setup st = setup(c.alg);
    const FiniteRootSystem& sys = *st.sys;
    json out;
    out["algebra"] = sys.family().name() + "^";
    if (op == "levi") return levi_json(st, c);
    if (op == "solvable") {
        out["base"] = base_json(sys, st.base);
        out["X"] = root_labels(sys, subset(st.base, c.x));
        out["solvable"] = borel_is_solvable(sys, st.base, subset(st.base, c.x));
        return out;
    }
    AffinePartition p = input_partition(st, c);
    if (op == "make") {
        out["thresholds"] = thresholds_json(p);
        out["partition"] = p.is_partition();
        return out;
    }
    if (op == "classify") {
        json roots = json::array();
        for (const auto& r : affine_roots(sys, window))
            roots.push_back({{"root", p.label(r)}, {"class", class_name(classify_root(p, r))}});
        out["window"] = window;
        out["roots"] = roots;
        return out;
    }
    if (op == "descend") {
        Descent d = descent_to_standard_goods(p);
        out["chain"] = chain_json(st, d.chain);
        out["defects"] = d.defects;
        out["result"] = thresholds_json(d.result);
        return out;
    }
    CanonicalForm cf = canonical_form_partition(p);
    out["steps"] = cf.chain.size();
    out["chain"] = chain_json(st, cf.chain);
    out["base"] = base_json(sys, cf.base);
    out["X"] = root_labels(sys, cf.X);
    out["result"] = thresholds_json(cf.result);
    if (fixture_doc.contains("expected_chain")) {
        std::vector<std::string> got;
        for (const auto& s : cf.chain) got.push_back("r_{" + step_label(st, s) + "}");
        out["matches_fixture"] = got == fixture_doc["expected_chain"].get<std::vector<std::string>>();
    }
    return out;
}

// ---------------------------------------------------------------- engine

std::string weight_label(const engine::LoopAlgebra& g, const engine::WeightKey& w) {
    QVec v(static_cast<Eigen::Index>(w.fin.size()));
    for (std::size_t i = 0; i < w.fin.size(); ++i) v(static_cast<Eigen::Index>(i)) = w.fin[i];
    std::string out = v.isZero() ? std::string() : g.roots().label(v);
    if (w.level == 0) return out.empty() ? "0" : out;
    out += w.level > 0 ? "+" : "-";
    if (std::abs(w.level) != 1) out += std::to_string(std::abs(w.level));
    return out + "delta";
}

struct EngineJob {
    engine::AlgebraPtr g;
    SimpleSystem base;
    std::vector<RootId> X;
    engine::Weight lambda;
    engine::Truncation t;
};

EngineJob engine_job(const Context& c, long window) {
    EngineJob j;
    j.g = engine::LoopAlgebra::build(family_of(c.alg));
    j.base = distinguished_simple_system(j.g->roots());
    for (const auto& s : split(c.alg.reflect, ';'))
        j.base = reflect_simple_system(j.g->roots(), j.base,
                                       root_by_coeffs(j.g->roots(), distinguished_simple_system(j.g->roots()),
                                                      parse_ints(s)));
    j.X = subset(j.base, c.x);
    j.lambda = engine::Weight::zero(*j.g);
    auto h = parse_rationals(c.lh);
    if (static_cast<int>(h.size()) > j.g->cartan_dim())
        throw Error(ErrorCode::InvalidInput, "--lh has more entries than the Cartan dimension");
    for (std::size_t i = 0; i < h.size(); ++i) j.lambda.h(static_cast<Eigen::Index>(i)) = h[i];
    j.lambda.k = parse_rational(c.lK);
    j.lambda.d = parse_rational(c.ld);
    if (c.depth < 0) throw Error(ErrorCode::InvalidInput, "depth must be nonnegative");
    j.t.max_depth = c.depth;
    if (window >= 0) j.t.raise_window = static_cast<int>(window);
    if (c.budget >= 0) j.t.budget = static_cast<std::size_t>(c.budget);
    return j;
}

std::unique_ptr<engine::TruncatedModule> build_module(const Context& c, EngineJob& j) {
    using namespace engine;
    if (c.module == "verma") return verma_module(j.g, j.base, j.X, j.lambda, j.t);
    if (c.module == "levi-verma") return levi_verma(j.g, j.base, j.X, j.lambda, j.t);
    if (c.module == "k-verma") return k_verma(j.g, j.base, j.X, j.lambda, j.t);
    if (c.module == "induced") return induced_module(j.g, j.base, j.X, j.lambda, c.simple_levi, j.t);
    if (c.module == "fock") {
        std::vector<int> cart;
        if (c.cartan.empty())
            for (int i = 0; i < j.g->cartan_dim(); ++i) cart.push_back(i);
        for (int i : parse_ints(c.cartan)) {
            if (i < 1 || i > j.g->cartan_dim()) throw Error(ErrorCode::InvalidInput, "Cartan index out of range");
            cart.push_back(i - 1);
        }
        return fock_module(j.g, cart, j.lambda, j.t);
    }
    throw Error(ErrorCode::InvalidInput, "unknown module '" + c.module + "'");
}

json singular_json(engine::TruncatedModule& m, const std::vector<engine::SingularReport>& reps) {
    json a = json::array();
    for (const auto& r : reps) {
        json vecs = json::array();
        for (const auto& v : r.basis) {
            std::string s;
            for (const auto& [e, coef] : v) {
                if (!s.empty()) s += " + ";
                s += (coef == 1 ? std::string() : "(" + to_string(coef) + ")") + m.element_name(e);
            }
            vecs.push_back(s);
        }
        a.push_back({{"weight", weight_label(m.verma().algebra(), r.weight)},
                     {"dim", r.dim},
                     {"singular", r.singular},
                     {"vectors", vecs}});
    }
    return a;
}

json engine_header(const EngineJob& j, const Context& c) {
    json out;
    out["algebra"] = j.g->family().name() + "^";
    out["base"] = base_json(j.g->roots(), j.base);
    out["X"] = root_labels(j.g->roots(), j.X);
    out["module"] = c.module;
    json h = json::array();
    for (Eigen::Index i = 0; i < j.lambda.h.size(); ++i) h.push_back(to_string(j.lambda.h(i)));
    out["lambda_h"] = h;
    out["lambda_K"] = to_string(j.lambda.k);
    out["depth"] = j.t.max_depth;
    out["window"] = j.t.window();
    return out;
}

json cmd_engine(const std::string& op, Context c, long window) {
    if (op == "verma-dim") {
        auto g = engine::LoopAlgebra::build(family_of(c.alg));
        const FiniteRootSystem& sys = g->roots();
        SimpleSystem base = distinguished_simple_system(sys);
        auto X = subset(base, c.x);
        IVec co = parse_ints(c.weight);
        if (co.size() != base.roots.size())
            throw Error(ErrorCode::WeightOffLattice, "--weight needs one coefficient per simple root");
        QVec fin = QVec::Zero(sys.dim());
        for (std::size_t i = 0; i < co.size(); ++i) fin += Rational(co[i]) * sys.root(base.roots[i]);
        auto d = engine::verma_weight_dim(*g, base, X, fin, c.level);
        json out;
        out["algebra"] = g->family().name() + "^";
        out["X"] = root_labels(sys, X);
        IVec key(fin.size());
        for (Eigen::Index i = 0; i < fin.size(); ++i) key[i] = static_cast<int>(to_long(fin(i)));
        out["weight"] = weight_label(*g, {key, c.level});
        if (d) out["dim"] = *d;
        else out["dim"] = "infinite";
        return out;
    }
    if (op == "induce") c.module = "induced";
    EngineJob j = engine_job(c, window);
    auto m = build_module(c, j);
    json out = engine_header(j, c);
    if (op == "induce") {
        out["simple_levi"] = c.simple_levi;
        out["total_dim"] = m->total_dim();
        json ws = json::array();
        for (const auto& [w, list] : m->basis()) ws.push_back({{"weight", weight_label(*j.g, w)}, {"dim", list.size()}});
        out["weights"] = ws;
        return out;
    }
    if (op == "singular") {
        auto reps = m->all_singular(true);
        std::vector<engine::SingularReport> nz;
        for (auto& r : reps)
            if (r.singular > 0) nz.push_back(std::move(r));
        out["total_dim"] = m->total_dim();
        out["singular"] = singular_json(*m, nz);
        return out;
    }
    engine::SimplicityProbe p = engine::probe_simplicity(*m);
    out["total_dim"] = p.dim;
    out["simple_at_truncation"] = p.simple_at_truncation;
    out["verdict"] = p.simple_at_truncation ? "no singular vectors up to the truncation" : "non-simple";
    out["singular"] = singular_json(*m, p.singular);
    return out;
}

// ---------------------------------------------------------------- sl(1,1)

json cmd_sl11(const std::string& op, const Context& c, long window) {
    sl11::Zeta z;
    z.h = parse_rational(c.zh);
    z.k = parse_rational(c.zk);
    z.c = parse_rational(c.zc);
    json out;
    out["zeta"] = {{"h", to_string(z.h)}, {"K", to_string(z.k)}, {"c", to_string(z.c)}};
    if (op == "witness") {
        sl11::Witness w = sl11::natural_verma_proper_vector(z, window < 0 ? 3 : static_cast<int>(window));
        out["vector"] = w.name;
        out["level"] = w.level;
        out["nonzero"] = w.nonzero;
        out["singular"] = w.singular;
        out["checks"] = w.checks;
        out["zero_in_quotient"] = w.zero_in_quotient;
        return out;
    }
    if (op == "act") {
        sl11::Tuple t;
        for (int l : parse_ints(c.levels)) t.push_back(l);
        sl11::ExtVector v = sl11::ext_monomial(t);
        std::vector<long> ms;
        if (c.ladder.empty()) ms.push_back(c.m);
        for (int l : parse_ints(c.ladder)) ms.push_back(l);
        out["input"] = sl11::to_string(v);
        out["raising"] = ms;
        out["result"] = sl11::to_string(sl11::act_ladder(z, ms, v));
        return out;
    }
    if (c.nn < 0) throw Error(ErrorCode::InvalidInput, "n must be nonnegative");
    out["n"] = c.nn;
    out["ell"] = c.ell;
    out["nonzero"] = sl11::support_nonzero(z, c.nn, c.ell);
    sl11::BadSet b = sl11::bad_set(z);
    out["bad_set"] = b.kind == sl11::BadSet::Kind::All ? json("all")
                     : b.kind == sl11::BadSet::Kind::Empty ? json::array()
                                                          : json::array({b.value});
    if (op == "dim") {
        const long bound = c.bound < 0 ? sl11::sufficient_bound(z, c.nn, c.ell) : c.bound;
        out["bound"] = bound;
        out["dim"] = sl11::quotient_weight_dim(z, c.nn, c.ell, bound);
    }
    return out;
}

// ---------------------------------------------------------------- output

void render_text(std::ostream& os, const json& v, int indent) {
    const std::string pad(indent, ' ');
    auto scalar = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
    auto flat = [&](const json& x) {
        if (!x.is_array()) return false;
        for (const auto& e : x)
            if (e.is_structured()) return false;
        return true;
    };
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) {
            if (!x.is_structured()) os << pad << k << ": " << scalar(x) << "\n";
            else if (flat(x)) {
                os << pad << k << ":";
                for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : " ") << scalar(x[i]);
                os << "\n";
            } else {
                os << pad << k << ":\n";
                render_text(os, x, indent + 2);
            }
        }
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_structured()) os << pad << "- " << scalar(x) << "\n";
            else {
                os << pad << "-\n";
                render_text(os, x, indent + 2);
            }
        }
    } else {
        os << pad << scalar(v) << "\n";
    }
}

void emit(const json& v, const std::string& format) {
    if (format == "text") render_text(std::cout, v, 0);
    else std::cout << v.dump(2) << "\n";
}

// flat key=value file; each key fills the option of that name when the command line left it unset
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : CLI::ConfigINI().from_config(in)) {
        if (item.inputs.empty()) continue;
        std::string val = item.inputs.front();
        for (std::size_t i = 1; i < item.inputs.size(); ++i) val += "," + item.inputs[i];
        out.emplace_back(item.name, val);
    }
    return out;
}

std::filesystem::path fixture_path(const std::string& name) {
    std::filesystem::path p(name);
    if (std::filesystem::exists(p)) return p;
    const char* env = std::getenv("LSA_FIXTURE_DIR");
    std::filesystem::path dir = env && *env ? env : LSA_FIXTURE_DIR;
    return dir / (name + ".json");
}

void fill_unset(std::vector<CLI::App*> apps, const std::string& key, const std::string& value) {
    for (CLI::App* a : apps) {
        CLI::Option* o = a->get_option_no_throw("--" + key);
        if (!o || o->count() > 0) continue;
        o->add_result(value);
        o->run_callback();
        return;
    }
}

std::string fixture_value(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : ",") + fixture_value(e);
        return s;
    }
    return v.dump();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root data, parabolic sets and loop modules of basic classical Lie superalgebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    Context c;
    app.add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--window", common.window, "affine root window / raising window");
    app.add_option("--jobs", common.jobs, "worker cap")->check(CLI::PositiveNumber);
    app.add_option("--config", common.config, "flat key=value file");
    app.add_option("--fixture", common.fixture, "fixture name or path");

    auto add_algebra = [&](CLI::App* s) {
        s->add_option("--family", c.alg.family, "gl, sl, osp, d21a, g3, f4");
        s->add_option("--m", c.alg.m);
        s->add_option("--n", c.alg.n);
        s->add_option("--a", c.alg.a, "parameter of D(2,1;a)");
        s->add_option("--reflect", c.alg.reflect, "reflections from the distinguished base, e.g. 1,1,0;0,1,0");
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        add_algebra(s);
        return s;
    };

    leaf(&app, "roots", "list the roots");
    CLI::App* reflect = leaf(&app, "reflect", "odd and even reflections of the base");
    reflect->add_flag("--bases", c.bases, "enumerate every base");
    reflect->add_option("--budget", c.budget);

    CLI::App* parabolic = app.add_subcommand("parabolic", "finite parabolic sets");
    parabolic->require_subcommand(1);
    for (const char* op : {"classify", "make", "decompose", "enumerate"}) {
        CLI::App* s = leaf(parabolic, op, "");
        s->add_option("--r", c.r, "subset of the base: empty, all or positions");
        s->add_option("--set", c.set, "roots over the distinguished base, ';'-separated");
        s->add_option("--budget", c.budget);
    }

    CLI::App* affine = app.add_subcommand("affine", "affine partitions and parabolic sets");
    affine->require_subcommand(1);
    for (const char* op : {"make", "classify", "descend", "canon", "levi", "solvable"}) {
        CLI::App* s = leaf(affine, op, "");
        s->add_option("--x", c.x, "subset of the base: empty, all or positions");
        s->add_option("--s", c.s);
        s->add_flag("--delta-symmetric", c.delta_symmetric);
    }
    CLI::App* levi = leaf(&app, "levi", "Levi structure of an affine parabolic set");
    levi->add_option("--x", c.x);
    levi->add_option("--s", c.s);
    levi->add_flag("--delta-symmetric", c.delta_symmetric);

    CLI::App* eng = app.add_subcommand("engine", "truncated loop modules");
    eng->require_subcommand(1);
    for (const char* op : {"verma-dim", "singular", "induce", "probe-simplicity"}) {
        CLI::App* s = leaf(eng, op, "");
        s->add_option("--x", c.x);
        s->add_option("--module", c.module, "verma, levi-verma, k-verma, fock, induced");
        s->add_option("--lh", c.lh, "highest weight on the Cartan basis");
        s->add_option("--lK", c.lK, "central charge");
        s->add_option("--ld", c.ld);
        s->add_option("--weight", c.weight, "coefficients over the base");
        s->add_option("--level", c.level);
        s->add_option("--depth", c.depth);
        s->add_flag("--simple-levi", c.simple_levi);
        s->add_option("--cartan", c.cartan, "Cartan positions for the Fock module");
        s->add_option("--budget", c.budget);
    }

    CLI::App* sl = app.add_subcommand("sl11", "loop modules of sl(1,1)");
    sl->require_subcommand(1);
    for (const char* op : {"support", "dim", "act", "witness"}) {
        CLI::App* s = sl->add_subcommand(op, "");
        s->add_option("--zh", c.zh);
        s->add_option("--zk", c.zk);
        s->add_option("--zc", c.zc);
        s->add_option("--n", c.nn);
        s->add_option("--ell", c.ell);
        s->add_option("--m", c.m);
        s->add_option("--levels", c.levels);
        s->add_option("--ladder", c.ladder);
        s->add_option("--bound", c.bound);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::vector<CLI::App*> chain;
    for (CLI::App* a = &app; a;) {
        auto subs = a->get_subcommands();
        if (subs.empty()) break;
        a = subs.front();
        chain.push_back(a);
    }
    std::vector<CLI::App*> targets(chain.rbegin(), chain.rend());
    targets.push_back(&app);

    try {
        if (!common.fixture.empty()) {
            auto path = fixture_path(common.fixture);
            std::ifstream in(path);
            if (!in) throw Error(ErrorCode::InvalidInput, "fixture not found: " + path.string());
            try {
                fixture_doc = json::parse(in);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::InvalidInput, "bad fixture " + path.string() + ": " + e.what());
            }
            for (const auto& [k, v] : fixture_doc.items())
                if (!v.is_object()) fill_unset(targets, k, fixture_value(v));
        }
        if (!common.config.empty())
            for (const auto& [k, v] : read_config(common.config)) fill_unset(targets, k, v);
        set_jobs(common.jobs);

        const std::string top = chain.front()->get_name();
        const std::string op = chain.size() > 1 ? chain[1]->get_name() : "";
        json out;
        if (top == "roots") out = cmd_roots(c);
        else if (top == "reflect") out = cmd_reflect(c);
        else if (top == "parabolic") out = cmd_parabolic(op, c);
        else if (top == "affine") out = cmd_affine(op, c, common.window < 0 ? kDefaultWindow : common.window);
        else if (top == "levi") out = cmd_affine("levi", c, kDefaultWindow);
        else if (top == "engine") out = cmd_engine(op, c, common.window);
        else out = cmd_sl11(op, c, common.window);
        emit(out, common.format);
    } catch (const Error& e) {
        emit(json{{"error", error_name(e.code())}, {"message", e.what()}}, common.format);
        return e.exit_code();
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include "lsa/loop_engine.hpp"
#include "lsa/linalg.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace lsa::engine {

namespace {

int matrix_index(const QVec& v, int sign) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) == sign) return static_cast<int>(i);
    return -1;
}

QMat unit_matrix(int size, int i, int j) {
    QMat e = QMat::Zero(size, size);
    e(i, j) = 1;
    return e;
}

bool is_diagonal(const QMat& x) {
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            if (i != j && x(i, j) != 0) return false;
    return true;
}

QVec diagonal(const QMat& x) {
    QVec d(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) d(i) = x(i, i);
    return d;
}

QMat diag_matrix(const QVec& d) {
    QMat x = QMat::Zero(d.size(), d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) x(i, i) = d(i);
    return x;
}

QVec supersigns(int m, int n) {
    QVec s(m + n);
    for (int i = 0; i < m + n; ++i) s(i) = i < m ? 1 : -1;
    return s;
}

// linear functional on d/e coordinates equal to 1 on every simple root
QVec height_functional(const FiniteRootSystem& sys, const SimpleSystem& base) {
    QMat bt(base.roots.size(), sys.dim());
    for (std::size_t i = 0; i < base.roots.size(); ++i) bt.row(i) = sys.root(base.roots[i]).transpose();
    auto x = linalg::solve(bt, QVec::Ones(base.roots.size()));
    if (!x) throw Error(ErrorCode::NotABase, "base without height functional");
    return *x;
}

long height_of(const QVec& hf, const IVec& mu) {
    Rational s = 0;
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] != 0) s += hf(i) * mu[i];
    return to_long(s);
}

IVec add_ivec(IVec a, const IVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

bool all_zero(const IVec& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

}  // namespace

// ---------------------------------------------------------------- algebra

QMat coroot_matrix(const FiniteRootSystem& gl_roots, int m, RootId alpha) {
    const QVec& v = gl_roots.root(alpha);
    const int i = matrix_index(v, 1), j = matrix_index(v, -1);
    const bool odd = (i < m) != (j < m);
    QMat h = QMat::Zero(v.size(), v.size());
    h(i, i) = 1;
    h(j, j) = odd ? 1 : -1;
    return h;
}

std::vector<QMat> standard_cartan(const AlgebraFamily& f) {
    const int size = f.m + f.n;
    std::vector<QMat> out;
    if (f.family == Family::GL) {
        for (int i = 0; i < size; ++i) out.push_back(unit_matrix(size, i, i));
        return out;
    }
    for (int i = 0; i + 1 < size; ++i) {
        QMat h = QMat::Zero(size, size);
        h(i, i) = 1;
        h(i + 1, i + 1) = (i + 1 == f.m) ? 1 : -1;
        out.push_back(h);
    }
    return out;
}

namespace {

// rows: constraints cutting out the Cartan inside the diagonal matrices
QMat cartan_constraints(const AlgebraFamily& f) {
    if (f.family == Family::GL) return QMat::Zero(0, f.m + f.n);
    QMat c(1, f.m + f.n);
    c.row(0) = supersigns(f.m, f.n).transpose();
    return c;
}

void check_engine_family(const AlgebraFamily& f, int max_size) {
    if (f.family != Family::GL && f.family != Family::SL)
        throw Error(ErrorCode::UnsupportedFamily, "the loop engine models gl(m,n) and sl(m,n) only");
    if (f.m < 1 || f.n < 1) throw Error(ErrorCode::UnsupportedFamily, "the loop engine needs m, n >= 1");
    if (f.m + f.n > max_size)
        throw Error(ErrorCode::UnsupportedFamily,
                    "matrix size " + std::to_string(f.m + f.n) + " exceeds " + std::to_string(max_size));
}

}  // namespace

AdaptedCartan adapted_cartan(const AlgebraFamily& f, const SimpleSystem& base, const std::vector<RootId>& X) {
    check_engine_family(f, 64);
    const FiniteRootSystem sys = FiniteRootSystem::build(AlgebraFamily::gl(f.m, f.n));
    const int size = f.m + f.n;
    const int cdim = f.family == Family::GL ? size : size - 1;
    AdaptedCartan out;
    std::vector<QVec> cols;
    auto independent = [&](const QVec& d) {
        QMat a(size, cols.size() + 1);
        for (std::size_t i = 0; i < cols.size(); ++i) a.col(i) = cols[i];
        a.col(cols.size()) = d;
        return linalg::rank(a) == static_cast<Eigen::Index>(cols.size() + 1);
    };
    for (RootId a : X) {
        if (!base.contains(a)) throw Error(ErrorCode::XNotSubset, sys.label(a) + " is not in the base");
        QVec d = diagonal(coroot_matrix(sys, f.m, a));
        if (independent(d)) cols.push_back(d);
    }
    out.hx = static_cast<int>(cols.size());
    if (X.empty()) {
        for (const QMat& h : standard_cartan(f)) out.basis.push_back(h);
        out.orthogonal = true;
        return out;
    }
    QMat cons = cartan_constraints(f);
    QMat rows(cons.rows() + static_cast<Eigen::Index>(X.size()), size);
    rows.topRows(cons.rows()) = cons;
    for (std::size_t i = 0; i < X.size(); ++i) rows.row(cons.rows() + i) = sys.root(X[i]).transpose();
    QMat ker = linalg::kernel(rows);
    std::vector<QVec> hc;
    bool ok = true;
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
        QVec d = primitive(ker.col(c));
        if (!independent(d)) { ok = false; break; }
        cols.push_back(d);
        hc.push_back(d);
    }
    if (ok && static_cast<int>(cols.size()) == cdim) {
        out.orthogonal = true;
    } else {
        cols.resize(out.hx);
        for (const QMat& h : standard_cartan(f)) {
            if (static_cast<int>(cols.size()) == cdim) break;
            QVec d = diagonal(h);
            if (independent(d)) cols.push_back(d);
        }
    }
    for (const QVec& d : cols) out.basis.push_back(diag_matrix(d));
    return out;
}

std::shared_ptr<const LoopAlgebra> LoopAlgebra::build(const AlgebraFamily& f, std::vector<QMat> cartan, int max_size) {
    check_engine_family(f, max_size);
    auto g = std::make_shared<LoopAlgebra>();
    g->family_ = f;
    g->roots_ = std::make_shared<const FiniteRootSystem>(FiniteRootSystem::build(AlgebraFamily::gl(f.m, f.n)));
    const int size = f.m + f.n;
    const int cdim = f.family == Family::GL ? size : size - 1;
    if (cartan.empty()) cartan = standard_cartan(f);
    if (static_cast<int>(cartan.size()) != cdim)
        throw Error(ErrorCode::InvalidInput, "Cartan basis needs " + std::to_string(cdim) + " elements");
    QMat cons = cartan_constraints(f);
    QMat dmat(size, cdim);
    for (int c = 0; c < cdim; ++c) {
        const QMat& h = cartan[c];
        if (h.rows() != size || h.cols() != size || !is_diagonal(h))
            throw Error(ErrorCode::InvalidInput, "Cartan basis elements must be diagonal");
        QVec d = diagonal(h);
        if (cons.rows() > 0 && (cons * d)(0) != 0)
            throw Error(ErrorCode::InvalidInput, "Cartan basis element outside sl(m,n)");
        dmat.col(c) = d;
    }
    if (linalg::rank(dmat) != cdim) throw Error(ErrorCode::InvalidInput, "Cartan basis is not independent");
    g->cartan_dim_ = cdim;
    g->coord_solver_ = dmat;
    const FiniteRootSystem& sys = *g->roots_;
    for (int c = 0; c < cdim; ++c) {
        g->elements_.push_back(cartan[c]);
        g->odd_.push_back(false);
        g->root_of_.push_back(kNoRoot);
        g->weight_.push_back(IVec(size, 0));
    }
    g->vector_of_.assign(sys.size(), -1);
    for (RootId r = 0; r < sys.size(); ++r) {
        const QVec& v = sys.root(r);
        const int i = matrix_index(v, 1), j = matrix_index(v, -1);
        g->vector_of_[r] = static_cast<int>(g->elements_.size());
        g->elements_.push_back(unit_matrix(size, i, j));
        g->odd_.push_back(sys.is_odd(r));
        g->root_of_.push_back(r);
        IVec w(size, 0);
        w[i] = 1;
        w[j] = -1;
        g->weight_.push_back(w);
    }
    const int d = g->dim();
    g->table_.resize(d * d);
    g->forms_.resize(d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            QMat br = g->supercommutator(g->elements_[a], g->elements_[b], g->odd_[a], g->odd_[b]);
            auto c = g->coordinates(br);
            if (!c) throw Error(ErrorCode::InvalidInput, "bracket leaves the algebra");
            for (int e = 0; e < d; ++e)
                if ((*c)(e) != 0) g->table_[a * d + b].push_back({e, (*c)(e)});
            g->forms_[a * d + b] = g->supertrace(g->elements_[a] * g->elements_[b]);
        }
    return g;
}

Rational LoopAlgebra::eval(const IVec& mu, int c) const {
    Rational s = 0;
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] != 0) s += elements_[c](i, i) * mu[i];
    return s;
}

Rational LoopAlgebra::eval(const QVec& mu, int c) const {
    Rational s = 0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) s += elements_[c](i, i) * mu(i);
    return s;
}

std::optional<QVec> LoopAlgebra::coordinates(const QMat& x) const {
    const int size = this->size();
    if (x.rows() != size || x.cols() != size) return std::nullopt;
    QVec out = QVec::Zero(dim());
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (i != j && x(i, j) != 0) {
                QVec v = QVec::Zero(size);
                v(i) = 1;
                v(j) = -1;
                auto r = roots_->find(v);
                out(vector_of_[*r]) = x(i, j);
            }
    QVec d = diagonal(x);
    if (d.isZero()) return out;
    auto c = linalg::solve(coord_solver_, d);
    if (!c) return std::nullopt;
    out.head(cartan_dim_) = *c;
    return out;
}

QMat LoopAlgebra::supercommutator(const QMat& x, const QMat& y, bool x_odd, bool y_odd) const {
    QMat a = x * y, b = y * x;
    return (x_odd && y_odd) ? QMat(a + b) : QMat(a - b);
}

Rational LoopAlgebra::supertrace(const QMat& x) const {
    Rational s = 0;
    for (int i = 0; i < size(); ++i) s += i < family_.m ? x(i, i) : -x(i, i);
    return s;
}

std::string LoopAlgebra::name(int b) const {
    if (is_cartan(b)) return "h" + std::to_string(b + 1);
    const IVec& w = weight_[b];
    int i = 0, j = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] == 1) i = static_cast<int>(k);
        if (w[k] == -1) j = static_cast<int>(k);
    }
    return "E" + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

// ---------------------------------------------------------------- loop vectors

LoopVector LoopVector::basis(int b, long level) {
    LoopVector v;
    v.terms[{b, level}] = 1;
    return v;
}

LoopVector LoopVector::central() {
    LoopVector v;
    v.k = 1;
    return v;
}

LoopVector LoopVector::derivation() {
    LoopVector v;
    v.d = 1;
    return v;
}

void LoopVector::add(const LoopTerm& t, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

LoopVector& LoopVector::operator+=(const LoopVector& o) {
    for (const auto& [t, c] : o.terms) add(t, c);
    k += o.k;
    d += o.d;
    return *this;
}

LoopVector LoopVector::operator*(const Rational& c) const {
    LoopVector out;
    if (c == 0) return out;
    for (const auto& [t, x] : terms) out.terms[t] = x * c;
    out.k = k * c;
    out.d = d * c;
    return out;
}

int LoopVector::parity(const LoopAlgebra& g) const {
    bool even = k != 0 || d != 0, odd = false;
    for (const auto& [t, c] : terms) (g.odd(t.b) ? odd : even) = true;
    if (even && odd) return -1;
    return odd ? 1 : 0;
}

LoopVector loop_element(const LoopAlgebra& g, const QMat& z, long level) {
    auto c = g.coordinates(z);
    if (!c) throw Error(ErrorCode::InvalidInput, "matrix is not in " + g.family().name());
    LoopVector v;
    for (int b = 0; b < g.dim(); ++b) v.add({b, level}, (*c)(b));
    if (v.is_zero()) throw Error(ErrorCode::InvalidInput, "zero matrix is not a generator");
    if (v.parity(g) < 0) throw Error(ErrorCode::InvalidInput, "generator is not homogeneous");
    return v;
}

LoopVector bracket(const LoopAlgebra& g, const LoopVector& x, const LoopVector& y) {
    LoopVector out;
    for (const auto& [ta, ca] : x.terms)
        for (const auto& [tb, cb] : y.terms) {
            const Rational c = ca * cb;
            for (const auto& [e, s] : g.bracket(ta.b, tb.b)) out.add({e, ta.level + tb.level}, c * s);
            if (ta.level + tb.level == 0 && ta.level != 0) out.k += c * ta.level * g.form(ta.b, tb.b);
        }
    if (x.d != 0)
        for (const auto& [tb, cb] : y.terms) out.add(tb, -x.d * cb * tb.level);
    if (y.d != 0)
        for (const auto& [ta, ca] : x.terms) out.add(ta, y.d * ca * ta.level);
    return out;
}

Rational invariant_form(const LoopAlgebra& g, const LoopVector& x, const LoopVector& y) {
    Rational s = -(x.k * y.d + x.d * y.k);
    for (const auto& [ta, ca] : x.terms)
        for (const auto& [tb, cb] : y.terms)
            if (ta.level + tb.level == 0) s += ca * cb * g.form(ta.b, tb.b);
    return s;
}

std::string to_string(const LoopAlgebra& g, const LoopVector& x) {
    std::string out;
    auto term = [&](const Rational& c, const std::string& name) {
        if (c == 0) return;
        std::string cs = lsa::to_string(c);
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        if (c < 0) cs = lsa::to_string(-c);
        if (cs != "1") out += cs + " ";
        out += name;
    };
    for (const auto& [t, c] : x.terms) term(c, g.name(t.b) + "(" + std::to_string(t.level) + ")");
    term(x.k, "K");
    term(x.d, "d");
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- splits

Split Split::levi(const LoopAlgebra& g, const SimpleSystem& base, const std::vector<RootId>& X) {
    Split s;
    s.mode_ = Mode::Levi;
    s.g_ = &g;
    const FiniteRootSystem& sys = g.roots();
    if (!is_base(sys, base.roots)) throw Error(ErrorCode::NotABase, "not a base of " + sys.family().name());
    for (RootId x : X)
        if (!base.contains(x)) throw Error(ErrorCode::XNotSubset, sys.label(x) + " is not in the base");
    s.pos_ = positive_system(sys, base);
    s.base_ = base;
    RootSet px = additive_closure(sys, make_set(sys, X));
    s.levi_set_ = px | sys.negate(px);
    s.levi_ = members(s.levi_set_);
    s.loops_.assign(g.cartan_dim(), true);
    return s;
}

Split Split::partition(const LoopAlgebra& g, const AffinePartition& p) {
    if (!p.is_partition()) throw Error(ErrorCode::InvalidInput, "not an affine partition");
    if (p.sys().size() != g.roots().size() || p.sys().dim() != g.roots().dim())
        throw Error(ErrorCode::InvalidInput, "partition over a different root system");
    Split s;
    s.mode_ = Mode::Partition;
    s.g_ = &g;
    s.p_ = p;
    s.levi_set_ = g.roots().empty_set();
    s.loops_.assign(g.cartan_dim(), true);
    return s;
}

Split Split::fock(const LoopAlgebra& g, const std::vector<int>& cartan) {
    Split s;
    s.mode_ = Mode::Fock;
    s.g_ = &g;
    s.loops_.assign(g.cartan_dim(), false);
    for (int c : cartan) {
        if (c < 0 || c >= g.cartan_dim()) throw Error(ErrorCode::InvalidInput, "Cartan index out of range");
        s.loops_[c] = true;
    }
    return s;
}

Split Split::restrict_levi() const {
    Split s = *this;
    s.drop_u_ = true;
    return s;
}

Split Split::restrict_k(const std::vector<int>& hc) const {
    Split s = restrict_levi();
    for (int c : hc) s.loops_[c] = false;
    return s;
}

GenClass Split::classify(int b, long level) const {
    if (g_->is_cartan(b)) {
        if (level == 0) return GenClass::Cartan;
        if (mode_ == Mode::Partition)
            return p_->contains(p_->zero(), level) ? GenClass::UUpper : GenClass::ULower;
        if (!loops_[b]) return GenClass::Absent;
        return level < 0 ? GenClass::MLower : GenClass::MUpper;
    }
    const RootId r = g_->root(b);
    switch (mode_) {
        case Mode::Fock: return GenClass::Absent;
        case Mode::Partition: return p_->contains(r, level) ? GenClass::UUpper : GenClass::ULower;
        case Mode::Levi: break;
    }
    if (levi_set_.test(r)) {
        if (level < 0 || (level == 0 && !pos_.test(r))) return GenClass::MLower;
        return GenClass::MUpper;
    }
    if (drop_u_) return GenClass::Absent;
    return pos_.test(r) ? GenClass::UUpper : GenClass::ULower;
}

std::vector<std::pair<int, long>> Split::upper_generators(long window, bool levi_only) const {
    std::vector<std::pair<int, long>> out;
    auto keep = [&](int b, long level) {
        GenClass c = classify(b, level);
        if (c == GenClass::MUpper || (!levi_only && c == GenClass::UUpper)) out.push_back({b, level});
    };
    if (mode_ != Mode::Levi) {
        for (int b = 0; b < g_->dim(); ++b)
            for (long level = -window; level <= window; ++level) keep(b, level);
        return out;
    }
    for (int b = 0; b < g_->cartan_dim(); ++b)
        for (long level = 1; level <= window; ++level) keep(b, level);
    for (RootId r : levi_) {
        if (base_.contains(r)) keep(g_->root_vector(r), 0);
        if (!pos_.test(r) && window >= 1) keep(g_->root_vector(r), 1);
    }
    if (!levi_only)
        for (RootId a : base_.roots)
            if (!levi_set_.test(a))
                for (long level = -window; level <= window; ++level) keep(g_->root_vector(a), level);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- Verma modules

void add_to(ModVec& v, const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = v.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

void add_to(ModVec& v, const ModVec& w, const Rational& c) {
    if (c == 0) return;
    for (const auto& [m, x] : w) add_to(v, m, x * c);
}

VermaModule::VermaModule(AlgebraPtr g, Split split, Weight lambda)
    : g_(std::move(g)), split_(std::move(split)), lambda_(std::move(lambda)) {
    if (lambda_.h.size() != g_->cartan_dim())
        throw Error(ErrorCode::InvalidInput, "weight needs " + std::to_string(g_->cartan_dim()) + " Cartan values");
}

std::size_t VermaModule::KeyHash::operator()(const Monomial& k) const {
    return boost::hash_range(k.begin(), k.end());
}

Code VermaModule::code(int b, long level) const {
    GenClass c = split_.classify(b, level);
    if (c == GenClass::Absent)
        throw Error(ErrorCode::InvalidInput, g_->name(b) + "(" + std::to_string(level) + ") is not in the algebra");
    if (level <= -(1L << 30) || level >= (1L << 30)) throw Error(ErrorCode::TruncationOverflow, "level out of range");
    return (static_cast<Code>(c) << 48) | (static_cast<Code>(level + (1L << 31)) << 16) | static_cast<Code>(b);
}

WeightKey VermaModule::weight(const Monomial& m) const {
    WeightKey w{IVec(g_->size(), 0), 0};
    for (Code c : m) {
        const IVec& x = g_->weight(basis_of(c));
        for (std::size_t i = 0; i < x.size(); ++i) w.fin[i] += x[i];
        w.level += level_of(c);
    }
    return w;
}

Rational VermaModule::eigenvalue(int c, std::span<const Code> m) const {
    Rational e = lambda_.h(c);
    for (Code x : m) {
        const int b = basis_of(x);
        if (!g_->is_cartan(b)) e += g_->eval(g_->weight(b), c);
    }
    return e;
}

ModVec VermaModule::act_bracket(Code x, Code y, std::span<const Code> rest) {
    const int a = basis_of(x), b = basis_of(y);
    const long lx = level_of(x), ly = level_of(y);
    ModVec out;
    for (const auto& [e, c] : g_->bracket(a, b)) add_to(out, act_span(code(e, lx + ly), rest), c);
    if (lx + ly == 0 && lx != 0) {
        const Rational f = g_->form(a, b) * lx * lambda_.k;
        if (f != 0) add_to(out, Monomial(rest.begin(), rest.end()), f);
    }
    return out;
}

ModVec VermaModule::act_span(Code x, std::span<const Code> m) {
    const GenClass cx = class_of(x);
    if (cx == GenClass::Cartan) {
        ModVec out;
        Rational e = eigenvalue(basis_of(x), m);
        if (e != 0) out.emplace(Monomial(m.begin(), m.end()), e);
        return out;
    }
    if (m.empty()) {
        if (is_lower(cx)) return ModVec{{Monomial{x}, Rational(1)}};
        return {};
    }
    const Code y = m[0];
    if (is_lower(cx) && x <= y) {
        if (x == y && odd(x)) {
            ModVec out;
            add_to(out, act_bracket(x, x, m.subspan(1)), Rational(1, 2));
            return out;
        }
        Monomial out;
        out.reserve(m.size() + 1);
        out.push_back(x);
        out.insert(out.end(), m.begin(), m.end());
        return ModVec{{std::move(out), Rational(1)}};
    }
    Monomial key;
    key.reserve(m.size() + 1);
    key.push_back(x);
    key.insert(key.end(), m.begin(), m.end());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    ModVec out;
    const ModVec inner = act_span(x, m.subspan(1));
    const Rational sign = (odd(x) && odd(y)) ? -1 : 1;
    for (const auto& [w, c] : inner) add_to(out, act_span(y, w), sign * c);
    add_to(out, act_bracket(x, y, m.subspan(1)), Rational(1));
    cache_.emplace(std::move(key), out);
    return out;
}

ModVec VermaModule::act(Code x, const Monomial& m) { return act_span(x, m); }

ModVec VermaModule::act(Code x, const ModVec& v) {
    ModVec out;
    for (const auto& [m, c] : v) add_to(out, act_span(x, m), c);
    return out;
}

ModVec VermaModule::act(const LoopVector& x, const ModVec& v) {
    ModVec out;
    for (const auto& [t, c] : x.terms) add_to(out, act(code(t.b, t.level), v), c);
    if (x.k != 0) add_to(out, v, x.k * lambda_.k);
    if (x.d != 0)
        for (const auto& [m, c] : v) add_to(out, m, x.d * c * (lambda_.d - weight(m).level));
    return out;
}

std::string VermaModule::monomial_name(const Monomial& m) const {
    std::string out;
    for (Code c : m) out += g_->name(basis_of(c)) + "(" + std::to_string(level_of(c)) + ")";
    return out + "v";
}

// ---------------------------------------------------------------- truncation

std::string kind_name(ModuleKind k) {
    switch (k) {
        case ModuleKind::VermaB: return "verma-b";
        case ModuleKind::VermaM: return "verma-m";
        case ModuleKind::VermaK: return "verma-k";
        case ModuleKind::Fock: return "fock";
        case ModuleKind::InducedP: return "induced-p";
    }
    return "?";
}

int generator_depth(const LoopAlgebra& g, const SimpleSystem& base, int b, long level) {
    const long l = std::abs(level);
    if (g.is_cartan(b)) return static_cast<int>(l);
    return static_cast<int>(std::abs(height(g.roots(), base, g.root(b))) + l);
}

namespace {

struct Generators {
    std::vector<Code> codes;
    std::vector<long> cost;
};

// generators of the given class whose cost is at most budget
Generators collect(const VermaModule& mod, GenClass cls, long budget, const std::function<long(int, long)>& cost) {
    const LoopAlgebra& g = mod.algebra();
    Generators out;
    std::vector<std::pair<Code, long>> tmp;
    for (int b = 0; b < g.dim(); ++b)
        for (long level = -budget - 4; level <= budget + 4; ++level) {
            if (mod.split().classify(b, level) != cls) continue;
            const long c = cost(b, level);
            if (c < 1 || c > budget) continue;
            tmp.push_back({mod.code(b, level), c});
        }
    std::sort(tmp.begin(), tmp.end());
    for (auto& [c, w] : tmp) {
        out.codes.push_back(c);
        out.cost.push_back(w);
    }
    return out;
}

// monomials in the generators with total cost <= budget; visit(m, cost)
void monomials_rec(const VermaModule& mod, const Generators& gens, std::size_t start, long budget, Monomial& cur,
                   long used, const std::function<void(const Monomial&, long)>& visit) {
    visit(cur, used);
    for (std::size_t i = start; i < gens.codes.size(); ++i) {
        if (gens.cost[i] > budget) continue;
        cur.push_back(gens.codes[i]);
        const bool odd = mod.odd(gens.codes[i]);
        monomials_rec(mod, gens, odd ? i + 1 : i, budget - gens.cost[i], cur, used + gens.cost[i], visit);
        cur.pop_back();
    }
}

}  // namespace

LeviSlice::LeviSlice(VermaModule& module, bool simple, const SimpleSystem& base) : module_(module), simple_(simple) {
    const LoopAlgebra& g = module.algebra();
    long maxht = 1;
    const FiniteRootSystem& sys = g.roots();
    for (RootId r = 0; r < sys.size(); ++r) maxht = std::max<long>(maxht, std::abs(height(sys, base, r)));
    scale_ = maxht + 1;
    hf_ = height_functional(sys, base);
}

long LeviSlice::filtration(const WeightKey& w) const { return -(height_of(hf_, w.fin) + scale_ * w.level); }

std::vector<Monomial> LeviSlice::enumerate(const WeightKey& w) const {
    std::vector<Monomial> out;
    const long budget = filtration(w);
    if (budget < 0) return out;
    if (budget == 0) {
        if (all_zero(w.fin) && w.level == 0) out.push_back({});
        return out;
    }
    const LoopAlgebra& g = module_.algebra();
    auto cost = [&](int b, long level) {
        return -(height_of(hf_, g.weight(b)) + scale_ * level);
    };
    Generators gens = collect(module_, GenClass::MLower, budget, cost);
    Monomial cur;
    IVec rest = w.fin;
    std::function<void(std::size_t, long, long)> rec = [&](std::size_t start, long left, long lev) {
        if (left == 0) {
            if (lev == 0 && all_zero(rest)) out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < gens.codes.size(); ++i) {
            const long l = VermaModule::level_of(gens.codes[i]);
            if (gens.cost[i] > left || -l > lev) continue;
            const IVec& x = g.weight(VermaModule::basis_of(gens.codes[i]));
            for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= x[k];
            cur.push_back(gens.codes[i]);
            rec(module_.odd(gens.codes[i]) ? i + 1 : i, left - gens.cost[i], lev + l);
            cur.pop_back();
            for (std::size_t k = 0; k < rest.size(); ++k) rest[k] += x[k];
        }
    };
    rec(0, budget, -w.level);
    return out;
}

const LeviSlice::Space& LeviSlice::space(const WeightKey& w) {
    if (auto it = spaces_.find(w); it != spaces_.end()) return it->second;
    Space s;
    s.monomials = enumerate(w);
    for (std::size_t i = 0; i < s.monomials.size(); ++i) s.index[s.monomials[i]] = static_cast<int>(i);
    const int n = static_cast<int>(s.monomials.size());
    const bool top = all_zero(w.fin) && w.level == 0;
    if (!simple_ || top || n == 0) {
        s.q = QMat::Identity(n, n);
        for (int i = 0; i < n; ++i) s.lift.push_back(i);
        return spaces_.emplace(w, std::move(s)).first->second;
    }
    const LoopAlgebra& g = module_.algebra();
    const long budget = filtration(w);
    auto cost = [&](int b, long level) { return height_of(hf_, g.weight(b)) + scale_ * level; };
    std::vector<QVec> rows;
    for (const auto& [b, level] : module_.split().upper_generators(budget / scale_ + 1, true)) {
        if (cost(b, level) > budget) continue;
        const Code e = module_.code(b, level);
        WeightKey target{add_ivec(w.fin, g.weight(b)), w.level + level};
        if (filtration(target) < 0) continue;
        const Space& t = space(target);
        if (t.dim() == 0) continue;
        QMat block = QMat::Zero(t.q.rows(), n);
        for (int j = 0; j < n; ++j)
            for (const auto& [m, c] : module_.act(e, s.monomials[j])) {
                auto it = t.index.find(m);
                if (it == t.index.end()) throw Error(ErrorCode::InvalidInput, "Levi action left its weight space");
                for (Eigen::Index r = 0; r < t.q.rows(); ++r)
                    if (t.q(r, it->second) != 0) block(r, j) += t.q(r, it->second) * c;
            }
        for (Eigen::Index r = 0; r < block.rows(); ++r)
            if (!block.row(r).isZero()) rows.push_back(block.row(r).transpose());
    }
    QMat a(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r) a.row(r) = rows[r].transpose();
    s.q = rows.empty() ? QMat(0, n) : linalg::row_basis(a);
    for (Eigen::Index r = 0; r < s.q.rows(); ++r)
        for (int c = 0; c < n; ++c)
            if (s.q(r, c) != 0) {
                s.lift.push_back(c);
                break;
            }
    return spaces_.emplace(w, std::move(s)).first->second;
}

std::map<WeightKey, int> LeviSlice::weights_up_to(int depth, const SimpleSystem& base) {
    std::map<WeightKey, int> out;
    const LoopAlgebra& g = module_.algebra();
    auto cost = [&](int b, long level) { return static_cast<long>(generator_depth(g, base, b, level)); };
    Generators gens = collect(module_, GenClass::MLower, depth, cost);
    Monomial cur;
    monomials_rec(module_, gens, 0, depth, cur, 0, [&](const Monomial& m, long used) {
        WeightKey w = module_.weight(m);
        auto [it, fresh] = out.try_emplace(w, static_cast<int>(used));
        if (!fresh) it->second = std::min<int>(it->second, static_cast<int>(used));
    });
    return out;
}

// ---------------------------------------------------------------- truncated modules

TruncatedModule::TruncatedModule(ModuleKind kind, AlgebraPtr g, Split split, Weight lambda, SimpleSystem base,
                                 bool simple_levi, Truncation t)
    : kind_(kind), base_(std::move(base)), trunc_(t) {
    if (t.max_depth < 0) throw Error(ErrorCode::InvalidInput, "negative depth");
    module_ = std::make_unique<VermaModule>(std::move(g), std::move(split), std::move(lambda));
    slice_ = std::make_unique<LeviSlice>(*module_, simple_levi, base_);
    build();
}

void TruncatedModule::build() {
    const LoopAlgebra& g = module_->algebra();
    const int depth = trunc_.max_depth;
    nu_depth_ = slice_->weights_up_to(depth, base_);
    auto cost = [&](int b, long level) { return static_cast<long>(generator_depth(g, base_, b, level)); };
    Generators gens = collect(*module_, GenClass::ULower, depth, cost);
    std::size_t count = 0;
    Monomial cur;
    monomials_rec(*module_, gens, 0, depth, cur, 0, [&](const Monomial& u, long used) {
        const WeightKey wu = module_->weight(u);
        for (const auto& [nu, dn] : nu_depth_) {
            if (used + dn > depth) continue;
            const int dim = slice_->space(nu).dim();
            if (dim == 0) continue;
            WeightKey w{add_ivec(wu.fin, nu.fin), wu.level + nu.level};
            auto& list = basis_[w];
            for (int i = 0; i < dim; ++i) list.push_back({u, nu, i});
            count += dim;
            if (count > trunc_.budget)
                throw Error(ErrorCode::TruncationOverflow,
                            "truncated module exceeds " + std::to_string(trunc_.budget) + " basis vectors");
        }
    });
    for (auto& [w, list] : basis_) std::sort(list.begin(), list.end());
}

int TruncatedModule::weight_dim(const WeightKey& w) const {
    auto it = basis_.find(w);
    return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
}

std::size_t TruncatedModule::total_dim() const {
    std::size_t n = 0;
    for (const auto& [w, l] : basis_) n += l.size();
    return n;
}

int TruncatedModule::depth(const BasisElement& e) {
    int d = 0;
    for (Code c : e.u)
        d += generator_depth(module_->algebra(), base_, VermaModule::basis_of(c), VermaModule::level_of(c));
    auto it = nu_depth_.find(e.nu);
    return d + (it == nu_depth_.end() ? trunc_.max_depth + 1 : it->second);
}

ModVec TruncatedModule::lift(const BasisElement& e) {
    const auto& s = slice_->space(e.nu);
    Monomial m = e.u;
    const Monomial& tail = s.monomials[s.lift[e.index]];
    m.insert(m.end(), tail.begin(), tail.end());
    return ModVec{{std::move(m), Rational(1)}};
}

std::map<BasisElement, Rational> TruncatedModule::project(const ModVec& v) {
    std::map<std::pair<Monomial, WeightKey>, std::map<int, Rational>> groups;
    for (const auto& [m, c] : v) {
        auto split_at = std::find_if(m.begin(), m.end(),
                                     [](Code x) { return VermaModule::class_of(x) != GenClass::ULower; });
        Monomial u(m.begin(), split_at), rest(split_at, m.end());
        for (Code x : rest)
            if (VermaModule::class_of(x) != GenClass::MLower)
                throw Error(ErrorCode::InvalidInput, "vector is not in normal order");
        WeightKey nu = module_->weight(rest);
        const auto& s = slice_->space(nu);
        auto it = s.index.find(rest);
        if (it == s.index.end()) throw Error(ErrorCode::InvalidInput, "monomial missing from its weight space");
        groups[{std::move(u), nu}][it->second] += c;
    }
    std::map<BasisElement, Rational> out;
    for (const auto& [key, coeffs] : groups) {
        const auto& s = slice_->space(key.second);
        for (Eigen::Index r = 0; r < s.q.rows(); ++r) {
            Rational x = 0;
            for (const auto& [j, c] : coeffs)
                if (s.q(r, j) != 0) x += s.q(r, j) * c;
            if (x != 0) out[{key.first, key.second, static_cast<int>(r)}] = x;
        }
    }
    return out;
}

std::map<BasisElement, Rational> TruncatedModule::act(const LoopVector& x,
                                                      const std::map<BasisElement, Rational>& v) {
    ModVec lifted;
    for (const auto& [e, c] : v) add_to(lifted, lift(e), c);
    auto out = project(module_->act(x, lifted));
    for (const auto& [e, c] : out)
        if (depth(e) > trunc_.max_depth)
            throw Error(ErrorCode::TruncationOverflow, "action leaves the truncation window");
    return out;
}

std::vector<Code> TruncatedModule::raising_set() {
    std::vector<Code> out;
    for (const auto& [b, level] : module_->split().upper_generators(trunc_.window())) out.push_back(module_->code(b, level));
    std::sort(out.begin(), out.end());
    return out;
}

SingularReport TruncatedModule::singular_vectors(const WeightKey& w) {
    SingularReport rep;
    rep.weight = w;
    auto it = basis_.find(w);
    if (it == basis_.end()) return rep;
    const auto& cols = it->second;
    rep.dim = static_cast<int>(cols.size());
    std::map<std::pair<Code, BasisElement>, int> row_of;
    std::vector<std::vector<std::pair<int, Rational>>> entries(cols.size());
    const auto raise = raising_set();
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const ModVec v = lift(cols[j]);
        for (Code e : raise)
            for (const auto& [el, c] : project(module_->act(e, v))) {
                auto [r, fresh] = row_of.try_emplace({e, el}, static_cast<int>(row_of.size()));
                entries[j].push_back({r->second, c});
            }
    }
    QMat a = QMat::Zero(static_cast<Eigen::Index>(row_of.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, c] : entries[j]) a(r, j) += c;
    QMat ker = a.rows() == 0 ? QMat(QMat::Identity(cols.size(), cols.size())) : linalg::kernel(a);
    rep.singular = static_cast<int>(ker.cols());
    for (Eigen::Index k = 0; k < ker.cols(); ++k) {
        std::vector<std::pair<BasisElement, Rational>> vec;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (ker(j, k) != 0) vec.push_back({cols[j], ker(j, k)});
        rep.basis.push_back(std::move(vec));
    }
    return rep;
}

std::vector<SingularReport> TruncatedModule::all_singular(bool skip_top) {
    std::vector<WeightKey> weights;
    for (const auto& [w, l] : basis_)
        if (!(skip_top && all_zero(w.fin) && w.level == 0)) weights.push_back(w);
    std::vector<SingularReport> out;
    for (const auto& w : weights) out.push_back(singular_vectors(w));
    return out;
}

std::string TruncatedModule::element_name(const BasisElement& e) {
    const auto& s = slice_->space(e.nu);
    Monomial m = e.u;
    const Monomial& tail = s.monomials[s.lift[e.index]];
    m.insert(m.end(), tail.begin(), tail.end());
    std::string name = module_->monomial_name(m);
    if (slice_->simple() && s.dim() != static_cast<int>(s.monomials.size())) name = "[" + name + "]";
    return name;
}

// ---------------------------------------------------------------- constructors

std::unique_ptr<TruncatedModule> verma_module(AlgebraPtr g, const SimpleSystem& base, const std::vector<RootId>& X,
                                              const Weight& lambda, const Truncation& t) {
    Split s = Split::levi(*g, base, X);
    return std::make_unique<TruncatedModule>(ModuleKind::VermaB, std::move(g), std::move(s), lambda, base, false, t);
}

std::unique_ptr<TruncatedModule> verma_module(AlgebraPtr g, const AffinePartition& p, const Weight& lambda,
                                              const Truncation& t) {
    Split s = Split::partition(*g, p);
    SimpleSystem base = distinguished_simple_system(g->roots());
    return std::make_unique<TruncatedModule>(ModuleKind::VermaB, std::move(g), std::move(s), lambda, base, false, t);
}

std::unique_ptr<TruncatedModule> levi_verma(AlgebraPtr g, const SimpleSystem& base, const std::vector<RootId>& X,
                                            const Weight& lambda, const Truncation& t) {
    Split s = Split::levi(*g, base, X).restrict_levi();
    return std::make_unique<TruncatedModule>(ModuleKind::VermaM, std::move(g), std::move(s), lambda, base, false, t);
}

std::unique_ptr<TruncatedModule> k_verma(AlgebraPtr g, const SimpleSystem& base, const std::vector<RootId>& X,
                                         const Weight& lambda, const Truncation& t) {
    AdaptedCartan ac = adapted_cartan(g->family(), base, X);
    std::vector<int> hc;
    for (int c = ac.hx; c < g->cartan_dim(); ++c) hc.push_back(c);
    Split s = Split::levi(*g, base, X).restrict_k(hc);
    return std::make_unique<TruncatedModule>(ModuleKind::VermaK, std::move(g), std::move(s), lambda, base, false, t);
}

std::unique_ptr<TruncatedModule> fock_module(AlgebraPtr g, const std::vector<int>& cartan, const Weight& lambda,
                                             const Truncation& t) {
    Split s = Split::fock(*g, cartan);
    SimpleSystem base = distinguished_simple_system(g->roots());
    return std::make_unique<TruncatedModule>(ModuleKind::Fock, std::move(g), std::move(s), lambda, base, false, t);
}

std::unique_ptr<TruncatedModule> induced_module(AlgebraPtr g, const SimpleSystem& base, const std::vector<RootId>& X,
                                                const Weight& lambda, bool simple_levi, const Truncation& t) {
    Split s = Split::levi(*g, base, X);
    return std::make_unique<TruncatedModule>(ModuleKind::InducedP, std::move(g), std::move(s), lambda, base,
                                             simple_levi, t);
}

// ---------------------------------------------------------------- weight dimensions

std::optional<long> verma_weight_dim(const LoopAlgebra& g, const SimpleSystem& base, const std::vector<RootId>& X,
                                     const QVec& fin, long level) {
    const FiniteRootSystem& sys = g.roots();
    if (fin.size() != sys.dim()) throw Error(ErrorCode::WeightOffLattice, "weight has the wrong number of coordinates");
    QMat b(sys.dim(), base.roots.size());
    for (std::size_t i = 0; i < base.roots.size(); ++i) b.col(i) = sys.root(base.roots[i]);
    auto c = linalg::solve(b, fin);
    if (!c) throw Error(ErrorCode::WeightOffLattice, "weight is not in the root lattice");
    for (Eigen::Index i = 0; i < c->size(); ++i)
        if (!is_integer((*c)(i))) throw Error(ErrorCode::WeightOffLattice, "weight is not in the root lattice");
    bool outside_negative = false;
    for (std::size_t i = 0; i < base.roots.size(); ++i) {
        if (std::find(X.begin(), X.end(), base.roots[i]) != X.end()) continue;
        if ((*c)(i) > 0) return 0;
        if ((*c)(i) < 0) outside_negative = true;
    }
    if (outside_negative) return std::nullopt;
    auto ptr = std::shared_ptr<const LoopAlgebra>(&g, [](const LoopAlgebra*) {});
    VermaModule mod(ptr, Split::levi(g, base, X), Weight::zero(g));
    LeviSlice slice(mod, false, base);
    WeightKey w{IVec(sys.dim()), level};
    for (int i = 0; i < sys.dim(); ++i) {
        if (!is_integer(fin(i))) throw Error(ErrorCode::WeightOffLattice, "non-integral coordinate");
        w.fin[i] = static_cast<int>(to_long(fin(i)));
    }
    return static_cast<long>(slice.space(w).monomials.size());
}

// ---------------------------------------------------------------- factorization

bool has_isotropic_singleton(const FiniteRootSystem& sys, const std::vector<RootId>& X) {
    for (const auto& comp : connected_components(sys, X))
        if (comp.size() == 1 && sys.is_isotropic(comp[0])) return true;
    return false;
}

bool pbw_factorization_check(const AlgebraFamily& family, const SimpleSystem& base, const std::vector<RootId>& X,
                             const QVec& lambda_h, const Rational& lambda_k, int depth) {
    const FiniteRootSystem sys = FiniteRootSystem::build(AlgebraFamily::gl(family.m, family.n));
    if (has_isotropic_singleton(sys, X))
        throw Error(ErrorCode::HypothesisViolated, "X has a component made of one isotropic root");
    AdaptedCartan ac = adapted_cartan(family, base, X);
    AlgebraPtr g = LoopAlgebra::build(family, ac.basis);
    std::vector<int> hc;
    for (int c = ac.hx; c < g->cartan_dim(); ++c) hc.push_back(c);
    Split levi = Split::levi(*g, base, X).restrict_levi();
    Split k = levi.restrict_k(hc);
    const long w = depth + 1;
    for (int c : hc)
        for (long m = -w; m <= w; ++m) {
            if (m == 0) continue;
            const LoopVector h = LoopVector::basis(c, m);
            for (int b = 0; b < g->dim(); ++b)
                for (long n = -w; n <= w; ++n) {
                    GenClass cls = k.classify(b, n);
                    if (cls == GenClass::Absent || cls == GenClass::Cartan) continue;
                    if (!bracket(*g, h, LoopVector::basis(b, n)).is_zero()) return false;
                }
        }
    Weight lambda{lambda_h, lambda_k, 0};
    Truncation t;
    t.max_depth = depth;
    auto mm = std::make_unique<TruncatedModule>(ModuleKind::VermaM, g, levi, lambda, base, false, t);
    auto kk = std::make_unique<TruncatedModule>(ModuleKind::VermaK, g, k, lambda, base, false, t);
    auto ff = fock_module(g, hc, lambda, t);
    for (const auto& [wt, list] : mm->basis()) {
        const long total = static_cast<long>(mm->levi().space(wt).monomials.size());
        long sum = 0;
        for (long lev = wt.level; lev <= 0; ++lev) {
            const long fock = static_cast<long>(
                ff->levi().space(WeightKey{IVec(g->size(), 0), lev}).monomials.size());
            if (fock == 0) continue;
            WeightKey rest{wt.fin, wt.level - lev};
            sum += fock * static_cast<long>(kk->levi().space(rest).monomials.size());
        }
        if (sum != total) return false;
    }
    return true;
}

SimplicityProbe probe_simplicity(TruncatedModule& m) {
    SimplicityProbe p;
    p.dim = m.total_dim();
    for (auto& r : m.all_singular(true))
        if (r.singular > 0) {
            p.simple_at_truncation = false;
            p.singular.push_back(std::move(r));
        }
    return p;
}

// ---------------------------------------------------------------- root witnesses

std::vector<RootId> tec1_candidates(const FiniteRootSystem& sys, const SimpleSystem& base,
                                    const std::vector<RootId>& X) {
    RootSet pos = positive_system(sys, base);
    RootSet px = additive_closure(sys, make_set(sys, X));
    RootSet levi = px | sys.negate(px);
    std::vector<RootId> out;
    for (RootId r = 0; r < sys.size(); ++r) {
        if (pos.test(r) || levi.test(r)) continue;
        if (base.contains(sys.neg(r))) continue;
        out.push_back(r);
    }
    return out;
}

Tec1Witness tec1_witness(const FiniteRootSystem& sys, const SimpleSystem& base, const std::vector<RootId>& X,
                         RootId alpha) {
    for (RootId x : X)
        if (!base.contains(x)) throw Error(ErrorCode::XNotSubset, sys.label(x) + " is not in the base");
    if (X.size() >= base.roots.size()) throw Error(ErrorCode::InvalidInput, "X must be a proper subset of the base");
    auto cands = tec1_candidates(sys, base, X);
    if (std::find(cands.begin(), cands.end(), alpha) == cands.end())
        throw Error(ErrorCode::InvalidInput, sys.label(alpha) + " is not a nonsimple root of u-");
    RootSet pos = positive_system(sys, base);
    RootSet px = additive_closure(sys, make_set(sys, X));
    RootSet levi = px | sys.negate(px);
    std::vector<std::pair<int, RootId>> order;
    for (RootId r : members(pos)) order.push_back({height(sys, base, r), r});
    std::sort(order.begin(), order.end());
    const Family f = sys.family().family;
    const bool matrix = f == Family::GL || f == Family::SL;
    const int size = sys.family().m + sys.family().n;
    auto mat = [&](RootId r) {
        const QVec& v = sys.root(r);
        return unit_matrix(size, matrix_index(v, 1), matrix_index(v, -1));
    };
    for (const auto& [h, gamma] : order) {
        const RootId s = sys.sum(alpha, gamma);
        if (s < 0 || pos.test(s) || levi.test(s)) continue;
        Tec1Witness w{gamma, s, false};
        if (matrix) {
            QMat z = mat(gamma), y = mat(alpha);
            QMat br = sys.is_odd(gamma) && sys.is_odd(alpha) ? QMat(z * y + y * z) : QMat(z * y - y * z);
            if (br.isZero()) continue;
            w.matrix_checked = true;
        }
        return w;
    }
    throw Error(ErrorCode::NoWitness, "no raising root moves " + sys.label(alpha) + " inside u-");
}

}  // namespace lsa::engine

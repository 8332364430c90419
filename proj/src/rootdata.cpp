#include "lsa/rootdata.hpp"
#include "lsa/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lsa {

namespace {

QVec unit(int dim, int i, const Rational& c = 1) {
    QVec v = QVec::Zero(dim);
    v(i) = c;
    return v;
}

bool lex_less(const QVec& a, const QVec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (b(i) < a(i)) return false;
    }
    return false;
}

struct Raw {
    QMat gram;
    std::vector<std::string> names;
    std::vector<QVec> roots;
    std::vector<bool> odd;
    std::vector<QVec> base;
};

void add(Raw& r, const QVec& v, bool odd) {
    r.roots.push_back(v);
    r.odd.push_back(odd);
}

Raw build_gl(int m, int n) {
    Raw r;
    const int d = m + n;
    r.gram = QMat::Zero(d, d);
    for (int i = 0; i < d; ++i) r.gram(i, i) = i < m ? 1 : -1;
    for (int i = 0; i < m; ++i) r.names.push_back("d" + std::to_string(i + 1));
    for (int j = 0; j < n; ++j) r.names.push_back("e" + std::to_string(j + 1));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) add(r, unit(d, i) - unit(d, j), (i < m) != (j < m));
    for (int i = 0; i + 1 < d; ++i) r.base.push_back(unit(d, i) - unit(d, i + 1));
    return r;
}

Raw build_osp(int m, int n) {
    Raw r;
    const int mp = m / 2, np = n / 2;
    const bool odd_m = m % 2 == 1;
    const int d = mp + np;
    r.gram = QMat::Zero(d, d);
    for (int i = 0; i < d; ++i) r.gram(i, i) = i < mp ? 1 : -1;
    for (int i = 0; i < mp; ++i) r.names.push_back("e" + std::to_string(i + 1));
    for (int j = 0; j < np; ++j) r.names.push_back("d" + std::to_string(j + 1));
    auto e = [&](int i) { return unit(d, i); };
    auto dl = [&](int j) { return unit(d, mp + j); };
    for (int i = 0; i < mp; ++i) {
        for (int j = i + 1; j < mp; ++j)
            for (int s : {1, -1})
                for (int t : {1, -1}) add(r, s * e(i) + t * e(j), false);
        if (odd_m)
            for (int s : {1, -1}) add(r, s * e(i), false);
    }
    for (int i = 0; i < np; ++i) {
        for (int j = i + 1; j < np; ++j)
            for (int s : {1, -1})
                for (int t : {1, -1}) add(r, s * dl(i) + t * dl(j), false);
        for (int s : {1, -1}) add(r, 2 * s * dl(i), false);
    }
    for (int i = 0; i < mp; ++i)
        for (int j = 0; j < np; ++j)
            for (int s : {1, -1})
                for (int t : {1, -1}) add(r, s * e(i) + t * dl(j), true);
    if (odd_m)
        for (int j = 0; j < np; ++j)
            for (int s : {1, -1}) add(r, s * dl(j), true);

    if (m == 2) {
        r.base.push_back(e(0) - dl(0));
        for (int j = 0; j + 1 < np; ++j) r.base.push_back(dl(j) - dl(j + 1));
        r.base.push_back(2 * dl(np - 1));
    } else {
        for (int j = 0; j + 1 < np; ++j) r.base.push_back(dl(j) - dl(j + 1));
        if (mp == 0) {
            r.base.push_back(dl(np - 1));
        } else {
            r.base.push_back(dl(np - 1) - e(0));
            for (int i = 0; i + 1 < mp; ++i) r.base.push_back(e(i) - e(i + 1));
            if (odd_m)
                r.base.push_back(e(mp - 1));
            else
                r.base.push_back(e(mp - 2) + e(mp - 1));
        }
    }
    return r;
}

Raw build_d21a(const Rational& a) {
    Raw r;
    r.gram = QMat::Zero(3, 3);
    r.gram(0, 0) = -(1 + a);
    r.gram(1, 1) = 1;
    r.gram(2, 2) = a;
    for (int i = 0; i < 3; ++i)
        for (int s : {1, -1}) add(r, unit(3, i, 2 * s), false);
    for (int s : {1, -1})
        for (int t : {1, -1})
            for (int u : {1, -1}) {
                QVec v(3);
                v << s, t, u;
                add(r, v, true);
            }
    QVec a1(3), a2(3), a3(3);
    a1 << 1, -1, -1;
    a2 << 0, 2, 0;
    a3 << 0, 0, 2;
    r.base = {a1, a2, a3};
    return r;
}

Raw build_g3() {
    Raw r;
    r.gram = QMat::Zero(3, 3);
    r.gram << -2, 1, 0, 1, -2, 0, 0, 0, 2;
    QVec e1 = unit(3, 0), e2 = unit(3, 1), dl = unit(3, 2);
    QVec e3 = -e1 - e2;
    std::vector<QVec> eps = {e1, e2, e3};
    for (int i = 0; i < 3; ++i) {
        for (int s : {1, -1}) add(r, s * eps[i], false);
        for (int j = 0; j < 3; ++j)
            if (i != j) add(r, eps[i] - eps[j], false);
    }
    for (int s : {1, -1}) add(r, 2 * s * dl, false);
    for (int i = 0; i < 3; ++i)
        for (int s : {1, -1})
            for (int t : {1, -1}) add(r, s * eps[i] + t * dl, true);
    for (int s : {1, -1}) add(r, s * dl, true);
    r.base = {dl + e3, e1, e2 - e1};
    return r;
}

Raw build_f4() {
    Raw r;
    r.gram = QMat::Zero(4, 4);
    r.gram.diagonal() << 1, 1, 1, -3;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j)
            for (int s : {1, -1})
                for (int t : {1, -1}) add(r, s * unit(4, i) + t * unit(4, j), false);
        for (int s : {1, -1}) add(r, unit(4, i, s), false);
    }
    for (int s : {1, -1}) add(r, unit(4, 3, s), false);
    const Rational h(1, 2);
    for (int mask = 0; mask < 16; ++mask) {
        QVec v(4);
        for (int i = 0; i < 4; ++i) v(i) = (mask >> i & 1) ? -h : h;
        add(r, v, true);
    }
    QVec a1(4);
    a1 << -h, -h, -h, h;
    r.base = {a1, unit(4, 2), unit(4, 1) - unit(4, 2), unit(4, 0) - unit(4, 1)};
    return r;
}

// Re-express an exceptional system in simple-root coordinates.
void to_simple_coordinates(Raw& r) {
    const int k = static_cast<int>(r.base.size());
    QMat b(r.gram.rows(), k);
    for (int i = 0; i < k; ++i) b.col(i) = r.base[i];
    for (auto& v : r.roots) {
        auto c = linalg::solve(b, v);
        if (!c) throw Error(ErrorCode::UnsupportedFamily, "root outside lattice");
        v = *c;
    }
    r.gram = b.transpose() * r.gram * b;
    r.base.clear();
    for (int i = 0; i < k; ++i) r.base.push_back(unit(k, i));
    r.names.clear();
    for (int i = 0; i < k; ++i) r.names.push_back("a" + std::to_string(i + 1));
}

}  // namespace

std::string family_tag(Family f) {
    switch (f) {
        case Family::GL: return "gl";
        case Family::SL: return "sl";
        case Family::OSP: return "osp";
        case Family::D21A: return "d21a";
        case Family::G3: return "g3";
        case Family::F4: return "f4";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::GL, Family::SL, Family::OSP, Family::D21A, Family::G3, Family::F4})
        if (family_tag(f) == s) return f;
    throw Error(ErrorCode::UnsupportedFamily, "unknown family '" + s + "'");
}

std::string AlgebraFamily::name() const {
    switch (family) {
        case Family::GL: return "gl(" + std::to_string(m) + "," + std::to_string(n) + ")";
        case Family::SL: return "sl(" + std::to_string(m) + "," + std::to_string(n) + ")";
        case Family::OSP: return "osp(" + std::to_string(m) + "," + std::to_string(n) + ")";
        case Family::D21A: return "D(2,1;" + to_string(a) + ")";
        case Family::G3: return "G(3)";
        case Family::F4: return "F(4)";
    }
    return "?";
}

FiniteRootSystem FiniteRootSystem::build(const AlgebraFamily& f) {
    Raw raw;
    switch (f.family) {
        case Family::GL:
            if (f.m < 1 || f.n < 1) throw Error(ErrorCode::UnsupportedFamily, "gl(m,n) needs m,n >= 1");
            raw = build_gl(f.m, f.n);
            break;
        case Family::SL:
            if (f.m < 1 || f.n < 1) throw Error(ErrorCode::UnsupportedFamily, "sl(m,n) needs m,n >= 1");
            if (f.m == f.n) throw Error(ErrorCode::UnsupportedFamily, "sl(n,n) is not supported");
            raw = build_gl(f.m, f.n);
            break;
        case Family::OSP:
            if (f.m < 1 || f.n < 2 || f.n % 2 != 0)
                throw Error(ErrorCode::UnsupportedFamily, "osp(m,n) needs m >= 1 and even n >= 2");
            raw = build_osp(f.m, f.n);
            break;
        case Family::D21A:
            if (f.a == 0 || f.a == -1) throw Error(ErrorCode::UnsupportedFamily, "D(2,1;a) needs a not in {0,-1}");
            raw = build_d21a(f.a);
            to_simple_coordinates(raw);
            break;
        case Family::G3:
            raw = build_g3();
            to_simple_coordinates(raw);
            break;
        case Family::F4:
            raw = build_f4();
            to_simple_coordinates(raw);
            break;
    }
    FiniteRootSystem sys;
    sys.family_ = f;
    if (f.family == Family::SL) sys.family_.a = 0;
    sys.gram_ = raw.gram;
    sys.coord_names_ = raw.names;
    sys.finalize(std::move(raw.roots), std::move(raw.odd), raw.base);
    return sys;
}

void FiniteRootSystem::finalize(std::vector<QVec> roots, std::vector<bool> odd,
                                const std::vector<QVec>& base) {
    std::vector<int> order(roots.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lex_less(roots[a], roots[b]); });
    for (int i : order) {
        roots_.push_back(roots[i]);
        odd_.push_back(odd[i]);
    }
    const int n = size();
    for (int i = 0; i + 1 < n; ++i)
        if (!lex_less(roots_[i], roots_[i + 1]))
            throw Error(ErrorCode::UnsupportedFamily, "duplicate root");
    norm_.resize(n);
    forms_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) forms_[i * n + j] = form(roots_[i], roots_[j]);
        norm_[i] = forms_[i * n + i];
    }
    neg_.assign(n, kNoRoot);
    twice_.assign(n, kNoRoot);
    sum_.assign(static_cast<std::size_t>(n) * n, kNoRoot);
    for (int i = 0; i < n; ++i) {
        neg_[i] = require(-roots_[i]);
        if (auto t = find(2 * roots_[i])) twice_[i] = *t;
        for (int j = 0; j < n; ++j) {
            QVec s = roots_[i] + roots_[j];
            if (s.isZero()) {
                sum_[i * n + j] = kZeroSum;
            } else if (auto k = find(s)) {
                sum_[i * n + j] = *k;
            }
        }
    }
    for (const auto& b : base) distinguished_.push_back(require(b));
    const int k = rank();
    QMat bm(dim(), k);
    for (int i = 0; i < k; ++i) bm.col(i) = roots_[distinguished_[i]];
    coeffs_.resize(n);
    for (int i = 0; i < n; ++i) {
        auto c = linalg::solve(bm, roots_[i]);
        if (!c) throw Error(ErrorCode::UnsupportedFamily, "root outside base span");
        IVec iv(k);
        bool pos = true, negv = true;
        for (int j = 0; j < k; ++j) {
            if (!is_integer((*c)(j))) throw Error(ErrorCode::UnsupportedFamily, "non-integral root");
            iv[j] = static_cast<int>(to_long((*c)(j)));
            pos = pos && iv[j] >= 0;
            negv = negv && iv[j] <= 0;
        }
        if (!pos && !negv) throw Error(ErrorCode::UnsupportedFamily, "distinguished base is not a base");
        coeffs_[i] = iv;
    }
}

Rational FiniteRootSystem::coroot_pairing(RootId beta, RootId alpha) const {
    const Rational& f = form(alpha, beta);
    if (norm_[beta] == 0) return f;
    return 2 * f / norm_[beta];
}

Rational FiniteRootSystem::coroot_pairing(RootId beta, const QVec& mu) const {
    Rational f = form(mu, roots_[beta]);
    if (norm_[beta] == 0) return f;
    return 2 * f / norm_[beta];
}

std::optional<RootId> FiniteRootSystem::find(const QVec& v) const {
    auto it = std::lower_bound(roots_.begin(), roots_.end(), v, lex_less);
    if (it != roots_.end() && *it == v) return static_cast<RootId>(it - roots_.begin());
    return std::nullopt;
}

RootId FiniteRootSystem::require(const QVec& v) const {
    auto r = find(v);
    if (!r) throw Error(ErrorCode::NotARoot, label(v) + " is not a root of " + family_.name());
    return *r;
}

std::string FiniteRootSystem::label(const QVec& v) const {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) == 0) continue;
        Rational c = v(i);
        bool negc = c < 0;
        if (negc) c = -c;
        if (negc) out += "-";
        else if (!out.empty()) out += "+";
        if (c != 1) out += to_string(c);
        out += coord_names_[i];
    }
    return out.empty() ? "0" : out;
}

std::string FiniteRootSystem::label(RootId r) const { return label(roots_[r]); }

QMat FiniteRootSystem::hstar_gram() const {
    if (family_.family == Family::GL) return gram_;
    QMat b(dim(), rank());
    for (int i = 0; i < rank(); ++i) b.col(i) = roots_[distinguished_[i]];
    return b.transpose() * gram_ * b;
}

AlgebraType FiniteRootSystem::type() const {
    switch (family_.family) {
        case Family::GL:
        case Family::SL: return AlgebraType::TypeI;
        case Family::OSP: return family_.m == 2 ? AlgebraType::TypeI : AlgebraType::TypeII;
        default: return AlgebraType::TypeII;
    }
}

RootSet FiniteRootSystem::even_set() const {
    RootSet s(size());
    for (int i = 0; i < size(); ++i)
        if (!odd_[i]) s.set(i);
    return s;
}

RootSet FiniteRootSystem::negate(const RootSet& s) const {
    RootSet out(size());
    for (auto i = s.find_first(); i != RootSet::npos; i = s.find_next(i)) out.set(neg_[i]);
    return out;
}

std::vector<RootId> SimpleSystem::sorted() const {
    auto s = roots;
    std::sort(s.begin(), s.end());
    return s;
}

bool SimpleSystem::contains(RootId r) const {
    return std::find(roots.begin(), roots.end(), r) != roots.end();
}

int SimpleSystem::index_of(RootId r) const {
    auto it = std::find(roots.begin(), roots.end(), r);
    return it == roots.end() ? -1 : static_cast<int>(it - roots.begin());
}

SimpleSystem distinguished_simple_system(const FiniteRootSystem& sys) {
    return SimpleSystem{sys.distinguished()};
}

bool is_isotropic(const FiniteRootSystem& sys, const QVec& alpha) {
    return sys.is_isotropic(sys.require(alpha));
}

std::optional<std::vector<IVec>> base_coefficients(const FiniteRootSystem& sys,
                                                   const std::vector<RootId>& base) {
    const int k = sys.rank();
    if (static_cast<int>(base.size()) != k) return std::nullopt;
    QMat b(k, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) b(i, j) = sys.coeffs(base[j])[i];
    auto inv = linalg::inverse(b);
    if (!inv) return std::nullopt;
    std::vector<IVec> out(sys.size(), IVec(k));
    for (int r = 0; r < sys.size(); ++r) {
        QVec c(k);
        for (int i = 0; i < k; ++i) c(i) = sys.coeffs(r)[i];
        QVec x = *inv * c;
        bool pos = true, negv = true;
        for (int i = 0; i < k; ++i) {
            if (!is_integer(x(i))) return std::nullopt;
            out[r][i] = static_cast<int>(to_long(x(i)));
            pos = pos && out[r][i] >= 0;
            negv = negv && out[r][i] <= 0;
        }
        if (!pos && !negv) return std::nullopt;
    }
    return out;
}

bool is_base(const FiniteRootSystem& sys, const std::vector<RootId>& base) {
    return base_coefficients(sys, base).has_value();
}

RootSet positive_system(const FiniteRootSystem& sys, const SimpleSystem& base) {
    auto c = base_coefficients(sys, base.roots);
    if (!c) throw Error(ErrorCode::NotABase, "not a base");
    RootSet s(sys.size());
    for (int r = 0; r < sys.size(); ++r) {
        int t = 0;
        for (int v : (*c)[r]) t += v;
        if (t > 0) s.set(r);
    }
    return s;
}

int height(const FiniteRootSystem& sys, const SimpleSystem& base, RootId r) {
    auto c = base_coefficients(sys, base.roots);
    if (!c) throw Error(ErrorCode::NotABase, "not a base");
    int t = 0;
    for (int v : (*c)[r]) t += v;
    return t;
}

RootId highest_root(const FiniteRootSystem& sys, const SimpleSystem& base) {
    auto c = base_coefficients(sys, base.roots);
    if (!c) throw Error(ErrorCode::NotABase, "not a base");
    RootId best = kNoRoot;
    for (int r = 0; r < sys.size(); ++r) {
        bool dominates = true;
        for (int q = 0; q < sys.size() && dominates; ++q)
            for (int i = 0; i < sys.rank(); ++i)
                if ((*c)[q][i] > (*c)[r][i]) { dominates = false; break; }
        if (dominates) {
            best = r;
            break;
        }
    }
    if (best == kNoRoot) throw Error(ErrorCode::NotABase, "no highest root");
    return best;
}

std::string label_in_base(const FiniteRootSystem& sys, const SimpleSystem& base, RootId r) {
    auto c = base_coefficients(sys, base.roots);
    if (!c) throw Error(ErrorCode::NotABase, "not a base");
    std::string out;
    for (int i = 0; i < sys.rank(); ++i) {
        int v = (*c)[r][i];
        if (v == 0) continue;
        if (v < 0) out += "-";
        else if (!out.empty()) out += "+";
        if (std::abs(v) != 1) out += std::to_string(std::abs(v));
        out += "a" + std::to_string(i + 1);
    }
    return out;
}

RootSet additive_closure(const FiniteRootSystem& sys, const RootSet& x) {
    RootSet s = x;
    bool grown = true;
    while (grown) {
        grown = false;
        auto ids = members(s);
        for (RootId a : ids)
            for (RootId b : ids) {
                RootId c = sys.sum(a, b);
                if (c >= 0 && !s.test(c)) {
                    s.set(c);
                    grown = true;
                }
            }
    }
    return s;
}

std::vector<RootId> members(const RootSet& s) {
    std::vector<RootId> out;
    for (auto i = s.find_first(); i != RootSet::npos; i = s.find_next(i))
        out.push_back(static_cast<RootId>(i));
    return out;
}

RootSet make_set(const FiniteRootSystem& sys, const std::vector<RootId>& ids) {
    RootSet s(sys.size());
    for (RootId r : ids) s.set(r);
    return s;
}

}  // namespace lsa

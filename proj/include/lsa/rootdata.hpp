#pragma once

#include "lsa/errors.hpp"
#include "lsa/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lsa {

enum class Family { GL, SL, OSP, D21A, G3, F4 };

struct AlgebraFamily {
    Family family = Family::GL;
    int m = 0;
    int n = 0;
    Rational a = 0;

    std::string name() const;
    static AlgebraFamily gl(int m, int n) { return {Family::GL, m, n, 0}; }
    static AlgebraFamily sl(int m, int n) { return {Family::SL, m, n, 0}; }
    static AlgebraFamily osp(int m, int n) { return {Family::OSP, m, n, 0}; }
    static AlgebraFamily d21a(const Rational& a) { return {Family::D21A, 0, 0, a}; }
    static AlgebraFamily g3() { return {Family::G3, 0, 0, 0}; }
    static AlgebraFamily f4() { return {Family::F4, 0, 0, 0}; }
};

Family parse_family(const std::string& s);
std::string family_tag(Family f);

using RootId = int;
using RootSet = boost::dynamic_bitset<>;

inline constexpr RootId kNoRoot = -1;
inline constexpr RootId kZeroSum = -2;

enum class AlgebraType { TypeI, TypeII };

class FiniteRootSystem {
public:
    static FiniteRootSystem build(const AlgebraFamily& family);

    const AlgebraFamily& family() const { return family_; }
    int size() const { return static_cast<int>(roots_.size()); }
    int dim() const { return static_cast<int>(gram_.rows()); }
    int rank() const { return static_cast<int>(distinguished_.size()); }

    const QVec& root(RootId r) const { return roots_[r]; }
    const IVec& coeffs(RootId r) const { return coeffs_[r]; }
    bool is_odd(RootId r) const { return odd_[r]; }
    bool is_even(RootId r) const { return !odd_[r]; }
    bool is_isotropic(RootId r) const { return odd_[r] && norm_[r] == 0; }
    const Rational& norm(RootId r) const { return norm_[r]; }

    const QMat& gram() const { return gram_; }
    Rational form(const QVec& x, const QVec& y) const { return x.dot(gram_ * y); }
    const Rational& form(RootId x, RootId y) const { return forms_[x * size() + y]; }
    // alpha(h_beta)
    Rational coroot_pairing(RootId beta, RootId alpha) const;
    Rational coroot_pairing(RootId beta, const QVec& mu) const;

    std::optional<RootId> find(const QVec& v) const;
    RootId require(const QVec& v) const;
    RootId neg(RootId r) const { return neg_[r]; }
    RootId sum(RootId x, RootId y) const { return sum_[x * size() + y]; }
    RootId twice(RootId r) const { return twice_[r]; }

    const std::vector<RootId>& distinguished() const { return distinguished_; }
    const std::vector<std::string>& coordinate_names() const { return coord_names_; }
    std::string label(RootId r) const;
    std::string label(const QVec& v) const;

    // Gram matrix of the form on h*.
    QMat hstar_gram() const;
    AlgebraType type() const;

    RootSet empty_set() const { return RootSet(size()); }
    RootSet full_set() const { RootSet s(size()); s.set(); return s; }
    RootSet even_set() const;
    RootSet negate(const RootSet& s) const;

private:
    void finalize(std::vector<QVec> roots, std::vector<bool> odd, const std::vector<QVec>& base);

    AlgebraFamily family_;
    QMat gram_;
    std::vector<std::string> coord_names_;
    std::vector<QVec> roots_;
    std::vector<IVec> coeffs_;
    std::vector<bool> odd_;
    std::vector<Rational> norm_;
    std::vector<Rational> forms_;
    std::vector<RootId> neg_;
    std::vector<RootId> sum_;
    std::vector<RootId> twice_;
    std::vector<RootId> distinguished_;
};

struct SimpleSystem {
    std::vector<RootId> roots;

    std::vector<RootId> sorted() const;
    bool same_set(const SimpleSystem& o) const { return sorted() == o.sorted(); }
    bool contains(RootId r) const;
    int index_of(RootId r) const;
    bool operator==(const SimpleSystem& o) const { return roots == o.roots; }
};

SimpleSystem distinguished_simple_system(const FiniteRootSystem& sys);
bool is_isotropic(const FiniteRootSystem& sys, const QVec& alpha);

// Coefficients of every root over the base; nothing if the set is not a base.
std::optional<std::vector<IVec>> base_coefficients(const FiniteRootSystem& sys,
                                                   const std::vector<RootId>& base);
bool is_base(const FiniteRootSystem& sys, const std::vector<RootId>& base);
RootSet positive_system(const FiniteRootSystem& sys, const SimpleSystem& base);
RootId highest_root(const FiniteRootSystem& sys, const SimpleSystem& base);
int height(const FiniteRootSystem& sys, const SimpleSystem& base, RootId r);
std::string label_in_base(const FiniteRootSystem& sys, const SimpleSystem& base, RootId r);

// Closure of X under addition inside the root set.
RootSet additive_closure(const FiniteRootSystem& sys, const RootSet& x);
std::vector<RootId> members(const RootSet& s);
RootSet make_set(const FiniteRootSystem& sys, const std::vector<RootId>& ids);

}  // namespace lsa

#pragma once

#include "lsa/rootdata.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lsa {

using SystemPtr = std::shared_ptr<const FiniteRootSystem>;

// alpha + level*delta; fin == sys.size() encodes the imaginary direction.
struct AffineRoot {
    RootId fin = 0;
    long level = 0;
    bool operator==(const AffineRoot& o) const { return fin == o.fin && level == o.level; }
    bool operator<(const AffineRoot& o) const { return fin != o.fin ? fin < o.fin : level < o.level; }
};

enum class RootClass { Good, Bad, NotInP };
std::string class_name(RootClass c);

struct AffineStep {
    RootId root = 0;
    long level = 0;
    bool operator==(const AffineStep& o) const { return root == o.root && level == o.level; }
};

// Subset of the affine roots given by thresholds:
// P n (alpha + Z delta) = {alpha + n delta : n >= s(alpha)}, s(0) ranging over nonzero levels.
// A mirrored set is the negative of the set its thresholds describe.
class AffineSet {
public:
    AffineSet() = default;
    AffineSet(SystemPtr sys, std::vector<Thr> thresholds, bool mirrored = false);

    const FiniteRootSystem& sys() const { return *sys_; }
    const SystemPtr& sys_ptr() const { return sys_; }
    RootId zero() const { return sys_->size(); }
    Thr threshold(RootId fin) const { return s_[fin]; }
    const std::vector<Thr>& thresholds() const { return s_; }
    bool mirrored() const { return mirrored_; }

    bool contains(RootId fin, long level) const;
    bool contains(const AffineRoot& r) const { return contains(r.fin, r.level); }
    bool closed() const;
    // P u -P covers every root
    bool covers() const;
    bool is_partition() const;
    bool is_parabolic() const { return closed() && covers(); }
    AffineSet negated() const { return AffineSet(sys_, s_, !mirrored_); }

    std::vector<AffineRoot> materialize(long window) const;
    std::string label(const AffineRoot& r) const;

    bool operator==(const AffineSet& o) const { return s_ == o.s_ && mirrored_ == o.mirrored_; }

private:
    SystemPtr sys_;
    std::vector<Thr> s_;
    bool mirrored_ = false;
};

using AffinePartition = AffineSet;

std::vector<AffineRoot> affine_roots(const FiniteRootSystem& sys, long window);

AffinePartition partition_from(const SystemPtr& sys, const SimpleSystem& base, const std::vector<RootId>& X);
AffinePartition natural_partition(const SystemPtr& sys, const SimpleSystem& base);
AffinePartition standard_partition(const SystemPtr& sys, const SimpleSystem& base);
// Thresholds for every root; throws InvalidInput if they do not describe a partition.
AffinePartition make_partition(const SystemPtr& sys, std::vector<Thr> thresholds, bool mirrored = false);

RootClass classify_root(const AffinePartition& p, const AffineRoot& r);
AffinePartition reflect_affine(const AffinePartition& p, const AffineStep& step);
AffinePartition apply_affine_chain(const AffinePartition& p, const std::vector<AffineStep>& chain);

// Base of the finite partition P n (finite roots).
SimpleSystem finite_base(const AffinePartition& p);
// Simple roots with finite thresholds.
std::vector<RootId> good_simple_roots(const AffinePartition& p, const SimpleSystem& base);
// Sum of |s_alpha| over the closure of the good simple roots.
long good_defect(const AffinePartition& p, const SimpleSystem& base);

struct Descent {
    std::vector<AffineStep> chain;
    AffinePartition result;
    std::vector<long> defects;
};

Descent descent_to_standard_goods(const AffinePartition& p);

struct CanonicalForm {
    SimpleSystem base;
    std::vector<RootId> X;
    std::vector<AffineStep> chain;
    AffinePartition result;
};

CanonicalForm canonical_form_partition(const AffinePartition& p);

struct AffineParabolicSet {
    SimpleSystem base;
    std::vector<RootId> X;
    std::vector<RootId> S;
    bool delta_symmetric = false;
    std::vector<AffineStep> chain;
    AffineSet set;

    bool in_levi(const AffineRoot& r) const { return set.contains(r) && set.contains(negate(r)); }
    AffineRoot negate(const AffineRoot& r) const;
};

AffineParabolicSet make_affine_parabolic_set(const SystemPtr& sys, const SimpleSystem& base,
                                             const std::vector<RootId>& X, const std::vector<RootId>& S,
                                             bool delta_symmetric, const std::vector<AffineStep>& chain = {});

struct LeviComponent {
    std::vector<RootId> roots;
    std::string tag;
    bool sl11 = false;
};

struct LeviDecomposition {
    std::vector<LeviComponent> components;
    // complement of {h_alpha : alpha in S} in the Cartan, in Cartan coordinates
    std::vector<QVec> complement;
    std::vector<std::string> cartan_coordinates;
    bool orthogonal = false;
    bool commutes = true;
};

// Connected components under (alpha|beta) != 0.
std::vector<std::vector<RootId>> connected_components(const FiniteRootSystem& sys, const std::vector<RootId>& roots);
std::string component_tag(const FiniteRootSystem& sys, const std::vector<RootId>& component);
LeviDecomposition levi_structure(const AffineParabolicSet& ps);
bool borel_is_solvable(const FiniteRootSystem& sys, const SimpleSystem& base, const std::vector<RootId>& X);

struct TriangularDecomposition {
    std::vector<AffineRoot> u_minus;
    std::vector<AffineRoot> levi;
    std::vector<AffineRoot> u_plus;
};

TriangularDecomposition triangular_decomposition(const AffineParabolicSet& ps, long window);

inline constexpr long kDefaultWindow = 6;

}  // namespace lsa

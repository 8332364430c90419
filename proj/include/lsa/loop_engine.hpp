#pragma once

#include "lsa/parabolic_affine.hpp"
#include "lsa/rootdata.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lsa::engine {

inline constexpr int kMaxMatrixSize = 4;

// Finite part: gl(m,n) or sl(m,n) as super matrices. Basis = Cartan basis first, then E_ij in root order.
class LoopAlgebra {
public:
    static std::shared_ptr<const LoopAlgebra> build(const AlgebraFamily& family,
                                                    std::vector<QMat> cartan = {},
                                                    int max_size = kMaxMatrixSize);

    const AlgebraFamily& family() const { return family_; }
    const FiniteRootSystem& roots() const { return *roots_; }
    const SystemPtr& roots_ptr() const { return roots_; }
    int size() const { return family_.m + family_.n; }
    int dim() const { return static_cast<int>(elements_.size()); }
    int cartan_dim() const { return cartan_dim_; }
    bool is_cartan(int b) const { return b < cartan_dim_; }

    const QMat& element(int b) const { return elements_[b]; }
    bool odd(int b) const { return odd_[b]; }
    RootId root(int b) const { return b < cartan_dim_ ? kNoRoot : root_of_[b]; }
    int root_vector(RootId r) const { return vector_of_[r]; }
    // weight in the d/e coordinates (zero for Cartan elements)
    const IVec& weight(int b) const { return weight_[b]; }
    // mu(h_c) for a weight mu in d/e coordinates
    Rational eval(const IVec& mu, int c) const;
    Rational eval(const QVec& mu, int c) const;

    const std::vector<std::pair<int, Rational>>& bracket(int a, int b) const { return table_[a * dim() + b]; }
    const Rational& form(int a, int b) const { return forms_[a * dim() + b]; }

    // coordinates of a matrix in the basis; nothing if it is outside the algebra
    std::optional<QVec> coordinates(const QMat& x) const;
    QMat supercommutator(const QMat& x, const QMat& y, bool x_odd, bool y_odd) const;
    Rational supertrace(const QMat& x) const;
    std::string name(int b) const;

private:
    AlgebraFamily family_;
    SystemPtr roots_;
    int cartan_dim_ = 0;
    std::vector<QMat> elements_;
    std::vector<bool> odd_;
    std::vector<RootId> root_of_;
    std::vector<int> vector_of_;
    std::vector<IVec> weight_;
    std::vector<std::vector<std::pair<int, Rational>>> table_;
    std::vector<Rational> forms_;
    QMat coord_solver_;
};

using AlgebraPtr = std::shared_ptr<const LoopAlgebra>;

// Coroot [x_alpha, x_-alpha] as a diagonal matrix.
QMat coroot_matrix(const FiniteRootSystem& gl_roots, int m, RootId alpha);
std::vector<QMat> standard_cartan(const AlgebraFamily& family);
struct AdaptedCartan {
    std::vector<QMat> basis;  // h_alpha for alpha in X, then a basis of h_c
    int hx = 0;
    bool orthogonal = false;
};
AdaptedCartan adapted_cartan(const AlgebraFamily& family, const SimpleSystem& base, const std::vector<RootId>& X);

struct LoopTerm {
    int b = 0;
    long level = 0;
    auto operator<=>(const LoopTerm&) const = default;
};

// Linear combination of x(m), K and d.
struct LoopVector {
    std::map<LoopTerm, Rational> terms;
    Rational k = 0;
    Rational d = 0;

    static LoopVector basis(int b, long level);
    static LoopVector central();
    static LoopVector derivation();
    void add(const LoopTerm& t, const Rational& c);
    LoopVector& operator+=(const LoopVector& o);
    LoopVector operator*(const Rational& c) const;
    bool is_zero() const { return terms.empty() && k == 0 && d == 0; }
    bool operator==(const LoopVector& o) const { return terms == o.terms && k == o.k && d == o.d; }
    // 0 even, 1 odd, -1 mixed
    int parity(const LoopAlgebra& g) const;
};

inline LoopVector operator+(LoopVector a, const LoopVector& b) { return a += b; }

// z(m) for a homogeneous nonzero matrix z.
LoopVector loop_element(const LoopAlgebra& g, const QMat& z, long level);
LoopVector bracket(const LoopAlgebra& g, const LoopVector& x, const LoopVector& y);
Rational invariant_form(const LoopAlgebra& g, const LoopVector& x, const LoopVector& y);
std::string to_string(const LoopAlgebra& g, const LoopVector& x);

struct Weight {
    QVec h;
    Rational k = 0;
    Rational d = 0;

    const Rational& central_charge() const { return k; }
    static Weight zero(const LoopAlgebra& g) { return {QVec::Zero(g.cartan_dim()), 0, 0}; }
};

// Generator classes in PBW order: u- < m- < h < m+ < u+.
enum class GenClass : int { ULower = 0, MLower = 1, Cartan = 2, MUpper = 3, UUpper = 4, Absent = 5 };

inline bool is_lower(GenClass c) { return c == GenClass::ULower || c == GenClass::MLower; }
inline bool is_upper(GenClass c) { return c == GenClass::MUpper || c == GenClass::UUpper; }

// Assignment of every generator x_b(m) to a class.
class Split {
public:
    // Borel of P(base, X); m/u classes from the Levi of X.
    static Split levi(const LoopAlgebra& g, const SimpleSystem& base, const std::vector<RootId>& X);
    // Borel of an arbitrary affine partition; every lowering generator is of class u-.
    static Split partition(const LoopAlgebra& g, const AffinePartition& p);
    // Heisenberg loops on the given Cartan indices only.
    static Split fock(const LoopAlgebra& g, const std::vector<int>& cartan);
    // Keep only the Levi M (drop u) or only K (drop u and the h_c loops).
    Split restrict_levi() const;
    Split restrict_k(const std::vector<int>& hc) const;

    GenClass classify(int b, long level) const;
    const std::vector<RootId>& levi_roots() const { return levi_; }
    // (b, level) pairs of class m+ or u+ with |level| <= window generating every upper generator in the window
    std::vector<std::pair<int, long>> upper_generators(long window, bool levi_only = false) const;

private:
    enum class Mode { Levi, Partition, Fock } mode_ = Mode::Levi;
    const LoopAlgebra* g_ = nullptr;
    RootSet pos_, levi_set_;
    SimpleSystem base_;
    std::vector<RootId> levi_;
    std::optional<AffinePartition> p_;
    std::vector<bool> loops_;
    bool drop_u_ = false;
};

using Code = std::int64_t;
using Monomial = std::vector<Code>;
using ModVec = std::map<Monomial, Rational>;

struct WeightKey {
    IVec fin;
    long level = 0;
    auto operator<=>(const WeightKey&) const = default;
};

void add_to(ModVec& v, const Monomial& m, const Rational& c);
void add_to(ModVec& v, const ModVec& w, const Rational& c);

// U(lower) (x) C_lambda with the action computed by normal ordering.
class VermaModule {
public:
    VermaModule(AlgebraPtr g, Split split, Weight lambda);

    const LoopAlgebra& algebra() const { return *g_; }
    const AlgebraPtr& algebra_ptr() const { return g_; }
    const Split& split() const { return split_; }
    const Weight& highest_weight() const { return lambda_; }

    Code code(int b, long level) const;
    static int basis_of(Code c) { return static_cast<int>(c & 0xffff); }
    static long level_of(Code c) { return static_cast<long>((c >> 16) & 0xffffffff) - (1L << 31); }
    static GenClass class_of(Code c) { return static_cast<GenClass>(c >> 48); }
    bool odd(Code c) const { return g_->odd(basis_of(c)); }

    WeightKey weight(const Monomial& m) const;
    ModVec act(Code x, const Monomial& m);
    ModVec act(Code x, const ModVec& v);
    ModVec act(const LoopVector& x, const ModVec& v);
    std::size_t cache_size() const { return cache_.size(); }
    std::string monomial_name(const Monomial& m) const;

private:
    ModVec act_span(Code x, std::span<const Code> m);
    ModVec act_bracket(Code x, Code y, std::span<const Code> rest);
    Rational eigenvalue(int c, std::span<const Code> m) const;

    struct KeyHash {
        std::size_t operator()(const Monomial& k) const;
    };

    AlgebraPtr g_;
    Split split_;
    Weight lambda_;
    std::unordered_map<Monomial, ModVec, KeyHash> cache_;
};

struct Truncation {
    int max_depth = 3;
    // raising generators x(m) are taken with |m| <= raise_window (negative: max_depth)
    int raise_window = -1;
    std::size_t budget = 400000;

    int window() const { return raise_window < 0 ? max_depth : raise_window; }
};

enum class ModuleKind { VermaB, VermaM, VermaK, Fock, InducedP };
std::string kind_name(ModuleKind k);

// Weight spaces of N = M_M(lambda) or of its simple quotient.
class LeviSlice {
public:
    struct Space {
        std::vector<Monomial> monomials;
        std::map<Monomial, int> index;
        QMat q;               // coordinates in N, ker q = radical
        std::vector<int> lift; // q * e_{lift[i]} = e_i
        int dim() const { return static_cast<int>(q.rows()); }
    };

    LeviSlice(VermaModule& module, bool simple, const SimpleSystem& base);

    bool simple() const { return simple_; }
    const Space& space(const WeightKey& w);
    long filtration(const WeightKey& w) const;
    // weights of m- monomials of depth <= depth, with their minimal depth
    std::map<WeightKey, int> weights_up_to(int depth, const SimpleSystem& base);

private:
    std::vector<Monomial> enumerate(const WeightKey& w) const;

    VermaModule& module_;
    bool simple_;
    long scale_ = 1;
    QVec hf_;
    std::map<WeightKey, Space> spaces_;
};

int generator_depth(const LoopAlgebra& g, const SimpleSystem& base, int b, long level);

struct BasisElement {
    Monomial u;
    WeightKey nu;
    int index = 0;
    auto operator<=>(const BasisElement&) const = default;
};

struct SingularReport {
    WeightKey weight;  // mu - lambda
    int dim = 0;       // dimension of the truncated weight space
    int singular = 0;  // dimension of the kernel of the raising set
    std::vector<std::vector<std::pair<BasisElement, Rational>>> basis;
};

// U(u-) (x) N truncated by depth(u) + depth(nu) <= max_depth.
class TruncatedModule {
public:
    TruncatedModule(ModuleKind kind, AlgebraPtr g, Split split, Weight lambda, SimpleSystem base,
                    bool simple_levi, Truncation t);

    ModuleKind kind() const { return kind_; }
    const Truncation& truncation() const { return trunc_; }
    VermaModule& verma() { return *module_; }
    LeviSlice& levi() { return *slice_; }
    const SimpleSystem& base() const { return base_; }

    const std::map<WeightKey, std::vector<BasisElement>>& basis() const { return basis_; }
    int weight_dim(const WeightKey& w) const;
    std::size_t total_dim() const;
    int depth(const BasisElement& e);

    ModVec lift(const BasisElement& e);
    // coordinates of a Verma vector in the module (reduction modulo the Levi radical)
    std::map<BasisElement, Rational> project(const ModVec& v);
    // action that refuses to leave the truncation
    std::map<BasisElement, Rational> act(const LoopVector& x, const std::map<BasisElement, Rational>& v);
    std::vector<Code> raising_set();
    SingularReport singular_vectors(const WeightKey& w);
    std::vector<SingularReport> all_singular(bool skip_top = true);
    std::string element_name(const BasisElement& e);

private:
    void build();

    ModuleKind kind_;
    std::unique_ptr<VermaModule> module_;
    std::unique_ptr<LeviSlice> slice_;
    SimpleSystem base_;
    Truncation trunc_;
    std::map<WeightKey, int> nu_depth_;
    std::map<WeightKey, std::vector<BasisElement>> basis_;
};

// Module constructors. X is a subset of the base.
std::unique_ptr<TruncatedModule> verma_module(AlgebraPtr g, const SimpleSystem& base, const std::vector<RootId>& X,
                                              const Weight& lambda, const Truncation& t);
std::unique_ptr<TruncatedModule> verma_module(AlgebraPtr g, const AffinePartition& p, const Weight& lambda,
                                              const Truncation& t);
std::unique_ptr<TruncatedModule> levi_verma(AlgebraPtr g, const SimpleSystem& base, const std::vector<RootId>& X,
                                            const Weight& lambda, const Truncation& t);
std::unique_ptr<TruncatedModule> k_verma(AlgebraPtr g, const SimpleSystem& base, const std::vector<RootId>& X,
                                         const Weight& lambda, const Truncation& t);
std::unique_ptr<TruncatedModule> fock_module(AlgebraPtr g, const std::vector<int>& cartan, const Weight& lambda,
                                             const Truncation& t);
// M_P(N) with N = L_M(lambda) (simple) or N = M_M(lambda).
std::unique_ptr<TruncatedModule> induced_module(AlgebraPtr g, const SimpleSystem& base, const std::vector<RootId>& X,
                                                const Weight& lambda, bool simple_levi, const Truncation& t);

// dim M_B(lambda)_{lambda + w} for the Borel of P(base, X); nothing when infinite.
std::optional<long> verma_weight_dim(const LoopAlgebra& g, const SimpleSystem& base, const std::vector<RootId>& X,
                                     const QVec& fin, long level);

bool has_isotropic_singleton(const FiniteRootSystem& sys, const std::vector<RootId>& X);
bool pbw_factorization_check(const AlgebraFamily& family, const SimpleSystem& base, const std::vector<RootId>& X,
                             const QVec& lambda_h, const Rational& lambda_k, int depth);

struct SimplicityProbe {
    bool simple_at_truncation = true;
    std::vector<SingularReport> singular;
    std::size_t dim = 0;
};

SimplicityProbe probe_simplicity(TruncatedModule& m);

struct Tec1Witness {
    RootId gamma = kNoRoot;
    RootId result = kNoRoot;
    bool matrix_checked = false;
};

// alpha in Delta(u-) nonsimple; gamma in Delta(n+) with alpha + gamma in Delta(u-).
Tec1Witness tec1_witness(const FiniteRootSystem& sys, const SimpleSystem& base, const std::vector<RootId>& X,
                         RootId alpha);
// nonsimple roots of Delta(u-)
std::vector<RootId> tec1_candidates(const FiniteRootSystem& sys, const SimpleSystem& base,
                                    const std::vector<RootId>& X);

}  // namespace lsa::engine

#pragma once

#include "lsa/rootdata.hpp"

#include <cstddef>
#include <vector>

namespace lsa {

enum class ParabolicKind { Partition, ParabolicSet };

struct FiniteParabolic {
    RootSet roots;
    RootSet symmetric;
    ParabolicKind kind = ParabolicKind::Partition;

    bool operator==(const FiniteParabolic& o) const { return roots == o.roots; }
};

struct ParabolicDescriptor {
    SimpleSystem base;
    std::vector<RootId> R;
};

bool is_additively_closed(const FiniteRootSystem& sys, const RootSet& s);
// Validates closure and P u -P = all roots; throws NotParabolic.
FiniteParabolic finite_parabolic(const FiniteRootSystem& sys, const RootSet& s);

FiniteParabolic make_parabolic_set(const FiniteRootSystem& sys, const SimpleSystem& base,
                                   const std::vector<RootId>& R);
ParabolicDescriptor decompose_parabolic_set(const FiniteRootSystem& sys, const FiniteParabolic& p);
// Base of a partition: its indecomposable roots.
SimpleSystem partition_base(const FiniteRootSystem& sys, const FiniteParabolic& p);

// Reflects along simple roots outside P until the positive system lies in P.
// Optionally records |positive system \ P| after every step.
SimpleSystem descend_into(const FiniteRootSystem& sys, const RootSet& p, std::vector<std::size_t>* trace = nullptr);

bool contains_even_part(const FiniteRootSystem& sys, const FiniteParabolic& p);
AlgebraType classify_type(const FiniteRootSystem& sys);
bool is_distinguished(const FiniteRootSystem& sys, const SimpleSystem& base);

inline constexpr int kDefaultRootBudget = 20;

struct FiniteParabolicList {
    std::vector<FiniteParabolic> partitions;
    std::vector<FiniteParabolic> parabolic_sets;
};

FiniteParabolicList enumerate_finite_parabolics(const FiniteRootSystem& sys, int budget = kDefaultRootBudget);

}  // namespace lsa

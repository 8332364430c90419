#pragma once

#include "lsa/rootdata.hpp"

#include <cstddef>
#include <vector>

namespace lsa {

enum class ReflectionKind { OddIsotropic, Even, NonIsotropicOdd };

std::string kind_name(ReflectionKind k);

struct ReflectionStep {
    RootId root = kNoRoot;
    ReflectionKind kind = ReflectionKind::Even;
};

struct ReflectionChain {
    SimpleSystem source;
    SimpleSystem target;
    std::vector<ReflectionStep> steps;
};

ReflectionKind reflection_kind(const FiniteRootSystem& sys, RootId alpha);

SimpleSystem reflect_simple_system(const FiniteRootSystem& sys, const SimpleSystem& base, RootId alpha);
// Throws NotIsotropic when kind disagrees with alpha.
SimpleSystem reflect_simple_system(const FiniteRootSystem& sys, const SimpleSystem& base, RootId alpha,
                                   ReflectionKind kind);

SimpleSystem apply_chain(const FiniteRootSystem& sys, const SimpleSystem& base,
                         const std::vector<ReflectionStep>& steps);

// Every reflection applicable to base, sorted by (kind, root coordinates).
std::vector<ReflectionStep> applicable_reflections(const FiniteRootSystem& sys, const SimpleSystem& base);

inline constexpr std::size_t kDefaultBaseBudget = 1000000;

// Reflection closure of the distinguished base, sorted as root-id sets.
std::vector<SimpleSystem> enumerate_simple_systems(const FiniteRootSystem& sys,
                                                   std::size_t budget = kDefaultBaseBudget);

ReflectionChain reflection_chain(const FiniteRootSystem& sys, const SimpleSystem& from, const SimpleSystem& to,
                                 std::size_t budget = kDefaultBaseBudget);

std::string format_chain(const FiniteRootSystem& sys, const ReflectionChain& chain);

}  // namespace lsa

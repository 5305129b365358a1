#pragma once

#include <string>

#include "sofic/localstats.hpp"

namespace sofic {

enum class GroupId { kGrid, kFreeGroup, kSL3Z };

inline constexpr std::size_t kSL3ZMaxRadius = 4;

/// Balls of Cayley graphs for a closed set of test groups:
///   grid      Z^k with generators +-e_i          (2k-regular)
///   free      free group of rank k               (2k-regular tree)
///   sl3z      SL_3(Z) with the 12 transvections  (12-regular)
/// Generator labels are dropped: balls are plain rooted multigraphs.
class CayleyOracle {
 public:
  CayleyOracle(GroupId group, std::size_t rank);

  /// "grid:2", "free:3", "sl3z".
  static CayleyOracle parse(const std::string& spec);

  GroupId group() const { return group_; }
  std::size_t rank() const { return rank_; }
  std::size_t generator_count() const;
  std::string name() const;

  RootedBall ball(std::size_t radius) const;

 private:
  GroupId group_;
  std::size_t rank_;
};

/// Radius-r ball around the identity of SL_3(Z) with generators I +- E_ij,
/// i != j, by exact BFS over integer matrices. Throws InputError for
/// r > kSL3ZMaxRadius and Error on 64-bit overflow.
RootedBall sl3z_ball(std::size_t radius);

/// Fraction of vertices of g whose r-ball is not isomorphic to the oracle's.
Rational cayley_defect(const MultiGraph& g, const CayleyOracle& oracle, std::size_t radius,
                       std::size_t cap = kDefaultBallCap);

}  // namespace sofic

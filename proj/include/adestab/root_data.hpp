#pragma once

#include "adestab/matrix.hpp"
#include "adestab/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adestab {

enum class Series { A, D, E };

/// Dynkin type of the exceptional configuration. Validated on construction
/// through make_ade_type / parse_ade_type.
struct AdeType {
  Series series = Series::A;
  int rank = 1;

  friend bool operator==(const AdeType&, const AdeType&) = default;
};

/// Throws InvalidRank for illegal series/rank pairs (A>=1, D>=4, E in 6..8).
AdeType make_ade_type(Series series, int rank);

/// "A3", "D4", "E8" (case-insensitive series letter).
AdeType parse_ade_type(std::string_view text);
std::string to_string(const AdeType& type);

/// All legal types with rank <= max_rank, ordered A, D, E then by rank.
std::vector<AdeType> all_ade_types(int max_rank);

using Edge = std::pair<int, int>;

/// Configuration of the exceptional (-2)-curves C_1..C_n, stored 0-based.
///
/// Node order per series:
///   A_n: the path C_1 - C_2 - ... - C_n.
///   D_n: the trivalent node first, then the long tail walking away from it,
///        then the two short legs.
///   E_n: the trivalent node first, then the arms from longest to shortest,
///        each arm walking away from the centre.
struct AdeData {
  AdeType type;
  /// G[i][j] = C_i . C_j
  RatMatrix gram;
  std::vector<Edge> adjacency;
  /// Multiplicities of C_i in the fundamental cycle.
  std::vector<int> fund_cycle;

  int rank() const { return type.rank; }
  int fund_cycle_sum() const;
  /// Integer intersection number (sum a_i C_i) . C_j.
  long long pairing_with(const std::vector<int>& a, int j) const;
  /// Tree distance between nodes (0-based).
  int distance(int from, int to) const;
};

AdeData build_ade(const AdeType& type);

/// Gram and adjacency only; fund_cycle is left empty.
AdeData build_ade_configuration(const AdeType& type);

/// Artin's algorithm: start at (1,...,1) and bump any m_j with
/// (sum m_i C_i) . C_j > 0 until none remains. Throws NonTerminating after
/// 64 n increments, and InternalContradiction if the result does not square
/// to -2.
std::vector<int> fundamental_cycle(const AdeData& data);

struct InverseCertificate {
  RatMatrix inverse;
  bool all_negative = false;
};

InverseCertificate inverse_negativity_check(const AdeData& data);

/// Smallest k with a_k < 0 and C_k . (sum a_i C_i) > 0, or nullopt when a has
/// no negative entry. Throws InternalContradiction if a negative entry exists
/// but no such k does, and DimensionMismatch on a wrong-length vector.
std::optional<int> cartan_select(const AdeData& data, const RationalVector& a);

}  // namespace adestab

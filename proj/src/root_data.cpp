#include "adestab/root_data.hpp"

#include "adestab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <queue>

namespace adestab {

AdeType make_ade_type(Series series, int rank) {
  const bool ok = (series == Series::A && rank >= 1) || (series == Series::D && rank >= 4) ||
                  (series == Series::E && rank >= 6 && rank <= 8);
  if (!ok) {
    throw Error(ErrorKind::InvalidRank, "no ADE diagram of type " + to_string(AdeType{series, rank}));
  }
  return AdeType{series, rank};
}

AdeType parse_ade_type(std::string_view text) {
  if (text.size() < 2) throw Error(ErrorKind::Parse, "ADE type must look like A3, D4 or E8");
  Series series;
  switch (std::toupper(static_cast<unsigned char>(text.front()))) {
    case 'A': series = Series::A; break;
    case 'D': series = Series::D; break;
    case 'E': series = Series::E; break;
    default: throw Error(ErrorKind::Parse, "unknown ADE series in '" + std::string(text) + "'");
  }
  int rank = 0;
  const auto digits = text.substr(1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rank);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw Error(ErrorKind::Parse, "bad rank in ADE type '" + std::string(text) + "'");
  }
  return make_ade_type(series, rank);
}

std::string to_string(const AdeType& type) {
  const char letter = type.series == Series::A ? 'A' : type.series == Series::D ? 'D' : 'E';
  return std::string(1, letter) + std::to_string(type.rank);
}

std::vector<AdeType> all_ade_types(int max_rank) {
  std::vector<AdeType> out;
  for (int r = 1; r <= max_rank; ++r) out.push_back({Series::A, r});
  for (int r = 4; r <= max_rank; ++r) out.push_back({Series::D, r});
  for (int r = 6; r <= std::min(max_rank, 8); ++r) out.push_back({Series::E, r});
  return out;
}

namespace {

std::vector<Edge> dynkin_edges(const AdeType& t) {
  std::vector<Edge> edges;
  const int n = t.rank;
  // Appends an arm hanging off `root`, occupying nodes start..start+len-1.
  auto arm = [&edges](int root, int start, int len) {
    int prev = root;
    for (int k = 0; k < len; ++k) {
      edges.emplace_back(prev, start + k);
      prev = start + k;
    }
  };
  switch (t.series) {
    case Series::A:
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case Series::D: {
      const int tail = n - 3;
      arm(0, 1, tail);
      arm(0, 1 + tail, 1);
      arm(0, 2 + tail, 1);
      break;
    }
    case Series::E: {
      const int longest = n - 4;  // E6: 2, E7: 3, E8: 4
      arm(0, 1, longest);
      arm(0, 1 + longest, 2);
      arm(0, 3 + longest, 1);
      break;
    }
  }
  return edges;
}

}  // namespace

int AdeData::fund_cycle_sum() const {
  int s = 0;
  for (int m : fund_cycle) s += m;
  return s;
}

long long AdeData::pairing_with(const std::vector<int>& a, int j) const {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * gram(i, j).get_num().get_si();
  return s;
}

int AdeData::distance(int from, int to) const {
  const int n = rank();
  std::vector<int> dist(n, -1);
  std::queue<int> frontier;
  dist[from] = 0;
  frontier.push(from);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (const auto& [a, b] : adjacency) {
      const int v = a == u ? b : b == u ? a : -1;
      if (v >= 0 && dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist[to];
}

AdeData build_ade_configuration(const AdeType& type) {
  const AdeType t = make_ade_type(type.series, type.rank);
  AdeData data;
  data.type = t;
  data.adjacency = dynkin_edges(t);
  data.gram = RatMatrix(t.rank, t.rank);
  for (int i = 0; i < t.rank; ++i) data.gram(i, i) = -2;
  for (const auto& [a, b] : data.adjacency) {
    data.gram(a, b) = 1;
    data.gram(b, a) = 1;
  }
  return data;
}

AdeData build_ade(const AdeType& type) {
  AdeData data = build_ade_configuration(type);
  data.fund_cycle = fundamental_cycle(data);
  return data;
}

std::vector<int> fundamental_cycle(const AdeData& data) {
  const int n = data.rank();
  if (data.gram.rows() != static_cast<std::size_t>(n) || !data.gram.is_symmetric()) {
    throw Error(ErrorKind::DimensionMismatch, "Gram matrix does not match the rank");
  }
  std::vector<int> m(n, 1);
  const int cap = 8 * n * 8;
  int increments = 0;
  for (;;) {
    int bump = -1;
    for (int j = 0; j < n; ++j) {
      if (data.pairing_with(m, j) > 0) { bump = j; break; }
    }
    if (bump < 0) break;
    if (++increments > cap) {
      throw Error(ErrorKind::NonTerminating, "Artin's algorithm exceeded " + std::to_string(cap) + " increments");
    }
    ++m[bump];
  }
  long long square = 0;
  for (int j = 0; j < n; ++j) square += static_cast<long long>(m[j]) * data.pairing_with(m, j);
  if (square != -2) {
    throw Error(ErrorKind::InternalContradiction,
                "fundamental cycle squares to " + std::to_string(square) + ", expected -2");
  }
  return m;
}

InverseCertificate inverse_negativity_check(const AdeData& data) {
  InverseCertificate cert;
  cert.inverse = inverse(data.gram);
  cert.all_negative = true;
  for (std::size_t i = 0; i < cert.inverse.rows(); ++i)
    for (std::size_t j = 0; j < cert.inverse.cols(); ++j)
      if (cert.inverse(i, j) >= 0) cert.all_negative = false;
  return cert;
}

std::optional<int> cartan_select(const AdeData& data, const RationalVector& a) {
  const int n = data.rank();
  if (a.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::DimensionMismatch, "coefficient vector has the wrong length");
  }
  bool any_negative = false;
  for (int k = 0; k < n; ++k) {
    if (a[k] >= 0) continue;
    any_negative = true;
    Rational pairing = 0;
    for (int i = 0; i < n; ++i) pairing += a[i] * data.gram(k, i);
    if (pairing > 0) return k;
  }
  if (any_negative) {
    throw Error(ErrorKind::InternalContradiction, "no index with a_k < 0 and C_k . sum a_i C_i > 0");
  }
  return std::nullopt;
}

}  // namespace adestab

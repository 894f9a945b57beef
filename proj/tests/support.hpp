#pragma once

// Fixtures shared by the unit and acceptance suites.

#include <cstdint>
#include <optional>
#include <vector>

#include "pcpgap/cnf.hpp"
#include "pcpgap/pcpvec.hpp"
#include "pcpgap/protocol.hpp"
#include "pcpgap/rng.hpp"

namespace testsupport {

using namespace pcpgap;

inline cnf::ClauseSet random_set(std::size_t n, double density, Rng& rng) {
  cnf::ClauseSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.uniform(1'000'000) < static_cast<std::uint64_t>(density * 1'000'000)) s.insert(i);
  return s;
}

// Random disjoint pair: each element goes to A, B or neither.
inline std::pair<cnf::ClauseSet, cnf::ClauseSet> random_disjoint(std::size_t n, Rng& rng) {
  cnf::ClauseSet a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = rng.uniform(3);
    if (r == 0) a.insert(i);
    if (r == 1) b.insert(i);
  }
  return {a, b};
}

// Random pair sharing at least one element.
inline std::pair<cnf::ClauseSet, cnf::ClauseSet> random_intersecting(std::size_t n, Rng& rng) {
  auto a = random_set(n, 0.4, rng);
  auto b = random_set(n, 0.4, rng);
  const auto common = static_cast<std::size_t>(rng.uniform(n));
  a.insert(common);
  b.insert(common);
  return {a, b};
}

// prod_{i < rows} (x - i): every polynomial vanishing on the sample points
// is a multiple of this.
inline ff::Polynomial vanishing_poly(const protocol::ProtocolParams& p) {
  ff::Polynomial z = ff::Polynomial::constant(p.field, 1);
  for (std::size_t i = 0; i < p.rows(); ++i) z = z * ff::Polynomial::linear_root(p.field, static_cast<std::uint32_t>(i));
  return z;
}

// Every Phi = Z * g with deg g <= merlin_degree_bound - rows: exactly the
// messages that pass the vanishing check.
inline std::vector<protocol::MerlinMessage> vanishing_family(const protocol::ProtocolParams& p) {
  const auto z = vanishing_poly(p);
  const std::size_t gdeg = p.merlin_degree_bound() - p.rows();
  const std::size_t ncoef = gdeg + 1;
  std::vector<protocol::MerlinMessage> out;
  std::vector<std::uint32_t> g(ncoef, 0);
  while (true) {
    out.push_back({z * ff::Polynomial(p.field, g)});
    std::size_t i = 0;
    while (i < ncoef && ++g[i] == p.q()) g[i++] = 0;
    if (i == ncoef) break;
  }
  return out;
}

// Phi with at most two nonzero coefficients, degree within the bound.
inline std::vector<protocol::MerlinMessage> sparse_family(const protocol::ProtocolParams& p) {
  const std::size_t slots = p.merlin_degree_bound() + 1;
  std::vector<protocol::MerlinMessage> out;
  out.push_back({ff::Polynomial(p.field)});
  for (std::size_t i = 0; i < slots; ++i)
    for (std::uint32_t a = 1; a < p.q(); ++a) {
      std::vector<std::uint32_t> c(slots, 0);
      c[i] = a;
      out.push_back({ff::Polynomial(p.field, c)});
      for (std::size_t j = i + 1; j < slots; ++j)
        for (std::uint32_t b = 1; b < p.q(); ++b) {
          c[j] = b;
          out.push_back({ff::Polynomial(p.field, c)});
          c[j] = 0;
        }
    }
  return out;
}

// First seed >= start whose random formula has the wanted satisfiability.
inline cnf::CnfFormula formula_with(bool satisfiable, std::size_t n, std::size_t m, std::size_t k,
                                    std::uint64_t& seed) {
  while (true) {
    auto f = cnf::random_ksat(n, m, k, seed++);
    if (cnf::is_satisfiable(f) == satisfiable) return f;
  }
}

}  // namespace testsupport

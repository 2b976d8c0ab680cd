#include "cbd/scenarios.hpp"

#include <random>
#include <stdexcept>

namespace cbd {

namespace {

Content binary(std::string id) { return {std::move(id), kBinaryOutcomes}; }

Vector<Rational> flatten(const BinaryPmf& pmf) {
  Vector<Rational> v(4);
  v << pmf(0, 0), pmf(0, 1), pmf(1, 0), pmf(1, 1);
  return v;
}

void check_probability(const Rational& p) {
  if (p < 0 || p > 1) throw std::invalid_argument("probability " + to_string(p) + " outside [0, 1]");
}

constexpr std::array<std::array<const char*, 2>, 4> kCyclicPairs{{{"A1", "B1"}, {"B1", "A2"}, {"A2", "B2"}, {"B2", "A1"}}};

System cyclic4_from_pmfs(const std::array<BinaryPmf, 4>& pmfs) {
  std::vector<Content> contents{binary("A1"), binary("A2"), binary("B1"), binary("B2")};
  std::vector<Context> contexts;
  std::vector<Bunch> bunches;
  for (std::size_t k = 0; k < 4; ++k) {
    std::string id = "c" + std::to_string(k + 1);
    contexts.push_back({id, ""});
    bunches.emplace_back(id, std::vector<Content>{binary(kCyclicPairs[k][0]), binary(kCyclicPairs[k][1])},
                         flatten(pmfs[k]));
  }
  return System(std::move(contents), std::move(contexts), std::move(bunches));
}

BinaryPmf pmf_with_marginals(std::size_t first_plus, std::size_t second_plus, std::size_t both_plus, std::size_t d) {
  const Rational den(d);
  BinaryPmf pmf;
  pmf(0, 0) = Rational(both_plus) / den;
  pmf(0, 1) = Rational(first_plus - both_plus) / den;
  pmf(1, 0) = Rational(second_plus - both_plus) / den;
  pmf(1, 1) = Rational(d + both_plus - first_plus - second_plus) / den;
  return pmf;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  // Uniform over 2x2 grids with cells in multiples of 1/d.
  BinaryPmf free_pmf(std::size_t d) {
    for (;;) {
      std::size_t a = uniform(0, d), b = uniform(0, d), c = uniform(0, d);
      if (a + b + c > d) continue;
      BinaryPmf pmf;
      pmf << Rational(a, d), Rational(b, d), Rational(c, d), Rational(d - a - b - c, d);
      return pmf;
    }
  }

  // Uniform over 2x2 grids with the given Pr[first=+1] = a/d, Pr[second=+1] = b/d.
  BinaryPmf coupled_pmf(std::size_t a, std::size_t b, std::size_t d) {
    std::size_t lo = a + b > d ? a + b - d : 0;
    return pmf_with_marginals(a, b, uniform(lo, std::min(a, b)), d);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

System make_double_slit(const Rational& p1, const Rational& p2, const Rational& p3, const Rational& p4) {
  static const std::array<const char*, 4> labels{"both slits are closed", "only the left slit is open",
                                                 "only the right slit is open", "both slits are open"};
  const std::array<Rational, 4> p{p1, p2, p3, p4};
  std::vector<Context> contexts;
  std::vector<Bunch> bunches;
  for (std::size_t c = 0; c < 4; ++c) {
    check_probability(p[c]);
    std::string id = "c" + std::to_string(c + 1);
    contexts.push_back({id, labels[c]});
    Vector<Rational> pmf(2);
    pmf << p[c], Rational(1 - p[c]);
    bunches.emplace_back(id, std::vector<Content>{binary("hit")}, std::move(pmf));
  }
  return System({binary("hit")}, std::move(contexts), std::move(bunches));
}

Cyclic4Params Cyclic4Params::consistent(const std::array<Rational, 4>& correlations, const Rational& a1,
                                        const Rational& b1, const Rational& a2, const Rational& b2) {
  return {correlations, {a1, b1, b1, a2, a2, b2, b2, a1}};
}

System make_cyclic4(const Cyclic4Params& params) {
  std::array<BinaryPmf, 4> pmfs;
  for (std::size_t k = 0; k < 4; ++k) {
    const Rational& e = params.correlations[k];
    const Rational& ma = params.marginals[2 * k];
    const Rational& mb = params.marginals[2 * k + 1];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const int sa = i == 0 ? 1 : -1;
        const int sb = j == 0 ? 1 : -1;
        Rational cell = (1 + sa * ma + sb * mb + sa * sb * e) / 4;
        if (cell < 0)
          throw std::invalid_argument("correlation " + to_string(e) + " with marginals " + to_string(ma) + ", " +
                                      to_string(mb) + " gives a negative cell in context c" + std::to_string(k + 1));
        pmfs[k](i, j) = cell;
      }
  }
  return cyclic4_from_pmfs(pmfs);
}

System make_griffiths(const BinaryPmf& first, const BinaryPmf& second) {
  std::vector<Content> contents{binary("q1"), binary("q2"), binary("q3")};
  std::vector<Context> contexts{{"c1", ""}, {"c2", ""}};
  std::vector<Bunch> bunches;
  bunches.emplace_back("c1", std::vector<Content>{binary("q1"), binary("q2")}, flatten(first));
  bunches.emplace_back("c2", std::vector<Content>{binary("q2"), binary("q3")}, flatten(second));
  return System(std::move(contents), std::move(contexts), std::move(bunches));
}

System sample_random_system(const SystemShape& shape, unsigned denominator_bound, std::uint64_t seed) {
  if (denominator_bound < 2) throw std::invalid_argument("denominator bound must be at least 2");
  Sampler rng(seed);
  const std::size_t d = rng.uniform(2, denominator_bound);

  if (const auto* cyc = std::get_if<Cyclic4Shape>(&shape)) {
    // Pr[+1] numerators in pair order A1^1 B1^1 B1^2 A2^2 A2^3 B2^3 B2^4 A1^4
    std::array<std::size_t, 8> plus{};
    if (cyc->consistent) {
      std::size_t a1 = rng.uniform(0, d), b1 = rng.uniform(0, d), a2 = rng.uniform(0, d), b2 = rng.uniform(0, d);
      plus = {a1, b1, b1, a2, a2, b2, b2, a1};
    } else {
      for (auto& p : plus) p = rng.uniform(0, d);
    }
    std::array<BinaryPmf, 4> pmfs;
    for (std::size_t k = 0; k < 4; ++k) pmfs[k] = rng.coupled_pmf(plus[2 * k], plus[2 * k + 1], d);
    return cyclic4_from_pmfs(pmfs);
  }
  if (std::holds_alternative<GriffithsShape>(shape)) {
    BinaryPmf first = rng.free_pmf(d);
    BinaryPmf second = rng.free_pmf(d);
    return make_griffiths(first, second);
  }
  const auto& single = std::get<SingleContentShape>(shape);
  if (single.contexts == 0) throw std::invalid_argument("single-content shape needs at least one context");
  std::vector<Context> contexts;
  std::vector<Bunch> bunches;
  for (std::size_t c = 0; c < single.contexts; ++c) {
    std::string id = "c" + std::to_string(c + 1);
    contexts.push_back({id, ""});
    std::size_t k = rng.uniform(0, d);
    Vector<Rational> pmf(2);
    pmf << Rational(k, d), Rational(d - k, d);
    bunches.emplace_back(id, std::vector<Content>{binary("hit")}, std::move(pmf));
  }
  return System({binary("hit")}, std::move(contexts), std::move(bunches));
}

}  // namespace cbd

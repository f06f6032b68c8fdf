#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "tvo/errors.hpp"
#include "tvo/modular_from_tube.hpp"
#include "tvo/surgery.hpp"
#include "tvo/tube_algebra.hpp"

using namespace tvo;

namespace {

constexpr double kPhi = 1.6180339887498948482;

ModularData derive_double(const FusionSystem& fs) {
  TubeAlgebra tube(fs);
  CenterData center = compute_center(tube, 7);
  return modular_data_from_tube(tube, center);
}

const ModularData& fibonacci_double() {
  static const ModularData md = derive_double(fibonacci());
  return md;
}

const ModularData& ising_double() {
  static const ModularData md = derive_double(ising());
  return md;
}

const ModularData& pointed_double(int n, int k) {
  static std::map<std::pair<int, int>, ModularData> cache;
  auto it = cache.find({n, k});
  if (it == cache.end())
    it = cache.emplace(std::pair{n, k}, derive_double(vec_omega_cyclic(n, k)))
             .first;
  return it->second;
}

ModularData chiral_fibonacci() {
  ModularData md;
  md.name = "fibonacci-chiral";
  md.lambda = std::sqrt(2.0 + kPhi);
  md.labels = {"1", "tau"};
  md.S = Mat(2, 2);
  md.S << 1.0, kPhi, kPhi, -1.0;
  md.S /= md.lambda;
  md.t = Vec(2);
  md.t << 1.0, std::polar(1.0, 4.0 * kPi / 5.0);
  return md;
}

ModularData chiral_ising() {
  ModularData md;
  md.name = "ising-chiral";
  md.lambda = 2.0;
  md.labels = {"1", "sigma", "psi"};
  const double s = std::sqrt(2.0);
  md.S = Mat(3, 3);
  md.S << 0.5, s / 2.0, 0.5, s / 2.0, 0.0, -s / 2.0, 0.5, -s / 2.0, 0.5;
  md.t = Vec(3);
  md.t << 1.0, std::polar(1.0, kPi / 8.0), -1.0;
  return md;
}

// Fold a_1 - 1/(a_2 - ... - 1/a_n) back into an exact fraction.
std::pair<long long, long long> recompose(const std::vector<long long>& a) {
  __int128 num = a.back(), den = 1;
  for (int i = static_cast<int>(a.size()) - 2; i >= 0; --i) {
    const __int128 next_num = static_cast<__int128>(a[i]) * num - den;
    den = num;
    num = next_num;
  }
  return {static_cast<long long>(num), static_cast<long long>(den)};
}

long long inverse_mod(long long q, long long p) {
  long long r = 1;
  for (long long k = 0; k < p; ++k)
    if ((q * ((r = k + 1)) % p) == 1) return r;
  return 0;
}

}  // namespace

TEST_CASE("continued fractions expand known examples") {
  for (long long p = 2; p <= 9; ++p)
    CHECK(continued_fraction(p, 1) == std::vector<long long>{p});
  CHECK(continued_fraction(7, 2) == std::vector<long long>({4, 2}));
  CHECK(continued_fraction(5, 3) == std::vector<long long>({2, 3}));
  CHECK(continued_fraction(12, 5) == std::vector<long long>({3, 2, 3}));
}

TEST_CASE("continued fractions recompose exactly for every coprime pair") {
  for (long long p = 2; p <= 50; ++p)
    for (long long q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const auto a = continued_fraction(p, q);
      for (long long ai : a) CHECK(ai >= 2);
      const auto [np, nq] = recompose(a);
      CHECK(np == p);
      CHECK(nq == q);
    }
}

TEST_CASE("reversing the expansion inverts q modulo p") {
  for (long long p = 2; p <= 40; ++p)
    for (long long q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto a = continued_fraction(p, q);
      std::reverse(a.begin(), a.end());
      CHECK(a == continued_fraction(p, inverse_mod(q, p)));
    }
}

TEST_CASE("continued fractions reject invalid arguments") {
  CHECK_THROWS_AS(continued_fraction(4, 2), Error);   // not coprime
  CHECK_THROWS_AS(continued_fraction(3, 5), Error);   // q >= p
  CHECK_THROWS_AS(continued_fraction(5, 0), Error);   // q < 1
  CHECK_THROWS_AS(continued_fraction(-3, 1), Error);  // negative p
  try {
    continued_fraction(4, 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadInput);
  }
}

TEST_CASE("unknot chains take their normalised values") {
  const ModularData& md = fibonacci_double();
  CHECK_THROWS_AS(chain_invariant(md, {}), Error);
  try {
    chain_invariant(md, {});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyChain);
  }

  const cd s3 = s3_invariant(md);
  CHECK(std::abs(s3 - md.S(0, 0)) < 1e-9);
  CHECK(std::abs(s3 - chain_invariant(md, {1})) < 1e-15);
  CHECK(std::abs(chain_invariant(md, {-1}) - md.S(0, 0)) < 1e-9);
  CHECK(std::abs(s2xs1_invariant(md) - 1.0) < 1e-9);

  CHECK(std::abs(lens_invariant(md, 1, 0) - s3) < 1e-15);
  CHECK(std::abs(lens_invariant(md, 1, 1) - s3) < 1e-15);
  CHECK(std::abs(lens_invariant(md, 0, 1) - 1.0) < 1e-9);
}

TEST_CASE("closed forms match the chain evaluation on derived doubles") {
  const ModularData* duals[] = {&fibonacci_double(), &ising_double(),
                                &pointed_double(2, 0), &pointed_double(3, 1)};
  for (const ModularData* md : duals) {
    INFO("data ", md->name);
    for (long long p = -5; p <= 12; ++p)
      CHECK(std::abs(lens_closed_form_p1(*md, p) -
                     chain_invariant(*md, {p})) < 1e-9);
    for (long long p = 3; p <= 12; p += 2)
      CHECK(std::abs(lens_closed_form_p2(*md, p) -
                     chain_invariant(*md, continued_fraction(p, 2))) < 1e-9);
    for (long long p = 4; p <= 12; ++p) {
      if (p % 3 == 0) continue;
      CHECK(std::abs(lens_closed_form_p3(*md, p) -
                     chain_invariant(*md, continued_fraction(p, 3))) < 1e-9);
    }
  }
}

TEST_CASE("closed forms match the chain for random coprime pairs") {
  const ModularData& md = fibonacci_double();
  std::mt19937_64 rng(20240817u);
  int tried = 0;
  while (tried < 100) {
    const long long p = 2 + static_cast<long long>(rng() % 49);
    const long long q = 1 + static_cast<long long>(rng() % 3);
    if (q >= p || std::gcd(p, q) != 1) continue;
    ++tried;
    const cd via_chain = chain_invariant(md, continued_fraction(p, q));
    cd via_closed;
    if (q == 1)
      via_closed = lens_closed_form_p1(md, p);
    else if (q == 2)
      via_closed = lens_closed_form_p2(md, p);
    else
      via_closed = lens_closed_form_p3(md, p);
    INFO("p ", p, " q ", q);
    CHECK(std::abs(via_closed - via_chain) < 1e-9);
  }
}

TEST_CASE("closed forms reject the wrong residue class") {
  const ModularData md = chiral_ising();
  CHECK_THROWS_AS(lens_closed_form_p2(md, 4), Error);
  CHECK_THROWS_AS(lens_closed_form_p3(md, 6), Error);
  CHECK_THROWS_AS(lens_closed_form_p3(md, 9), Error);
  try {
    lens_closed_form_p2(md, 4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadCongruence);
  }
}

TEST_CASE("lens invariants of pointed doubles count flat connections") {
  for (int n = 2; n <= 5; ++n) {
    const ModularData& md = pointed_double(n, 0);
    INFO("group order ", n);
    for (long long p = 1; p <= 12; ++p)
      for (long long q = 0; q < std::max<long long>(p, 1); ++q) {
        if (p > 1 && (q < 1 || std::gcd(p, q) != 1)) continue;
        const double expected =
            static_cast<double>(std::gcd(p, static_cast<long long>(n))) / n;
        CHECK(std::abs(lens_invariant(md, p, q) - expected) < 1e-9);
      }
    CHECK(std::abs(s2xs1_invariant(md) - 1.0) < 1e-9);
    CHECK(std::abs(brieskorn_invariant(md, 2, 3, 5) - 1.0 / n) < 1e-9);
    CHECK(std::abs(brieskorn_invariant(md, 2, 3, 7) - 1.0 / n) < 1e-9);
  }
}

TEST_CASE("doubles factor as the squared modulus of chiral data") {
  struct Pair {
    ModularData chiral;
    const ModularData* dbl;
  };
  const Pair pairs[] = {{chiral_fibonacci(), &fibonacci_double()},
                        {chiral_ising(), &ising_double()}};
  for (const auto& [chiral, dbl] : pairs) {
    INFO("data ", chiral.name);
    CHECK(validate_verlinde_axioms(chiral).ok());
    for (long long p = 1; p <= 12; ++p)
      for (long long q = 1; q <= 3 && q < p; ++q) {
        if (std::gcd(p, q) != 1) continue;
        const cd z = lens_invariant(chiral, p, q);
        CHECK(std::abs(std::norm(z) - lens_invariant(*dbl, p, q)) < 1e-9);
      }
    const cd b = brieskorn_invariant(chiral, 2, 3, 5);
    CHECK(std::abs(std::norm(b) - brieskorn_invariant(*dbl, 2, 3, 5)) < 1e-9);
  }
}

TEST_CASE("twisted pointed doubles are chiral") {
  const ModularData& md = pointed_double(3, 1);
  const cd a = lens_invariant(md, 3, 1);
  const cd b = lens_invariant(md, 3, 2);
  CHECK(std::abs(a - b) > 1e-6);
  CHECK(std::abs(std::abs(a) - std::abs(b)) < 1e-9);
  // L(p, p-1) is L(p, 1) with reversed orientation.
  CHECK(std::abs(std::conj(a) - b) < 1e-9);
}

TEST_CASE("conjugate data evaluates to the conjugate invariant") {
  const std::vector<std::vector<long long>> chains = {
      {4, 2}, {2, 3}, {3, 2, 3}, {5}, {2, 2, 2}, {-2, 3, 0, 4}};
  for (const ModularData* md : {&fibonacci_double(), &pointed_double(3, 1)}) {
    const ModularData mirror = conjugate_data(*md);
    for (const auto& a : chains)
      CHECK(std::abs(chain_invariant(mirror, a) -
                     std::conj(chain_invariant(*md, a))) < 1e-12);
    CHECK(std::abs(brieskorn_invariant(mirror, 2, 3, 5) -
                   std::conj(brieskorn_invariant(*md, 2, 3, 5))) < 1e-12);
  }
}

TEST_CASE("star links with one or two legs reduce to chains") {
  for (const ModularData* md : {&fibonacci_double(), &ising_double()}) {
    const ModularData chiral = chiral_ising();
    for (long long q : {-2LL, 0LL, 1LL, 3LL})
      for (long long p : {-1LL, 2LL, 5LL}) {
        CHECK(std::abs(star_invariant(*md, q, {p}) -
                       chain_invariant(*md, {p, q})) < 1e-10);
        CHECK(std::abs(star_invariant(*md, q, {p, p + 1}) -
                       chain_invariant(*md, {p, q, p + 1})) < 1e-10);
        CHECK(std::abs(star_invariant(chiral, q, {p}) -
                       chain_invariant(chiral, {p, q})) < 1e-12);
      }
  }
}

TEST_CASE("the quadruple sum agrees with the three-legged star") {
  const long long triples[][3] = {{2, 3, 5}, {2, 3, 7}, {3, 4, 5}, {2, 5, 7}};
  for (const ModularData* md : {&pointed_double(3, 1), &ising_double()}) {
    for (const auto& t : triples)
      CHECK(std::abs(brieskorn_invariant(*md, t[0], t[1], t[2]) -
                     star_invariant(*md, 1, {t[0], t[1], t[2]})) < 1e-10);
  }
  const ModularData chiral = chiral_fibonacci();
  CHECK(std::abs(brieskorn_invariant(chiral, 2, 3, 5) -
                 star_invariant(chiral, 1, {2, 3, 5})) < 1e-12);
  CHECK_THROWS_AS(brieskorn_invariant(chiral, 1, 3, 5), Error);
  CHECK_THROWS_AS(star_invariant(chiral, 1, {}), Error);
}

TEST_CASE("colored hub values reassemble the star invariant") {
  for (const ModularData* md : {&pointed_double(2, 0)}) {
    const int r = md->rank();
    const std::vector<long long> legs = {2, 3, 5};
    const long long q = 1;
    cd total = 0.0;
    std::vector<int> colors(legs.size(), 0);
    for (int j = 0; j < r; ++j) {
      cd hub_sum = 0.0;
      // Sum over all leg colorings.
      const int combos = r * r * r;
      for (int c = 0; c < combos; ++c) {
        colors[0] = c % r;
        colors[1] = (c / r) % r;
        colors[2] = c / (r * r);
        cd term = j_star(*md, j, colors);
        for (size_t k = 0; k < legs.size(); ++k)
          term *= unit_pow(md->t(colors[k]), legs[k]) * md->S(colors[k], 0);
        hub_sum += term;
      }
      total += unit_pow(md->t(j), q) * md->S(j, 0) * hub_sum;
    }
    CHECK(std::abs(total - star_invariant(*md, q, legs)) < 1e-10);
  }
}

TEST_CASE("presentations describe themselves") {
  CHECK(SurgeryPresentation::chain({4, 2}).text() == "chain[4,2]");
  CHECK(SurgeryPresentation::chain({-1}).text() == "chain[-1]");
  CHECK(SurgeryPresentation::star(1, {2, 3, 5}).text() == "star(1;2,3,5)");
}

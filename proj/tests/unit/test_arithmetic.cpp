#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "corpus.hpp"
#include "qwalk/arithmetic.hpp"
#include "qwalk/error.hpp"

using namespace qwalk;
using std::numbers::pi;

namespace {

RatioOutcome vertex_ratio(const Graph& g, int a) {
  const auto d = spectral_decompose(hermitian_matrix(g));
  const auto b = block_decompose(vertex_state(g.order(), a), d);
  return ratio_condition(b.support, d.eigenvalues());
}

}  // namespace

TEST_SUITE("arithmetic") {
  TEST_CASE("rational approximation") {
    const auto half = rational_approx(0.5, 1'000'000, 1e-9);
    REQUIRE(half);
    CHECK(half->p == 1);
    CHECK(half->q == 2);
    CHECK(half->residual == 0.0);
    const auto two = rational_approx(2.0, 1'000'000, 1e-9);
    REQUIRE(two);
    CHECK(two->p == 2);
    CHECK(two->q == 1);
    CHECK_FALSE(rational_approx(std::sqrt(2.0), 1'000'000, 1e-9));
    CHECK_FALSE(rational_approx(pi, 1'000'000, 1e-9));
    const auto third = rational_approx(-1.0 / 3.0, 1'000'000, 1e-9);
    REQUIRE(third);
    CHECK(third->p == -1);
    CHECK(third->q == 3);
    CHECK_THROWS_AS(rational_approx(1.0, 0, 1e-9), InvalidArgument);
  }

  TEST_CASE("square-free split") {
    auto s = squarefree_part(12);
    CHECK(s.root == 2);
    CHECK(s.core == 3);
    s = squarefree_part(1);
    CHECK(s.root == 1);
    CHECK(s.core == 1);
    s = squarefree_part(18);
    CHECK(s.root == 3);
    CHECK(s.core == 2);
    s = squarefree_part(1'000'000'007ULL * 4);
    CHECK(s.root == 2);
    CHECK(s.core == 1'000'000'007ULL);
    CHECK_THROWS_AS(squarefree_part(0), InvalidArgument);
  }

  TEST_CASE("ratio condition certificates") {
    const auto k2 = vertex_ratio(testing::complete_graph(2), 0);
    REQUIRE(k2.status == RatioStatus::certified);
    CHECK(k2.certificate->delta == 1);
    CHECK(k2.certificate->g == 2);
    CHECK(k2.certificate->multipliers.at({0, 1}) == 2);
    CHECK(k2.certificate->multipliers.at({1, 0}) == -2);

    const auto p3 = vertex_ratio(testing::path_graph(3), 0);
    REQUIRE(p3.status == RatioStatus::certified);
    CHECK(p3.certificate->delta == 2);
    CHECK(p3.certificate->g == 1);
    std::multiset<long long> magnitudes;
    for (const auto& [pair, m] : p3.certificate->multipliers)
      if (pair.first < pair.second) magnitudes.insert(std::abs(m));
    CHECK(magnitudes == std::multiset<long long>{1, 1, 2});

    const auto star = vertex_ratio(testing::star_graph(3), 0);
    REQUIRE(star.status == RatioStatus::certified);
    CHECK(star.certificate->delta == 3);
    CHECK(star.certificate->g == 2);
  }

  TEST_CASE("ratio condition failure across components") {
    // K2 + P3 with the state (D0 + D2) / 2 sees the gaps 2 and sqrt(2).
    const Graph g(5, {{0, 1}, {2, 3}, {3, 4}});
    const auto d = spectral_decompose(hermitian_matrix(g));
    CMatrix m = CMatrix::Zero(5, 5);
    m(0, 0) = m(2, 2) = 0.5;
    const auto b = block_decompose(DensityMatrix::from_matrix(m), d);
    const auto out = ratio_condition(b.support, d.eigenvalues());
    REQUIRE(out.status == RatioStatus::failed);
    REQUIRE(out.witness);
    const double r = std::abs(out.witness->ratio);
    const bool sqrt2_family = std::abs(r - std::sqrt(2.0)) < 1e-9 || std::abs(r - 1 / std::sqrt(2.0)) < 1e-9 ||
                              std::abs(r - 2 * std::sqrt(2.0)) < 1e-9 || std::abs(r - 1 / (2 * std::sqrt(2.0))) < 1e-9;
    CHECK(sqrt2_family);
  }

  TEST_CASE("ratio route for non-integer spectra") {
    // Differences 1 and 0.5: rational ratio, squares not integers.
    const EigenvalueSupport support({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
    const std::vector<double> theta = {1.0, 0.5, 0.0};
    const auto out = ratio_condition(support, theta);
    CHECK(out.status == RatioStatus::inconclusive);
    REQUIRE(out.fundamental);
    CHECK(*out.fundamental == doctest::Approx(0.5));

    const std::vector<double> irrational = {1.0 + std::sqrt(0.5), 1.0, 0.0};
    CHECK(ratio_condition(support, irrational).status == RatioStatus::failed);
  }

  TEST_CASE("stationary support") {
    const EigenvalueSupport diag({{0, 0}, {1, 1}});
    const std::vector<double> theta = {1.0, -1.0};
    CHECK(ratio_condition(diag, theta).status == RatioStatus::stationary);
  }

  TEST_CASE("minimum period and the transfer time bound") {
    RatioCertificate cert;
    cert.delta = 1;
    cert.g = 2;
    CHECK(minimum_period(cert) == doctest::Approx(pi));
    cert.delta = 2;
    cert.g = 1;
    CHECK(minimum_period(cert) == doctest::Approx(pi * std::sqrt(2.0)));
    cert.delta = 3;
    cert.g = 2;
    CHECK(minimum_period(cert) == doctest::Approx(pi / std::sqrt(3.0)));
    cert.g = 0;
    CHECK_THROWS_AS(minimum_period(cert), InvalidArgument);

    auto bound = [](const Graph& g) { return pst_time_lower_bound(spectral_decompose(hermitian_matrix(g))); };
    CHECK(bound(testing::complete_graph(2)) == doctest::Approx(pi / 2));
    CHECK(bound(testing::path_graph(3)) == doctest::Approx(pi / (2 * std::sqrt(2.0))));
    CHECK(bound(testing::star_graph(3)) == doctest::Approx(pi / (2 * std::sqrt(3.0))));
    CHECK_THROWS_AS(bound(Graph(2, {})), InvalidArgument);
  }

  TEST_CASE("certificate soundness and the rational period bound over the corpus") {
    for (const Graph& g : testing::graph_corpus(6)) {
      const auto d = spectral_decompose(hermitian_matrix(g));
      for (int a = 0; a < g.order(); ++a) {
        const auto b = block_decompose(vertex_state(g.order(), a), d);
        const auto out = ratio_condition(b.support, d.eigenvalues());
        if (out.status != RatioStatus::certified) continue;
        const auto& cert = *out.certificate;
        const double root = std::sqrt(static_cast<double>(cert.delta));
        for (const auto& [r, s] : b.support.off_diagonal()) {
          const long long m = cert.multipliers.at({r, s});
          CHECK(m != 0);
          CHECK(cert.multipliers.at({s, r}) == -m);
          CHECK(std::abs(d.eigenvalues()[r] - d.eigenvalues()[s] - m * root) <= 1e-7);
        }
        CHECK(squarefree_part(static_cast<std::uint64_t>(cert.delta)).root == 1);
        CHECK(minimum_period(cert) <= 2 * pi + 1e-9);
      }
    }
  }
}

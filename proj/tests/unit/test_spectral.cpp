#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corpus.hpp"
#include "qwalk/error.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/spectral.hpp"

using namespace qwalk;
using std::numbers::pi;

namespace {

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

SpectralDecomposition of(const Graph& g) { return spectral_decompose(hermitian_matrix(g)); }
SpectralDecomposition of(const OrientedGraph& g) { return spectral_decompose(hermitian_matrix(g)); }

void check_invariants(const SpectralDecomposition& d) {
  const int n = d.order();
  const double tol = n * d.tolerance() * std::max(1.0, d.norm());
  CMatrix sum = CMatrix::Zero(n, n);
  CMatrix weighted = CMatrix::Zero(n, n);
  int mult = 0;
  for (int r = 0; r < d.size(); ++r) {
    const CMatrix& e = d.idempotents()[r];
    sum += e;
    weighted += d.eigenvalues()[r] * e;
    mult += d.multiplicities()[r];
    CHECK((e - e.adjoint()).norm() <= tol);
    CHECK(std::abs(e.trace() - cplx(d.multiplicities()[r], 0)) <= tol);
    for (int s = 0; s < d.size(); ++s) {
      const CMatrix expected = r == s ? e : CMatrix::Zero(n, n);
      CHECK((e * d.idempotents()[s] - expected).norm() <= tol);
    }
    if (r > 0) CHECK(d.eigenvalues()[r] < d.eigenvalues()[r - 1]);
  }
  CHECK(mult == n);
  CHECK((sum - CMatrix::Identity(n, n)).norm() <= tol);
  CHECK((weighted - d.source()).norm() <= tol * (1 + d.norm()));
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("K2 by hand") {
    const auto d = of(testing::complete_graph(2));
    REQUIRE(d.size() == 2);
    CHECK(d.eigenvalues()[0] == doctest::Approx(1.0));
    CHECK(d.eigenvalues()[1] == doctest::Approx(-1.0));
    CMatrix e1(2, 2), e2(2, 2);
    e1 << 0.5, 0.5, 0.5, 0.5;
    e2 << 0.5, -0.5, -0.5, 0.5;
    CHECK(max_abs_diff(d.idempotents()[0], e1) <= 1e-12);
    CHECK(max_abs_diff(d.idempotents()[1], e2) <= 1e-12);
    CHECK(d.real_source());
  }

  TEST_CASE("P3 and oriented C3 spectra") {
    const auto p3 = of(testing::path_graph(3));
    REQUIRE(p3.size() == 3);
    CHECK(p3.eigenvalues()[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(p3.eigenvalues()[1]) <= 1e-12);
    CHECK(p3.multiplicities() == std::vector<int>{1, 1, 1});

    const auto c3 = of(testing::directed_cycle(3));
    REQUIRE(c3.size() == 3);
    CHECK(c3.eigenvalues()[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(c3.eigenvalues()[2] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
    CHECK_FALSE(c3.real_source());
  }

  TEST_CASE("multiplicities are grouped") {
    const auto k4 = of(testing::complete_graph(4));
    REQUIRE(k4.size() == 2);
    CHECK(k4.multiplicities() == std::vector<int>{1, 3});
    CHECK_FALSE(k4.ambiguous());
  }

  TEST_CASE("preconditions") {
    CMatrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(spectral_decompose(bad), InvalidArgument);
    CHECK_THROWS_AS(spectral_decompose(CMatrix::Zero(2, 3)), InvalidArgument);
    CHECK_THROWS_AS(spectral_decompose(CMatrix::Zero(4, 4), 1e-9, 3), InvalidArgument);
  }

  TEST_CASE("near-threshold gaps raise an ambiguity warning") {
    CMatrix h = CMatrix::Zero(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = 1.0 + 5e-9;
    const auto d = spectral_decompose(h);
    CHECK(d.ambiguous());
  }

  TEST_CASE("transition matrix") {
    const auto k2 = of(testing::complete_graph(2));
    const CMatrix a = hermitian_matrix(testing::complete_graph(2));
    CHECK(max_abs_diff(transition_matrix(k2, pi / 2), cplx(0, 1) * a) <= 1e-12);
    CHECK(max_abs_diff(transition_matrix(k2, 0.0), CMatrix::Identity(2, 2)) <= 1e-15);

    const auto c3 = of(testing::directed_cycle(3));
    const CMatrix u = transition_matrix(c3, 2 * pi / std::sqrt(3.0));
    CHECK(max_abs_diff(u, CMatrix::Identity(3, 3)) <= 1e-9);
    CHECK(u.imag().cwiseAbs().maxCoeff() <= 1e-12);
  }

  TEST_CASE("vertex spectral relations") {
    const auto k2 = of(testing::complete_graph(2));
    auto rel = vertex_spectral_relation(k2, 0, 1);
    CHECK(rel.kind == VertexRelation::Kind::strongly_cospectral);
    CHECK(rel.signs == std::vector<int>{1, -1});

    const auto p3 = of(testing::path_graph(3));
    rel = vertex_spectral_relation(p3, 0, 2);
    CHECK(rel.kind == VertexRelation::Kind::strongly_cospectral);
    CHECK(rel.signs == std::vector<int>{1, -1, 1});
    CHECK(vertex_spectral_relation(p3, 0, 1).kind == VertexRelation::Kind::unrelated);
    CHECK_THROWS_AS(vertex_spectral_relation(p3, 1, 1), InvalidArgument);
  }

  TEST_CASE("interlacing") {
    const std::vector<int> ends = {0, 2};
    CHECK(interlacing_check(hermitian_matrix(testing::path_graph(3)), ends));
    const std::vector<int> pair = {0, 1};
    CHECK(interlacing_check(hermitian_matrix(testing::directed_cycle(3)), pair));
    const std::vector<int> all = {0, 1, 2};
    CHECK_THROWS_AS(interlacing_check(hermitian_matrix(testing::path_graph(3)), all), InvalidArgument);
    for (const Graph& g : testing::graphs_on(5)) {
      const std::vector<int> subset = {0, 2, 3};
      CHECK(interlacing_check(hermitian_matrix(g), subset));
    }
  }

  TEST_CASE("decomposition invariants over the corpus") {
    for (const Graph& g : testing::graph_corpus(6)) check_invariants(of(g));
    for (const auto& o : testing::oriented_corpus()) check_invariants(of(o.graph));
  }

  TEST_CASE("unitarity, group law and oracle equivalence") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    std::vector<CMatrix> sources;
    for (const auto& named : testing::named_graphs()) sources.push_back(hermitian_matrix(named.graph));
    sources.push_back(hermitian_matrix(testing::directed_cycle(5)));
    for (const CMatrix& h : sources) {
      const auto d = spectral_decompose(h);
      const int n = d.order();
      const double tol = n * 1e-9;
      for (int i = 0; i < 20; ++i) {
        const double t = time(rng);
        const double s = time(rng);
        const CMatrix u = transition_matrix(d, t);
        CHECK((u * u.adjoint() - CMatrix::Identity(n, n)).norm() <= tol);
        CHECK((transition_matrix(d, t + s) - u * transition_matrix(d, s)).norm() <= tol);
        CHECK((u - oracle::walk_matrix(h, t)).norm() <= 1e-8);
      }
    }
  }

  TEST_CASE("oriented spectra: bound and conjugate pairing") {
    for (const auto& o : testing::oriented_corpus()) {
      const auto d = of(o.graph);
      const int delta = graph_stats(o.graph).max_valency;
      for (double theta : d.eigenvalues()) CHECK(std::abs(theta) <= delta + 1e-9);
      for (int r = 0; r < d.size(); ++r) {
        const int mirror = d.size() - 1 - r;
        CHECK(d.eigenvalues()[mirror] == doctest::Approx(-d.eigenvalues()[r]).epsilon(1e-9));
        CHECK((d.idempotents()[mirror] - d.idempotents()[r].conjugate()).norm() <= d.order() * 1e-9);
      }
    }
  }

  TEST_CASE("natural orientation mirrors the graph walk in modulus") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    for (const Graph& g : testing::graph_corpus(6)) {
      const auto parts = bipartition(g);
      if (!parts) continue;
      const auto dg = of(g);
      const auto doriented = of(natural_orientation(g, *parts));
      for (int i = 0; i < 3; ++i) {
        const double t = time(rng);
        CHECK((transition_matrix(dg, t).cwiseAbs() - transition_matrix(doriented, t).cwiseAbs()).cwiseAbs().maxCoeff() <=
              1e-9);
      }
    }
  }
}

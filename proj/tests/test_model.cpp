#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hopspin/model.hpp"
#include "test_support.hpp"

using namespace hopspin;
using namespace hopspin::testing;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::vector<ModelSpec> all_presets() {
  std::vector<ModelSpec> specs;
  for (int n : {2, 3}) {
    for (double eta : {0.0, 1.0, 10.0}) {
      specs.push_back(ModelSpec::xy(n, eta));
      specs.push_back(ModelSpec::heisenberg(n, eta));
      ModelSpec custom;
      custom.n_sites = n;
      custom.eta = eta;
      custom.j_xy = 0.7;
      custom.j_z = -0.3;
      specs.push_back(custom);
    }
  }
  return specs;
}

std::vector<ComplexMatrix> all_hamiltonians(const ModelSpec& spec) {
  std::vector<ComplexMatrix> hs{build_hamiltonian(spec)};
  if (spec.n_sites == 2) {
    hs.push_back(build_effective_hamiltonian(spec, EffectiveVariant::two_site));
  } else {
    hs.push_back(build_effective_hamiltonian(spec, EffectiveVariant::three_site_projector));
    hs.push_back(build_effective_hamiltonian(spec, EffectiveVariant::three_site_middle_start));
  }
  return hs;
}

// Spin-space vector (8 amplitudes, e major) placed on one site.
StateVector on_site(const BasisLayout& layout, int label, const StateVector& spins) {
  return kron(StateVector::basis(static_cast<std::size_t>(layout.n_sites()), layout.position(label)),
              spins);
}

StateVector spins(Spin e, StaticPreset s) {
  return kron(StateVector::basis(2, static_cast<std::size_t>(e)), static_spin_state(s));
}

// Multiset equality of sorted spectra.
void check_spectrum(const ComplexMatrix& h, const std::vector<double>& expected, double tol) {
  const auto eig = hermitian_eigensystem(h);
  REQUIRE(eig.values.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(std::abs(eig.values[k] - expected[k]) <= tol);
}

}  // namespace

TEST_CASE("ModelSpec validation") {
  CHECK_NOTHROW(ModelSpec::xy(2, 10.0).validate());
  CHECK_NOTHROW(ModelSpec::heisenberg(3, 10.0).validate());

  auto bad = ModelSpec::xy(2, 1.0);
  bad.n_sites = 4;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("n_sites"), std::invalid_argument);

  bad = ModelSpec::xy(2, -1.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = ModelSpec::xy(3, 1.0);
  bad.attachments = {2, 2};
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("distinct"), std::invalid_argument);

  bad = ModelSpec::xy(2, 1.0);
  bad.attachments = {1, 0};  // no middle site on two sites
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = ModelSpec::heisenberg(2, 1.0);
  bad.j_z = 3.0;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("j_z = 2 * j_xy"), std::invalid_argument);

  bad = ModelSpec::xy(2, 1.0);
  bad.j_z = 0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK(ModelSpec::heisenberg(2, 10.0, 2.0).energy_unit() == 2.0);
  CHECK(ModelSpec::heisenberg(2, 10.0, 2.0).j_xy == 1.0);
  CHECK(ModelSpec::xy(2, 10.0, 0.5).eta_over_j() == 20.0);
}

TEST_CASE("BasisLayout") {
  for (int n : {2, 3}) {
    const BasisLayout layout(n);
    CHECK(layout.dim() == 8u * static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < layout.dim(); ++idx) {
      CHECK(layout.encode(layout.decode(idx)) == idx);
    }
    for (std::size_t p = 0; p < static_cast<std::size_t>(n); ++p) {
      CHECK(layout.position(layout.label(p)) == p);
    }
  }
  CHECK(BasisLayout(2).labels() == std::vector<int>{1, 2});
  CHECK(BasisLayout(3).labels() == std::vector<int>{1, 0, 2});
  CHECK(BasisLayout(3).encode({1, Spin::down, Spin::up, Spin::down}) == 8 + 4 + 0 + 1);
  CHECK_THROWS_AS(BasisLayout(2).position(0), std::invalid_argument);
  CHECK_THROWS_AS(BasisLayout(4), std::invalid_argument);
}

TEST_CASE("SpinOperatorSet algebra") {
  for (int n : {2, 3}) {
    const BasisLayout layout(n);
    const SpinOperatorSet ops(layout);
    CHECK(ops.sigma_plus == ops.sigma_minus.adjoint());
    CHECK(ops.s_plus[0] == ops.s_minus[0].adjoint());
    CHECK(max_abs(commutator(ops.sigma_z, ops.s_z[0])) == 0.0);
    CHECK(max_abs(commutator(ops.sigma_plus, ops.s_minus[1])) == 0.0);
    CHECK(max_abs(commutator(ops.s_plus[0], ops.s_minus[1])) == 0.0);
    // [S+, S-] = 2 Sz on the same spin.
    CHECK(max_abs_difference(commutator(ops.s_plus[0], ops.s_minus[0]), 2.0 * ops.s_z[0]) == 0.0);

    // S12^2 eigenvalues: 2 on the triplet, 0 on the singlet.
    const auto s12 = ops.static_total_spin_squared();
    const auto triplet = on_site(layout, 1, spins(Spin::up, StaticPreset::psi_plus));
    const auto singlet = on_site(layout, 1, spins(Spin::down, StaticPreset::psi_minus));
    CHECK(state_distance(s12 * triplet, 2.0 * triplet) < 1e-15);
    CHECK(state_distance(s12 * singlet, StateVector(layout.dim())) < 1e-15);
  }
}

TEST_CASE("build_hopping") {
  CHECK(max_abs(build_hopping(ModelSpec::xy(2, 0.0))) == 0.0);

  SUBCASE("two sites: spectrum {-eta, +eta}, 8-fold each") {
    std::vector<double> expected(8, -1.0);
    expected.resize(16, 1.0);
    check_spectrum(build_hopping(ModelSpec::xy(2, 1.0)), expected, 1e-12);
  }
  SUBCASE("three sites: spectrum {-sqrt2 eta, 0, +sqrt2 eta}, 8-fold each") {
    std::vector<double> expected(8, -kSqrt2);
    expected.resize(16, 0.0);
    expected.resize(24, kSqrt2);
    check_spectrum(build_hopping(ModelSpec::xy(3, 1.0)), expected, 1e-12);
  }
  SUBCASE("acts as identity on spins") {
    const auto h = build_hopping(ModelSpec::xy(3, 2.0));
    const BasisLayout layout(3);
    for (std::size_t r = 0; r < layout.dim(); ++r) {
      for (std::size_t c = 0; c < layout.dim(); ++c) {
        if (r % 8 != c % 8) CHECK(h(r, c) == Complex{});
      }
    }
    CHECK(h(layout.encode({0, Spin::up, Spin::down, Spin::up}),
            layout.encode({1, Spin::up, Spin::down, Spin::up})) == Complex(2.0));
    // Sites 1 and 2 are not adjacent on three sites.
    CHECK(h(layout.encode({0, Spin::up, Spin::up, Spin::up}),
            layout.encode({2, Spin::up, Spin::up, Spin::up})) == Complex{});
  }
}

TEST_CASE("build_interaction") {
  ModelSpec zero;
  zero.n_sites = 2;
  CHECK(max_abs(build_interaction(zero)) == 0.0);

  const BasisLayout two(2);
  SUBCASE("XY flip-flop element equals J_xy") {
    const auto v = build_interaction(ModelSpec::xy(2, 5.0, 1.3));
    // <x=1, down, up, down| V |x=1, up, down, down>: index 5 and 3 on site 1.
    CHECK(v(5, 3) == Complex(1.3));
    CHECK(v(two.encode({0, Spin::down, Spin::up, Spin::down}),
            two.encode({0, Spin::up, Spin::down, Spin::down})) == Complex(1.3));
    // At site 2 the mobile spin talks to spin 2 instead.
    CHECK(v(two.encode({1, Spin::down, Spin::down, Spin::up}),
            two.encode({1, Spin::up, Spin::down, Spin::down})) == Complex(1.3));
    CHECK(v(two.encode({1, Spin::down, Spin::up, Spin::down}),
            two.encode({1, Spin::up, Spin::down, Spin::down})) == Complex{});
  }
  SUBCASE("Heisenberg diagonal element equals J/4") {
    const auto v = build_interaction(ModelSpec::heisenberg(2, 5.0, 1.0));
    CHECK(v(0, 0) == Complex(0.25));
    // sigma_z S1z = (+1/2)(-1/2) for |up, down, up>.
    CHECK(v(two.encode({0, Spin::up, Spin::down, Spin::up}),
            two.encode({0, Spin::up, Spin::down, Spin::up})) == Complex(-0.25));
  }
  SUBCASE("block diagonal in site, silent at unattached sites") {
    const auto v = build_interaction(ModelSpec::heisenberg(3, 1.0));
    const BasisLayout three(3);
    for (std::size_t r = 0; r < three.dim(); ++r) {
      for (std::size_t c = 0; c < three.dim(); ++c) {
        if (r / 8 != c / 8 || r / 8 == 1) CHECK(v(r, c) == Complex{});
      }
    }
  }
  SUBCASE("attachment map is honoured") {
    auto spec = ModelSpec::xy(3, 1.0);
    spec.attachments = {0, 2};  // spin 1 at the middle site
    const auto v = build_interaction(spec);
    const BasisLayout three(3);
    CHECK(v(three.encode({1, Spin::down, Spin::up, Spin::down}),
            three.encode({1, Spin::up, Spin::down, Spin::down})) == Complex(1.0));
    CHECK(v(three.encode({0, Spin::down, Spin::up, Spin::down}),
            three.encode({0, Spin::up, Spin::down, Spin::down})) == Complex{});
  }
}

TEST_CASE("build_hamiltonian symmetries") {
  for (const auto& spec : all_presets()) {
    const SpinOperatorSet ops{BasisLayout(spec.n_sites)};
    const auto sz = ops.total_sz();
    for (const auto& h : all_hamiltonians(spec)) {
      CHECK(is_hermitian(h, 1e-12));
      CHECK(max_abs(commutator(h, sz)) <= 1e-12);
    }
  }
  CHECK(max_abs(build_hamiltonian(ModelSpec::xy(2, 0.0, 0.0))) == 0.0);

  SUBCASE("two-site XY spectrum is invariant under a global spin flip") {
    const auto spec = ModelSpec::xy(2, 10.0);
    const auto x = pauli_x();
    const auto flip = kron({ComplexMatrix::identity(2), x, x, x});
    const auto h = build_hamiltonian(spec);
    CHECK(max_abs_difference(flip * h * flip, h) < 1e-12);
    const auto a = hermitian_eigensystem(h).values;
    const auto b = hermitian_eigensystem(flip * h * flip).values;
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-10);
  }
}

TEST_CASE("effective Hamiltonians") {
  const BasisLayout two(2);
  const auto up_dd = on_site(two, 1, spins(Spin::up, StaticPreset::down_down));
  const auto dn_psi = on_site(two, 1, spins(Spin::down, StaticPreset::psi_plus));

  const auto doublet = [&](const ComplexMatrix& h) {
    return std::array<Complex, 4>{expectation(h, up_dd), inner(up_dd, h * dn_psi),
                                  inner(dn_psi, h * up_dd), expectation(h, dn_psi)};
  };

  SUBCASE("two-site XY doublet matrix, eigenvalues +-J/sqrt2") {
    const auto h = build_effective_hamiltonian(ModelSpec::xy(2, 0.0), EffectiveVariant::two_site);
    const auto m = doublet(h);
    CHECK(std::abs(m[0]) < 1e-15);
    CHECK(std::abs(m[1] - 1.0 / kSqrt2) < 1e-15);
    CHECK(std::abs(m[2] - 1.0 / kSqrt2) < 1e-15);
    CHECK(std::abs(m[3]) < 1e-15);
    const ComplexMatrix block(2, 2, {m[0], m[1], m[2], m[3]});
    check_spectrum(block, {-1.0 / kSqrt2, 1.0 / kSqrt2}, 1e-14);
  }
  SUBCASE("two-site Heisenberg doublet matrix, eigenvalues (-1 +- 3) J / 8") {
    const auto h = build_effective_hamiltonian(ModelSpec::heisenberg(2, 0.0), EffectiveVariant::two_site);
    const auto m = doublet(h);
    CHECK(std::abs(m[0] + 0.25) < 1e-15);
    CHECK(std::abs(m[1] - 1.0 / (2.0 * kSqrt2)) < 1e-15);
    CHECK(std::abs(m[3]) < 1e-15);
    const ComplexMatrix block(2, 2, {m[0], m[1], m[2], m[3]});
    check_spectrum(block, {-0.5, 0.25}, 1e-14);
  }
  SUBCASE("one-dimensional sectors") {
    for (const auto& spec : {ModelSpec::xy(2, 0.0, 1.0), ModelSpec::heisenberg(2, 0.0, 1.0)}) {
      const auto h = build_effective_hamiltonian(spec, EffectiveVariant::two_site);
      for (auto [e, s] : {std::pair{Spin::up, StaticPreset::up_up}, {Spin::down, StaticPreset::down_down}}) {
        const auto v = on_site(two, 2, spins(e, s));
        CHECK(state_distance(h * v, (spec.j_z / 4.0) * v) < 1e-15);
      }
      for (Spin e : {Spin::up, Spin::down}) {
        const auto v = on_site(two, 1, spins(e, StaticPreset::psi_minus));
        CHECK(state_distance(h * v, StateVector(two.dim())) < 1e-15);
      }
    }
  }
  SUBCASE("S12^2 is conserved by the effective models only") {
    for (const auto& spec : all_presets()) {
      const auto s12 = SpinOperatorSet(BasisLayout(spec.n_sites)).static_total_spin_squared();
      const auto hs = all_hamiltonians(spec);
      // With eta = 0 the secular projector degenerates to the bare site projector.
      if (spec.eta == 0.0 && spec.n_sites == 3) continue;
      for (std::size_t i = 1; i < hs.size(); ++i) CHECK(max_abs(commutator(hs[i], s12)) <= 1e-12);
      if (spec.j_xy != 0.0 || spec.j_z != 0.0) {
        CHECK(max_abs(commutator(hs[0], s12)) > 0.1);
      }
    }
  }
  SUBCASE("variant and lattice must agree") {
    CHECK_THROWS_AS(build_effective_hamiltonian(ModelSpec::xy(2, 1.0), EffectiveVariant::three_site_projector),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_effective_hamiltonian(ModelSpec::xy(3, 1.0), EffectiveVariant::two_site),
                    std::invalid_argument);
  }
}

TEST_CASE("three-site secular projectors") {
  // Kinetic modes in layout order (sites 1, 0, 2).
  const double r = 1.0 / kSqrt2;
  const StateVector phi_plus(std::vector<Complex>{0.5, r, 0.5});
  const StateVector phi_minus(std::vector<Complex>{0.5, -r, 0.5});
  const StateVector phi_zero(std::vector<Complex>{r, 0.0, -r});
  const auto p_plus = outer(phi_plus), p_minus = outer(phi_minus), p_zero = outer(phi_zero);

  const ComplexMatrix end_site = 0.25 * (p_plus + p_minus) + 0.5 * p_zero;
  for (int label : {1, 2}) {
    CHECK(max_abs_difference(secular_site_projector(3, 7.0, label), end_site) < 1e-12);
  }
  CHECK(max_abs_difference(secular_site_projector(3, 7.0, 0), 0.5 * (p_plus + p_minus)) < 1e-12);
  CHECK(max_abs_difference(secular_site_projector(2, 7.0, 1), 0.5 * ComplexMatrix::identity(2)) < 1e-12);
  // No hopping: nothing rotates, the projector survives untouched.
  ComplexMatrix site1(3, 3);
  site1(0, 0) = 1.0;
  CHECK(max_abs_difference(secular_site_projector(3, 0.0, 1), site1) < 1e-15);

  SUBCASE("projector variant commutes with kinetic mode projectors") {
    const auto h = build_effective_hamiltonian(ModelSpec::heisenberg(3, 10.0), EffectiveVariant::three_site_projector);
    for (const auto& p : {p_plus, p_minus, p_zero}) {
      CHECK(max_abs(commutator(h, kron(p, ComplexMatrix::identity(8)))) < 1e-12);
    }
    const auto expected = build_hopping(ModelSpec::heisenberg(3, 10.0)) +
                          kron(end_site, chain_coupling(0.5, 1.0));
    CHECK(max_abs_difference(h, expected) < 1e-12);
  }
  SUBCASE("middle-start variant is the quarter-coupling chain") {
    for (const auto& spec : {ModelSpec::xy(3, 10.0), ModelSpec::heisenberg(3, 10.0)}) {
      const auto h = build_effective_hamiltonian(spec, EffectiveVariant::three_site_middle_start);
      const auto expected = build_hopping(spec) +
                            kron(ComplexMatrix::identity(3), chain_coupling(spec.j_xy / 4.0, spec.j_z / 4.0));
      CHECK(max_abs_difference(h, expected) < 1e-12);
    }
  }
}

TEST_CASE("encode_state") {
  const BasisLayout two(2);
  const auto s = encode_state(two, 1, Spin::up, StaticPreset::down_down);
  CHECK(s == StateVector::basis(16, 3));

  const auto t = encode_state(two, 1, Spin::down, StaticPreset::psi_plus);
  const double r = 1.0 / kSqrt2;
  CHECK(std::abs(t[two.encode({0, Spin::down, Spin::up, Spin::down})] - r) < 1e-15);
  CHECK(std::abs(t[two.encode({0, Spin::down, Spin::down, Spin::up})] - r) < 1e-15);
  CHECK(t.norm() == doctest::Approx(1.0).epsilon(1e-15));

  const auto m = encode_state(two, 1, Spin::down, StaticPreset::psi_minus);
  CHECK(std::abs(inner(t, m)) < 1e-15);

  const BasisLayout three(3);
  const auto middle = encode_state(three, 0, Spin::up, StaticPreset::down_down);
  CHECK(middle == StateVector::basis(24, 8 + 3));

  CHECK_THROWS_AS(encode_state(two, 0, Spin::up, StaticPreset::up_up), std::invalid_argument);
  CHECK_THROWS_AS(parse_spin("sideways"), std::invalid_argument);
  CHECK_THROWS_AS(parse_static_preset("up-sideways"), std::invalid_argument);
  CHECK(parse_static_preset("psi-minus") == StaticPreset::psi_minus);
}

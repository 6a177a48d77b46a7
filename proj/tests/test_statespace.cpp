#include <cmath>
#include <random>

#include "doctest.h"
#include "qsim/statespace.hpp"
#include "testutil.hpp"

using namespace qsim;
using testutil::lbl;
using testutil::make_state;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("basis label round-trips through its key form") {
    const BasisLabel l = lbl({"+", "B"});
    CHECK(l.key() == "+ B");
    CHECK(l.str() == "+,B");
    CHECK(BasisLabel::from_key("+ B") == l);
    CHECK(BasisLabel::from_key("UIIA") == lbl({"UIIA"}));
    CHECK_THROWS_AS(BasisLabel::from_key(""), ScenarioError);
    CHECK_THROWS_AS(BasisLabel::from_key("U  I"), ScenarioError);
    CHECK_THROWS_AS(BasisLabel::from_key(" U"), ScenarioError);
}

TEST_CASE("labels order lexicographically over tokens") {
    CHECK(lbl({"D", "I"}) < lbl({"U", "I"}));
    CHECK(lbl({"U"}) < lbl({"U", "I"}));
    CHECK(lbl({"+", "B"}) == lbl({"+", "B"}));
}

TEST_CASE("inner product identities") {
    const StateVector s = make_state({{lbl({"+", "G"}), kInvSqrt2}, {lbl({"-", "R"}), kInvSqrt2}});
    CHECK(inner_product(s, s).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inner_product(s, s).imag() == 0.0);

    const StateVector g = make_state({{lbl({"+", "G"}), 1.0}});
    const StateVector r = make_state({{lbl({"-", "R"}), 1.0}});
    CHECK(inner_product(g, r) == Complex{0.0, 0.0});
}

TEST_CASE("a 0.999-overlap construction reports exactly 0.999") {
    const StateVector psi = make_state({{lbl({"A"}), 1.0}});
    const StateVector phi = make_state(
        {{lbl({"A"}), 0.999}, {lbl({"B"}), std::sqrt(1.0 - 0.999 * 0.999)}});
    const Complex overlap = inner_product(phi, psi);
    CHECK(overlap.real() == doctest::Approx(0.999).epsilon(1e-15));
    CHECK(overlap.imag() == 0.0);
}

TEST_CASE("inner product rejects mixed label widths") {
    const StateVector narrow = make_state({{lbl({"A"}), 1.0}});
    const StateVector wide = make_state({{lbl({"A", "I"}), 1.0}});
    CHECK_THROWS_AS(inner_product(narrow, wide), AlphabetMismatch);
}

TEST_CASE("inner product is conjugate-symmetric") {
    std::mt19937_64 gen(11);
    const auto labels = testutil::index_labels(5);
    for (int i = 0; i < 200; ++i) {
        const StateVector a = testutil::random_unit_state(gen, labels);
        const StateVector b = testutil::random_unit_state(gen, labels);
        const Complex ab = inner_product(a, b);
        const Complex ba = inner_product(b, a);
        CHECK(std::abs(ab - std::conj(ba)) < 1e-14);
    }
}

TEST_CASE("normalize scales 3-4-5 to 0.6-0.8") {
    const StateVector s = make_state({{lbl({"x"}), 3.0}, {lbl({"y"}), 4.0}});
    const StateVector n = normalize(s);
    CHECK(n.amplitude(lbl({"x"})).real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(n.amplitude(lbl({"y"})).real() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(n.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normalize is idempotent on unit states") {
    std::mt19937_64 gen(12);
    const auto labels = testutil::index_labels(4);
    for (int i = 0; i < 200; ++i) {
        const StateVector s = testutil::random_unit_state(gen, labels);
        CHECK(testutil::max_amp_diff(normalize(s), s) < kEpsNorm);
    }
}

TEST_CASE("the midpoint interpolation normalizes to the equal mix") {
    // (1-t)|B> + t|G> at t = 1/2 -> (|B> + |G>)/sqrt(2).
    const StateVector mid = make_state({{lbl({"B"}), 0.5}, {lbl({"G"}), 0.5}});
    const StateVector n = normalize(mid);
    CHECK(n.amplitude(lbl({"B"})).real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    CHECK(n.amplitude(lbl({"G"})).real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
}

TEST_CASE("normalize rejects null vectors") {
    CHECK_THROWS_AS(normalize(StateVector{}), NullVector);
    const StateVector tiny = make_state({{lbl({"x"}), 1e-13}});
    CHECK_THROWS_AS(normalize(tiny), NullVector);
}

TEST_CASE("identity unitary leaves the state unchanged") {
    const StateVector s = make_state({{lbl({"U"}), 0.6}, {lbl({"D"}), 0.8}});
    const UnitaryStep id({lbl({"U"}), lbl({"D"})}, DenseMatrix::identity(2));
    CHECK(exact_equal(apply_unitary(id, s), s));
}

TEST_CASE("rotation sends |U> to cos|U> + sin|D>") {
    const double theta = 0.3;
    const StateVector s = make_state({{lbl({"U"}), 1.0}});
    const UnitaryStep rot({lbl({"U"}), lbl({"D"})}, DenseMatrix::rotation(theta));
    const StateVector out = apply_unitary(rot, s);
    CHECK(out.amplitude(lbl({"U"})).real() == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
    CHECK(out.amplitude(lbl({"D"})).real() == doctest::Approx(std::sin(0.3)).epsilon(1e-15));
}

TEST_CASE("a rotation by pi/4 prepares the equal superposition") {
    const StateVector s = make_state({{lbl({"+", "B"}), 1.0}});
    const UnitaryStep prep({lbl({"+", "B"}), lbl({"-", "B"})},
                           DenseMatrix::rotation(std::atan2(1.0, 1.0)));
    const StateVector out = apply_unitary(prep, s);
    CHECK(out.amplitude(lbl({"+", "B"})).real() == doctest::Approx(kInvSqrt2).epsilon(1e-14));
    CHECK(out.amplitude(lbl({"-", "B"})).real() == doctest::Approx(kInvSqrt2).epsilon(1e-14));
}

TEST_CASE("unitaries act only on their domain") {
    const StateVector s = make_state({{lbl({"U"}), 0.6}, {lbl({"Z"}), 0.8}});
    const UnitaryStep rot({lbl({"U"}), lbl({"D"})}, DenseMatrix::rotation(0.5));
    const StateVector out = apply_unitary(rot, s);
    CHECK(out.amplitude(lbl({"Z"})) == Complex{0.8, 0.0});
    CHECK(out.amplitude(lbl({"U"})).real() == doctest::Approx(0.6 * std::cos(0.5)));
    CHECK(out.amplitude(lbl({"D"})).real() == doctest::Approx(0.6 * std::sin(0.5)));
}

TEST_CASE("an unpopulated domain is a no-op") {
    const StateVector s = make_state({{lbl({"Z"}), 1.0}});
    const UnitaryStep rot({lbl({"U"}), lbl({"D"})}, DenseMatrix::rotation(0.5));
    CHECK(exact_equal(apply_unitary(rot, s), s));
}

TEST_CASE("non-unitary matrices are rejected at construction") {
    DenseMatrix bad(2);
    bad.at(0, 0) = 1.0;
    bad.at(1, 1) = 2.0;
    CHECK_THROWS_AS(UnitaryStep({lbl({"U"}), lbl({"D"})}, bad), NotUnitary);

    CHECK_THROWS_AS(UnitaryStep({lbl({"U"})}, DenseMatrix::identity(2)), NotUnitary);
    CHECK_THROWS_AS(UnitaryStep({lbl({"U"}), lbl({"U"})}, DenseMatrix::identity(2)),
                    ScenarioError);
}

TEST_CASE("permutation matrices move slots as declared") {
    const UnitaryStep swap({lbl({"A"}), lbl({"X"})}, DenseMatrix::permutation({1, 0}));
    const StateVector s = make_state({{lbl({"A"}), 1.0}});
    const StateVector out = apply_unitary(swap, s);
    CHECK(out.amplitude(lbl({"X"})) == Complex{1.0, 0.0});
    CHECK(out.amplitude(lbl({"A"})) == Complex{0.0, 0.0});
}

TEST_CASE("norm preservation for random unitaries and states") {
    std::mt19937_64 gen(13);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(gen() % 4);
        const auto labels = testutil::index_labels(n);
        const StateVector s = testutil::random_unit_state(gen, labels);
        const UnitaryStep u(labels, testutil::random_unitary(gen, n));
        CHECK(std::abs(apply_unitary(u, s).norm() - 1.0) < kEpsNorm);
    }
}

TEST_CASE("applying u then its adjoint returns the input") {
    std::mt19937_64 gen(14);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(gen() % 3);
        const auto labels = testutil::index_labels(n);
        const StateVector s = testutil::random_unit_state(gen, labels);
        const DenseMatrix m = testutil::random_unitary(gen, n);
        const UnitaryStep u(labels, m);
        const UnitaryStep u_dag(labels, testutil::adjoint(m));
        const StateVector back = apply_unitary(u_dag, apply_unitary(u, s));
        CHECK(testutil::max_amp_diff(back, s) < 10 * kEpsNorm);
    }
}

TEST_CASE("record coupling appends the ruled token") {
    const RecordCoupling c{0, {{"U", "I"}, {"D", "A"}}};
    const double alpha = std::cos(0.3);
    const double beta = std::sin(0.3);
    const StateVector s = make_state({{lbl({"U", "I"}), alpha}, {lbl({"D", "I"}), beta}});
    const StateVector out = append_record(c, s);
    CHECK(out.amplitude(lbl({"U", "I", "I"})) == Complex{alpha, 0.0});
    CHECK(out.amplitude(lbl({"D", "I", "A"})) == Complex{beta, 0.0});
    CHECK(out.amplitudes.size() == 2);
}

TEST_CASE("a single-label record is deterministic") {
    const RecordCoupling c{0, {{"U", "I"}, {"D", "A"}}};
    const StateVector s = make_state({{lbl({"U", "I"}), 1.0}});
    const StateVector out = append_record(c, s);
    CHECK(out.amplitude(lbl({"U", "I", "I"})) == Complex{1.0, 0.0});
    CHECK(out.amplitudes.size() == 1);
}

TEST_CASE("two couplings with an inert decayed branch build the tape pattern") {
    // alpha|U,I> + beta|D,I>, record, rotate only the undecayed branch,
    // record again: amplitudes (alpha^2, alpha*beta, beta) on the three
    // final labels.
    const double theta = 0.3;
    const double alpha = std::cos(theta);
    const double beta = std::sin(theta);
    const RecordCoupling c{0, {{"U", "I"}, {"D", "A"}}};

    StateVector s = make_state({{lbl({"U", "I"}), 1.0}});
    const UnitaryStep pulse1({lbl({"U", "I"}), lbl({"D", "I"})}, DenseMatrix::rotation(theta));
    s = append_record(c, apply_unitary(pulse1, s));
    const UnitaryStep pulse2({lbl({"U", "I", "I"}), lbl({"D", "I", "I"})},
                             DenseMatrix::rotation(theta));
    s = append_record(c, apply_unitary(pulse2, s));

    CHECK(s.amplitude(lbl({"U", "I", "I", "I"})).real()
          == doctest::Approx(alpha * alpha).epsilon(1e-14));
    CHECK(s.amplitude(lbl({"D", "I", "I", "A"})).real()
          == doctest::Approx(alpha * beta).epsilon(1e-14));
    CHECK(s.amplitude(lbl({"D", "I", "A", "A"})).real()
          == doctest::Approx(beta).epsilon(1e-14));
    CHECK(s.amplitudes.size() == 3);
}

TEST_CASE("record couplings preserve the norm exactly") {
    std::mt19937_64 gen(15);
    const std::vector<BasisLabel> labels = {lbl({"U", "I"}), lbl({"D", "I"})};
    const RecordCoupling c{0, {{"U", "I"}, {"D", "A"}}};
    for (int i = 0; i < 1000; ++i) {
        const StateVector s = testutil::random_unit_state(gen, labels);
        CHECK(append_record(c, s).norm_sq() == s.norm_sq());
    }
}

TEST_CASE("uncovered record tokens raise IncompleteCoupling") {
    const RecordCoupling missing_rule{0, {{"U", "I"}}};
    const StateVector s = make_state({{lbl({"D", "I"}), 1.0}});
    CHECK_THROWS_AS(append_record(missing_rule, s), IncompleteCoupling);

    const RecordCoupling out_of_range{5, {{"U", "I"}}};
    CHECK_THROWS_AS(append_record(out_of_range, s), IncompleteCoupling);
}

TEST_CASE("exact equality distinguishes values, not representations") {
    const StateVector a = make_state({{lbl({"x"}), Complex{0.5, -0.25}}});
    StateVector b = a;
    CHECK(exact_equal(a, b));
    b.amplitudes[lbl({"x"})] = Complex{0.5, -0.25 + 1e-17};
    CHECK(exact_equal(a, b)); // 0.25 + 1e-17 rounds back to 0.25
    b.amplitudes[lbl({"x"})] = Complex{0.5, -0.2500001};
    CHECK(!exact_equal(a, b));
    b.amplitudes.erase(lbl({"x"}));
    CHECK(!exact_equal(a, b));
}

TEST_CASE("pruning drops only sub-threshold amplitudes") {
    // kEpsPrune bounds the squared magnitude: |a|^2 = 1e-14 stays, 1e-16 goes.
    const StateVector s =
        make_state({{lbl({"x"}), 1.0}, {lbl({"y"}), 1e-7}, {lbl({"z"}), 1e-8}});
    const StateVector p = s.pruned();
    CHECK(p.amplitudes.size() == 2);
    CHECK(p.amplitude(lbl({"y"})) == Complex{1e-7, 0.0});
}

TEST_CASE("alphabet membership covers base positions and record growth") {
    Alphabet a;
    a.positions = {{"U", "D"}, {"I"}};
    a.record_tokens = {"I", "A"};
    CHECK(a.contains(lbl({"U", "I"})));
    CHECK(a.contains(lbl({"U", "I", "I", "A"})));
    CHECK(!a.contains(lbl({"Q", "I"})));
    CHECK(!a.contains(lbl({"U", "A"}))); // position 1 admits only I
    CHECK(!a.contains(lbl({"U", "I", "Q"})));
    CHECK(!a.contains(BasisLabel{}));
}

#include <map>
#include <set>

#include "doctest.h"
#include "iontrotter/ham_ir.hpp"
#include "oracles.hpp"

using namespace iontrotter;

namespace {

std::map<std::string, int> census(const Hamiltonian& H) {
    std::map<std::string, int> out;
    for (const auto& t : H.terms()) ++out[t.group];
    return out;
}

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("hubbard 4x5 link census") {
    const Hamiltonian H = build_hubbard(4, 5, 1.0, 2.0);
    CHECK(H.n_fermionic() == 40);
    CHECK(H.n_bosonic() == 0);
    auto c = census(H);
    // each link: two spins, term + H.c.
    CHECK(c["hop-row"] == 16 * 2 * 2);
    CHECK(c["hop-col"] == 15 * 2 * 2);
    CHECK(c["onsite"] == 20);
    CHECK(H.terms().size() == 144);
    CHECK(hermiticity_check(H));
}

TEST_CASE("hubbard single site") {
    const Hamiltonian H = build_hubbard(1, 1, 1.0, 3.0);
    CHECK(H.n_fermionic() == 2);
    REQUIRE(H.terms().size() == 1);
    CHECK(H.terms()[0].group == "onsite");
    CHECK(H.terms()[0].coefficient == cplx{3.0, 0.0});
}

TEST_CASE("hubbard mode numbering") {
    CHECK(hubbard_mode(1, false) == 1);
    CHECK(hubbard_mode(1, true) == 2);
    CHECK(hubbard_mode(7, true) == 14);
    CHECK(hubbard_mode(8, true) == 16);
    CHECK(hubbard_mode(12, false) == 23);
}

TEST_CASE("hubbard rejects an empty lattice") {
    CHECK_THROWS_AS(build_hubbard(0, 5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_hubbard(4, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("hubbard 2x2 matches the kron oracle") {
    const Hamiltonian H = build_hubbard(2, 2, 0.7, 1.3);
    CHECK(max_diff(fock_matrix(H), oracle::fock_dense(H, {})) < 1e-12);
}

TEST_CASE("holstein census") {
    const Hamiltonian H = build_holstein(10, 1.0, 0.5, 1.0);
    CHECK(H.n_fermionic() == 10);
    CHECK(H.n_bosonic() == 10);
    auto c = census(H);
    CHECK(c["hop"] == 9 * 2);
    CHECK(c["coupling"] == 10 * 2);  // b^+b a and its adjoint b^+b a^+
    CHECK(c["free"] == 10);
    CHECK(hermiticity_check(H));

    auto one = census(build_holstein(1, 1.0, 0.5, 1.0));
    CHECK(one["hop"] == 0);
    CHECK(one["coupling"] == 2);
    CHECK(one["free"] == 1);
}

TEST_CASE("holstein 2 sites at cutoff 3 matches the oracle spectrum") {
    const Hamiltonian H = build_holstein(2, 1.0, 0.5, 1.0);
    const auto a = oracle::sorted_eigenvalues(fock_matrix(H, {3, 3}));
    const auto b = oracle::sorted_eigenvalues(oracle::fock_dense(H, {3, 3}));
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("chemistry builder") {
    SUBCASE("diagonal one-body table") {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
        h.diagonal() << 0.5, -1.0, 2.0;
        const Hamiltonian H = build_chemistry(h, std::vector<cplx>(81, 0.0));
        REQUIRE(H.terms().size() == 3);
        for (int p = 0; p < 3; ++p) {
            CHECK(H.terms()[p].factors == std::vector<LadderFactor>{fermion(p + 1, true), fermion(p + 1, false)});
            CHECK(H.terms()[p].coefficient == h(p, p));
        }
    }
    SUBCASE("off-diagonal entry brings its conjugate") {
        Eigen::MatrixXcd h(2, 2);
        h << 0.0, cplx(0.3, 0.1), cplx(0.3, -0.1), 0.0;
        const Hamiltonian H = build_chemistry(h, std::vector<cplx>(16, 0.0));
        REQUIRE(H.terms().size() == 2);
        CHECK(hermiticity_check(H));
    }
    SUBCASE("non-Hermitian one-body table is rejected") {
        Eigen::MatrixXcd h(2, 2);
        h << 0.0, 1.0, 0.5, 0.0;
        CHECK_THROWS_AS(build_chemistry(h, std::vector<cplx>(16, 0.0)), std::invalid_argument);
    }
    SUBCASE("wrong two-body size is rejected") {
        CHECK_THROWS_AS(build_chemistry(Eigen::MatrixXcd::Identity(2, 2), std::vector<cplx>(8, 0.0)),
                        std::invalid_argument);
    }
    SUBCASE("random Hermitian 3-mode instance matches the oracle") {
        oracle::Rng rng(11);
        const int n = 3;
        Eigen::MatrixXcd h(n, n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) h(p, q) = cplx{rng.normal(), rng.normal()};
        h = (h + h.adjoint()).eval();
        // h_pqrs with the symmetry h_pqrs = conj(h_srqp) keeps the two-body part Hermitian.
        std::vector<cplx> v(81);
        auto at = [n](int p, int q, int r, int s) { return ((p * n + q) * n + r) * n + s; };
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s) {
                        if (at(p, q, r, s) > at(s, r, q, p)) continue;
                        const cplx x{rng.normal(), at(p, q, r, s) == at(s, r, q, p) ? 0.0 : rng.normal()};
                        v[at(p, q, r, s)] = x;
                        v[at(s, r, q, p)] = std::conj(x);
                    }
        const Hamiltonian H = build_chemistry(h, v);
        CHECK(hermiticity_check(H));
        CHECK(max_diff(fock_matrix(H), oracle::fock_dense(H, {})) < 1e-12);
    }
}

TEST_CASE("field theory builder") {
    SUBCASE("smallest discretization") {
        FieldCouplings c{{1.0}, {}, {}, {}};
        const Hamiltonian H = build_discretized_field_theory(1, 0, 1, 0.4, c);
        REQUIRE(H.terms().size() == 2);
        CHECK(H.terms()[0].factors == std::vector<LadderFactor>{fermion(1, true), fermion(1, false), boson(1, false)});
        CHECK(H.terms()[1].factors == std::vector<LadderFactor>{fermion(1, true), fermion(1, false), boson(1, true)});
        CHECK(H.terms()[0].coefficient == cplx{0.4, 0});
    }
    SUBCASE("fermion-antifermion expansion") {
        // (b^+ + d)(b + d^+)(a + a^+) expanded by hand, unit couplings.
        FieldCouplings c{{1.0}, {1.0}, {1.0}, {1.0}};
        const Hamiltonian H = build_discretized_field_theory(1, 1, 1, 1.0, c);
        CHECK(H.n_fermionic() == 2);
        std::set<std::vector<std::pair<int, bool>>> shapes;
        for (const auto& t : H.terms()) {
            std::vector<std::pair<int, bool>> s;
            for (const auto& f : t.factors) s.emplace_back(f.mode.kind == ModeKind::Fermionic ? f.mode.index : -f.mode.index, f.dagger);
            shapes.insert(s);
        }
        const std::set<std::vector<std::pair<int, bool>>> expected{
            {{1, true}, {1, false}, {-1, false}}, {{1, true}, {1, false}, {-1, true}},
            {{1, true}, {2, true}, {-1, false}},  {{2, false}, {1, false}, {-1, true}},
            {{2, false}, {1, false}, {-1, false}}, {{1, true}, {2, true}, {-1, true}},
            {{2, false}, {2, true}, {-1, false}}, {{2, false}, {2, true}, {-1, true}},
        };
        CHECK(shapes == expected);
        CHECK(hermiticity_check(H));
    }
    SUBCASE("random couplings stay Hermitian") {
        oracle::Rng rng(5);
        auto table = [&](std::size_t n) {
            std::vector<cplx> t(n);
            for (auto& x : t) x = {rng.normal(), rng.normal()};
            return t;
        };
        FieldCouplings c{table(4 * 2), table(2 * 1 * 2), table(1 * 2 * 2), table(1 * 2)};
        const Hamiltonian H = build_discretized_field_theory(2, 1, 2, 0.3, c);
        CHECK(hermiticity_check(H));
        const auto a = oracle::sorted_eigenvalues(fock_matrix(H, {2, 2}));
        const auto b = oracle::sorted_eigenvalues(oracle::fock_dense(H, {2, 2}));
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("missing coupling entries are rejected") {
        FieldCouplings c{{1.0}, {}, {}, {}};
        CHECK_THROWS_AS(build_discretized_field_theory(1, 1, 1, 1.0, c), std::invalid_argument);
    }
}

TEST_CASE("hermiticity check") {
    Hamiltonian H(2, 0);
    H.add({0.5, {fermion(1, true), fermion(2, false)}, {}});
    CHECK_FALSE(hermiticity_check(H));
    H.add({0.5, {fermion(2, true), fermion(1, false)}, {}});
    CHECK(hermiticity_check(H));

    // Same operator written in a different order: b_2 b_1^+ = -b_1^+ b_2.
    Hamiltonian K(2, 0);
    K.add({0.5, {fermion(1, true), fermion(2, false)}, {}});
    K.add({-0.5, {fermion(1, false), fermion(2, true)}, {}});
    CHECK(hermiticity_check(K));

    SUBCASE("closure of a random term set") {
        oracle::Rng rng(3);
        Hamiltonian R(4, 1);
        for (int k = 0; k < 12; ++k) {
            ProductTerm t;
            t.coefficient = {rng.normal(), rng.normal()};
            const int len = rng.integer(1, 4);
            for (int i = 0; i < len; ++i) {
                if (rng.integer(0, 4) == 0) t.factors.push_back(boson(1, rng.integer(0, 1) == 1));
                else t.factors.push_back(fermion(rng.integer(1, 4), rng.integer(0, 1) == 1));
            }
            R.add_with_adjoint(t);
        }
        CHECK(hermiticity_check(R));
    }
}

TEST_CASE("normal ordering") {
    // b_1 b_1^+ = 1 - b_1^+ b_1
    const auto no = normal_order(ProductTerm{1.0, {fermion(1, false), fermion(1, true)}, {}});
    REQUIRE(no.size() == 2);
    CHECK(no.at({}) == cplx{1, 0});
    CHECK(no.at({{ModeIndex{ModeKind::Fermionic, 1}, true}, {ModeIndex{ModeKind::Fermionic, 1}, false}}) == cplx{-1, 0});
    // b_1 b_1 = 0
    CHECK(normal_order(ProductTerm{1.0, {fermion(1, false), fermion(1, false)}, {}}).empty());
    // a a^+ = 1 + a^+ a for bosons
    const auto nb = normal_order(ProductTerm{1.0, {boson(1, false), boson(1, true)}, {}});
    CHECK(nb.at({}) == cplx{1, 0});
}

TEST_CASE("term validation") {
    Hamiltonian H(2, 1);
    CHECK_THROWS_AS(H.add({1.0, {fermion(3, true)}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(H.add({1.0, {boson(2, true)}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(H.add({1.0, {fermion(0, true)}, {}}), std::invalid_argument);
}

TEST_CASE("adjoint reverses factors and conjugates") {
    const ProductTerm t{cplx{1, 2}, {fermion(1, true), fermion(2, false), boson(1, false)}, "x"};
    const ProductTerm a = adjoint(t);
    CHECK(a.coefficient == cplx{1, -2});
    CHECK(a.group == "x");
    const auto lhs = oracle::fock_dense([&] { Hamiltonian H(2, 1); H.add(a); return H; }(), {2});
    const auto rhs = oracle::fock_dense([&] { Hamiltonian H(2, 1); H.add(t); return H; }(), {2});
    CHECK(max_diff(lhs, Eigen::MatrixXcd(rhs.adjoint())) < 1e-12);
}

TEST_CASE("every builder matches the kron oracle entrywise") {
    std::vector<std::pair<Hamiltonian, std::vector<int>>> cases{
        {build_hubbard(1, 2, 1.0, 4.0), {}},
        {build_hubbard(1, 5, 0.5, 2.0), {}},
        {build_holstein(3, 1.0, 0.7, 1.2), {2, 2, 2}},
        {build_discretized_field_theory(1, 1, 1, 1.0, FieldCouplings{{1.0}, {0.5}, {0.5}, {1.0}}), {4}},
    };
    for (const auto& [H, cut] : cases) {
        CHECK(hermiticity_check(H));
        CHECK(max_diff(fock_matrix(H, cut), oracle::fock_dense(H, cut)) < 1e-12);
    }
}

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "rsep/allocation.hpp"
#include "rsep/errors.hpp"
#include "rsep/instance.hpp"
#include "rsep/qmatrix.hpp"
#include "rsep/rng.hpp"
#include "test_util.hpp"

using namespace rsep;
using namespace rsep_test;

TEST_CASE("instance shape invariants are enforced at construction") {
    CHECK_THROWS_AS(Instance(0, 1, 1, 1, {{0}}, {}), std::invalid_argument);
    // asymmetric Y
    CHECK_THROWS_AS(Instance(1, 2, 1, 1, {{0, 1}, {0, 0}}, {{1, 1}}),
                    std::invalid_argument);
    // nonzero diagonal
    CHECK_THROWS_AS(Instance(1, 2, 1, 1, {{1, 0}, {0, 0}}, {{1, 1}}),
                    std::invalid_argument);
    // negative quota
    CHECK_THROWS_AS(Instance(1, 2, 1, 1, {{0, 1}, {1, 0}}, {{-1, 1}}),
                    std::invalid_argument);
    // ragged L
    CHECK_THROWS_AS(Instance(2, 2, 1, 1, {{0, 1}, {1, 0}}, {{1, 1}, {1}}),
                    std::invalid_argument);

    // an overloaded profile is constructible and detectable
    Instance overloaded(2, 1, 2, 1, {{0}}, {{2}, {1}});
    CHECK(overloaded.overloaded_bs() == 0);
    CHECK(fig1_instance().overloaded_bs() == -1);
}

TEST_CASE("instance JSON round trip is lossless") {
    Instance inst = fig1_instance();
    Instance back = Instance::from_json(inst.to_json());
    CHECK(back == inst);
    CHECK(back.to_json() == inst.to_json());

    CHECK_THROWS_AS(Instance::from_json("{ not json"), std::invalid_argument);
    CHECK_THROWS_AS(Instance::from_json(R"({"M":1,"B":1})"), std::invalid_argument);
}

TEST_CASE("check_feasibility reports per-constraint violations") {
    Instance inst = fig1_instance();

    SUBCASE("feasible allocation yields an empty report") {
        CHECK(check_feasibility(inst, fig1_identical_allocation()).empty());
    }

    SUBCASE("one RB short for MVNO 1 on BS 1 is a C1 violation at (1,1)") {
        Allocation alloc = fig1_identical_allocation();
        alloc.set_owner(0, 0, kUnassigned);
        FeasibilityReport report = check_feasibility(inst, alloc);
        REQUIRE(report.c1.size() == 1);
        CHECK(report.c1[0].m == 0);
        CHECK(report.c1[0].b == 0);
        CHECK(report.c1[0].assigned == 3);
        CHECK(report.c1[0].required == 4);
        CHECK(report.c2.empty());
    }

    SUBCASE("a double-assigned RB is a C2 violation at its (b,n,t)") {
        CellAssignment cells;
        cells.num_bs = 2;
        cells.num_subcarriers = 4;
        cells.num_slots = 4;
        Allocation alloc = fig1_identical_allocation();
        cells.owners.assign(2, std::vector<std::vector<int>>(16));
        for (int b = 0; b < 2; ++b)
            for (int tau = 0; tau < 16; ++tau)
                cells.owners[b][tau] = {alloc.owner(b, tau)};
        cells.owners[1][6] = {1, 2}; // tau 6 -> n=2, t=1 (0-based)
        FeasibilityReport report = check_feasibility(inst, cells);
        REQUIRE(report.c2.size() == 1);
        CHECK(report.c2[0].b == 1);
        CHECK(report.c2[0].n == 2);
        CHECK(report.c2[0].t == 1);
        // the spurious extra owner also breaks the quota counts
        CHECK(!report.c1.empty());
    }
}

TEST_CASE("count_linked on the fig1 scenario") {
    Instance inst = fig1_instance();
    CHECK(count_linked(inst, fig1_identical_allocation()) == 16);
    CHECK(count_linked(inst, fig1_suboptimal_allocation()) == 4);
}

TEST_CASE("count_linked is zero without interference") {
    Rng rng(7);
    Instance inst = random_instance(rng, 3, 3, 2, 3, 0.0);
    Allocation alloc = random_feasible_allocation(inst, rng);
    CHECK(count_linked(inst, alloc) == 0);
}

TEST_CASE("count_linked rejects infeasible allocations by name") {
    Instance inst = fig1_instance();
    Allocation alloc = fig1_identical_allocation();
    alloc.set_owner(0, 0, 1);
    CHECK_THROWS_WITH_AS(count_linked(inst, alloc),
                         doctest::Contains("C1 violated at (m=1, b=1)"),
                         FeasibilityError);
}

TEST_CASE("count_linked equals half the quadratic form of the reference Q") {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        Instance inst = random_instance(rng, 2, 3, 2, 2, 0.7, 0.8);
        Allocation alloc = random_feasible_allocation(inst, rng);
        auto q = dense_q_reference(inst);
        CHECK(count_linked(inst, alloc) ==
              half_quadratic_form(q, alloc.to_bits(inst)));
    }
}

TEST_CASE("count_linked is invariant under common slot permutations and MVNO relabeling") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = random_instance(rng, 3, 3, 2, 3, 0.6, 0.9);
        Allocation alloc = random_feasible_allocation(inst, rng);
        std::int64_t base = count_linked(inst, alloc);

        // same permutation of the slot index applied to every BS
        std::vector<int> perm(inst.grid_size());
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        Allocation permuted(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
        for (int b = 0; b < inst.num_bs(); ++b)
            for (int tau = 0; tau < inst.grid_size(); ++tau)
                permuted.set_owner(b, perm[tau], alloc.owner(b, tau));
        CHECK(count_linked(inst, permuted) == base);

        // relabeling MVNO ids (profile rows permuted to match)
        std::vector<int> relabel(inst.num_mvnos());
        std::iota(relabel.begin(), relabel.end(), 0);
        rng.shuffle(relabel);
        std::vector<std::vector<int>> l2(inst.num_mvnos());
        for (int m = 0; m < inst.num_mvnos(); ++m) l2[relabel[m]] = inst.profile()[m];
        Instance relabeled(inst.num_mvnos(), inst.num_bs(), inst.num_subcarriers(),
                           inst.num_slots(), inst.adjacency(), l2);
        Allocation ralloc(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
        for (int b = 0; b < inst.num_bs(); ++b)
            for (int tau = 0; tau < inst.grid_size(); ++tau) {
                int m = alloc.owner(b, tau);
                ralloc.set_owner(b, tau, m == kUnassigned ? kUnassigned : relabel[m]);
            }
        CHECK(count_linked(relabeled, ralloc) == base);
    }
}

TEST_CASE("allocation bit round trip and C2 detection") {
    Instance inst = fig1_instance();
    Allocation alloc = fig1_suboptimal_allocation();
    CHECK(Allocation::from_bits(inst, alloc.to_bits(inst)) == alloc);

    auto bits = alloc.to_bits(inst);
    bits[0 * 2 * 16 + 0 * 16 + 5] = 1; // MVNO 1 also claims BS 1 slot 5
    CHECK_THROWS_AS(Allocation::from_bits(inst, bits), FeasibilityError);
}

TEST_CASE("q_matvec on a two-BS exchange structure") {
    Instance inst(1, 2, 1, 1, {{0, 1}, {1, 0}}, {{1, 1}});
    QMatrix q(inst);
    CHECK(q.dim() == 2);
    CHECK(q.matvec(std::vector<double>{1.0, 0.0}) == std::vector<double>{0.0, 1.0});
    CHECK(q.matvec(std::vector<std::int64_t>{0, 0}) == std::vector<std::int64_t>{0, 0});
    CHECK_THROWS_AS(q.matvec(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("q_matvec agrees with the dense reference") {
    Rng rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        Instance inst = random_instance(rng, 2, 3, 2, 2, 0.8);
        QMatrix q(inst);
        auto ref = dense_q_reference(inst);
        const int v = static_cast<int>(inst.num_vars());
        std::vector<std::int64_t> x(v);
        for (int i = 0; i < v; ++i) x[i] = static_cast<std::int64_t>(rng.below(7)) - 3;
        std::vector<std::int64_t> want(v, 0);
        for (int i = 0; i < v; ++i)
            for (int j = 0; j < v; ++j) want[i] += ref[i][j] * x[j];
        CHECK(q.matvec(x) == want);
    }
}

TEST_CASE("dense materialization respects the cap and matches the reference") {
    Instance inst = fig1_instance(); // V = 96
    QMatrix q(inst);
    CHECK(q.dense() == dense_q_reference(inst));
    CHECK_THROWS_AS(q.dense(/*cap=*/10), std::length_error);
}

TEST_CASE("largest_eigenvalue on known graphs") {
    Instance path(1, 2, 1, 1, {{0, 1}, {1, 0}}, {{1, 1}});
    CHECK(QMatrix(path).largest_eigenvalue() == doctest::Approx(1.0).epsilon(1e-12));

    Instance triangle(1, 3, 1, 1, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {{1, 1, 1}});
    CHECK(QMatrix(triangle).largest_eigenvalue() == doctest::Approx(2.0).epsilon(1e-12));

    Instance isolated(1, 2, 1, 1, {{0, 0}, {0, 0}}, {{1, 1}});
    CHECK_THROWS_WITH_AS(QMatrix(isolated).largest_eigenvalue(),
                         "no interference; RSEP objective identically zero",
                         std::domain_error);
}

TEST_CASE("largest_eigenvalue matches a dense eigensolve of Q") {
    Rng rng(777);
    int done = 0;
    while (done < 8) {
        Instance inst = random_instance(rng, 2, 4, 2, 2, 0.6);
        if (!inst.has_interference()) continue;
        ++done;
        auto ref = dense_q_reference(inst);
        Eigen::VectorXd eig = dense_eigenvalues(ref);
        double want = eig(eig.size() - 1);
        CHECK(QMatrix(inst).largest_eigenvalue() ==
              doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("Q is hollow, symmetric, and indefinite when Y has an edge") {
    Rng rng(31337);
    int done = 0;
    while (done < 8) {
        Instance inst = random_instance(rng, 2, 3, 2, 2, 0.5);
        if (!inst.has_interference()) continue;
        ++done;
        auto q = dense_q_reference(inst);
        const int v = static_cast<int>(q.size());
        std::int64_t trace = 0;
        for (int i = 0; i < v; ++i) {
            trace += q[i][i];
            for (int j = 0; j < v; ++j) CHECK(q[i][j] == q[j][i]);
        }
        CHECK(trace == 0);
        Eigen::VectorXd eig = dense_eigenvalues(q);
        CHECK(eig(0) < 0.0);
        CHECK(eig(eig.size() - 1) > 0.0);
    }
}

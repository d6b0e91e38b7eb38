#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "losrnet/channels.hpp"

using namespace losrnet;
using losrnet::testing::random_density_matrix;

namespace {

ComplexMatrix basis_state(int dim, int index) {
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    rho(index, index) = 1.0;
    return rho;
}

}  // namespace

TEST_CASE("the 2 -> 2 Choi matrix matches its explicit form") {
    const ChoiMatrix eta = build_choi(generate_eta_din_2(2));
    CHECK(eta.matrix.rows() == 8);
    CHECK(std::abs(eta.matrix.trace().real() - 4.0) <= 1e-12);

    // (|000> + |111>)(<000| + <111|) + |010><010| + |100><100|
    ComplexMatrix expected = ComplexMatrix::Zero(8, 8);
    ComplexVector diag = ComplexVector::Zero(8);
    diag(0) = diag(7) = 1.0;
    expected += diag * diag.adjoint();
    expected(2, 2) += 1.0;
    expected(4, 4) += 1.0;
    CHECK(max_abs_diff(eta.matrix, expected) == 0.0);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(eta.matrix);
    CHECK((solver.eigenvalues().array() > 1e-9).count() == 3);  // rank = number of arrows
}

TEST_CASE("the all-dots grid is the trace-and-replace channel") {
    GridSpec spec{2, 1, {}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) spec.arrows.push_back(GridArrow{{{i, j}}});
    }
    const ChoiMatrix eta = build_choi(spec);
    CHECK(max_abs_diff(eta.matrix, ComplexMatrix::Identity(4, 4)) == 0.0);
    std::mt19937_64 rng(3);
    const ComplexMatrix out = apply_channel(eta, random_density_matrix(rng, 4));
    CHECK(out.rows() == 1);
    CHECK(std::abs(out(0, 0).real() - 1.0) <= 1e-12);
}

TEST_CASE("the odd 3 -> 3 construction has three arrows of length three") {
    const GridSpec spec = generate_eta_odd(3);
    CHECK(spec.arrows.size() == 3);
    for (const auto& arrow : spec.arrows) CHECK(arrow.length() == 3);
    const ChoiMatrix eta = build_choi(spec);
    CHECK(std::abs(eta.matrix.trace().real() - 9.0) <= 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(eta.matrix);
    CHECK((solver.eigenvalues().array() > 1e-9).count() == 3);
}

TEST_CASE("generated grids satisfy both Choi constraints") {
    for (int d = 2; d <= 12; ++d) {
        const GridSpec spec = generate_eta_din_2(d);
        int cells = 0;
        for (const auto& arrow : spec.arrows) {
            CHECK(arrow.length() <= 2);
            cells += arrow.length();
        }
        CHECK(cells == d * d);
        CHECK(choi_constraints_hold(build_choi(spec)));
    }
    for (int d = 3; d <= 9; d += 2) {
        const GridSpec spec = generate_eta_odd(d);
        CHECK(static_cast<int>(spec.arrows.size()) == d);
        CHECK(choi_constraints_hold(build_choi(spec)));
    }
}

TEST_CASE("the 5 -> 2 grid keeps one diagonal arrow per 2x2 block") {
    const GridSpec spec = generate_eta_din_2(5);
    auto has_arrow = [&](std::vector<std::pair<int, int>> cells) {
        for (const auto& arrow : spec.arrows) {
            if (arrow.cells == cells) return true;
        }
        return false;
    };
    CHECK(has_arrow({{0, 0}, {1, 1}}));
    CHECK(has_arrow({{2, 2}, {3, 3}}));
    CHECK(has_arrow({{3, 0}, {4, 1}}));
    CHECK(has_arrow({{0, 3}, {1, 4}}));
    CHECK(has_arrow({{4, 4}}));
}

TEST_CASE("even dimensions are rejected by the odd construction") {
    CHECK_THROWS_AS(generate_eta_odd(4), std::invalid_argument);
    CHECK_THROWS_AS(generate_eta_odd(2), std::invalid_argument);
}

TEST_CASE("grid validation reports uncovered and doubled cells") {
    GridSpec missing{2, 2, {GridArrow{{{0, 0}, {1, 1}}}, GridArrow{{{0, 1}}}}};
    CHECK_THROWS_WITH_AS(build_choi(missing), doctest::Contains("uncovered"), ValidationError);

    GridSpec doubled{2, 2,
                     {GridArrow{{{0, 0}, {1, 1}}}, GridArrow{{{0, 1}}}, GridArrow{{{1, 0}}},
                      GridArrow{{{0, 0}}}}};
    CHECK_THROWS_WITH_AS(build_choi(doubled), doctest::Contains("doubly"), ValidationError);

    GridSpec too_long{2, 1, {GridArrow{{{0, 0}, {1, 1}}}, GridArrow{{{0, 1}}}, GridArrow{{{1, 0}}}}};
    CHECK_THROWS_AS(build_choi(too_long), ValidationError);
}

TEST_CASE("channel action on basis states follows the grid") {
    const ChoiMatrix eta = build_choi(generate_eta_din_2(2));
    // cell (0,0) sits on the first slot of the diagonal arrow
    CHECK(max_abs_diff(apply_channel(eta, basis_state(4, 0)), basis_state(2, 0)) <= 1e-12);
    // cell (1,0) is a dot, output |0>
    CHECK(max_abs_diff(apply_channel(eta, basis_state(4, 2)), basis_state(2, 0)) <= 1e-12);
    CHECK_THROWS_AS(apply_channel(eta, basis_state(2, 0)), std::invalid_argument);
}

TEST_CASE("channels preserve trace and positivity on random inputs") {
    std::mt19937_64 rng(9);
    for (const GridSpec& spec : {generate_eta_din_2(2), generate_eta_din_2(3), generate_eta_odd(3)}) {
        const ChoiMatrix eta = build_choi(spec);
        for (int trial = 0; trial < 25; ++trial) {
            const ComplexMatrix rho = random_density_matrix(rng, eta.d_in * eta.d_in);
            const ComplexMatrix out = apply_channel(eta, rho);
            CHECK(std::abs(out.trace().real() - 1.0) <= 1e-9);
            CHECK(is_positive_semidefinite(out, 1e-9));
        }
    }
}

TEST_CASE("Kraus operators reproduce the channel and resolve the identity") {
    std::mt19937_64 rng(13);
    const ChoiMatrix eta = build_choi(generate_eta_din_2(3));
    const auto kraus = kraus_operators(eta);
    ComplexMatrix resolution = ComplexMatrix::Zero(9, 9);
    for (const auto& op : kraus) resolution += op.adjoint() * op;
    CHECK(max_abs_diff(resolution, ComplexMatrix::Identity(9, 9)) <= 1e-9);

    const ComplexMatrix rho = random_density_matrix(rng, 9);
    ComplexMatrix via_kraus = ComplexMatrix::Zero(2, 2);
    for (const auto& op : kraus) via_kraus += op * rho * op.adjoint();
    CHECK(max_abs_diff(via_kraus, apply_channel(eta, rho)) <= 1e-9);
}

TEST_CASE("grid specs round-trip through their text form") {
    const GridSpec spec = generate_eta_din_2(4);
    const GridSpec parsed = parse_grid_spec(to_text(spec));
    CHECK(to_text(parsed) == to_text(spec));

    CHECK_THROWS_AS(parse_grid_spec("2\n0,0 1,1\n"), ValidationError);
    CHECK_THROWS_AS(parse_grid_spec("2 2\n0,0 1,1\n0x1\n1,0\n"), ValidationError);
}

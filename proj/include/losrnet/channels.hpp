#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "losrnet/tensor.hpp"

namespace losrnet {

/// One arrow of a grid: an ordered list of (i, j) cells, 0 <= i, j < d_in.
/// An arrow of length k maps its l-th cell to channel output |l>; a single
/// dot is an arrow of length one.
struct GridArrow {
    std::vector<std::pair<int, int>> cells;

    int length() const { return static_cast<int>(cells.size()); }
};

/// Combinatorial description of a grid channel: arrows covering the
/// d_in x d_in grid, each cell exactly once.
struct GridSpec {
    int d_in = 0;
    int d_out = 0;
    std::vector<GridArrow> arrows;
};

/// Throws ValidationError (listing offending cells) unless `spec` covers
/// every grid cell exactly once with arrows of length 1..d_out.
void validate_grid(const GridSpec& spec);

/// Sorts arrows lexicographically by first cell, so serialized specs are
/// bit-stable. Exact cover makes first cells unique.
GridSpec canonicalize(GridSpec spec);

/// Choi matrix of a channel from a d_in x d_in input to a d_out output,
/// on systems (input a, input a', output). PSD, Tr_out = identity,
/// trace = d_in^2. Carries its generating grid when built from one.
struct ChoiMatrix {
    ComplexMatrix matrix;
    int d_in = 0;
    int d_out = 0;
    std::optional<GridSpec> grid;

    SystemLayout layout() const;
};

/// Sum of |T><T| over arrows, |T> = sum_l |i_l, j_l, l>. Validates the
/// grid first; the result has rank equal to the number of arrows.
ChoiMatrix build_choi(const GridSpec& spec);

/// True when `choi` is PSD and has identity partial trace over the output,
/// both within `tol`.
bool choi_constraints_hold(const ChoiMatrix& choi, double tol = kPsdTol);

/// The d_in -> 2 construction: one diagonal arrow per 2x2 block plus the
/// shifted length-2 arrows below and right of it; leftover cells become
/// dots. Valid for any d_in >= 2.
GridSpec generate_eta_din_2(int d_in);

/// The odd d -> d construction: the main-diagonal arrow plus, for each
/// r = 1..(d-1)/2, the two arrows shifted by r (mod d). Throws
/// std::invalid_argument for even d, pointing at the even-dimension
/// lifting in the fidelity module.
GridSpec generate_eta_odd(int d);

/// Channel action Tr_in[choi (rho_in^T (x) 1_out)]. The transpose is always
/// applied, which keeps the action correct for complex inputs.
ComplexMatrix apply_channel(const ChoiMatrix& choi, const ComplexMatrix& rho_in);

/// Kraus operators (d_out x d_in^2) recovered from the Choi eigensystem.
std::vector<ComplexMatrix> kraus_operators(const ChoiMatrix& choi);

/// Text format: header "d_in d_out", then one arrow per line as
/// space-separated "i,j" cells.
std::string to_text(const GridSpec& spec);
GridSpec parse_grid_spec(std::istream& in);
GridSpec parse_grid_spec(const std::string& text);

}  // namespace losrnet

#include "losrnet/channels.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

namespace losrnet {

void validate_grid(const GridSpec& spec) {
    if (spec.d_in < 1 || spec.d_out < 1) {
        throw ValidationError("grid: dimensions must be positive");
    }
    std::vector<int> cover(static_cast<std::size_t>(spec.d_in) * spec.d_in, 0);
    for (const auto& arrow : spec.arrows) {
        if (arrow.length() < 1 || arrow.length() > spec.d_out) {
            throw ValidationError("grid: arrow length must be in 1..d_out");
        }
        for (std::size_t s = 0; s < arrow.cells.size(); ++s) {
            const auto [i, j] = arrow.cells[s];
            if (i < 0 || i >= spec.d_in || j < 0 || j >= spec.d_in) {
                throw ValidationError("grid: cell out of range");
            }
            for (std::size_t t = s + 1; t < arrow.cells.size(); ++t) {
                if (arrow.cells[t] == arrow.cells[s]) {
                    throw ValidationError("grid: repeated cell within one arrow");
                }
            }
            ++cover[static_cast<std::size_t>(i) * spec.d_in + j];
        }
    }
    std::ostringstream uncovered, doubled;
    for (int i = 0; i < spec.d_in; ++i) {
        for (int j = 0; j < spec.d_in; ++j) {
            const int c = cover[static_cast<std::size_t>(i) * spec.d_in + j];
            if (c == 0) uncovered << " (" << i << "," << j << ")";
            if (c > 1) doubled << " (" << i << "," << j << ")";
        }
    }
    if (!uncovered.str().empty() || !doubled.str().empty()) {
        std::string msg = "grid: not an exact cover;";
        if (!uncovered.str().empty()) msg += " uncovered:" + uncovered.str();
        if (!doubled.str().empty()) msg += " doubly covered:" + doubled.str();
        throw ValidationError(msg);
    }
}

GridSpec canonicalize(GridSpec spec) {
    std::sort(spec.arrows.begin(), spec.arrows.end(),
              [](const GridArrow& a, const GridArrow& b) { return a.cells < b.cells; });
    return spec;
}

SystemLayout ChoiMatrix::layout() const {
    return SystemLayout{{"a", d_in}, {"a'", d_in}, {"out", d_out}};
}

ChoiMatrix build_choi(const GridSpec& spec) {
    validate_grid(spec);
    const int d = spec.d_in;
    const int total = d * d * spec.d_out;
    ComplexMatrix eta = ComplexMatrix::Zero(total, total);
    auto basis_index = [&](int i, int j, int l) { return (i * d + j) * spec.d_out + l; };
    for (const auto& arrow : spec.arrows) {
        ComplexVector t = ComplexVector::Zero(total);
        for (int l = 0; l < arrow.length(); ++l) {
            t(basis_index(arrow.cells[l].first, arrow.cells[l].second, l)) = 1.0;
        }
        eta += t * t.adjoint();
    }
    return ChoiMatrix{std::move(eta), spec.d_in, spec.d_out, canonicalize(spec)};
}

bool choi_constraints_hold(const ChoiMatrix& choi, double tol) {
    if (!is_positive_semidefinite(choi.matrix, tol)) return false;
    const ComplexMatrix marginal = partial_trace(choi.matrix, choi.layout(), {"a", "a'"});
    const ComplexMatrix identity =
        ComplexMatrix::Identity(choi.d_in * choi.d_in, choi.d_in * choi.d_in);
    return max_abs_diff(marginal, identity) <= tol;
}

GridSpec generate_eta_din_2(int d_in) {
    if (d_in < 2) throw std::invalid_argument("generate_eta_din_2: d_in must be >= 2");
    GridSpec spec{d_in, 2, {}};
    std::vector<bool> covered(static_cast<std::size_t>(d_in) * d_in, false);
    auto add = [&](int i0, int j0, int i1, int j1) {
        spec.arrows.push_back(GridArrow{{{i0, j0}, {i1, j1}}});
        covered[static_cast<std::size_t>(i0) * d_in + j0] = true;
        covered[static_cast<std::size_t>(i1) * d_in + j1] = true;
    };
    for (int r = 0; 2 * r + 1 < d_in; ++r) {
        add(2 * r, 2 * r, 2 * r + 1, 2 * r + 1);
        for (int k = 1; k <= d_in - 2 - 2 * r; ++k) {
            add(2 * r + k, 2 * r, 2 * r + k + 1, 2 * r + 1);
            add(2 * r, 2 * r + k, 2 * r + 1, 2 * r + k + 1);
        }
    }
    // Cells not reached by any length-2 arrow become dots.
    for (int i = 0; i < d_in; ++i) {
        for (int j = 0; j < d_in; ++j) {
            if (!covered[static_cast<std::size_t>(i) * d_in + j]) {
                spec.arrows.push_back(GridArrow{{{i, j}}});
            }
        }
    }
    spec = canonicalize(std::move(spec));
    validate_grid(spec);
    return spec;
}

GridSpec generate_eta_odd(int d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument(
            "generate_eta_odd: d must be odd and >= 3; for even output dimension use the "
            "lifting of the (d-1)-dimensional construction (fidelity_even_lifted)");
    }
    GridSpec spec{d, d, {}};
    auto shifted = [&](int row_shift, int col_shift) {
        GridArrow arrow;
        for (int s = 0; s < d; ++s) {
            arrow.cells.push_back({(s + row_shift) % d, (s + col_shift) % d});
        }
        return arrow;
    };
    spec.arrows.push_back(shifted(0, 0));
    for (int r = 1; r <= (d - 1) / 2; ++r) {
        spec.arrows.push_back(shifted(0, r));
        spec.arrows.push_back(shifted(r, 0));
    }
    spec = canonicalize(std::move(spec));
    validate_grid(spec);
    return spec;
}

ComplexMatrix apply_channel(const ChoiMatrix& choi, const ComplexMatrix& rho_in) {
    const int din2 = choi.d_in * choi.d_in;
    if (rho_in.rows() != din2 || rho_in.cols() != din2) {
        throw std::invalid_argument("apply_channel: input dimension must be d_in^2");
    }
    const ComplexMatrix lifted =
        kron(rho_in.transpose(), ComplexMatrix::Identity(choi.d_out, choi.d_out));
    const ComplexMatrix product = choi.matrix * lifted;
    return partial_trace(product, choi.layout(), {"out"});
}

std::vector<ComplexMatrix> kraus_operators(const ChoiMatrix& choi) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(choi.matrix);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("kraus_operators: eigendecomposition failed");
    }
    std::vector<ComplexMatrix> kraus;
    const int din2 = choi.d_in * choi.d_in;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double mu = solver.eigenvalues()(k);
        if (mu < -kPsdTol) throw NumericalError("kraus_operators: Choi matrix is not PSD");
        if (mu <= kPsdTol) continue;
        ComplexMatrix op(choi.d_out, din2);
        for (int in = 0; in < din2; ++in) {
            for (int out = 0; out < choi.d_out; ++out) {
                op(out, in) = std::sqrt(mu) * solver.eigenvectors()(in * choi.d_out + out, k);
            }
        }
        kraus.push_back(std::move(op));
    }
    return kraus;
}

std::string to_text(const GridSpec& spec) {
    std::ostringstream out;
    out << spec.d_in << " " << spec.d_out << "\n";
    for (const auto& arrow : spec.arrows) {
        for (std::size_t s = 0; s < arrow.cells.size(); ++s) {
            if (s > 0) out << " ";
            out << arrow.cells[s].first << "," << arrow.cells[s].second;
        }
        out << "\n";
    }
    return out.str();
}

GridSpec parse_grid_spec(std::istream& in) {
    GridSpec spec;
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("grid spec: missing header line");
    {
        std::istringstream header(line);
        if (!(header >> spec.d_in >> spec.d_out)) {
            throw ValidationError("grid spec: header must be 'd_in d_out'");
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        GridArrow arrow;
        std::istringstream cells(line);
        std::string cell;
        while (cells >> cell) {
            const auto comma = cell.find(',');
            if (comma == std::string::npos) {
                throw ValidationError("grid spec: cell must be 'i,j', got '" + cell + "'");
            }
            try {
                arrow.cells.push_back(
                    {std::stoi(cell.substr(0, comma)), std::stoi(cell.substr(comma + 1))});
            } catch (const std::exception&) {
                throw ValidationError("grid spec: cannot parse cell '" + cell + "'");
            }
        }
        if (arrow.cells.empty()) throw ValidationError("grid spec: empty arrow line");
        spec.arrows.push_back(std::move(arrow));
    }
    validate_grid(spec);
    return canonicalize(std::move(spec));
}

GridSpec parse_grid_spec(const std::string& text) {
    std::istringstream in(text);
    return parse_grid_spec(in);
}

}  // namespace losrnet

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace su3::ed {

// Periodic SU(3) chain of L sites, 3 <= L <= 12. Basis states are base-3
// integers with site 1 as the most significant digit.
struct ChainSpec {
    int L = 3;
};

enum class HamiltonianForm {
    Permutation,  // Σ_j P_{j,j+1}
    Spin1,        // Σ_j [S_j·S_{j+1} + (S_j·S_{j+1})²]
};

std::int64_t hilbert_dimension(const ChainSpec& spec);

// Two-site bond operator on C^3 ⊗ C^3, index 3a + b.
Eigen::Matrix<double, 9, 9> bond_operator(HamiltonianForm form);

// States with the given number of sites in each color, in increasing order.
struct Sector {
    int L = 0;
    std::vector<std::int64_t> states;
    std::vector<std::int32_t> index;  // full-space state -> position, or −1
};
Sector color_sector(const ChainSpec& spec, int n0, int n1, int n2);
Sector balanced_sector(const ChainSpec& spec);  // requires L divisible by 3
Sector full_space(const ChainSpec& spec);

// Matrix-free action y = H x restricted to a sector. The form must conserve
// colors, which both supported forms do. Rows are split across threads and
// each output entry is accumulated in a fixed order.
class Hamiltonian {
public:
    Hamiltonian(const Sector& sector, HamiltonianForm form, int threads = 1);
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
    Eigen::MatrixXd dense() const;  // limited to sectors of dimension <= 4096
    std::size_t dim() const { return sector_.states.size(); }
    const Sector& sector() const { return sector_; }

private:
    const Sector& sector_;
    Eigen::Matrix<double, 9, 9> bond_;
    int threads_;
};

struct LanczosOptions {
    std::uint64_t seed = 12345;
    int max_iterations = 400;
    double eigenvalue_tolerance = 1e-13;
    double residual_tolerance = 1e-10;
    double degeneracy_tolerance = 1e-10;
};

struct SpectrumResult {
    double E0 = 0.0;
    double energy_per_bond = 0.0;
    std::string method;  // "dense" or "lanczos"
    double residual = 0.0;
    int iterations = 0;
    int degeneracy = 1;
    bool global_minimum_checked = false;
    double global_minimum_gap = 0.0;  // E0(sector) − E0(full space), dense only
    std::map<std::string, double> observables;
    Eigen::MatrixXd rdm2, rdm3;
    std::vector<Eigen::VectorXd> ground_space;  // full-space vectors
};

// Dense diagonalization of the balanced sector for L <= 6 (with a
// full-spectrum global-minimum check) and Lanczos above.
SpectrumResult ground_state(const ChainSpec& spec, int threads = 1, const LanczosOptions& options = {});

// Lowest eigenpairs by Lanczos with full reorthogonalization. Degenerate
// ground states are collected by deflation.
SpectrumResult lanczos_ground_state(const Hamiltonian& h, const LanczosOptions& options = {});

// Averages over the ground space: p12, p13, p12p23, and the reduced density
// matrices of sites 1..2 and 1..3.
void fill_observables(const ChainSpec& spec, SpectrumResult& result);

// Permutation of sites a and b (1-based) applied to a full-space vector.
Eigen::VectorXd apply_site_swap(const ChainSpec& spec, const Eigen::VectorXd& v, int a, int b);

// Reduced density matrix of the first k sites.
Eigen::MatrixXd reduced_density(const ChainSpec& spec, const Eigen::VectorXd& v, int k);

}  // namespace su3::ed

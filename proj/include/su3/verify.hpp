#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "su3/three_site.hpp"

namespace su3::verify {

// One numeric comparison. For residual checks the reference is 0 and the
// error is the residual itself.
struct Check {
    std::string name;
    double measured = 0.0;
    double reference = 0.0;
    double error = 0.0;
    double tolerance = 0.0;
    bool pass() const { return error <= tolerance; }
};

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    bool pass() const;
    const Check* worst() const;  // largest error/tolerance ratio
};

struct Options {
    std::uint64_t seed = 7;
    int threads = 1;
    int algebra_samples = 50;
    int matrix_samples = 20;
    three_site::ThreeSiteProblem problem;
};

// Reference constants, with the reference digits.
namespace reference {
inline constexpr double omega33_thermodynamic = -0.703212076746182;
inline constexpr double alpha33_thermodynamic = -0.12956817625994;
inline constexpr double p12p23_thermodynamic = 0.191368820116674;
struct TableRow {
    int L;
    double omega33;
    double p12p23;
};
inline constexpr TableRow table[] = {
    {3, -1.0, 1.0},
    {6, -0.767591879243998, 0.309579305659537},
    {9, -0.731082881703061, 0.239661721591669},
};
}  // namespace reference

// Suites shared by the CLI and the acceptance binary.
std::vector<Check> algebra_checks(std::uint64_t seed, int samples);
std::vector<Check> matrix_checks(std::uint64_t seed, int samples);
std::vector<Check> two_site_value_checks();
std::vector<Check> two_site_equation_checks();
std::vector<Check> decoupled_recursion_checks(const three_site::ThreeSiteProblem& problem);
std::vector<Check> three_site_checks(const three_site::ThreeSiteProblem& problem);
std::vector<Check> lattice_checks(int threads);
std::vector<Check> structural_checks(const three_site::ThreeSiteProblem& problem);

// Criteria 1..7 in the order of the acceptance list.
Criterion run_criterion(int id, const Options& options);

}  // namespace su3::verify

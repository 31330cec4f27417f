#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "su3/tensor.hpp"

namespace su3 {

// Representation carried by a line: fundamental [n] or antifundamental [n̄].
enum class Rep { Fundamental, Antifundamental };

// R-matrix kind by the representations of its two spaces.
enum class RKind { FF, FA, AF, AA };

RKind kind_of(Rep first, Rep second);
std::string to_string(RKind kind);

// Check-type R-matrix with legs i (left in), k (bottom in), j (top out), l
// (right out). FF and AA give I + λP. FA and AF give E − λP; see README for
// the sign of the mixed matrix.
LabeledTensor r_matrix(RKind kind, int n, cplx lambda);

// The same R-matrix as a linear map on C^n ⊗ C^n: rows (j,l), columns (i,k).
Eigen::MatrixXcd r_operator(RKind kind, int n, cplx lambda);

// The two combinations (n, n̄, n) and (n̄, n, n̄) need a +n shift in the
// intertwining matrix.
bool is_special_combination(Rep r1, Rep r2, Rep r3);

enum class ShiftMode { Shifted, Omitted };

// Max-abs residual of the Yang-Baxter equation. With Shifted the +n shift is
// applied to the intertwining matrix of special combinations. Omitted is only
// accepted for standard combinations.
double check_yang_baxter(Rep r1, Rep r2, Rep r3, cplx lambda, cplx mu, cplx nu, int n = 3,
                         ShiftMode mode = ShiftMode::Shifted);

// Residual with an arbitrary shift of the intertwining argument. Used to
// show that special combinations fail without the shift.
double yang_baxter_residual(Rep r1, Rep r2, Rep r3, cplx lambda, cplx mu, cplx nu, cplx shift, int n = 3);

struct IdentityCheck {
    double residual = 0.0;  // max-abs deviation from scalar times the reference
    cplx scalar{0.0, 0.0};  // the expected scalar factor
};

enum class UnitarityKind { Standard, Special1, Special2 };

IdentityCheck check_unitarity(UnitarityKind kind, int n, cplx lambda, cplx mu);

enum class FusionDirection { Up, Down };

// Three lines with parameters λ, λ+1, λ+2 leave an ε vertex and are crossed
// by a line with parameter μ. Up: the crossing line is fundamental. Down: it
// is antifundamental. Only n = 3 is supported.
IdentityCheck check_fusion(int n, cplx lambda, cplx mu, FusionDirection direction);

}  // namespace su3

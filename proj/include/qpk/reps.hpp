#pragma once

#include "qpk/hopf.hpp"
#include "qpk/word.hpp"

#include <vector>

namespace qpk::reps {

using hopf::AlgebraKind;

/// pi_slot(g^power) as an operator sum (a single Weyl word for generators,
/// a signed product for antipode images).
OperatorSum repGenerator(AlgebraKind k, hopf::Gen g, int power, int slot);
OperatorSum repMonomial(AlgebraKind k, const hopf::Monomial& m, int slot);
/// q^a (qv)^b -> exp(-pi(a hbar + b/hbar)) resp. exp(pi i(a hbar + b/hbar)).
Prefactor qpolyPrefactor(AlgebraKind k, int qExp, int qvExp);

/// (pi (x) ... (x) pi)(Delta^{n-1}(u)) on the given slots.
OperatorSum tensorAction(AlgebraKind k, const hopf::NcPoly& u, const std::vector<int>& slots);
/// pi'(u) = (pi(S(u)))^t (left) or 'pi(u) = (pi(S^{-1}(u)))^t (right).
OperatorSum dualAction(AlgebraKind k, const hopf::NcPoly& u, bool leftDual, int slot);

/// S_ij = e^{-(1/2 pi hbar)(P_i Q_j - P_i* Q_j*)} (same integer matrix in
/// both algebra variants).
Conjugator buildS(int i, int j);
/// F_ij: the unitary tensor-square decomposition map.
OperatorWord buildF(AlgebraKind k, int i, int j);
/// T_ij = F_ji^{-1} in closed form.
OperatorWord buildT(AlgebraKind k, int i, int j);
/// A^{(m)} with formal m, or with m substituted by a rational value.
OperatorWord buildAm(AlgebraKind k, int slot);
OperatorWord buildAmValue(AlgebraKind k, int slot, const Rational& mval);
/// A = c S e^{-q_s + hbar^{-1} p_t} carrying the formal constant c.
OperatorWord buildA(int slot);
/// Weak isomorphisms between the representation and its duals.
OperatorWord buildC(int slot);
OperatorWord buildD(int slot);
/// (P_sigma f)({x_j}) = f({x_sigma(j)}) for a permutation given in cycle form.
OperatorWord buildPerm(const std::vector<std::vector<int>>& cycles);

/// The three-slot realization of the order-three operator:
/// F_12 P_(132) D_1^{-1} C_3^{-1} F_12^{-1}, acting on M (x) H (x) H'.
OperatorWord buildAThreeSlot();

}  // namespace qpk::reps

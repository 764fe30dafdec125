"""Separability witnesses for two-mode states, with closed-form cross-checks.

Second-order witnesses (variance based):

  * product form:  Var(x_a+x_b) * Var(p_a-p_b) >= 1 for every separable
    state (equivalently Delta((x_a+x_b)/sqrt2) Delta((p_a-p_b)/sqrt2) >= 1/2).
  * sum form:      Var(u) + Var(v) >= m^2 + 1/m^2 for separable states,
    with u = |m| x_a + x_b/m and v = |m| p_a - p_b/m.

Fourth-order witnesses built from the angular-momentum-like triple
S = (adag b + a bdag, ...)/2 and the squeezing-like triple
K = (adag bdag + a b, ...)/2: the uncertainty product for S or K must
still hold after the mode-b partial transpose if the state is separable.
Each bracket below equals 4 * Var of the transposed S/K component, and
the right-hand side equals |2 <S_z or K_z>|^2 on the transposed state,
so a separable state always satisfies lhs >= rhs.

The exact test: a separable state's partial transpose has no negative
eigenvalues, so any negative eigenvalue certifies entanglement.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import algebra
from .algebra import A, AD, B, BD, ONE, OperatorPoly, expectation_poly, quadrature_poly, variance
from .errors import NormalizationError
from .fock import TOL_NORM, TOL_PSD, DensityOperator, hermitian_eigenvalues, partial_transpose_b

# Margin below a separable bound before a witness fires; keeps states that
# merely saturate a bound (vacuum does, for several) out of the detections.
DETECTION_MARGIN = TOL_PSD

_REAL_TOL = 1e-10


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of one witness on one state."""

    name: str
    quantities: dict[str, float] = field(default_factory=dict)
    separable_bound_holds: bool = True
    entangled_detected: bool = False
    conventions: str = ""


def _real(value: complex, label: str) -> float:
    if abs(value.imag) > _REAL_TOL * max(1.0, abs(value)):
        raise ValueError(f"{label} should be real, got {value!r}")
    return value.real


# -- second-order witnesses --------------------------------------------

_U_SUM = quadrature_poly({"xa": 1.0, "xb": 1.0})
_V_DIFF = quadrature_poly({"pa": 1.0, "pb": -1.0})


def mancini_witness(rho: DensityOperator) -> CriterionReport:
    """Variance-product witness: separable states keep Var(u) Var(v) >= 1.

    Quantities carry both normalizations: M_x = Var(x_a+x_b) Var(p_a-p_b)
    against bound 1, and the standard-deviation product of the
    1/sqrt(2)-normalized pair against bound 1/2 (M_x is 4 times the
    normalized variance product).
    """
    var_u = variance(rho, _U_SUM)
    var_v = variance(rho, _V_DIFF)
    m_x = var_u * var_v
    detected = m_x < 1.0 - DETECTION_MARGIN
    return CriterionReport(
        name="Mancini",
        quantities={
            "M_x": m_x,
            "var_u": var_u,
            "var_v": var_v,
            "stddev_product_normalized": math.sqrt(m_x) / 2.0,
            "bound_M_x": 1.0,
            "bound_stddev_product": 0.5,
        },
        separable_bound_holds=not detected,
        entangled_detected=detected,
        conventions="u=xa+xb, v=pa-pb; x=(a+ad)/sqrt2; M_x bound 1 equals "
        "(stddev bound 1/2)^2 times 4",
    )


def duan_witness(rho: DensityOperator, m: float = 1.0) -> CriterionReport:
    """Variance-sum witness at gain m: separable states keep M >= m^2 + 1/m^2.

    The commutator floor |m^2 - 1/m^2| <= M holds for every state and is
    reported but plays no part in the verdict.
    """
    if m == 0:
        raise ValueError("gain m must be nonzero")
    u = quadrature_poly({"xa": abs(m), "xb": 1.0 / m})
    v = quadrature_poly({"pa": abs(m), "pb": -1.0 / m})
    total = variance(rho, u) + variance(rho, v)
    bound = m * m + 1.0 / (m * m)
    detected = total < bound - DETECTION_MARGIN
    return CriterionReport(
        name=f"Duan(m={m:g})",
        quantities={
            "M": total,
            "m": float(m),
            "bound": bound,
            "heisenberg_floor": abs(m * m - 1.0 / (m * m)),
        },
        separable_bound_holds=not detected,
        entangled_detected=detected,
        conventions="u=|m|xa+xb/m, v=|m|pa-pb/m",
    )


def duan_mancini_relation(rho: DensityOperator) -> tuple[float, float, float]:
    """(M, M_minus, M_x) at m=1; M^2 = M_minus^2 + 4 M_x identically."""
    var_u = variance(rho, _U_SUM)
    var_v = variance(rho, _V_DIFF)
    return var_u + var_v, var_u - var_v, var_u * var_v


# -- fourth-order witnesses --------------------------------------------

# Expectations entering the transposed S-triple (angular-momentum) test.
_SU2_TERMS = {
    "ad_a_b_bd": AD * A * B * BD,
    "a_ad_bd_b": A * AD * BD * B,
    "ad2_bd2": AD * AD * BD * BD,
    "a2_b2": A * A * B * B,
    "cross_plus": AD * BD + A * B,
    "cross_minus": AD * BD - A * B,
    "z": AD * A - BD * B,
}

# Expectations entering the transposed K-triple (squeezing) test.
_SU11_TERMS = {
    "ad_a_bd_b": AD * A * BD * B,
    "a_ad_b_bd": A * AD * B * BD,
    "ad2_b2": AD * AD * B * B,
    "a2_bd2": A * A * BD * BD,
    "cross_plus": AD * B + A * BD,
    "cross_minus": AD * B - A * BD,
    "z": AD * A + B * BD,
}


def _pt_uncertainty_product(rho: DensityOperator, terms) -> tuple[float, float, float, float]:
    e_sym = expectation_poly(rho, terms[0]) + expectation_poly(rho, terms[1])
    e_pair = expectation_poly(rho, terms[2]) + expectation_poly(rho, terms[3])
    c_plus = expectation_poly(rho, terms[4])
    c_minus = expectation_poly(rho, terms[5])
    bracket1 = _real(e_sym + e_pair - c_plus * c_plus, "first uncertainty bracket")
    bracket2 = _real(e_sym - e_pair + c_minus * c_minus, "second uncertainty bracket")
    rhs = abs(expectation_poly(rho, terms[6])) ** 2
    return bracket1, bracket2, bracket1 * bracket2, rhs


def su2_pt_witness(rho: DensityOperator) -> CriterionReport:
    """Partially transposed uncertainty product for the S triple.

    lhs = [<ad a b bd> + <a ad bd b> + <ad^2 bd^2> + <a^2 b^2> - <ad bd + a b>^2]
        * [<ad a b bd> + <a ad bd b> - <ad^2 bd^2> - <a^2 b^2> + <ad bd - a b>^2]
    rhs = |<ad a - bd b>|^2;  separable states keep lhs >= rhs.
    """
    t = _SU2_TERMS
    order = (
        t["ad_a_b_bd"], t["a_ad_bd_b"], t["ad2_bd2"], t["a2_b2"],
        t["cross_plus"], t["cross_minus"], t["z"],
    )
    bracket1, bracket2, lhs, rhs = _pt_uncertainty_product(rho, order)
    detected = lhs < rhs - DETECTION_MARGIN
    return CriterionReport(
        name="SU2PT",
        quantities={"lhs": lhs, "rhs": rhs, "bracket1": bracket1, "bracket2": bracket2},
        separable_bound_holds=not detected,
        entangled_detected=detected,
        conventions="brackets equal 4*Var of the transposed S_x, S_y; "
        "<ad bd - a b> is imaginary so its square enters <= 0",
    )


def su11_pt_witness(rho: DensityOperator, mode: str = "ladder") -> CriterionReport:
    """Partially transposed uncertainty product for the K triple.

    Ladder mode evaluates
    lhs = [<ad a bd b> + <a ad b bd> + <ad^2 b^2> + <a^2 bd^2> - <ad b + a bd>^2]
        * [<ad a bd b> + <a ad b bd> - <ad^2 b^2> - <a^2 bd^2> + <ad b - a bd>^2]
    rhs = |<ad a + b bd>|^2;  quadrature mode evaluates the identical
    inequality written with position/momentum moments.  Violation
    (lhs < rhs) certifies entanglement.

    On the one-excitation Bell family the margin reduces to
    lhs - rhs = -8 * (|a* b|^2 - 2 Re(a* b)^2 Im(a* b)^2), so detection
    occurs exactly when alpha*beta != 0.
    """
    if mode == "ladder":
        t = _SU11_TERMS
        order = (
            t["ad_a_bd_b"], t["a_ad_b_bd"], t["ad2_b2"], t["a2_bd2"],
            t["cross_plus"], t["cross_minus"], t["z"],
        )
        bracket1, bracket2, lhs, rhs = _pt_uncertainty_product(rho, order)
    elif mode == "quadrature":
        bracket1, bracket2, lhs, rhs = _su11_quadrature_brackets(rho)
    else:
        raise ValueError(f"mode must be 'ladder' or 'quadrature', got {mode!r}")
    detected = lhs < rhs - DETECTION_MARGIN
    return CriterionReport(
        name="SU11PT",
        quantities={"lhs": lhs, "rhs": rhs, "bracket1": bracket1, "bracket2": bracket2},
        separable_bound_holds=not detected,
        entangled_detected=detected,
        conventions=f"mode={mode}; brackets equal 4*Var of the transposed K_x, K_y; "
        "Bell-family margin is -8*(|a*b|^2 - 2 Re^2 Im^2)",
    )


_XA = algebra.QUADRATURES["xa"]
_PA = algebra.QUADRATURES["pa"]
_XB = algebra.QUADRATURES["xb"]
_PB = algebra.QUADRATURES["pb"]

_QUAD_TERMS = {
    "xx": _XA * _XB,
    "pp": _PA * _PB,
    "xp": _XA * _PB,
    "px": _PA * _XB,
    "xa_pa_pb_xb": _XA * _PA * _PB * _XB,
    "pa_xa_xb_pb": _PA * _XA * _XB * _PB,
    "xa_pa_xb_pb": _XA * _PA * _XB * _PB,
    "pa_xa_pb_xb": _PA * _XA * _PB * _XB,
    "sum_sq": _XA * _XA + _PA * _PA + _XB * _XB + _PB * _PB,
}


def _su11_quadrature_brackets(rho: DensityOperator) -> tuple[float, float, float, float]:
    q = _QUAD_TERMS
    mean_xx = _real(expectation_poly(rho, q["xx"]), "<xa xb>")
    mean_pp = _real(expectation_poly(rho, q["pp"]), "<pa pb>")
    mixed1 = expectation_poly(rho, q["xa_pa_pb_xb"]) + expectation_poly(rho, q["pa_xa_xb_pb"])
    bracket1 = (
        variance(rho, q["xx"])
        + variance(rho, q["pp"])
        + _real(mixed1, "<xa pa pb xb> + <pa xa xb pb>")
        - 2.0 * mean_xx * mean_pp
    )
    mean_xp = _real(expectation_poly(rho, q["xp"]), "<xa pb>")
    mean_px = _real(expectation_poly(rho, q["px"]), "<pa xb>")
    mixed2 = expectation_poly(rho, q["xa_pa_xb_pb"]) + expectation_poly(rho, q["pa_xa_pb_xb"])
    bracket2 = (
        variance(rho, q["xp"])
        + variance(rho, q["px"])
        - _real(mixed2, "<xa pa xb pb> + <pa xa pb xb>")
        + 2.0 * mean_xp * mean_px
    )
    rhs = 0.25 * abs(expectation_poly(rho, q["sum_sq"])) ** 2
    return bracket1, bracket2, bracket1 * bracket2, rhs


# -- exact partial-transpose test ---------------------------------------

def ppt_witness(rho: DensityOperator) -> CriterionReport:
    """Spectrum test: any eigenvalue of rho^PT below -tol certifies entanglement."""
    pt = partial_transpose_b(rho)
    eigs = hermitian_eigenvalues(pt.entries)
    min_eig = float(eigs[0])
    negativity = float(-np.sum(eigs[eigs < 0.0])) + 0.0  # +0.0 avoids "-0.0"
    detected = min_eig < -TOL_PSD
    return CriterionReport(
        name="PPT",
        quantities={"min_eigenvalue": min_eig, "negativity": negativity},
        separable_bound_holds=not detected,
        entangled_detected=detected,
        conventions="partial transpose over mode b; negativity = sum |negative eigenvalues|",
    )


# -- closed forms for the one-excitation Bell family --------------------

def bell_closed_forms(alpha: complex, beta: complex, m: float = 1.0) -> dict:
    """Analytic witness values for alpha|1,0> + beta|0,1>.

    Returns M_closed (variance sum at gain m), Mx_closed (variance product
    at m=1), su11_reduced (positive exactly when the K-triple test fires),
    and the four partial-transpose eigenvalues.
    """
    if m == 0:
        raise ValueError("gain m must be nonzero")
    alpha, beta = complex(alpha), complex(beta)
    weight = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(weight - 1.0) > TOL_NORM:
        raise NormalizationError(
            f"|alpha|^2 + |beta|^2 = {weight!r}, expected 1 within {TOL_NORM}"
        )
    overlap = alpha.conjugate() * beta
    m2 = m * m
    return {
        "M_closed": m2 + 1.0 / m2 + 2.0 * (abs(alpha) ** 2 * m2 + abs(beta) ** 2 / m2),
        "Mx_closed": 4.0 - 4.0 * overlap.real**2,
        "su11_reduced": abs(overlap) ** 2 - 2.0 * overlap.real**2 * overlap.imag**2,
        "ppt_spectrum": sorted(
            (
                -abs(alpha) * abs(beta),
                abs(alpha) ** 2,
                abs(beta) ** 2,
                abs(alpha) * abs(beta),
            )
        ),
    }


# -- DSL cross-check registry -------------------------------------------

# Operator polynomials as built above, next to the DSL text that must
# lower to exactly the same canonical form (see tests).
BUILTIN_OPERATORS: dict[str, tuple[OperatorPoly, str]] = {
    "S_x": ((AD * B + A * BD) * 0.5, "(ad*b+a*bd)/2"),
    "S_y": ((AD * B - A * BD) * (1.0 / 2j), "(ad*b-a*bd)/(2*i)"),
    "S_z": ((AD * A - BD * B) * 0.5, "(ad*a-bd*b)/2"),
    "K_x": ((AD * BD + A * B) * 0.5, "(ad*bd+a*b)/2"),
    "K_y": ((AD * BD - A * B) * (1.0 / 2j), "(ad*bd-a*b)/(2*i)"),
    "K_z": ((AD * A + BD * B + ONE) * 0.5, "(ad*a+bd*b+1)/2"),
    "u_sum": (_U_SUM, "xa+xb"),
    "v_diff": (_V_DIFF, "pa-pb"),
}

# Full witness inequalities in DSL form; each evaluates to the same verdict
# as the corresponding function above (up to the detection margin).
_SU11_LHS_DSL = (
    "(E[ad*a*bd*b]+E[a*ad*b*bd]+E[ad^2*b^2]+E[a^2*bd^2]"
    "-E[ad*b+a*bd]*E[ad*b+a*bd])"
    "*(E[ad*a*bd*b]+E[a*ad*b*bd]-E[ad^2*b^2]-E[a^2*bd^2]"
    "+E[ad*b-a*bd]*E[ad*b-a*bd])"
)
_SU2_LHS_DSL = (
    "(E[ad*a*b*bd]+E[a*ad*bd*b]+E[ad^2*bd^2]+E[a^2*b^2]"
    "-E[ad*bd+a*b]*E[ad*bd+a*b])"
    "*(E[ad*a*b*bd]+E[a*ad*bd*b]-E[ad^2*bd^2]-E[a^2*b^2]"
    "+E[ad*bd-a*b]*E[ad*bd-a*b])"
)

BUILTIN_QUERIES: dict[str, str] = {
    "mancini": "Var[xa+xb]*Var[pa-pb] >= 1",
    "duan_m1": "Var[xa+xb]+Var[pa-pb] >= 2",
    "su2_pt": _SU2_LHS_DSL + " >= abs2(E[ad*a-bd*b])",
    "su11_pt": _SU11_LHS_DSL + " >= abs2(E[ad*a+b*bd])",
    # Uncertainty product for the K triple on the untransposed state; every
    # physical state obeys it (vacuum saturates it).
    "k_uncertainty": "Var[(ad*bd+a*b)/2]*Var[(ad*bd-a*b)/(2*i)]"
    " >= abs2(E[(ad*a+bd*b+1)/2])/4",
}

"""Acceptance suite: the exit criteria for the package, one test each.

Run with ``pytest tests/test_acceptance.py -s`` to see one pass/fail line
per criterion.  Every tolerance is fixed here, not configurable.
"""

import json

import numpy as np
import pytest

from entcert import (
    Cutoff,
    bell_closed_forms,
    bell_xp_state,
    density_from_pure,
    duan_mancini_relation,
    duan_witness,
    expectation_poly,
    hermitian_eigenvalues,
    mancini_witness,
    partial_transpose_b,
    partial_transpose_matrix,
    ppt_witness,
    product_coherent,
    su2_pt_witness,
    su11_pt_witness,
    two_mode_squeezed_vacuum,
    variance,
)
from entcert.cli import main
from entcert.criteria import BUILTIN_OPERATORS, BUILTIN_QUERIES
from entcert.dsl import evaluate_text, lower, parse_operator

from conftest import random_bell_params, random_density, word_matrix
from test_algebra import poly_from_word

SQRT_HALF = 2.0**-0.5


def _criterion(num: int, description: str, ok: bool, detail: str = ""):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {description}")
    assert ok, f"criterion {num}: {description}" + (f" [{detail}]" if detail else "")


def _bell_rho(alpha, beta, d=3):
    return density_from_pure(bell_xp_state(alpha, beta, Cutoff(d, d)))


def _grid_params(n_theta=9, n_phi=8):
    for theta in np.linspace(0.0, np.pi / 2.0, n_theta):
        for phi in 2.0 * np.pi * np.arange(n_phi) / n_phi:
            yield np.cos(theta) * np.exp(1j * phi), complex(np.sin(theta))


def test_criterion_01_ppt_spectrum(rng):
    worst = 0.0
    for _ in range(50):
        alpha, beta = random_bell_params(rng)
        rho = _bell_rho(alpha, beta, d=2)
        eigs = hermitian_eigenvalues(partial_transpose_b(rho).entries)
        expected = bell_closed_forms(alpha, beta)["ppt_spectrum"]
        worst = max(worst, float(np.max(np.abs(eigs - np.asarray(expected)))))
    _criterion(
        1,
        "PT spectrum of the Bell family equals {|a|^2, |b|^2, +-|a b|} within 1e-9",
        worst <= 1e-9,
        f"worst deviation {worst:.3e}",
    )


def test_criterion_02_duan_closed_form(rng):
    worst = 0.0
    bound_ok = True
    for _ in range(20):
        alpha, beta = random_bell_params(rng)
        rho = _bell_rho(alpha, beta)
        for m in (0.5, 1.0, 2.0):
            report = duan_witness(rho, m)
            closed = bell_closed_forms(alpha, beta, m)["M_closed"]
            worst = max(worst, abs(report.quantities["M"] - closed))
            bound_ok &= report.quantities["M"] >= m * m + 1.0 / (m * m) - 1e-12
    _criterion(
        2,
        "variance-sum M matches m^2+1/m^2+2(|a|^2 m^2+|b|^2/m^2) within 1e-9, never below bound",
        worst <= 1e-9 and bound_ok,
        f"worst deviation {worst:.3e}",
    )


def test_criterion_03_mancini_closed_form():
    worst = 0.0
    values = []
    for alpha, beta in _grid_params():
        m_x = mancini_witness(_bell_rho(alpha, beta)).quantities["M_x"]
        closed = bell_closed_forms(alpha, beta)["Mx_closed"]
        worst = max(worst, abs(m_x - closed))
        values.append((m_x, alpha * beta.conjugate()))
    minimum, overlap_at_min = min(values, key=lambda pair: pair[0])
    min_ok = minimum >= 3.0 - 1e-6
    # the minimum sits where alpha beta* is real with the largest modulus
    extremal_ok = abs(overlap_at_min.imag) <= 1e-9 and abs(abs(overlap_at_min) - 0.5) <= 1e-9
    _criterion(
        3,
        "variance product matches 4-4Re(a b*)^2 within 1e-9; grid minimum 3 at real a b* of modulus 1/2",
        worst <= 1e-9 and min_ok and extremal_ok,
        f"worst {worst:.3e}, min {minimum!r}, overlap {overlap_at_min!r}",
    )


def test_criterion_04_su11_detection():
    ok = True
    detail = ""
    for alpha, beta in _grid_params():
        report = su11_pt_witness(_bell_rho(alpha, beta))
        reduced = bell_closed_forms(alpha, beta)["su11_reduced"]
        margin = report.quantities["lhs"] - report.quantities["rhs"]
        if abs(margin + 8.0 * reduced) > 1e-9:
            ok, detail = False, f"margin/reduced mismatch at ({alpha}, {beta})"
            break
        if abs(alpha * beta) >= 1e-3 and not report.entangled_detected:
            ok, detail = False, f"missed detection at ({alpha}, {beta})"
            break
    for alpha, beta in ((1.0, 0.0), (0.0, 1.0)):
        report = su11_pt_witness(_bell_rho(alpha, beta))
        reduced = bell_closed_forms(alpha, beta)["su11_reduced"]
        if report.entangled_detected or abs(reduced) > 1e-9:
            ok, detail = False, f"boundary misbehaved at ({alpha}, {beta})"
    _criterion(
        4,
        "K-triple test fires for every |a b| >= 1e-3 grid point and never at a b = 0",
        ok,
        detail,
    )


def test_criterion_05_su2_non_detection():
    fired = [
        (alpha, beta)
        for alpha, beta in _grid_params()
        if su2_pt_witness(_bell_rho(alpha, beta)).entangled_detected
    ]
    _criterion(
        5,
        "S-triple test never fires on the Bell family",
        not fired,
        f"fired at {fired[:3]}" if fired else "",
    )


def test_criterion_06_sum_product_identity(rng):
    worst = 0.0
    c = Cutoff(4, 4)
    for _ in range(100):
        m_sum, m_minus, m_x = duan_mancini_relation(random_density(rng, c))
        worst = max(worst, abs(m_sum**2 - (m_minus**2 + 4.0 * m_x)))
    _criterion(
        6,
        "M^2 = M_-^2 + 4 M_x within 1e-10 on 100 random 4x4-cutoff states",
        worst <= 1e-10,
        f"worst deviation {worst:.3e}",
    )


def test_criterion_07_ladder_quadrature_equivalence(rng):
    worst = 0.0
    c = Cutoff(4, 4)
    for _ in range(100):
        rho = random_density(rng, c)
        ladder = su11_pt_witness(rho, "ladder").quantities
        quad = su11_pt_witness(rho, "quadrature").quantities
        worst = max(
            worst,
            abs(ladder["lhs"] - quad["lhs"]),
            abs(ladder["rhs"] - quad["rhs"]),
        )
    _criterion(
        7,
        "ladder and quadrature forms of the K-triple test agree within 1e-10",
        worst <= 1e-10,
        f"worst deviation {worst:.3e}",
    )


def test_criterion_08_soundness_on_product_states():
    vacuum = density_from_pure(product_coherent(0.0, 0.0, Cutoff(4, 4))[0])
    coherent = density_from_pure(product_coherent(1.0, 0.5, Cutoff(20, 14))[0])
    one_photon = _bell_rho(1.0, 0.0)
    ok = True
    detail = ""
    for label, rho in (("vacuum", vacuum), ("coherent", coherent), ("|1,0>", one_photon)):
        reports = [
            mancini_witness(rho),
            duan_witness(rho, 0.5),
            duan_witness(rho, 1.0),
            duan_witness(rho, 2.0),
            su2_pt_witness(rho),
            su11_pt_witness(rho, "ladder"),
            su11_pt_witness(rho, "quadrature"),
            ppt_witness(rho),
        ]
        for report in reports:
            if report.entangled_detected:
                ok, detail = False, f"{report.name} fired on {label}"
        if ppt_witness(rho).quantities["min_eigenvalue"] < -1e-8:
            ok, detail = False, f"PT spectrum of {label} dipped below -1e-8"
    _criterion(8, "no witness fires on product states; PT spectra stay above -1e-8", ok, detail)


def test_criterion_09_oracle_equivalence(rng):
    c = Cutoff(8, 8)
    symbols = np.array(["a", "ad", "b", "bd"])
    worst = 0.0
    for _ in range(200):
        rho = random_density(rng, c, levels_a=4, levels_b=4)
        n_words = int(rng.integers(1, 4))
        symbolic_value = 0j
        dense_value = 0j
        for _ in range(n_words):
            length = int(rng.integers(0, 5))
            word = list(symbols[rng.integers(0, 4, size=length)])
            coeff = complex(rng.standard_normal(), rng.standard_normal())
            symbolic_value += coeff * expectation_poly(rho, poly_from_word(word))
            dense_value += coeff * np.einsum("ij,ji->", rho.entries, word_matrix(word, c))
        worst = max(worst, abs(symbolic_value - dense_value))
    _criterion(
        9,
        "normal-ordered evaluation matches raw ladder-matrix evaluation within 1e-10 (200 runs)",
        worst <= 1e-10,
        f"worst deviation {worst:.3e}",
    )


def test_criterion_10_pt_bridge(rng):
    c = Cutoff(4, 3)
    worst = 0.0
    for _ in range(50):
        rho = random_density(rng, c)
        op = rng.standard_normal((c.dim, c.dim)) + 1j * rng.standard_normal((c.dim, c.dim))
        lhs = np.trace(partial_transpose_b(rho).entries @ op)
        rhs = np.trace(rho.entries @ partial_transpose_matrix(op, c))
        worst = max(worst, abs(lhs - rhs))
    _criterion(
        10,
        "<O> on rho^PT equals <O^PT> on rho within 1e-12",
        worst <= 1e-12,
        f"worst deviation {worst:.3e}",
    )


def test_criterion_11_dsl_fidelity(rng):
    exact = all(
        lower(parse_operator(text)).terms == poly.terms
        for poly, text in BUILTIN_OPERATORS.values()
    )
    worst = 0.0
    # cutoff 5 hosts the degree-4-per-mode moments inside Var[S_z], Var[K_z]
    states = [
        _bell_rho(SQRT_HALF, SQRT_HALF, d=5),
        _bell_rho(*random_bell_params(rng), d=5),
        density_from_pure(product_coherent(0.7, 0.3, Cutoff(14, 12))[0]),
    ]
    for rho in states:
        for poly, text in BUILTIN_OPERATORS.values():
            direct = expectation_poly(rho, poly)
            via_dsl = evaluate_text(f"E[{text}]", rho)
            worst = max(worst, abs(direct - via_dsl))
            if poly.is_hermitian():
                worst = max(worst, abs(variance(rho, poly) - evaluate_text(f"Var[{text}]", rho)))
    verdicts_ok = True
    bell = _bell_rho(SQRT_HALF, SQRT_HALF)
    verdicts_ok &= evaluate_text(BUILTIN_QUERIES["su11_pt"], bell).holds is False
    verdicts_ok &= evaluate_text(BUILTIN_QUERIES["su2_pt"], bell).holds is True
    verdicts_ok &= evaluate_text(BUILTIN_QUERIES["mancini"], bell).holds is True
    _criterion(
        11,
        "DSL strings lower to the hard-coded polynomials exactly and evaluate within 1e-12",
        exact and worst <= 1e-12 and verdicts_ok,
        f"worst deviation {worst:.3e}, exact={exact}",
    )


def test_criterion_12_tmsv_control():
    psi, report = two_mode_squeezed_vacuum(0.5, np.pi, Cutoff(12, 12))
    rho = density_from_pure(psi)
    duan = duan_witness(rho, 1.0)
    mancini = mancini_witness(rho)
    target = 2.0 * np.exp(-1.0)
    ok = (
        abs(duan.quantities["M"] - target) <= 1e-4
        and duan.entangled_detected
        and mancini.entangled_detected
    )
    _criterion(
        12,
        "second-order witnesses detect the squeezed vacuum at r=0.5 with M = 2e^{-2r} +- 1e-4",
        ok,
        f"M={duan.quantities['M']!r}, target={target!r}",
    )


def test_criterion_13_sweep_determinism(tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(
        json.dumps({"sweep": {"n_theta": 5, "n_phi": 4, "m_values": [0.5, 1.0, 2.0]}})
    )
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert main(["sweep", str(config), str(first)]) == 0
    assert main(["sweep", str(config), str(second)]) == 0
    identical = first.read_bytes() == second.read_bytes()
    _criterion(13, "two identical sweep runs produce byte-identical CSV", identical)

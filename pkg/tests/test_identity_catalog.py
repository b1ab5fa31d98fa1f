"""Catalog structure and residual tests.

The catalog's substance is validated numerically: every entry is evaluated
at fresh random (tau, p1, p2) draws and must close to near machine
precision.  Structural tests pin the shapes that downstream code relies on
(the duplication expansion, the Riemann matrix, the sign-free root forms),
and a corrupted-entry fixture proves the harness actually detects wrong
coefficients rather than passing vacuously.
"""

from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertheta import (
    ORIGIN,
    Domain,
    EvalPoint,
    Identity,
    IdentityTerm,
    NoConsistentSign,
    PeriodMatrix,
    PrecisionPolicy,
    SampleAssignment,
    ThetaCharacteristic,
    build_catalog,
    double_periods,
    evaluate_identity,
    general_duplication,
    load_catalog,
    resolve_sign,
    riemann_matrix,
    save_catalog,
    theta_eval,
    verify_catalog,
)
from hypertheta.identity_catalog import ENV_CATALOG, Scale, base_id
from hypertheta.sampling import make_rng, sample_tau

CAT = build_catalog()
BY_ID = {i.id: i for i in CAT}

TAU = PeriodMatrix(0.3 + 1.1j, -0.2 + 1.4j, 0.15 + 0.25j)
P1 = EvalPoint(0.21 - 0.12j, -0.34 + 0.05j)
P2 = EvalPoint(-0.17 + 0.08j, 0.29 - 0.11j)
SAMPLE = SampleAssignment(TAU, P1, P2, seed=0)


def theta(a, c, b, d, z, tau=TAU):
    return theta_eval(ThetaCharacteristic.of(a, c, b, d), z, tau)


# ---------------------------------------------------------------- structure

def test_catalog_size_and_unique_ids():
    assert len(CAT) == 200
    assert len(BY_ID) == len(CAT)


def test_expected_families_present():
    for ident in ("2e4.0000", "2e5.1011", "2e6.0101", "2e8", "2e26",
                  "2e27.00", "2e28.r1", "2e29.r4", "2e30.11", "2e31.r2",
                  "2e32.r3", "2e33.r1", "2e34.r4", "2e35.r2", "2e36.r3",
                  "2e37.r1", "2e38.minus", "2e39.plus", "2e40.r2",
                  "2e41.minus", "2e42", "2e47", "2e53.plus", "2e54", "2e59",
                  "2e64", "2e65", "2e70", "2e75", "B1", "B16", "B17", "B19",
                  "C1", "C17", "C28", "D1", "D11", "D16"):
        assert ident in BY_ID, ident


def test_domain_counts():
    counts = {d: 0 for d in Domain}
    for i in CAT:
        counts[i.domain] += 1
    assert counts[Domain.TWO_POINT] == 54
    assert counts[Domain.ONE_POINT] == 108
    assert counts[Domain.CONSTANTS_ONLY] == 38


def test_b1_shape():
    """B1: [0 0;0 0](sum)*[0 0;0 0](diff) = four like-with-like doubled
    products over the integer upper rows, all lower rows zero."""
    b1 = BY_ID["B1"]
    (lhs,) = b1.lhs
    assert lhs.coefficient == 1
    assert [f.arg.as_json() for f in lhs.factors] == [[1, 1], [1, -1]]
    assert all(f.scale is Scale.BASE for f in lhs.factors)
    assert len(b1.rhs) == 4
    uppers = []
    for term in b1.rhs:
        f1, f2 = term.factors
        assert f1.ch == f2.ch
        assert (f1.arg.as_json(), f2.arg.as_json()) == ([2, 0], [0, 2])
        assert f1.scale is Scale.DOUBLED and f2.scale is Scale.DOUBLED
        uppers.append((f1.ch.a, f1.ch.c))
    assert uppers == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_general_duplication_all_zeros_matches_b1():
    gen = general_duplication(0, 0, 0, 0, 0, 0, 0, 0)
    b1 = BY_ID["B1"]
    assert gen.lhs == b1.lhs
    assert gen.rhs == b1.rhs


def test_general_duplication_rejects_half_integers():
    with pytest.raises(ValueError):
        general_duplication("1/2", 0, 0, 0, 0, 0, 0, 0)


def test_riemann_matrix_properties():
    m = riemann_matrix()
    assert m.dtype == np.dtype(int)
    assert (m == m.T).all()
    assert (m @ m == 4 * np.eye(4, dtype=int)).all()


# ---------------------------------------------------------------- residuals

def test_full_catalog_closes_on_fixed_sample():
    """Every TwoPoint/OnePoint/ConstantsOnly entry closes at one shared
    (tau, p1, p2) draw."""
    for idty in CAT:
        rep = evaluate_identity(idty, SAMPLE)
        assert rep.passed, (idty.id, rep.rel_residual)
        assert rep.rel_residual < 1e-11, (idty.id, rep.rel_residual)


def test_verify_catalog_smoke():
    reports = verify_catalog(n_samples=2, seed=11)
    assert len(reports) == 2 * len(CAT)
    assert all(r.passed for r in reports)
    assert max(r.rel_residual for r in reports) < 1e-9


def test_verify_catalog_only_filter():
    reports = verify_catalog(n_samples=1, seed=3, only={"2e5", "C17"})
    ids = {r.identity_id for r in reports}
    assert ids == {f"2e5.{a}{c}{b}{d}"
                   for a, c in ((0, 0), (0, 1), (1, 0), (1, 1))
                   for b, d in ((0, 0), (0, 1), (1, 0), (1, 1))} | {"C17"}
    # the filtered run sees the same draws as the full run
    full = {(r.identity_id, r.sample_index): r.lhs_value
            for r in verify_catalog(n_samples=1, seed=3)}
    for r in reports:
        assert r.lhs_value == full[(r.identity_id, r.sample_index)]


def test_corrupted_coefficient_is_detected():
    good = BY_ID["2e9"]
    bad_rhs = (IdentityTerm(1.0000001 * good.rhs[0].coefficient,
                            good.rhs[0].factors),) + good.rhs[1:]
    bad = Identity("2e9-corrupt", good.lhs, bad_rhs, good.domain)
    rep = evaluate_identity(bad, SAMPLE)
    assert not rep.passed
    assert rep.rel_residual > 1e-9


def test_swap_symmetry_of_two_point_entries():
    """Both sides of every TwoPoint entry are built from even functions of
    the difference, so swapping p1 and p2 changes nothing."""
    swapped = SampleAssignment(TAU, P2, P1, seed=0)
    for idty in CAT:
        if idty.domain is not Domain.TWO_POINT:
            continue
        a = evaluate_identity(idty, SAMPLE)
        b = evaluate_identity(idty, swapped)
        scale = max(abs(a.lhs_value), 1e-30)
        assert abs(a.lhs_value - b.lhs_value) / scale < 1e-10, idty.id
        assert abs(a.rhs_value - b.rhs_value) / scale < 1e-10, idty.id


def test_one_point_entries_ignore_p2():
    moved = SampleAssignment(TAU, P1, EvalPoint(0.4 + 0.1j, -0.2j), seed=0)
    for ident in ("2e5.0000", "2e30.10", "C17", "C21"):
        a = evaluate_identity(BY_ID[ident], SAMPLE)
        b = evaluate_identity(BY_ID[ident], moved)
        assert a.lhs_value == b.lhs_value
        assert a.rhs_value == b.rhs_value


def test_sector_alias_pairs_agree():
    """B1..B16 restate 2e8..2e26; same terms, same values."""
    alias = {"B1": "2e8", "B2": "2e9", "B3": "2e10", "B4": "2e11",
             "B5": "2e13", "B6": "2e14", "B7": "2e15", "B8": "2e16",
             "B9": "2e18", "B10": "2e19", "B11": "2e20", "B12": "2e21",
             "B13": "2e23", "B14": "2e24", "B15": "2e25", "B16": "2e26"}
    for b, e in alias.items():
        assert BY_ID[b].lhs == BY_ID[e].lhs
        assert BY_ID[b].rhs == BY_ID[e].rhs
    assert BY_ID["B17"].rhs == BY_ID["2e42"].rhs
    assert BY_ID["B18"].rhs == BY_ID["2e54"].rhs
    assert BY_ID["B19"].rhs == BY_ID["2e65"].rhs


def test_duplication_family_specializes_to_sector_tables():
    """2e4 instances are generated by the generic expansion; the sector
    tables were transcribed independently.  Their sides must agree
    numerically (the generated rhs differs only by phase-free upper-row
    reduction)."""
    sector = {(0, 0): ("2e8", "2e9", "2e10", "2e11"),
              (0, 1): ("2e13", "2e14", "2e15", "2e16"),
              (1, 0): ("2e18", "2e19", "2e20", "2e21"),
              (1, 1): ("2e23", "2e24", "2e25", "2e26")}
    order = ((0, 0), (0, 1), (1, 0), (1, 1))
    for (a, c), ids in sector.items():
        for (b, d), ident in zip(order, ids):
            gen = BY_ID[f"2e4.{a}{c}{b}{d}"]
            tab = BY_ID[ident]
            ra = evaluate_identity(gen, SAMPLE)
            rb = evaluate_identity(tab, SAMPLE)
            assert abs(ra.lhs_value - rb.lhs_value) < 1e-12
            assert abs(ra.rhs_value - rb.rhs_value) < 1e-12


def test_goepel_specialization_reproduces_squared_family():
    """The generic expansion with the second factor carrying the same
    characteristic, evaluated at p2 = 0, is the squared-theta family."""
    for a, c, b, d in ((0, 0, 0, 0), (1, 0, 0, 1), (1, 1, 1, 0)):
        gen = general_duplication(a, c, b, d, a, c, b, d)
        pinned = SampleAssignment(TAU, P1, ORIGIN, seed=0)
        ra = evaluate_identity(gen, pinned)
        rb = evaluate_identity(BY_ID[f"2e5.{a}{c}{b}{d}"], pinned)
        assert ra.passed and rb.passed
        assert abs(ra.lhs_value - rb.lhs_value) < 1e-12
        assert abs(ra.rhs_value - rb.rhs_value) < 1e-12


def test_squared_family_specializes_lower_zero_row():
    """2e27 instances are 2e5 at upper row (0,0)."""
    for b, d in ((0, 0), (0, 1), (1, 0), (1, 1)):
        ra = evaluate_identity(BY_ID[f"2e5.00{b}{d}"], SAMPLE)
        rb = evaluate_identity(BY_ID[f"2e27.{b}{d}"], SAMPLE)
        assert ra.lhs_value == rb.lhs_value
        assert abs(ra.rhs_value - rb.rhs_value) < 1e-12


@settings(max_examples=25, deadline=None)
@given(entries=st.lists(st.integers(min_value=-1, max_value=2),
                        min_size=8, max_size=8))
def test_generic_duplication_closes(entries):
    idty = general_duplication(*entries)
    rep = evaluate_identity(idty, SAMPLE)
    assert rep.passed, (entries, rep.rel_residual)


# ---------------------------------------------------------------- constants

def test_alpha_beta_component_equations():
    """X = alpha^2 + beta^2 and Y = 2 alpha beta, checked against directly
    summed constants rather than through the catalog plumbing."""
    dbl = double_periods(TAU)
    alpha = theta(0, 0, 0, 1, ORIGIN, dbl)
    beta = theta(1, 0, 0, 1, ORIGIN, dbl)
    X = theta(0, 0, 0, 1, ORIGIN) * theta(0, 0, 0, 0, ORIGIN)
    Y = theta(1, 0, 0, 1, ORIGIN) * theta(1, 0, 0, 0, ORIGIN)
    assert abs(X - (alpha**2 + beta**2)) / abs(X) < 1e-10
    assert abs(Y - 2 * alpha * beta) / abs(Y) < 1e-10


def test_xi_zeta_component_equations():
    dbl = double_periods(TAU)
    xi = theta(0, 0, 1, 1, ORIGIN, dbl)
    zeta = theta(1, 1, 1, 1, ORIGIN, dbl)
    X = theta(0, 0, 1, 1, ORIGIN) * theta(0, 0, 0, 0, ORIGIN)
    Y = theta(1, 1, 1, 1, ORIGIN) * theta(1, 1, 0, 0, ORIGIN)
    assert abs(X - (xi**2 + zeta**2)) / abs(X) < 1e-10
    assert abs(Y - 2 * xi * zeta) / abs(Y) < 1e-10


def test_constants_only_entries_close_on_many_taus():
    rng = make_rng(99, "constants")
    for _ in range(5):
        tau = sample_tau(rng)
        s = SampleAssignment(tau, ORIGIN, ORIGIN, seed=0)
        for ident in ("2e36.r1", "2e36.r4", "2e51", "2e52", "2e63",
                      "2e74", "D1", "D11", "D13"):
            rep = evaluate_identity(BY_ID[ident], s)
            assert rep.passed, (ident, rep.rel_residual)


# ---------------------------------------------------------------- root forms

def test_every_root_form_resolves():
    d_ids = [i.id for i in CAT if i.root_form is not None]
    assert d_ids == [f"D{k}" for k in range(1, 17)]
    rng = make_rng(42, "roots")
    for trial in range(4):
        tau = sample_tau(rng)
        dbl = double_periods(tau)
        for d in d_ids:
            value, record = resolve_sign(d, tau, catalog=CAT)
            target = ThetaCharacteristic.from_json(BY_ID[d].root_form["target"])
            direct = theta_eval(target, ORIGIN, dbl)
            assert abs(value - direct) / max(abs(direct), 1e-30) < 1e-8
            assert record["rel_error"] < 1e-8
            assert isinstance(record["matches_printed"], bool)


def test_resolve_sign_reports_branch_choice():
    value, record = resolve_sign("D5", TAU, catalog=CAT)
    assert record["printed_signs"] == [1, 1]
    assert set(record["signs"]) <= {1, -1}
    assert len(record["signs"]) == 2


def test_resolve_sign_rejects_unknown_id():
    with pytest.raises(KeyError):
        resolve_sign("C17", TAU, catalog=CAT)  # no root form on C entries


def test_resolve_sign_raises_on_wrong_radicand():
    broken = BY_ID["D13"].root_form.copy()
    broken["roots"] = [[[1, [[0, 1], [1, 1], [0, 1], [0, 1]],
                         [[0, 1], [0, 1], [0, 1], [0, 1]]]]]  # wrong product
    fake = Identity("D13x", BY_ID["D13"].lhs, BY_ID["D13"].rhs,
                    Domain.CONSTANTS_ONLY, root_form=broken)
    with pytest.raises(NoConsistentSign):
        resolve_sign("D13x", TAU, catalog=[fake])


# ------------------------------------------------------------- determinism

def test_verify_catalog_deterministic():
    a = verify_catalog(n_samples=2, seed=5, only={"2e30", "D11", "B17"})
    b = verify_catalog(n_samples=2, seed=5, only={"2e30", "D11", "B17"})
    assert [r.as_json() for r in a] == [r.as_json() for r in b]
    c = verify_catalog(n_samples=2, seed=6, only={"2e30", "D11", "B17"})
    assert [r.as_json() for r in a] != [r.as_json() for r in c]


def test_report_json_schema():
    rep = evaluate_identity(BY_ID["2e8"], SAMPLE)
    obj = rep.as_json()
    assert set(obj) == {"id", "sample", "lhs", "rhs", "abs_residual",
                        "rel_residual", "pass", "error"}
    assert obj["pass"] is True
    assert obj["error"] == ""
    json.dumps(obj)  # must be serializable as-is


def test_radius_errors_become_failed_reports():
    tight = PrecisionPolicy(eps_tail=1e-14, max_radius=1)
    reports = verify_catalog(n_samples=1, seed=0, pol=tight, only={"2e8"})
    assert len(reports) == 1
    assert not reports[0].passed
    assert "RadiusExceeded" in reports[0].error
    assert reports[0].as_json()["abs_residual"] is None


# ------------------------------------------------------------ serialization

def test_shipped_catalog_matches_builder():
    assert [i.as_json() for i in load_catalog()] == [i.as_json() for i in CAT]


def test_catalog_hash_guard(tmp_path):
    path = tmp_path / "cat.json"
    save_catalog(CAT, str(path))
    blob = json.loads(path.read_text())
    blob["identities"][0]["note"] = "tampered"
    path.write_text(json.dumps(blob))
    with pytest.raises(ValueError, match="hash"):
        load_catalog(str(path))


def test_env_override(tmp_path, monkeypatch):
    path = tmp_path / "mini.json"
    save_catalog([BY_ID["2e8"]], str(path))
    monkeypatch.setenv(ENV_CATALOG, str(path))
    loaded = load_catalog()
    assert [i.id for i in loaded] == ["2e8"]


def test_base_id_helper():
    assert base_id("2e5.0001") == "2e5"
    assert base_id("C17") == "C17"
    assert base_id("2e53.plus") == "2e53"

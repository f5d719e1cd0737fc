"""Command-line interface producing machine-readable JSON reports.

Exit codes: 0 success, 1 usage problems, 2 optimizer non-convergence,
3 golden-suite mismatch.  The environment variable ``WF_SEED`` overrides the
default seed; an explicit ``--seed`` flag wins over both.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

import click
import numpy as np

from . import decomp as _decomp
from . import golden as _golden
from . import region as _region
from . import states as _states
from . import witness as _witness
from ._backend import backend_name
from .opbasis import build_basis
from .qmath import DimensionError, HermitianOperator


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("WF_SEED")
    if env:
        return int(env, 0)
    return _region.DEFAULT_SEED


def _parse_coeffs(text: str, n: int) -> np.ndarray:
    try:
        c = np.array([float(x) for x in text.split(",")], dtype=float)
    except ValueError as exc:
        raise click.UsageError(f"bad coefficient list {text!r}: {exc}") from exc
    if c.size != n:
        raise click.UsageError(f"expected {n} coefficients, got {c.size}")
    return c


def _matrix_payload(op: HermitianOperator) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in op.mat]


def _emit(command: str, seed: Optional[int], payload: dict, **extra) -> None:
    report = {
        "command": command,
        "backend": backend_name(),
        "seed": seed,
        "result": payload,
    }
    report.update(extra)
    click.echo(json.dumps(report, indent=2, sort_keys=True))


def _state_payload(s) -> dict:
    return {
        "a": [[float(z.real), float(z.imag)] for z in s.a.amp],
        "b": [[float(z.real), float(z.imag)] for z in s.b.amp],
    }


@click.group()
def cli() -> None:
    """Witness construction from the product-state feasible region."""


@cli.group()
def region() -> None:
    """Feasible-region queries: maximize, certify, refine, interval, conjecture."""


@region.command("maximize")
@click.option("-n", "local_dim", type=int, required=True)
@click.option("-c", "coeffs", type=str, required=True, help="comma-separated coefficients")
@click.option("--restarts", type=int, default=_region.DEFAULT_RESTARTS, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--resolution", type=int, default=None,
              help="grid-oracle resolution (default 64 for n=3, 24 for n=4)")
def region_maximize(local_dim, coeffs, restarts, seed, resolution):
    """Maximize sum c_i p_i over product states; report seesaw and grid values."""
    seed = _resolve_seed(seed)
    basis = build_basis(local_dim)
    c = _parse_coeffs(coeffs, local_dim)
    res = _region.maximize_functional(c, basis, restarts=restarts, seed=seed)
    payload = {
        "value": res.value,
        "p": [float(x) for x in res.pvec.p],
        "argmax": _state_payload(res.argmax),
        "restarts_agreeing": res.restarts_agreeing,
    }
    if local_dim <= 4:
        resolution = resolution or (64 if local_dim == 3 else 24)
        payload["grid_oracle"] = {
            "resolution": resolution,
            "value": _region.grid_oracle_max(c, basis, resolution),
        }
    _emit("region maximize", seed, payload, restarts=restarts)
    return 0


@region.command("certify")
@click.option("-n", "local_dim", type=int, required=True)
@click.option("-c", "coeffs", type=str, required=True)
@click.option("--offset", type=float, default=1.0, show_default=True)
@click.option("--restarts", type=int, default=_region.DEFAULT_RESTARTS, show_default=True)
@click.option("--seed", type=int, default=None)
def region_certify(local_dim, coeffs, offset, restarts, seed):
    """Classify the plane c . p = offset as exact boundary, tangent, or cutting."""
    seed = _resolve_seed(seed)
    basis = build_basis(local_dim)
    h = _region.Hyperplane(n=local_dim, coeffs=_parse_coeffs(coeffs, local_dim),
                           offset=offset)
    out = _region.certify_plane(h, basis, restarts=restarts, seed=seed)
    _emit("region certify", seed,
          {"coeffs": list(map(float, out.coeffs)), "offset": out.offset,
           "status": out.status},
          restarts=restarts)
    return 0


@region.command("refine")
@click.option("-n", "local_dim", type=int, required=True)
@click.option("--vertex", "vertices", type=str, multiple=True, required=True,
              help="comma-separated point, one option per vertex")
@click.option("--restarts", type=int, default=_region.DEFAULT_RESTARTS, show_default=True)
@click.option("--seed", type=int, default=None)
def region_refine(local_dim, vertices, restarts, seed):
    """One round of the vertex walk: fit the plane through the given vertices."""
    seed = _resolve_seed(seed)
    basis = build_basis(local_dim)
    pts = [_parse_coeffs(v, local_dim) for v in vertices]
    rounds = _region.refine_boundary(pts, basis, max_rounds=1,
                                     restarts=restarts, seed=seed)
    payload = []
    for plane, new_vertex in rounds:
        payload.append({
            "coeffs": list(map(float, plane.coeffs)),
            "offset": plane.offset,
            "status": plane.status,
            "new_vertex": None if new_vertex is None else [float(x) for x in new_vertex.p],
        })
    _emit("region refine", seed, {"rounds": payload}, restarts=restarts)
    return 0


@region.command("interval")
@click.option("-f", "label", type=str, required=True, help="built-in family label")
@click.option("--lo", type=float, required=True)
@click.option("--hi", type=float, required=True)
@click.option("--samples", type=int, default=16, show_default=True)
@click.option("--restarts", type=int, default=_region.DEFAULT_RESTARTS, show_default=True)
@click.option("--seed", type=int, default=None)
def region_interval(label, lo, hi, samples, restarts, seed):
    """Largest alpha in [lo, hi] whose family plane does not cut the region."""
    seed = _resolve_seed(seed)
    fam = _witness.family_by_label(label)
    basis = build_basis(fam.n)
    alpha = _region.tangency_interval(fam.coeff_fn, (lo, hi), samples, basis,
                                      restarts=restarts, seed=seed)
    _emit("region interval", seed,
          {"family": label, "lo": lo, "hi": hi, "alpha_star": alpha},
          restarts=restarts)
    return 0


@region.command("conjecture")
@click.option("-n", "local_dim", type=int, required=True)
@click.option("--restarts", type=int, default=_region.DEFAULT_RESTARTS, show_default=True)
@click.option("--seed", type=int, default=None)
def region_conjecture(local_dim, restarts, seed):
    """Certify the candidate facet n(p_1+...+p_{n-1}) + p_n = 1."""
    seed = _resolve_seed(seed)
    chk = _region.conjectured_boundary_check(local_dim, restarts=restarts, seed=seed)
    _emit("region conjecture", seed, {
        "n": chk.n,
        "coeffs": list(map(float, chk.hyperplane.coeffs)),
        "status": chk.hyperplane.status,
        "max_value": chk.max_value,
        "p": [float(x) for x in chk.pvec.p],
        "argmax": _state_payload(chk.maximizer),
    }, restarts=restarts)
    return 0


def _weights_from_options(n, weights, beta, gamma):
    if weights is not None:
        return _parse_coeffs(weights, n)
    if beta is None:
        raise click.UsageError("provide --weights or --beta (with --gamma for n=4)")
    if n == 3:
        return _states.horodecki_weights(beta)
    if n == 4:
        if gamma is None:
            raise click.UsageError("n=4 mixtures need both --beta and --gamma")
        return _states.two_parameter_weights(beta, gamma)
    raise click.UsageError(f"no named mixture family for n={n}")


@cli.command("witness")
@click.option("-f", "label", type=str, required=True)
@click.option("-a", "alpha", type=float, required=True)
@click.argument("action", type=click.Choice(["materialize", "certify", "decompose", "trace"]))
@click.option("--weights", type=str, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--restarts", type=int, default=_region.DEFAULT_RESTARTS, show_default=True)
@click.option("--seed", type=int, default=None)
def witness_cmd(label, alpha, action, weights, beta, gamma, restarts, seed):
    """Materialize, certify, decompose, or trace a built-in witness family member."""
    seed = _resolve_seed(seed)
    fam = _witness.family_by_label(label)
    basis = build_basis(fam.n)
    if action == "materialize":
        op = fam.operator(alpha, basis)
        _emit("witness materialize", seed,
              {"family": label, "alpha": alpha, "matrix": _matrix_payload(op)})
        return 0
    if action == "certify":
        op = fam.operator(alpha, basis)
        cert = _witness.certify_witness(op, basis, restarts=restarts, seed=seed)
        _emit("witness certify", seed, {
            "family": label,
            "alpha": alpha,
            "min_product_expectation": cert.min_product_expectation,
            "is_valid_witness": cert.min_product_expectation >= -1e-9,
            "is_positive_operator": cert.is_positive_operator,
            "detected_state_found": cert.detected_state_found,
        }, restarts=restarts)
        return 0
    if action == "decompose":
        d = _decomp.decompose(fam.operator(alpha, basis), fam.n)
        _emit("witness decompose", seed, _decomposition_payload(d))
        return 0
    w = _weights_from_options(fam.n, weights, beta, gamma)
    value = _states.trace_against_family(w, fam, alpha, basis)
    _emit("witness trace", seed, {
        "family": label, "alpha": alpha,
        "weights": [float(x) for x in w], "trace": value,
    })
    return 0


def _decomposition_payload(d: _decomp.LocalDecomposition) -> dict:
    nz = [
        {"i": int(i) + 1, "j": int(j) + 1, "value": float(d.cij[i, j])}
        for i, j in zip(*np.nonzero(np.abs(d.cij) > _decomp.SETTING_TOL))
    ]
    return {
        "n": d.n,
        "identity_coefficient": d.c00,
        "joint_terms": nz,
        "one_sided_terms": _decomp.one_sided_terms(d),
        "settings_count": _decomp.settings_count(d),
    }


@cli.group()
def state() -> None:
    """Mixture-state queries."""


@state.command("classify")
@click.option("-n", "local_dim", type=int, required=True)
@click.option("--weights", type=str, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--alpha-samples", type=int, default=25, show_default=True)
def state_classify(local_dim, weights, beta, gamma, alpha_samples):
    """PPT test plus witness sweeps for a basis-operator mixture."""
    w = _weights_from_options(local_dim, weights, beta, gamma)
    fams = _witness.builtin_families(local_dim)
    report = _states.classify(w, local_dim, fams, alpha_samples=alpha_samples)
    _emit("state classify", None, {
        "n": report.n,
        "weights": [float(x) for x in report.weights],
        "ppt": report.ppt,
        "ppt_closed_form": _states.ppt_closed_form(report.weights, local_dim),
        "detected_by": [
            {"family": lab, "alpha": al, "trace": tr} for lab, al, tr in report.detected_by
        ],
        "classification": report.classification,
    })
    return 0


@cli.command("decompose")
@click.option("-f", "label", type=str, required=True)
@click.option("-a", "alpha", type=float, required=True)
def decompose_cmd(label, alpha):
    """Local-observable decomposition of a built-in witness family member."""
    fam = _witness.family_by_label(label)
    d = _decomp.decompose(fam.operator(alpha), fam.n)
    _emit("decompose", None, _decomposition_payload(d))
    return 0


@cli.command("reproduce")
@click.argument("section", type=click.Choice(["s2", "s3", "all"]))
@click.option("--tol", type=float, default=None,
              help="override every golden tolerance with this value")
@click.option("--restarts", type=int, default=_region.DEFAULT_RESTARTS, show_default=True)
@click.option("--seed", type=int, default=None)
def reproduce(section, tol, restarts, seed):
    """Run the golden suite and report pass/fail per item (exit 3 on mismatch)."""
    seed = _resolve_seed(seed)
    items = _golden.run_golden(section, seed=seed, restarts=restarts, tol_override=tol)
    payload = {
        "items": [
            {"section": it.section, "name": it.name, "passed": it.passed,
             "expected": it.expected, "observed": it.observed}
            for it in items
        ],
        "passed": sum(it.passed for it in items),
        "failed": sum(not it.passed for it in items),
    }
    _emit("reproduce", seed, payload, section=section,
          tolerances=(tol if tol is not None else _golden.DEFAULT_TOL))
    return 0 if payload["failed"] == 0 else 3


@cli.command("plotdata")
@click.option("-n", "local_dim", type=int, default=3, show_default=True)
@click.option("--samples", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
def plotdata(local_dim, samples, seed, out):
    """Write sampled expectation tuples plus vertex and plane rows as CSV."""
    if local_dim != 3:
        raise click.UsageError("plot data is defined for n=3 only")
    seed = _resolve_seed(seed)
    rows: list[tuple[float, float, float, str]] = []
    if samples > 0:
        rng = np.random.default_rng(seed)
        a, b = _region.random_product_amplitudes(3, samples, rng)
        for p in _region._pvecs_batch(a, b, 3):
            rows.append((p[0], p[1], p[2], "sample"))
        for _, _, p in _golden.TABLE1_ROWS:
            rows.append((float(p[0]), float(p[1]), float(p[2]), "vertex"))
        for coeffs, offset in _golden.PLANES_3.values():
            c = np.array(coeffs, float) / float(offset)
            rows.append((c[0], c[1], c[2], "plane"))
    try:
        with open(out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["p1", "p2", "p3", "kind"])
            writer.writerows(rows)
    except OSError as exc:
        raise click.ClickException(f"cannot write {out}: {exc}") from exc
    _emit("plotdata", seed, {"rows": len(rows), "path": out})
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        rv = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except _region.ConvergenceError as exc:
        click.echo(f"optimizer did not converge: {exc}", err=True)
        return 2
    except (DimensionError, _region.NonMonotoneError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except (KeyError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return int(rv) if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())

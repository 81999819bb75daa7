"""Command-line front end.

Subcommands: ``verify`` (kernel certification), ``tensors`` (exact algebra
tables), ``connection`` (coefficients, curvature, conjugates, predicates),
``metric`` / ``cubic`` (pointwise closed forms), ``oracle`` (Monte-Carlo
comparison against the closed forms) and ``group`` (action utilities).

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage or
input errors.  All output is JSON with sorted keys; exact scalars are printed
as strings, and repeated runs with the same flags and seed are byte-identical.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

import click
import numpy as np

from .algebra import basis_indices, lie_algebra
from .connections import (
    alpha_connection,
    amari_difference,
    conjugate,
    curvature,
    predicate_suite,
)
from .exact import QSqrt2
from .group import GroupElement, act, act_tangent, phi, phi_inv, pull_back_to_identity
from .manifold import (
    ManifoldPoint,
    TangentVector,
    amari_cubic,
    fisher_metric,
    mc_oracle_cubic,
    mc_oracle_metric,
)
from .solver import verify_theorem
from .tensors import symmetric_triples

SEED_ENV = "GAUSSGEOM_SEED"


def _default_seed() -> int:
    try:
        return int(os.environ.get(SEED_ENV, "0"))
    except ValueError:
        return 0


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _parse_json(text: str, name: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"--{name} is not valid JSON: {exc}") from exc


def _parse_point(sigma: str | None, mu: str | None, n: int | None) -> ManifoldPoint:
    if sigma is None and mu is None:
        if n is None:
            raise click.UsageError("provide --sigma/--mu or --n")
        return ManifoldPoint.standard(n)
    if sigma is None or mu is None:
        raise click.UsageError("--sigma and --mu must be given together")
    try:
        return ManifoldPoint(_parse_json(sigma, "sigma"), _parse_json(mu, "mu"))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _parse_tangent(text: str, name: str) -> TangentVector:
    payload = _parse_json(text, name)
    if not isinstance(payload, dict) or "x" not in payload or "v" not in payload:
        raise click.UsageError(f'--{name} must look like {{"x": [[...]], "v": [...]}}')
    try:
        return TangentVector(payload["x"], payload["v"])
    except ValueError as exc:
        raise click.UsageError(f"--{name}: {exc}") from exc


def _parse_alpha(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"--alpha must be a rational number: {text!r}") from exc


def _scalar_payload(value: QSqrt2, render_float: bool) -> dict:
    payload = {"exact": value.to_string()}
    if render_float:
        payload["float"] = float(f"{value.to_float():.15g}")
    return payload


@click.group()
def main() -> None:
    """Exact and numeric geometry of multivariate normal families."""


@main.command()
@click.option("--n", "single_n", type=click.IntRange(min=1), default=None, help="Verify one n.")
@click.option("--max-n", type=click.IntRange(min=1), default=None, help="Verify n = 1..max-n.")
@click.option(
    "--emit-certificate",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Write the JSON certificate(s) to this file.",
)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
@click.pass_context
def verify(ctx, single_n, max_n, emit_certificate, fmt) -> None:
    """Certify that the conjugate-symmetry kernel is the expected line."""
    if single_n is not None and max_n is not None:
        raise click.UsageError("--n and --max-n are mutually exclusive")
    ns = [single_n] if single_n is not None else list(range(1, (max_n or 3) + 1))
    certificates = [verify_theorem(n) for n in ns]
    if fmt == "json":
        _echo_json([c.to_json_dict() for c in certificates])
    else:
        for cert in certificates:
            status = "PASS" if cert.passed else "FAILED"
            click.echo(
                f"n={cert.n}: {status} (unknowns={cert.unknowns}, "
                f"rank={cert.rank}, kernel_dim={cert.kernel_dim})"
            )
            for failure in cert.failures:
                click.echo(f"  failed: {failure}")
    if emit_certificate:
        blobs = [c.to_json_dict() for c in certificates]
        payload = blobs[0] if len(blobs) == 1 else blobs
        with open(emit_certificate, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if not all(c.passed for c in certificates):
        ctx.exit(1)


@main.command()
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option(
    "--what",
    type=click.Choice(["brackets", "u-map", "levi-civita", "cubic", "metric"]),
    required=True,
)
@click.option("--float", "render_float", is_flag=True, help="Add decimal renderings.")
def tensors(n, what, render_float) -> None:
    """Dump exact algebra tables for a given n."""
    alg = lie_algebra(n)
    labels = [idx.label() for idx in alg.indices]
    entries = []
    if what == "brackets":
        table = alg.structure
    elif what == "u-map":
        table = alg.u_coeffs
    elif what == "levi-civita":
        table = alg.levi_civita
    else:
        table = None

    if table is not None:
        for a in range(alg.dim):
            for b in range(alg.dim):
                components = {
                    labels[g]: _scalar_payload(table.item(a, b, g), render_float)
                    for g in range(alg.dim)
                    if table.item(a, b, g)
                }
                if components:
                    entries.append(
                        {"x": labels[a], "y": labels[b], "components": components}
                    )
    elif what == "cubic":
        for a, b, g in symmetric_triples(alg.dim):
            value = alg.cubic.item(a, b, g)
            if value:
                entries.append(
                    {
                        "x": labels[a],
                        "y": labels[b],
                        "z": labels[g],
                        "value": _scalar_payload(value, render_float),
                    }
                )
    else:  # metric
        for a in range(alg.dim):
            for b in range(alg.dim):
                value = alg.gram.item(a, b)
                if value:
                    entries.append(
                        {
                            "x": labels[a],
                            "y": labels[b],
                            "value": _scalar_payload(value, render_float),
                        }
                    )
    _echo_json({"n": n, "what": what, "entries": entries})


@main.command()
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--alpha", default="1", help="Rational scaling of the difference tensor.")
@click.option(
    "--what",
    type=click.Choice(["coeffs", "curvature", "conjugate", "predicates"]),
    required=True,
)
@click.option("--float", "render_float", is_flag=True, help="Add decimal renderings.")
def connection(n, alpha, what, render_float) -> None:
    """Inspect a member of the alpha-family of statistical connections."""
    alpha_value = _parse_alpha(alpha)
    labels = [idx.label() for idx in basis_indices(n)]
    conn = alpha_connection(n, alpha_value)

    if what == "predicates":
        suite = predicate_suite(amari_difference(n).scale(QSqrt2(alpha_value)))
        _echo_json(
            {
                "n": n,
                "alpha": str(alpha_value),
                "conjugate_symmetric": suite.conjugate_symmetric,
                "cubic_derivative_symmetric": suite.cubic_derivative_symmetric,
                "lc_cubic_derivative_symmetric": suite.lc_cubic_derivative_symmetric,
                "lc_difference_derivative_symmetric": suite.lc_difference_derivative_symmetric,
            }
        )
        return

    if what == "curvature":
        curv = curvature(conn)
        entries = [
            {
                "x": labels[a],
                "y": labels[b],
                "z": labels[g],
                "w": labels[d],
                "value": _scalar_payload(v, render_float),
            }
            for (a, b, g, d), v in curv.nonzero_items()
        ]
        _echo_json(
            {
                "n": n,
                "alpha": str(alpha_value),
                "zero": curv.is_zero(),
                "entries": entries,
            }
        )
        return

    target = conn if what == "coeffs" else conjugate(conn)
    entries = [
        {
            "x": labels[a],
            "y": labels[b],
            "z": labels[g],
            "value": _scalar_payload(v, render_float),
        }
        for (a, b, g), v in target.nonzero_items()
    ]
    _echo_json({"n": n, "alpha": str(alpha_value), "what": what, "entries": entries})


@main.command()
@click.option("--sigma", default=None, help="Covariance matrix as JSON rows.")
@click.option("--mu", default=None, help="Mean vector as JSON.")
@click.option("--n", type=click.IntRange(min=1), default=None, help="Standard point shortcut.")
@click.option("--s", "s_text", required=True, help='Tangent {"x": [[...]], "v": [...]}.')
@click.option("--t", "t_text", required=True, help="Second tangent, same shape.")
def metric(sigma, mu, n, s_text, t_text) -> None:
    """Evaluate the metric at a point on two tangent vectors."""
    point = _parse_point(sigma, mu, n)
    s = _parse_tangent(s_text, "s")
    t = _parse_tangent(t_text, "t")
    _echo_json({"value": fisher_metric(point, s, t)})


@main.command()
@click.option("--sigma", default=None)
@click.option("--mu", default=None)
@click.option("--n", type=click.IntRange(min=1), default=None)
@click.option("--s", "s_text", required=True)
@click.option("--t", "t_text", required=True)
@click.option("--w", "w_text", required=True)
def cubic(sigma, mu, n, s_text, t_text, w_text) -> None:
    """Evaluate the cubic form at a point on three tangent vectors."""
    point = _parse_point(sigma, mu, n)
    s, t, w = (
        _parse_tangent(s_text, "s"),
        _parse_tangent(t_text, "t"),
        _parse_tangent(w_text, "w"),
    )
    _echo_json({"value": amari_cubic(point, s, t, w)})


@main.command()
@click.option("--n", type=click.IntRange(min=1), default=None)
@click.option("--sigma", default=None)
@click.option("--mu", default=None)
@click.option("--samples", type=click.IntRange(min=1), default=100_000)
@click.option("--seed", type=int, default=None, help=f"Defaults to ${SEED_ENV} or 0.")
@click.pass_context
def oracle(ctx, n, sigma, mu, samples, seed) -> None:
    """Monte-Carlo estimates of metric and cubic values vs closed forms."""
    point = _parse_point(sigma, mu, n)
    seed = _default_seed() if seed is None else seed
    rng = np.random.default_rng([seed, 1])
    dim = point.n

    def draw_tangent() -> TangentVector:
        m = rng.normal(size=(dim, dim))
        return TangentVector((m + m.T) / 2.0, rng.normal(size=dim))

    s, t, w = draw_tangent(), draw_tangent(), draw_tangent()

    def compare(closed: float, estimate) -> dict:
        z = (
            0.0
            if estimate.stderr == 0.0
            else (estimate.value - closed) / estimate.stderr
        )
        return {
            "closed_form": closed,
            "estimate": estimate.value,
            "stderr": estimate.stderr,
            "z": z,
            "within_3_stderr": abs(z) <= 3.0,
        }

    report = {
        "samples": samples,
        "seed": seed,
        "metric": compare(
            fisher_metric(point, s, t), mc_oracle_metric(point, s, t, samples, seed)
        ),
        "cubic": compare(
            amari_cubic(point, s, t, w),
            mc_oracle_cubic(point, s, t, w, samples, seed),
        ),
    }
    _echo_json(report)
    if not (report["metric"]["within_3_stderr"] and report["cubic"]["within_3_stderr"]):
        ctx.exit(1)


@main.command(name="group")
@click.option("--act", "do_act", is_flag=True, help="Apply (a, b) to a point.")
@click.option("--phi", "do_phi", is_flag=True, help="Map (a, b) to its point.")
@click.option("--phi-inv", "do_phi_inv", is_flag=True, help="Factor a point.")
@click.option("--pullback", "do_pullback", is_flag=True, help="Pull a tangent back to the identity.")
@click.option("--a", "a_text", default=None, help="Upper-triangular matrix as JSON.")
@click.option("--b", "b_text", default=None, help="Translation vector as JSON.")
@click.option("--sigma", default=None)
@click.option("--mu", default=None)
@click.option("--t", "t_text", default=None, help="Tangent vector as JSON.")
def group_cmd(do_act, do_phi, do_phi_inv, do_pullback, a_text, b_text, sigma, mu, t_text) -> None:
    """Group-action utilities with JSON matrix input and output."""
    chosen = [flag for flag in (do_act, do_phi, do_phi_inv, do_pullback) if flag]
    if len(chosen) != 1:
        raise click.UsageError("choose exactly one of --act/--phi/--phi-inv/--pullback")

    def need_element() -> GroupElement:
        if a_text is None or b_text is None:
            raise click.UsageError("--a and --b are required here")
        try:
            return GroupElement(_parse_json(a_text, "a"), _parse_json(b_text, "b"))
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc

    def need_point() -> ManifoldPoint:
        return _parse_point(sigma, mu, None)

    if do_phi:
        p = phi(need_element())
        _echo_json({"sigma": p.sigma.tolist(), "mu": p.mu.tolist()})
        return
    if do_phi_inv:
        g = phi_inv(need_point())
        _echo_json({"a": g.a.tolist(), "b": g.b.tolist()})
        return
    if do_act:
        g = need_element()
        p = need_point()
        if t_text is not None:
            moved = act_tangent(g, _parse_tangent(t_text, "t"))
            _echo_json({"x": moved.x.tolist(), "v": moved.v.tolist()})
            return
        q = act(g, p)
        _echo_json({"sigma": q.sigma.tolist(), "mu": q.mu.tolist()})
        return
    # pullback
    if t_text is None:
        raise click.UsageError("--pullback requires --t")
    p = need_point()
    coeffs = pull_back_to_identity(p, _parse_tangent(t_text, "t"))
    labels = [idx.label() for idx in basis_indices(p.n)]
    _echo_json({"coefficients": dict(zip(labels, coeffs.tolist()))})


if __name__ == "__main__":
    main()

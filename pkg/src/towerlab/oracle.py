"""Optional cross-check of class-group columns against an external CAS.

The command template comes from the TOWERLAB_ORACLE_CMD environment variable.
The {POLY} placeholder expands to the defining polynomial's integer
coefficients, constant term first; a bare {POLY} argv token becomes one argv
entry per coefficient.  The oracle must answer with the elementary divisors
of the class group, space-separated, on its first output line.

Each query runs in its own subprocess; nothing long-lived is kept around.
"""

import os
import shlex
import subprocess

from . import formclass
from .classifier import kuroda_h2
from .errors import OracleParseError
from .fixtures import FIXTURE_ROWS

ENV_VAR = "TOWERLAB_ORACLE_CMD"


def quadratic_poly(m: int):
    """x^2 - m, constant term first."""
    return (-m, 0, 1)


def biquadratic_poly(r1: int, r2: int):
    """Minimal polynomial of sqrt(r1) + sqrt(r2), constant term first."""
    return ((r1 - r2) ** 2, 0, -2 * (r1 + r2), 0, 1)


def _argv(template: str, coeffs) -> list:
    parts = shlex.split(template)
    poly = [str(c) for c in coeffs]
    argv = []
    for token in parts:
        if token == "{POLY}":
            argv.extend(poly)
        elif "{POLY}" in token:
            argv.append(token.replace("{POLY}", " ".join(poly)))
        else:
            argv.append(token)
    return argv


def query_class_group(template: str, coeffs, timeout: float = 300.0):
    """Elementary divisors reported by the oracle for one polynomial."""
    argv = _argv(template, coeffs)
    try:
        proc = subprocess.run(argv, capture_output=True, text=True,
                              timeout=timeout, check=False)
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise OracleParseError(f"oracle invocation failed: {exc}") from exc
    if proc.returncode != 0:
        raise OracleParseError(
            f"oracle exited {proc.returncode}: {proc.stderr.strip()[:200]}")
    first = proc.stdout.splitlines()[0].strip() if proc.stdout.strip() else ""
    try:
        divisors = [int(tok) for tok in first.split()]
    except ValueError as exc:
        raise OracleParseError(f"bad oracle output line: {first!r}") from exc
    if any(d < 1 for d in divisors):
        raise OracleParseError(f"bad oracle divisors: {divisors}")
    return [d for d in divisors if d > 1]


def _two_part_order(divisors) -> int:
    out = 1
    for d in divisors:
        out *= d & -d
    return out


def _row_queries(row):
    p1, p2, q = row.p1, row.p2, row.q
    m = row.d
    yield "n", quadratic_poly(m), formclass.h2_wide(m)
    yield "n1", biquadratic_poly(p1, 2 * p2 * q), kuroda_h2(1, row.q1, p1, p2, q)
    yield "n2", biquadratic_poly(p2, 2 * p1 * q), kuroda_h2(2, row.q2, p1, p2, q)
    yield "n3", biquadratic_poly(2 * q, p1 * p2), kuroda_h2(3, row.q3, p1, p2, q)


def oracle_check(rows=None, template: str | None = None) -> dict:
    """Compare computed 2-class numbers with the oracle's, column by column.

    Returns {"status": ..., "checks": [...]}; status "skipped" when no
    command template is configured.
    """
    if template is None:
        template = os.environ.get(ENV_VAR)
    if not template:
        return {"status": "skipped", "checks": [],
                "reason": f"{ENV_VAR} is not set"}
    if rows is None:
        rows = FIXTURE_ROWS
    checks = []
    status = "ok"
    for row in rows:
        for column, coeffs, ours in _row_queries(row):
            entry = {"d": row.d, "column": column, "computed": ours}
            try:
                divisors = query_class_group(template, coeffs)
            except OracleParseError as exc:
                entry["status"] = "error"
                entry["detail"] = str(exc)
                status = "error"
                checks.append(entry)
                continue
            oracle_two = _two_part_order(divisors)
            entry["oracle"] = oracle_two
            entry["oracle_divisors"] = divisors
            if oracle_two == ours:
                entry["status"] = "ok"
            else:
                entry["status"] = "mismatch"
                if status != "error":
                    status = "mismatch"
            checks.append(entry)
    return {"status": status, "checks": checks}

"""JSON report serialization.

Schema (field names are part of the interface):

    {
      "run": {"seed": ..., "degree_cap": ..., "timestamp": ...},
      "results": [
        {"identity_id": ..., "family": ..., "params": {name: "num/den"},
         "n": ..., "status": "pass"|"fail"|"info",
         "residual": null | {"degree": ..., "coeffs": ["num/den", ...]}}
      ]
    }

Rationals always serialize as exact "num/den" strings, never floats, so
a report is a reproducible input.  With the timestamp suppressed, the
same seed and configuration produce a byte-identical file.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from fractions import Fraction


def frac_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def params_json(params: dict) -> dict:
    return {k: frac_str(v) for k, v in sorted(params.items())}


def entry_json(report, entry) -> dict:
    if entry.zero:
        residual = None
    else:
        residual = {"degree": entry.degree,
                    "coeffs": [frac_str(c) for c in (entry.coeffs or ())]}
    status = report.status if report.status == "info" else (
        "pass" if entry.zero else "fail")
    return {"identity_id": report.identity_id,
            "family": report.family,
            "params": params_json(report.params),
            "n": entry.n,
            "status": status,
            "residual": residual}


def build_report(reports, seed, degree_cap, timestamp: bool = True) -> dict:
    run = {"seed": seed, "degree_cap": degree_cap}
    if timestamp:
        run["timestamp"] = datetime.now(timezone.utc).isoformat()
    results = []
    for rep in reports:
        for e in rep.entries:
            results.append(entry_json(rep, e))
    results.sort(key=lambda r: (r["identity_id"], r["family"],
                                json.dumps(r["params"], sort_keys=True),
                                r["n"] if r["n"] is not None else -1))
    return {"run": run, "results": results}


def dump_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def summary_lines(reports) -> list:
    """One human-readable line per (identity, family): pass/fail counts."""
    agg = {}
    for rep in reports:
        key = (rep.identity_id, rep.family)
        ok, bad = agg.get(key, (0, 0))
        for e in rep.entries:
            if e.zero:
                ok += 1
            else:
                bad += 1
        if rep.status == "info":
            bad = 0
        agg[key] = (ok, bad)
    lines = []
    for (ident, family), (ok, bad) in sorted(agg.items()):
        verdict = "PASS" if bad == 0 else "FAIL"
        lines.append(f"{verdict} {ident:14s} {family:28s} {ok} zero / {bad} nonzero residuals")
    return lines

"""JSON certificate documents.

Rationals are written as ``{"num": "27", "den": "196"}`` with decimal strings;
no value is ever a JSON float. ``decode_result(encode_result(x)) == x`` for every
result type.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .discrete import DiscreteSumReport
from .general import DimCertificate, LemmaReport, LemmaRow, LimitRow, Step
from .jets import OracleReport
from .kernel import ExpBound, PiecewiseDensity, Poly, Provenance
from .threefold import (
    Candidate,
    CriticalNumbers,
    Mode,
    ModeResult,
    ProfileExport,
    SweepReport,
    SweepRow,
    ThreefoldCertificate,
    Verdict,
)

SCHEMA_VERSION = "1.0"


def enc_rat(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def dec_rat(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def _opt(fn, x):
    return None if x is None else fn(x)


def _enc_value(v: Any) -> Any:
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, Fraction):
        return enc_rat(v)
    if isinstance(v, (list, tuple)):
        return [_enc_value(x) for x in v]
    raise TypeError(f"cannot encode {type(v).__name__}")


def _dec_value(v: Any) -> Any:
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return dec_rat(v)
    if isinstance(v, list):
        return [_dec_value(x) for x in v]
    return v


def enc_poly(P: Poly) -> list:
    return [enc_rat(c) for c in P.coeffs]


def dec_poly(obj: list) -> Poly:
    return Poly(dec_rat(c) for c in obj)


def enc_density(g: PiecewiseDensity) -> dict:
    return {
        "breakpoints": [enc_rat(b) for b in g.breakpoints],
        "pieces": [{"coeffs": enc_poly(P), "provenance": prov.value} for P, prov in zip(g.pieces, g.provenance)],
    }


def dec_density(obj: dict) -> PiecewiseDensity:
    return PiecewiseDensity(
        [dec_rat(b) for b in obj["breakpoints"]],
        [dec_poly(p["coeffs"]) for p in obj["pieces"]],
        [Provenance(p["provenance"]) for p in obj["pieces"]],
    )


def enc_candidate(c: Candidate) -> dict:
    return {"p": c.p, "q": c.q, "d": c.d, "degree_bound": enc_rat(c.degree_bound)}


def dec_candidate(obj: dict) -> Candidate:
    return Candidate(obj["p"], obj["q"], obj["d"], dec_rat(obj["degree_bound"]))


def enc_criticals(cn: CriticalNumbers) -> dict:
    return {
        "alpha1": enc_rat(cn.alpha1),
        "alpha2": enc_rat(cn.alpha2),
        "alpha3": enc_rat(cn.alpha3),
        "collapsed": cn.collapsed,
    }


def dec_criticals(obj: dict) -> CriticalNumbers:
    return CriticalNumbers(dec_rat(obj["alpha1"]), dec_rat(obj["alpha2"]), dec_rat(obj["alpha3"]), obj["collapsed"])


def enc_note(note: dict) -> dict:
    return {k: _enc_value(v) for k, v in note.items()}


def dec_note(obj: dict) -> dict:
    return {k: _dec_value(v) for k, v in obj.items()}


def enc_threefold(cert: ThreefoldCertificate) -> dict:
    return {
        "kind": "threefold_certificate",
        "candidate": enc_candidate(cert.candidate),
        "mode": cert.mode.value,
        "criticals": enc_criticals(cert.criticals),
        "profile": enc_density(cert.profile),
        "total_budget": enc_rat(cert.total_budget),
        "threshold": enc_rat(cert.threshold),
        "verdict": cert.verdict.value,
        "notes": [enc_note(n) for n in cert.notes],
        "alternatives": [
            {
                "mode": m.mode.value,
                "profile": enc_density(m.profile),
                "total_budget": enc_rat(m.total_budget),
                "verdict": m.verdict.value,
            }
            for m in cert.alternatives
        ],
        "bracket": _opt(enc_rat, cert.bracket),
        "mu": cert.mu,
    }


def dec_threefold(obj: dict) -> ThreefoldCertificate:
    return ThreefoldCertificate(
        candidate=dec_candidate(obj["candidate"]),
        mode=Mode(obj["mode"]),
        criticals=dec_criticals(obj["criticals"]),
        profile=dec_density(obj["profile"]),
        total_budget=dec_rat(obj["total_budget"]),
        threshold=dec_rat(obj["threshold"]),
        verdict=Verdict(obj["verdict"]),
        notes=tuple(dec_note(n) for n in obj["notes"]),
        alternatives=tuple(
            ModeResult(Mode(m["mode"]), dec_density(m["profile"]), dec_rat(m["total_budget"]), Verdict(m["verdict"]))
            for m in obj["alternatives"]
        ),
        bracket=_opt(dec_rat, obj["bracket"]),
        mu=obj["mu"],
    )


def enc_sweep(rep: SweepReport) -> dict:
    return {
        "kind": "sweep_report",
        "q_max": rep.q_max,
        "degree_bound": enc_rat(rep.degree_bound),
        "all_eliminated": rep.all_eliminated,
        "brackets_below_bound": rep.brackets_below_bound,
        "tightest_bracket": _opt(enc_rat, rep.tightest_bracket),
        "tightest_bracket_at": _opt(enc_candidate, rep.tightest_bracket_at),
        "tightest_ratio": enc_rat(rep.tightest_ratio),
        "tightest_ratio_at": _opt(enc_candidate, rep.tightest_ratio_at),
        "rows": [
            {
                "candidate": enc_candidate(r.candidate),
                "mode": r.mode.value,
                "total_budget": enc_rat(r.total_budget),
                "verdict": r.verdict.value,
                "bracket": _opt(enc_rat, r.bracket),
            }
            for r in rep.rows
        ],
    }


def dec_sweep(obj: dict) -> SweepReport:
    return SweepReport(
        q_max=obj["q_max"],
        degree_bound=dec_rat(obj["degree_bound"]),
        rows=tuple(
            SweepRow(
                dec_candidate(r["candidate"]), Mode(r["mode"]), dec_rat(r["total_budget"]), Verdict(r["verdict"]),
                _opt(dec_rat, r["bracket"]),
            )
            for r in obj["rows"]
        ),
        all_eliminated=obj["all_eliminated"],
        tightest_bracket=_opt(dec_rat, obj["tightest_bracket"]),
        tightest_bracket_at=_opt(dec_candidate, obj["tightest_bracket_at"]),
        tightest_ratio=dec_rat(obj["tightest_ratio"]),
        tightest_ratio_at=_opt(dec_candidate, obj["tightest_ratio_at"]),
    )


def enc_discrete(r: DiscreteSumReport) -> dict:
    return {
        "kind": "discrete_sum_report",
        "candidate": enc_candidate(r.candidate),
        "mode": r.mode.value,
        "n": r.n,
        "integer_sum": str(r.integer_sum),
        "exact_sum": enc_rat(r.exact_sum),
        "integral": enc_rat(r.integral),
        "gap": enc_rat(r.gap),
        "notes": list(r.notes),
    }


def dec_discrete(obj: dict) -> DiscreteSumReport:
    return DiscreteSumReport(
        dec_candidate(obj["candidate"]), Mode(obj["mode"]), obj["n"], int(obj["integer_sum"]),
        dec_rat(obj["exact_sum"]), dec_rat(obj["integral"]), dec_rat(obj["gap"]), tuple(obj["notes"]),
    )


def enc_step(s: Step) -> dict:
    return {
        "label": s.label,
        "statement": s.statement,
        "lhs": enc_rat(s.lhs),
        "relation": s.relation,
        "rhs": enc_rat(s.rhs),
        "holds": s.holds,
        "detail": {k: _enc_value(v) for k, v in s.detail.items()},
    }


def dec_step(obj: dict) -> Step:
    return Step(
        obj["label"], obj["statement"], dec_rat(obj["lhs"]), obj["relation"], dec_rat(obj["rhs"]), obj["holds"],
        {k: _dec_value(v) for k, v in obj["detail"].items()},
    )


def enc_dim(cert: DimCertificate) -> dict:
    return {
        "kind": "dim_certificate",
        "d": cert.d,
        "epsilon": enc_rat(cert.epsilon),
        "alpha": enc_rat(cert.alpha),
        "f4": enc_rat(cert.f4),
        "degree_bound": enc_rat(cert.degree_bound),
        "steps": [enc_step(s) for s in cert.steps],
        "verdict": cert.verdict,
    }


def dec_dim(obj: dict) -> DimCertificate:
    return DimCertificate(
        obj["d"], dec_rat(obj["epsilon"]), dec_rat(obj["alpha"]), dec_rat(obj["f4"]), dec_rat(obj["degree_bound"]),
        tuple(dec_step(s) for s in obj["steps"]), obj["verdict"],
    )


def enc_exp(b: ExpBound) -> dict:
    return {"x": enc_rat(b.x), "lower": enc_rat(b.lower), "upper": enc_rat(b.upper), "terms": b.terms}


def dec_exp(obj: dict) -> ExpBound:
    return ExpBound(dec_rat(obj["x"]), dec_rat(obj["lower"]), dec_rat(obj["upper"]), obj["terms"])


def enc_lemma(rep: LemmaReport) -> dict:
    lim = rep.limit
    return {
        "kind": "lemma_report",
        "d_min": rep.d_min,
        "d_max": rep.d_max,
        "rows": [{"d": r.d, "f4": enc_rat(r.f4), "passed": r.passed} for r in rep.rows],
        "limit": {
            "exp_third": enc_exp(lim.exp_third),
            "exp_minus_two_thirds": enc_exp(lim.exp_minus_two_thirds),
            "upper_difference": enc_rat(lim.upper_difference),
            "ceiling": enc_rat(lim.ceiling),
            "passed": lim.passed,
        },
    }


def dec_lemma(obj: dict) -> LemmaReport:
    lim = obj["limit"]
    return LemmaReport(
        obj["d_min"],
        obj["d_max"],
        tuple(LemmaRow(r["d"], dec_rat(r["f4"]), r["passed"]) for r in obj["rows"]),
        LimitRow(
            dec_exp(lim["exp_third"]), dec_exp(lim["exp_minus_two_thirds"]), dec_rat(lim["upper_difference"]),
            dec_rat(lim["ceiling"]), lim["passed"],
        ),
    )


def enc_oracle(rep: OracleReport) -> dict:
    return {
        "kind": "oracle_check",
        "dims": list(rep.dims),
        "k_max": rep.k_max,
        "checked": rep.checked,
        "mismatches": [list(m) for m in rep.mismatches],
    }


def dec_oracle(obj: dict) -> OracleReport:
    return OracleReport(tuple(obj["dims"]), obj["k_max"], obj["checked"], tuple(tuple(m) for m in obj["mismatches"]))


def enc_profile(x: ProfileExport) -> dict:
    return {
        "kind": "profile",
        "candidate": enc_candidate(x.candidate),
        "mode": x.mode.value,
        "mu": x.mu,
        "profile": enc_density(x.profile),
    }


def dec_profile(obj: dict) -> ProfileExport:
    return ProfileExport(dec_candidate(obj["candidate"]), Mode(obj["mode"]), obj["mu"], dec_density(obj["profile"]))


_ENCODERS = [
    (ProfileExport, enc_profile),
    (ThreefoldCertificate, enc_threefold),
    (SweepReport, enc_sweep),
    (DiscreteSumReport, enc_discrete),
    (DimCertificate, enc_dim),
    (LemmaReport, enc_lemma),
    (OracleReport, enc_oracle),
]

_DECODERS = {
    "threefold_certificate": dec_threefold,
    "sweep_report": dec_sweep,
    "discrete_sum_report": dec_discrete,
    "dim_certificate": dec_dim,
    "lemma_report": dec_lemma,
    "oracle_check": dec_oracle,
    "profile": dec_profile,
}


def encode_result(obj: Any) -> dict:
    """Encode a result object, or a list of them, as JSON-ready data."""
    if isinstance(obj, (list, tuple)):
        return {"kind": "collection", "items": [encode_result(x) for x in obj]}
    for cls, fn in _ENCODERS:
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"no encoder for {type(obj).__name__}")


def decode_result(obj: dict) -> Any:
    if obj["kind"] == "collection":
        return [decode_result(x) for x in obj["items"]]
    return _DECODERS[obj["kind"]](obj)


def make_document(command: str, inputs: dict, result: Any = None, error: Optional[BaseException] = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "input": {k: _enc_value(v) for k, v in inputs.items()},
    }
    if error is not None:
        doc["error"] = {"type": type(error).__name__, "message": str(error)}
    else:
        doc["result"] = encode_result(result)
    return doc


def parse_document(doc: dict) -> tuple[str, dict, Any]:
    """Inverse of :func:`make_document` for successful documents."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')!r}")
    return doc["command"], loads_inputs(doc), decode_result(doc["result"])


def loads_inputs(doc: dict) -> dict:
    return {k: _dec_value(v) for k, v in doc["input"].items()}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"

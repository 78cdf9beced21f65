"""Command-line front end.

Exit status doubles as the verdict so the commands can gate CI:

* 0  command completed and (for certification commands) the bound was certified
* 1  command completed but the verdict is NOT_ELIMINATED / FAILED_AT / mismatch
* 2  usage error
* 3  candidate or dimension out of scope (an error document is emitted)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import discrete, general, jets, threefold
from .errors import DegenerateCandidateError, InadmissibleModeError, JetCertError, OutOfScopeError
from .kernel import rat
from .serialize import dumps, loads_inputs, make_document
from .threefold import Candidate, Mode, Verdict

COMMANDS = ("certify3", "sweep3", "profile", "certify-dim", "oracle-check", "convergence")
OUTPUT_DIR_ENV = "JETCERT_OUTPUT_DIR"
GOLDEN_DIR = Path(__file__).parent / "fixtures" / "golden"

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_SCOPE = 0, 1, 2, 3
_SCOPE_ERRORS = (OutOfScopeError, DegenerateCandidateError, InadmissibleModeError)


class UsageError(JetCertError):
    pass


@dataclass
class RunConfig:
    command: str
    p: Optional[int] = None
    q: Optional[int] = None
    d: Optional[int] = None
    q_max: Optional[int] = None
    d_max: Optional[int] = None
    degree_bound: Fraction = Fraction(1)
    mu: int = 3
    alpha2_override: Optional[Fraction] = None
    mode: Optional[str] = None
    samples: int = 8
    k_max: int = 30
    ns: tuple[int, ...] = (70, 140, 280, 560)
    output_format: str = "json"
    output_path: Optional[str] = None

    _REQUIRED = {
        "certify3": ("p", "q"),
        "profile": ("p", "q"),
        "convergence": ("p", "q"),
        "sweep3": ("q_max",),
        "certify-dim": ("d",),
        "oracle-check": (),
    }

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        missing = [f for f in self._REQUIRED[self.command] if getattr(self, f) is None]
        if missing:
            raise UsageError(f"{self.command} requires " + ", ".join("--" + m.replace("_", "-") for m in missing))
        if self.output_format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.output_format!r}")
        if self.output_format == "csv" and self.command not in ("profile", "sweep3", "convergence"):
            raise UsageError(f"csv output is not available for {self.command}")
        if self.samples < 2:
            raise UsageError("--samples must be >= 2")

    _INPUTS = {
        "certify3": ("p", "q", "degree_bound", "mu", "alpha2_override", "mode"),
        "profile": ("p", "q", "degree_bound", "mu", "alpha2_override", "mode", "samples"),
        "convergence": ("p", "q", "degree_bound", "mu", "mode", "ns"),
        "sweep3": ("q_max", "degree_bound", "mu"),
        "certify-dim": ("d", "d_max", "degree_bound"),
        "oracle-check": ("d", "k_max"),
    }

    def inputs(self) -> dict:
        """Input echo: the fields that affect this command's result."""
        out: dict[str, Any] = {}
        for name in self._INPUTS[self.command]:
            v = getattr(self, name)
            out[name] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def from_inputs(cls, command: str, inputs: dict) -> "RunConfig":
        kw = dict(inputs)
        if "ns" in kw:
            kw["ns"] = tuple(kw["ns"])
        return cls(command=command, **kw)

    def candidate(self) -> Candidate:
        return Candidate(self.p, self.q, 3, self.degree_bound)


def _mode_for(cfg: RunConfig, c: Candidate) -> Mode:
    if cfg.mode:
        return Mode(cfg.mode.upper())
    return Mode.LARGE_Q if c.q >= threefold.LARGE_Q_MIN_VERDICT else Mode.SMALL_Q


def compute(cfg: RunConfig) -> tuple[Any, int]:
    """Dispatch to the certifiers; returns (result object, exit status)."""
    cmd = cfg.command
    if cmd == "certify3":
        modes = [_mode_for(cfg, cfg.candidate())] if cfg.mode else None
        cert = threefold.certify_threefold(cfg.candidate(), cfg.mu, cfg.alpha2_override, modes)
        return cert, EXIT_OK if cert.verdict is Verdict.ELIMINATED else EXIT_VERDICT
    if cmd == "sweep3":
        rep = threefold.sweep(cfg.q_max, cfg.degree_bound, cfg.mu)
        return rep, EXIT_OK if rep.all_eliminated else EXIT_VERDICT
    if cmd == "profile":
        c = cfg.candidate()
        mode = _mode_for(cfg, c)
        g = threefold.build_profile(c, mode, cfg.mu, cfg.alpha2_override)
        return threefold.ProfileExport(c, mode, cfg.mu, g), EXIT_OK
    if cmd == "certify-dim":
        if cfg.d_max is None:
            cert = general.theorem_main_certificate(cfg.d, cfg.degree_bound)
            return cert, EXIT_OK if cert.established else EXIT_VERDICT
        certs = [general.theorem_main_certificate(d, cfg.degree_bound) for d in range(cfg.d, cfg.d_max + 1)]
        lemma = general.lemma_l2_check(cfg.d, cfg.d_max, cfg.degree_bound)
        ok = lemma.all_passed and all(c.established for c in certs)
        return [*certs, lemma], EXIT_OK if ok else EXIT_VERDICT
    if cmd == "oracle-check":
        dims = (2, 3, 4) if cfg.d is None else (cfg.d,)
        rep = jets.oracle_check(dims, cfg.k_max)
        return rep, EXIT_OK if rep.ok else EXIT_VERDICT
    if cmd == "convergence":
        c = cfg.candidate()
        reports = discrete.convergence_table(c, _mode_for(cfg, c), list(cfg.ns), cfg.mu)
        return reports, EXIT_OK
    raise UsageError(f"unknown command {cmd!r}")


def decimal_str(x: Fraction, digits: int = 15) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 10
        value = Decimal(x.numerator) / Decimal(x.denominator)
        return f"{value:.{digits}f}"


def emit_profile_csv(c: Candidate, mode: Mode, samples: int, mu: int = 3,
                     alpha2_override: Optional[Fraction] = None) -> str:
    """CSV samples of a profile: the left endpoint, then ``samples`` evenly spaced points per piece.

    The last point of each piece is its right breakpoint.
    """
    if samples < 2:
        raise UsageError("samples must be >= 2")
    g = threefold.build_profile(c, mode, mu, alpha2_override)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "density", "piece_provenance", "t_exact", "density_exact"])

    def row(t: Fraction, i: int) -> None:
        v = g.pieces[i](t)
        w.writerow([decimal_str(t), decimal_str(v), g.provenance[i].value, str(t), str(v)])

    row(g.breakpoints[0], 0)
    for i, (lo, hi) in enumerate(g.intervals()):
        for j in range(1, samples + 1):
            row(lo + (hi - lo) * j / samples, i)
    return buf.getvalue()


def _csv_rows(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render(cfg: RunConfig, result: Any, doc: dict) -> str:
    fmt = cfg.output_format
    if fmt == "json":
        return dumps(doc)
    if fmt == "csv":
        if cfg.command == "profile":
            c = cfg.candidate()
            return emit_profile_csv(c, _mode_for(cfg, c), cfg.samples, cfg.mu, cfg.alpha2_override)
        if cfg.command == "sweep3":
            return _csv_rows(
                ["p", "q", "mode", "total_budget", "verdict", "bracket"],
                [[r.candidate.p, r.candidate.q, r.mode.value, str(r.total_budget), r.verdict.value,
                  "" if r.bracket is None else str(r.bracket)] for r in result.rows],
            )
        return _csv_rows(
            ["n", "integer_sum", "exact_sum", "integral", "gap", "n_times_gap"],
            [[r.n, r.integer_sum, str(r.exact_sum), str(r.integral), str(r.gap), str(r.n * r.gap)] for r in result],
        )
    return render_text(cfg, result)


def render_text(cfg: RunConfig, result: Any) -> str:
    lines: list[str] = []
    cmd = cfg.command
    if cmd == "certify3":
        r = result
        lines.append(f"candidate {r.candidate}: {r.verdict.value} via {r.mode.value}")
        lines.append(f"  total budget {r.total_budget} ({float(r.total_budget):.6f}) vs threshold {r.threshold}")
        for n in r.notes:
            lines.append(f"  note[{n['kind']}]: {n['text']}")
    elif cmd == "sweep3":
        r = result
        lines.append(f"q_max {r.q_max}: {len(r.rows)} candidates, all eliminated: {r.all_eliminated}")
        if r.tightest_bracket is not None:
            lines.append(f"  tightest large-q bracket {r.tightest_bracket} at {r.tightest_bracket_at}")
        lines.append(f"  tightest budget/threshold {r.tightest_ratio} at {r.tightest_ratio_at}")
    elif cmd == "profile":
        g = result.profile
        for (lo, hi), P, prov in zip(g.intervals(), g.pieces, g.provenance):
            lines.append(f"({lo}, {hi}] {prov.value}: {P}")
    elif cmd == "certify-dim":
        certs = [result] if not isinstance(result, list) else [x for x in result if isinstance(x, general.DimCertificate)]
        for c in certs:
            lines.append(f"d={c.d}: {c.verdict}, certified bound {c.epsilon}, f4 = {float(c.f4):.6f}")
        if isinstance(result, list):
            lim = result[-1].limit
            lines.append(f"limit: e^(1/3) - e^(-2/3) <= {float(lim.upper_difference):.10f} < {lim.ceiling}: {lim.passed}")
    elif cmd == "oracle-check":
        lines.append(f"checked {result.checked} triples, {len(result.mismatches)} mismatches")
    elif cmd == "convergence":
        for r in result:
            lines.append(f"n={r.n}: sum {float(r.exact_sum):.8f} integral {float(r.integral):.8f} n*gap {float(r.n * r.gap):.6f}")
    return "\n".join(lines) + "\n"


def _default_path(cfg: RunConfig) -> Optional[Path]:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if not base:
        return None
    parts = [cfg.command.replace("-", "_")]
    for name in ("p", "q", "d", "q_max", "d_max"):
        v = getattr(cfg, name)
        if v is not None:
            parts.append(f"{name}{v}")
    return Path(base) / ("_".join(parts) + "." + cfg.output_format)


def _write(cfg: RunConfig, text: str, stdout) -> None:
    path = Path(cfg.output_path) if cfg.output_path else _default_path(cfg)
    if path is None:
        stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def execute(cfg: RunConfig) -> tuple[int, dict, Any]:
    """Run a validated config; returns (exit status, document, result object)."""
    try:
        result, status = compute(cfg)
    except _SCOPE_ERRORS as exc:
        return EXIT_SCOPE, make_document(cfg.command, cfg.inputs(), error=exc), None
    return status, make_document(cfg.command, cfg.inputs(), result), result


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg.validate()
        status, doc, result = execute(cfg)
    except JetCertError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    if status == EXIT_SCOPE:
        _write(cfg, dumps(doc), stdout)
        stderr.write(f"error: {doc['error']['message']}\n")
        return status
    _write(cfg, render(cfg, result, doc), stdout)
    return status


def verify_golden(directory: Path = GOLDEN_DIR) -> list[tuple[str, bool]]:
    """Re-run every golden document and compare results (tool_version ignored)."""
    outcomes = []
    for path in sorted(Path(directory).glob("*.json")):
        doc = json.loads(path.read_text())
        cfg = RunConfig.from_inputs(doc["command"], loads_inputs(doc))
        _, fresh, _ = execute(cfg)
        keep = lambda d: {k: v for k, v in d.items() if k != "tool_version"}  # noqa: E731
        outcomes.append((path.name, keep(json.loads(dumps(fresh))) == keep(doc)))
    return outcomes


def _rational_arg(text: str) -> Fraction:
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jetcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--output", "-o", dest="output_path", default=None)
    common.add_argument("--degree-bound", type=_rational_arg, default=Fraction(1), help="lower bound for A^d")

    cand = argparse.ArgumentParser(add_help=False)
    cand.add_argument("--p", type=int, required=True)
    cand.add_argument("--q", type=int, required=True)
    cand.add_argument("--mu", type=int, default=3)
    cand.add_argument("--mode", choices=("small_q", "large_q", "SMALL_Q", "LARGE_Q"), default=None)

    p = sub.add_parser("certify3", parents=[common, cand], help="certify one threefold candidate")
    p.add_argument("--alpha2", dest="alpha2_override", type=_rational_arg, default=None)

    p = sub.add_parser("sweep3", parents=[common], help="certify every candidate up to q_max")
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--mu", type=int, default=3)

    p = sub.add_parser("profile", parents=[common, cand], help="export a jet-density profile")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--alpha2", dest="alpha2_override", type=_rational_arg, default=None)

    p = sub.add_parser("certify-dim", parents=[common], help="certify the bound in dimension d (or a range)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--d-max", type=int, default=None)

    p = sub.add_parser("oracle-check", parents=[common], help="closed-form jet counts vs brute force")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--k-max", type=int, default=30)

    p = sub.add_parser("convergence", parents=[common, cand], help="discrete jet sums vs the integral")
    p.add_argument("--n", dest="ns", type=int, nargs="+", default=[70, 140, 280, 560])

    p = sub.add_parser("golden", help="re-run the golden certificate corpus")
    p.add_argument("--dir", default=str(GOLDEN_DIR))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fmt = args.output_format or ("csv" if args.command == "profile" else "json")
    kw = {f.name: getattr(args, f.name) for f in fields(RunConfig) if hasattr(args, f.name)}
    kw["output_format"] = fmt
    if "ns" in kw:
        kw["ns"] = tuple(kw["ns"])
    if kw.get("mode"):
        kw["mode"] = kw["mode"].upper()
    return RunConfig(**kw)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "golden":
        outcomes = verify_golden(Path(args.dir))
        for name, ok in outcomes:
            print(f"{'PASS' if ok else 'FAIL'} {name}")
        return EXIT_OK if outcomes and all(ok for _, ok in outcomes) else EXIT_VERDICT
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())

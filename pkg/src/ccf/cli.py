"""Command-line interface: expand, period, verify-algorithm, growth-report, corpus.

Exit codes: 0 success, 1 input error, 2 verification failure, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from .algorithms import DigitUnresolved, PartitionSpec, UnverifiableShape, nearest_integer, partition_algorithm
from .cf_core import DEFAULT_STEPS, ExpansionReport, expand, precision_cap
from .corpus import CORPUS_SEED, random_surds, run_corpus
from .growth import growth_check
from .interval import RationalBox
from .lagrange import NoPeriodFound, detect_period
from .partition_check import validate_partition
from .rings import RINGS, RingElement, RingSpec, get_ring
from .exact_surd import ReducibleError, SurdContext
from .verify import verify_cor52, verify_thm51

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    """Malformed user input; the message names the offending field."""


# -- parsing --------------------------------------------------------------------------

_NUM = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?"
_COMPLEX = re.compile(rf"^(?P<re>{_NUM})?(?:(?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+)?(?:/\d+)?)\*?[ij])?$")


def parse_exact(text: str) -> Fraction:
    """Decimal or p/q as an exact rational, never through a binary float."""
    return Fraction(text)


def parse_complex(text: str, field: str = "--value") -> tuple[Fraction, Fraction]:
    """'1.23+0.77i', '-2i', '1/3-1/7i' or '0.5' as exact rational parts."""
    s = text.replace(" ", "")
    m = _COMPLEX.match(s)
    if not s or not m or (m.group("re") is None and m.group("im") is None):
        # a purely imaginary value such as '2i' lands here
        pure = re.fullmatch(rf"(?P<im>{_NUM})?\*?[ij]", s)
        if not pure:
            raise InputError(f"{field}: cannot parse complex number {text!r}")
        im = pure.group("im")
        return Fraction(0), Fraction(1) if im in (None, "+") else Fraction(-1) if im == "-" else Fraction(im)
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im = m.group("im")
    if im is None:
        im_part = Fraction(0)
    elif im in ("+", "-"):
        im_part = Fraction(1 if im == "+" else -1)
    else:
        im_part = Fraction(im)
    return re_part, im_part


def parse_minpoly(text: str, ring: RingSpec) -> tuple[RingElement, RingElement, RingElement]:
    """'a,b,c' with rational integers, or 'x,y;x,y;x,y' in ring coordinates."""
    try:
        if ";" in text:
            parts = [p.strip() for p in text.split(";")]
            coeffs = [RingElement.parse(p, ring) for p in parts]
        else:
            coeffs = [ring(int(p)) for p in text.split(",")]
    except ValueError as exc:
        raise InputError(f"--minpoly: {exc}") from exc
    if len(coeffs) != 3:
        raise InputError(f"--minpoly: expected three coefficients a,b,c, got {len(coeffs)}")
    if coeffs[0].is_zero():
        raise InputError("--minpoly: leading coefficient is zero")
    return tuple(coeffs)


def parse_root(text: str):
    if text in ("+im", "-im", "+re", "-re", "big", "small"):
        return text
    if text in ("+1", "1", "-1"):
        return int(text)
    try:
        re_part, im_part = parse_complex(text, "--root")
    except InputError:
        raise InputError(f"--root: expected +im, -im, +re, -re, big, small, +1, -1 or a complex guess, got {text!r}")
    return complex(float(re_part), float(im_part))


def build_algorithm(args):
    ring = args.ring
    if args.alg == "nearest":
        return nearest_integer(ring)
    if not args.partition:
        raise InputError("--partition: required with --alg partition")
    try:
        spec = PartitionSpec.from_json(Path(args.partition).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"--partition: {exc}") from exc
    if spec.ring != ring:
        raise InputError(f"--partition: partition is for ring {spec.ring.name}, not {ring.name}")
    return partition_algorithm(spec)


def build_source(args):
    if args.minpoly and args.value:
        raise InputError("--minpoly and --value are mutually exclusive")
    if args.minpoly:
        a, b, c = parse_minpoly(args.minpoly, args.ring)
        try:
            return SurdContext.from_coeffs(args.ring, a, b, c, select=parse_root(args.root))
        except ReducibleError as exc:
            raise InputError(f"--minpoly: {exc}") from exc
        except ValueError as exc:
            raise InputError(f"--root: {exc}") from exc
    if args.value:
        re_part, im_part = parse_complex(args.value)
        return RationalBox.point(re_part, im_part)
    raise InputError("one of --minpoly or --value is required")


# -- output ---------------------------------------------------------------------------

def write_output(text: str, path: str | None) -> None:
    """Write to stdout, or atomically to ``path``."""
    if not path:
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# -- commands -------------------------------------------------------------------------

def _report_failed(rep: ExpansionReport) -> bool:
    return not (rep.identities_ok and rep.errors_ok and rep.theorem_consistent)


def cmd_expand(args) -> int:
    alg = build_algorithm(args)
    src = build_source(args)
    target = parse_exact(args.target) if args.target else None
    rep = expand(src, alg, args.steps, precision=args.precision, cap=args.cap, target=target,
                 stop_on_period=not args.no_period)
    write_output(dump(rep.to_json()), args.output)
    return EXIT_VERIFY if _report_failed(rep) else EXIT_OK


def cmd_period(args) -> int:
    alg = build_algorithm(args)
    src = build_source(args)
    if not isinstance(src, SurdContext):
        raise InputError("--minpoly: period detection needs an exact quadratic surd")
    res = detect_period(src, alg, args.steps)
    out = res.to_json()
    out["schema"] = "ccf-report/1"
    out["input"] = src.to_json()
    out["algorithm"] = alg.describe()
    write_output(dump(out), args.output)
    return EXIT_OK if res.triples_ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    alg = build_algorithm(args)
    out = {"schema": "ccf-report/1", "algorithm": alg.describe()}
    if args.alg == "partition":
        spec = PartitionSpec.from_json(Path(args.partition).read_text())
        rep = validate_partition(spec)
        out["partition"] = {"ok": rep["ok"], "reason": rep["reason"],
                            "radius": str(rep.get("radius")), "closed": rep.get("closed")}
    if args.ring.name != "E":
        raise InputError(f"--ring: geometric verification needs E, got {args.ring.name}")
    out["monotonicity"] = verify_thm51(alg)
    out["containment"] = verify_cor52(alg)
    out["ok"] = out["monotonicity"]["ok"] and out["containment"]["ok"]
    out["verdict"] = "PASS" if out["ok"] else "FAIL"
    write_output(dump(out), args.output)
    return EXIT_OK if out["ok"] else EXIT_VERIFY


def cmd_growth(args) -> int:
    if args.ring.name != "E" or args.alg != "nearest":
        raise InputError("--ring/--alg: growth reports need --ring E --alg nearest")
    alg = build_algorithm(args)
    src = build_source(args)
    rep = expand(src, alg, args.steps, precision=args.precision, cap=args.cap, stop_on_period=False)
    g = growth_check(rep)
    text = dump(g.to_json()) if args.format == "json" else g.to_csv()
    write_output(text, args.output)
    return EXIT_OK if g.ok else EXIT_VERIFY


def cmd_corpus(args) -> int:
    if args.ring.name != "E":
        raise InputError("--ring: the corpus is defined over E")
    ctxs = random_surds(args.count, args.seed)
    res = run_corpus(ctxs, args.steps, checks=not args.no_checks, jobs=args.jobs)
    out = res.to_json()
    out["seed"] = args.seed
    write_output(dump(out), args.output)
    if any(e.get("termination") == "budget" for e in res.entries):
        return EXIT_BUDGET
    return EXIT_OK if res.ok else EXIT_VERIFY


# -- parser ---------------------------------------------------------------------------

def _ring(name: str) -> RingSpec:
    try:
        return get_ring(name)
    except (KeyError, ValueError):
        raise argparse.ArgumentTypeError(f"unknown ring {name!r}; choose from {', '.join(RINGS)}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors (1); 2 is reserved for verification failures
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ccf", description="Exact complex continued fractions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, source=True):
        sp.add_argument("--ring", type=_ring, default=get_ring("E"), help="Zi, Zi2, Zi3, E, E7 or E11")
        sp.add_argument("--alg", choices=["nearest", "partition"], default="nearest")
        sp.add_argument("--partition", help="partition JSON file for --alg partition")
        sp.add_argument("--output", "-o", help="write the artifact here instead of stdout")
        if source:
            sp.add_argument("--minpoly", help="a,b,c or x,y;x,y;x,y coefficients of a z^2 + b z + c")
            sp.add_argument("--root", default="+im", help="+im, -im, +re, -re, big, small, +1, -1 or a guess")
            sp.add_argument("--value", help="exact complex input such as 1.23+0.77i (numeric mode)")
            sp.add_argument("--precision", type=int, default=256, help="starting precision in bits")
            sp.add_argument("--cap", type=int, default=None, help="precision cap in bits")
            sp.add_argument("--steps", type=int, default=DEFAULT_STEPS)

    sp = sub.add_parser("expand", help="expand a surd exactly or a value with certified digits")
    common(sp)
    sp.add_argument("--target", help="stop once the certified error bound is below this")
    sp.add_argument("--no-period", action="store_true", help="do not stop at a detected period")

    sp = sub.add_parser("period", help="detect the period of a quadratic surd")
    common(sp)

    sp = sub.add_parser("verify-algorithm", help="check the geometric monotonicity conditions")
    common(sp, source=False)

    sp = sub.add_parser("growth-report", help="growth ratios of |q_n| (E, nearest)")
    common(sp)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    sp = sub.add_parser("corpus", help="round-trip the seeded corpus of Eisenstein surds")
    common(sp, source=False)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=CORPUS_SEED)
    sp.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--no-checks", action="store_true", help="skip identity and growth audits")
    return p


COMMANDS = {"expand": cmd_expand, "period": cmd_period, "verify-algorithm": cmd_verify,
            "growth-report": cmd_growth, "corpus": cmd_corpus}


@dataclass
class JobSpec:
    """One CLI invocation; the command functions read these fields."""

    command: str
    ring: RingSpec = field(default_factory=lambda: get_ring("E"))
    alg: str = "nearest"
    partition: str | None = None
    output: str | None = None
    minpoly: str | None = None
    root: str = "+im"
    value: str | None = None
    precision: int = 256
    cap: int | None = None
    steps: int = DEFAULT_STEPS
    target: str | None = None
    no_period: bool = False
    format: str = "csv"
    count: int = 100
    seed: int = CORPUS_SEED
    jobs: int = 1
    no_checks: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "JobSpec":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in vars(ns).items() if k in names})

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"command: unknown command {self.command!r}")
        if isinstance(self.ring, str):
            try:
                self.ring = get_ring(self.ring)
            except (KeyError, ValueError) as exc:
                raise InputError(f"--ring: {exc}") from exc
        if self.alg not in ("nearest", "partition"):
            raise InputError(f"--alg: expected nearest or partition, got {self.alg!r}")
        for name in ("precision", "steps", "count", "jobs"):
            if getattr(self, name) < 1:
                raise InputError(f"--{name}: must be positive, got {getattr(self, name)}")
        if self.cap is None:
            self.cap = precision_cap()
        if self.cap < self.precision:
            raise InputError(f"--cap: {self.cap} is below --precision {self.precision}")


def run(job: JobSpec) -> int:
    """Validate and execute a job; returns the exit code."""
    try:
        job.validate()
        return COMMANDS[job.command](job)
    except (InputError, UnverifiableShape) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NoPeriodFound, DigitUnresolved) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(JobSpec.from_namespace(args))


if __name__ == "__main__":
    sys.exit(main())

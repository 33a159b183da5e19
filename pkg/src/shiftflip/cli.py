"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 validation failure,
3 search bound or horizon exhausted, 4 internal-consistency error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .coded_w import block_in_W, enumerate_stable, flip_rigidity_scan, reversal_closure_check, \
    concatenation_check, stability, verify_property_a
from .errors import DomainError, ShiftFlipError
from .flips import flip_from_json, validate_flip
from .invariants import fvector
from .sft import SftPresentation, count_language, is_infinite, is_irreducible, synchronizing_block
from .words import word_str

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BOUND, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _read_json(path: str) -> tuple[dict, str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise DomainError(f"{path}: expected a JSON object")
    return obj, hashlib.sha256(raw).hexdigest()


def _load_space(path: str):
    obj, digest = _read_json(path)
    return SftPresentation.from_json(obj), digest


def _load_flip(space, path: str):
    obj, digest = _read_json(path)
    try:
        return flip_from_json(space, obj), digest
    except (KeyError, TypeError) as exc:
        raise DomainError(f"{path}: malformed flip ({exc})") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out_dir: str | None, name: str):
    if out_dir is None:
        sys.stdout.write(text)
        return
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    (d / name).write_text(text)


def _provenance(**hashes) -> dict:
    return {"version": __version__, "inputs": {k: v for k, v in sorted(hashes.items())}}


# -- commands ----------------------------------------------------------

def cmd_info(args) -> int:
    X, digest = _load_space(args.space)
    irr = is_irreducible(X)
    info = {
        "alphabet": list(X.alphabet.symbols),
        "step": X.step,
        "irreducible": irr,
        "infinite": is_infinite(X) if irr else None,
        "synchronizing_block": list(synchronizing_block(X)) if irr else None,
        "block_counts": [count_language(X, n) for n in range(1, 9)],
    }
    if args.format == "json":
        _emit(_dump({**_provenance(space=digest), "info": info}), args.out, "info.json")
        return EXIT_OK

    def fmt(v):
        if v is None:
            return "undefined (reducible)"
        if isinstance(v, bool):
            return str(v).lower()
        if isinstance(v, list):
            return ",".join(str(x) for x in v)
        return str(v)

    text = "".join(f"{k}={fmt(info[k])}\n" for k in
                   ("alphabet", "step", "irreducible", "infinite", "synchronizing_block",
                    "block_counts"))
    _emit(text, args.out, "info.txt")
    return EXIT_OK


def cmd_validate(args) -> int:
    X, _ = _load_space(args.space)
    phi, _ = _load_flip(X, args.flip)
    rep = validate_flip(phi)
    sys.stdout.write(rep.summary() + "\n")
    return EXIT_OK if rep.valid else EXIT_INVALID


def cmd_fvector(args) -> int:
    X, sd = _load_space(args.space)
    phi, fd = _load_flip(X, args.flip)
    rep = validate_flip(phi)
    if not rep.valid:
        sys.stderr.write(f"flip rejected: {rep.summary()}\n{_dump(rep.to_json())}")
        return EXIT_INVALID
    fv = fvector(X, phi, args.horizon)
    if args.format == "json":
        _emit(_dump({**_provenance(space=sd, flip=fd), "fvector": fv.to_json()}), args.out,
              "fvector.json")
    else:
        _emit(fv.to_csv(), args.out, "fvector.csv")
    return EXIT_OK


def cmd_theorem_a(args) -> int:
    from .constructions import theorem_a
    from .invariants import fvector_table
    X, sd = _load_space(args.space)
    phi, fd = _load_flip(X, args.flip)
    kwargs = {"block_cap": args.bound} if args.bound is not None else {}
    report = theorem_a(X, phi, args.count, args.horizon, **kwargs)
    bundle = {**_provenance(space=sd, flip=fd), "report": report.to_json()}
    _emit(_dump(bundle), args.out, "theorem_a.json")
    if args.out is not None:
        _emit(fvector_table([s.fvector for s in report.stages]), args.out, "fvectors.csv")
    status = "complete" if report.complete else "halted"
    sys.stderr.write(f"{status}: {len(report.stages)} flip(s), "
                     f"{len(report.certificates)} certificate(s)\n")
    if report.halt_reason:
        sys.stderr.write(f"halt: {report.halt_reason}\n")
    return EXIT_OK if report.complete else EXIT_BOUND


def cmd_w(args) -> int:
    sub = args.w_command
    if sub == "stable":
        ok, reason = stability(args.block)
        print("stable" if ok else f"unstable ({reason})")
        return EXIT_OK
    if sub == "enumerate":
        words = [word_str(w) for w in enumerate_stable(args.L)]
        if args.format == "json":
            _emit(_dump({"version": __version__, "L": args.L, "stable": words}), args.out,
                  "stable.json")
        else:
            _emit("".join(w + "\n" for w in words), args.out, "stable.txt")
        return EXIT_OK
    if sub == "member":
        cert = block_in_W(args.block, args.L)
        print(f"yes (certificate {word_str(cert)})" if cert is not None else "unknown")
        return EXIT_OK
    if sub == "rigidity":
        rep = flip_rigidity_scan(args.L)
        print("surviving involutions: " + ", ".join(rep.details["survivors"]))
        for name, r in rep.details["involutions"].items():
            if not r["survives"]:
                detail = "; ".join([r["first_counterexample"]] + r["cited"])
                print(f"{name}: fails ({detail})")
        return EXIT_OK
    if sub == "props":
        reports = [verify_property_a(1, 2, 100), verify_property_a(-1, 2, 100),
                   reversal_closure_check(args.L), concatenation_check(100, min(args.L, 8))]
        for r in reports:
            print(r.line())
        return EXIT_OK if all(r.passed for r in reports) else EXIT_INVALID
    raise DomainError(f"unknown w subcommand {sub!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="shiftflip", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, flip=True, out=True, fmt=("csv", "json")):
        sp.add_argument("--space", required=True, metavar="PATH", help="presentation JSON")
        if flip:
            sp.add_argument("--flip", required=True, metavar="PATH", help="flip JSON")
        if fmt:
            sp.add_argument("--format", choices=fmt, default=fmt[0])
        if out:
            sp.add_argument("--out", metavar="DIR", help="write files here instead of stdout")

    sp = sub.add_parser("info", help="summary of a presentation")
    common(sp, flip=False, fmt=("text", "json"))
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("validate", help="check that a flip is a flip")
    common(sp, out=False, fmt=None)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("fvector", help="counts of points fixed by sigma^n and the flip")
    common(sp)
    sp.add_argument("--horizon", type=_positive, required=True, metavar="N")
    sp.set_defaults(func=cmd_fvector)

    sp = sub.add_parser("theorem-a", help="collect pairwise non-conjugate flips")
    common(sp, fmt=None)
    sp.add_argument("--count", type=_positive, default=2, metavar="K")
    sp.add_argument("--horizon", type=_positive, default=None, metavar="N")
    sp.add_argument("--bound", type=_positive, default=None, metavar="B",
                    help="cap on enumerated blocks")
    sp.set_defaults(func=cmd_theorem_a)

    sp = sub.add_parser("w", help="the coded system W")
    wsub = sp.add_subparsers(dest="w_command", required=True, parser_class=_Parser)
    s = wsub.add_parser("stable")
    s.add_argument("block")
    s = wsub.add_parser("enumerate")
    s.add_argument("L", type=_positive)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--out", metavar="DIR")
    s = wsub.add_parser("member")
    s.add_argument("block")
    s.add_argument("L", type=_positive)
    s = wsub.add_parser("rigidity")
    s.add_argument("L", type=_positive)
    s = wsub.add_parser("props")
    s.add_argument("L", type=_positive)
    sp.set_defaults(func=cmd_w)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ShiftFlipError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: expand, scan, construct, certify, reproduce.

Output is a JSON envelope (sorted keys, no timings) or the same data
flattened to ``path<TAB>value`` lines.  Exit codes: 0 ok, 2 unknown id or
bad input, 3 precision cap reached, 4 a checked assertion was refuted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .algebra import LaurentSeries, Poly, series_from_rational
from .cfengine import CFWord, Halt, certified_precision, cf_eval, cf_expand, cf_expand_rational
from .construct import GaugeTableExhausted
from .instances import UnknownInstance, get_instance
from .littlewood import (PrefixMismatch, bad_witness, certify_thm3, certify_thm4,
                         palindrome_checkpoints, scan, thm9_scan, thread_count)
from .oracle import random_pair
from . import reproduce, words

EXIT_OK, EXIT_UNKNOWN, EXIT_CAP, EXIT_REFUTED = 0, 2, 3, 4
_STATUS = {EXIT_OK: "ok", EXIT_UNKNOWN: "unknown-id", EXIT_CAP: "cap-reached", EXIT_REFUTED: "refuted"}


class CliError(Exception):
    def __init__(self, code: int, message: str, result: Optional[dict] = None):
        super().__init__(message)
        self.code, self.result = code, result or {}


@dataclass(frozen=True)
class RunConfig:
    precision_start: int = 1 << 8
    precision_cap: int = 1 << 14
    max_terms: int = 100
    D: int = 5
    threads: int = 1
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.precision_cap < self.precision_start:
            raise ValueError("precision cap below start")

    def precisions(self):
        prec = self.precision_start
        while True:
            yield prec
            if prec >= self.precision_cap:
                return
            prec = min(2 * prec, self.precision_cap)

    def public(self) -> dict:
        # thread count is excluded: it must not change the output
        d = asdict(self)
        d.pop("threads")
        return d


# ---------------------------------------------------------------- file formats


def _poly(cs, p: int) -> Poly:
    return Poly([int(c) for c in cs], p)


def load_file(path: str) -> tuple[str, Any]:
    """('series' | 'word' | 'rational', object) from one of the JSON file formats."""
    data = json.loads(Path(path).read_text())
    p = int(data["p"])
    if "letters" in data:
        letters = [_poly(cs, p) for cs in data["letters"]]
        return "word", CFWord.from_letters(letters) if letters else CFWord(Poly.zero(p))
    if "num" in data:
        return "rational", (_poly(data["num"], p), _poly(data["den"], p))
    if "coeffs" in data:
        return "series", LaurentSeries(p, int(data["top_degree"]), [int(c) for c in data["coeffs"]],
                                       data.get("precision"))
    raise CliError(EXIT_UNKNOWN, f"{path}: unrecognised file format")


def series_to_json(F: LaurentSeries) -> dict:
    return {"p": F.p, "top_degree": F.top, "coeffs": list(F.coeffs), "precision": F.prec}


def word_to_json(w: CFWord) -> dict:
    return {"p": w.p, "letters": [list(a.coeffs) for a in w.letters]}


def _is_file(spec: str) -> bool:
    return os.path.sep in spec or spec.endswith(".json") or Path(spec).is_file()


def source_series(spec: str, prec: int) -> LaurentSeries:
    """Series for an instance id or a file, known through X^-prec where possible."""
    if _is_file(spec):
        kind, obj = load_file(spec)
        if kind == "series":
            return obj
        if kind == "rational":
            return series_from_rational(obj[0], obj[1], prec)
        return cf_eval(obj, min(prec, certified_precision(obj)))
    return get_instance(spec).series(prec)


# ---------------------------------------------------------------- commands


def cmd_expand(args, cfg: RunConfig) -> tuple[int, dict]:
    terms = args.terms if args.terms is not None else cfg.max_terms
    if _is_file(args.source):
        kind, obj = load_file(args.source)
        if kind == "rational":
            res = cf_expand_rational(obj[0], obj[1], terms)
            return EXIT_OK, _expansion(args.source, res, None, terms)
        if kind == "series":
            res = cf_expand(obj, terms)
            code = EXIT_OK if len(res.word) >= terms or res.halt == Halt.RATIONAL else EXIT_CAP
            return code, _expansion(args.source, res, obj.prec, terms)
    res, used = None, None
    for prec in cfg.precisions():
        res, used = cf_expand(source_series(args.source, prec), terms), prec
        if len(res.word) >= terms or res.halt == Halt.RATIONAL:
            return EXIT_OK, _expansion(args.source, res, used, terms)
    return EXIT_CAP, _expansion(args.source, res, used, terms)


def _expansion(source: str, res, prec, terms) -> dict:
    return {
        "source": source,
        "requested_terms": terms,
        "letters": [str(a) for a in res.word.letters],
        "halt": res.halt.value,
        "precision": prec,
        "witness": bad_witness(res.word).as_dict(),
    }


def _pair(args, prec: int) -> tuple[LaurentSeries, LaurentSeries, dict]:
    spec = args.pair
    if spec == "random":
        if args.p is None:
            raise CliError(EXIT_UNKNOWN, "--pair random needs --p")
        theta, phi = random_pair(args.p, args.seed, prec)
        return theta, phi, {"kind": "random", "p": args.p, "seed": args.seed}
    if spec.startswith("inverse:"):
        theta = source_series(spec[len("inverse:"):], prec)
        return theta, theta.inverse(prec), {"kind": "inverse", "theta": spec[len("inverse:"):]}
    if "," in spec:
        a, b = spec.split(",", 1)
        theta, phi = source_series(a, prec), source_series(b, prec)
        if theta.p != phi.p:
            raise CliError(EXIT_UNKNOWN, "pair lives over different fields")
        return theta, phi, {"kind": "pair", "theta": a, "phi": b}
    raise CliError(EXIT_UNKNOWN, f"unknown pair spec {spec!r}")


def cmd_scan(args, cfg: RunConfig) -> tuple[int, dict]:
    D = args.D if args.D is not None else cfg.D
    res = used = desc = None
    for prec in cfg.precisions():
        theta, phi, desc = _pair(args, prec)
        res, used = scan(theta, phi, D, workers=cfg.threads), prec
        if not res.upper_bound:
            break
    out = {"pair": desc, "D": D, "precision": used, "scan": res.as_dict()}
    return (EXIT_CAP if res.upper_bound else EXIT_OK), out


def cmd_construct(args, cfg: RunConfig) -> tuple[int, dict]:
    try:
        r = reproduce.run_construction(args.theta, args.phi_gauge, args.stages, bits=args.bits,
                                       rel_degree=args.relation_degree,
                                       rel_prec=args.relation_precision,
                                       start=max(cfg.precision_start, 1 << 10),
                                       cap=max(cfg.precision_cap, 1 << 10))
    except reproduce.CapReached as e:
        raise CliError(EXIT_CAP, str(e), {"theta": args.theta, "letters_available": e.available,
                                          "letters_needed": e.needed})
    b = r.builder
    out = {
        "theta": args.theta,
        "gauge": args.phi_gauge,
        "substitution": b.substitution,
        "M": b.M,
        "n": list(b.n_seq),
        "m": list(b.m_seq),
        "t": [str(t) for t in b.t_seq],
        "phi_letters": [str(a) for a in r.phi_word.letters],
        "checks": [c.as_dict() for c in r.checks],
        "growth_condition": list(r.growth_condition),
        "mirror_ok": r.mirror_ok,
        "growth_increasing": r.growth_increasing,
        "relation_searched": r.relation_searched,
        "relation": None if r.relation is None else str(r.relation),
        "ok": r.ok,
    }
    return (EXIT_OK if r.ok else EXIT_REFUTED), out


_THM3_DEFAULTS = {"thm5": ("mills-robbins-3.1", 5), "thm6": ("lasjaunias(0)", 4),
                  "thm7": ("theta-p(7)", 3)}


def _thm3_blocks(instance: str, n: int):
    inst = get_instance(instance)
    if instance == "mills-robbins-3.1":
        return words.thm5_blocks(n)
    if instance.startswith("lasjaunias("):
        return words.thm6_blocks(int(instance[len("lasjaunias("):-1]), n)
    if instance.startswith("theta-p("):
        return words.thm7_blocks(inst.p, n)
    raise CliError(EXIT_UNKNOWN, f"no palindrome blocks known for {instance}")


def cmd_certify(args, cfg: RunConfig) -> tuple[int, dict]:
    thm = args.theorem
    mech = not args.no_mechanism
    try:
        if thm == "thm2":
            inst = get_instance(args.instance or "buck-robbins-3.4")
            n_max = args.n_max or words.omega_lengths(6)[6]
            cps, label = palindrome_checkpoints(inst.letters(n_max + 40), n_min=1, n_max=n_max)
            ok = bool(cps) and all(c.ok for c in cps)
            return (EXIT_OK if ok else EXIT_REFUTED), {
                "theorem": thm, "instance": inst.id, "substitution": label, "window": n_max,
                "checkpoints": [c.as_dict() for c in cps], "satisfied": ok}
        if thm in ("thm3", "thm5", "thm6", "thm7"):
            default, n_def = _THM3_DEFAULTS.get(thm, (None, 3))
            instance = args.instance or default
            if instance is None:
                raise CliError(EXIT_UNKNOWN, "thm3 needs --instance")
            ns = range(2, (args.n_max or n_def) + 1)
            blocks = [_thm3_blocks(instance, n) for n in ns]
            need = max(len(U) + len(V) for U, V in blocks) + 2
            cert = certify_thm3([U for U, _ in blocks], [V for _, V in blocks],
                                get_instance(instance).letters(need), ks=ns, mechanism=mech)
        elif thm in ("thm4", "thm8"):
            instance = args.instance or "theta-p(5)"
            inst = get_instance(instance)
            if not instance.startswith("theta-p("):
                raise CliError(EXIT_UNKNOWN, f"no periodic blocks known for {instance}")
            ns = range(2, (args.n_max or 4) + 1)
            b = [words.thm8_blocks(inst.p, n) for n in ns]
            need = max(len(U) + len(V) * r for U, V, r in b) + 2
            cert = certify_thm4([x[0] for x in b], b[0][1], [x[2] for x in b], inst.letters(need),
                                ks=ns, mechanism=mech)
        elif thm == "thm9":
            return _certify_thm9(args, cfg)
        else:
            raise CliError(EXIT_UNKNOWN, f"unknown theorem id {thm!r}")
    except PrefixMismatch as e:
        raise CliError(EXIT_REFUTED, str(e), {"theorem": thm, "instance_k": e.k, "index": e.index})
    out = cert.as_dict()
    out["instance"] = instance
    return (EXIT_OK if cert.satisfied else EXIT_REFUTED), out


def _certify_thm9(args, cfg: RunConfig):
    inst = get_instance(args.instance or "buck-robbins-3.4")
    D = args.D if args.D is not None else cfg.D
    eps = Fraction(args.eps)
    res = used = None
    for prec in cfg.precisions():
        theta = inst.series(prec)
        res, used = thm9_scan(theta, D, eps), prec
        if not res.excluded:
            break
    out = {"theorem": "thm9", "instance": inst.id, "D": D, "eps": str(eps), "precision": used}
    out.update(res.as_dict())
    # exceptions are reported, not refutations: the degree threshold is unquantified
    return (EXIT_CAP if res.excluded else EXIT_OK), out


def cmd_reproduce(args, cfg: RunConfig) -> tuple[int, dict]:
    if args.criterion == "all":
        ids = sorted(reproduce.CRITERIA)
    else:
        try:
            ids = [int(args.criterion)]
        except ValueError:
            ids = []
        if not ids or ids[0] not in reproduce.CRITERIA:
            raise CliError(EXIT_UNKNOWN, f"unknown criterion {args.criterion!r}")
    results = [reproduce.CRITERIA[i]() for i in ids]
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    return (EXIT_OK if ok else EXIT_REFUTED), {"criteria": [r.as_dict() for r in results]}


# ---------------------------------------------------------------- output


def _jsonable(x):
    if isinstance(x, (Fraction, Poly)):
        return str(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"not serialisable: {type(x).__name__}")


def flatten(obj, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        items = sorted(obj.items())
    elif isinstance(obj, (list, tuple)):
        items = [(str(i), v) for i, v in enumerate(obj)]
    else:
        val = json.dumps(obj, default=_jsonable) if not isinstance(obj, str) else obj
        return [(prefix, val)]
    rows = []
    for k, v in items:
        rows.extend(flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    if not items:
        rows.append((prefix, "[]" if isinstance(obj, (list, tuple)) else "{}"))
    return rows


def render(envelope: dict, fmt: str) -> str:
    if fmt == "tsv":
        return "".join(f"{k}\t{v}\n" for k, v in flatten(envelope))
    return json.dumps(envelope, sort_keys=True, indent=2, default=_jsonable) + "\n"


def schema() -> dict:
    """The JSON schema every envelope validates against."""
    from importlib.resources import files
    return json.loads(files("laurel").joinpath("schema/envelope.schema.json").read_text())


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="laurel", description=__doc__.splitlines()[0], allow_abbrev=False)
    ap.add_argument("--format", choices=("json", "tsv"), default="json")
    ap.add_argument("--precision-start", type=int, default=1 << 8)
    ap.add_argument("--precision-cap", type=int, default=1 << 14)
    ap.add_argument("--threads", type=int, default=None,
                    help="scan workers (LAUREL_THREADS takes precedence)")
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", help="partial quotients of an instance or file")
    e.add_argument("source", help="instance id, or a series/word/rational JSON file")
    e.add_argument("--terms", type=int, default=None)

    s = sub.add_parser("scan", help="minimal Littlewood products over deg q <= D")
    s.add_argument("--pair", required=True, help="random | inverse:ID | ID,ID")
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--D", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("construct", help="build a partner series and check it")
    c.add_argument("--theta", default="baum-sweet")
    c.add_argument("--phi-gauge", default="reciprocal")
    c.add_argument("--stages", type=int, default=4)
    c.add_argument("--bits", default=None, help="per-stage choice string for the free letters")
    c.add_argument("--relation-degree", type=int, default=3)
    c.add_argument("--relation-precision", type=int, default=200)

    t = sub.add_parser("certify", help="finite-window certificate for a theorem")
    t.add_argument("theorem", help="thm2 .. thm9")
    t.add_argument("--instance", default=None)
    t.add_argument("--n-max", type=int, default=None)
    t.add_argument("--D", type=int, default=None)
    t.add_argument("--eps", default="1/10")
    t.add_argument("--no-mechanism", action="store_true")

    r = sub.add_parser("reproduce", help="run one acceptance check, or all")
    r.add_argument("criterion", help="1..12 or 'all'")
    return ap


COMMANDS = {"expand": cmd_expand, "scan": cmd_scan, "construct": cmd_construct,
            "certify": cmd_certify, "reproduce": cmd_reproduce}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    threads = thread_count(args.threads or 1)
    try:
        cfg = RunConfig(args.precision_start, args.precision_cap, D=getattr(args, "D", None) or 5,
                        threads=threads, fmt=args.format, seed=getattr(args, "seed", 0) or 0)
    except ValueError as e:
        print(f"laurel: {e}", file=sys.stderr)
        return EXIT_UNKNOWN
    try:
        code, result = COMMANDS[args.command](args, cfg)
        error = None
    except CliError as e:
        code, result, error = e.code, e.result, str(e)
    except (UnknownInstance, GaugeTableExhausted) as e:
        code, result, error = EXIT_UNKNOWN, {}, f"{type(e).__name__}: {e}"
    except (FileNotFoundError, json.JSONDecodeError, KeyError) as e:
        code, result, error = EXIT_UNKNOWN, {}, f"bad input: {e}"
    except ValueError as e:
        code, result, error = EXIT_UNKNOWN, {}, str(e)
    if error:
        print(f"laurel: {error}", file=sys.stderr)
    envelope = {"command": args.command, "config": cfg.public(), "status": _STATUS[code],
                "exit_code": code, "result": result}
    if error:
        envelope["error"] = error
    sys.stdout.write(render(envelope, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

    relhom hom    -p FILE [-n N] [--max-n N] [--coeff FILE|trivial]
    relhom lie    -p FILE [-n N] [--max-n N]
    relhom verify -p FILE [--suite NAME] [-n N]
    relhom limit  -p FILE [-n N] [--gamma]

Common options: ``--json`` (one schema object per line), ``--cache DIR``,
``--budget COLS``, ``--timings`` (stage timings on stderr).
Exit status: 0 success, 1 error or failed check, 2 budget refusal.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .cache import ResultCache, content_key
from .errors import BudgetExceeded, RelhomError
from .foxmagnus import PresentedGroup, realize, verify_relation_sequence
from .homology import bar_homology, five_term, h1_trivial, h_even, hopf_h2
from .freelie import l_n_map, torsion_report
from .intlattice import AbInvariants, IntMat
from .prescat import (coproduct_injectivity_check, equalizer_limit, error_term_check,
                      gamma_equalizer, splitting_check)
from .presentations import parse_presentation
from .zgmod import ZGModule, kernel_of_induced, trivial_module

log = logging.getLogger("relhom")

SUITES = ("sequence", "five-term", "lie", "split", "oracle", "all")


@dataclass
class JobConfig:
    command: str
    presentation: str
    n: int = 1
    max_n: Optional[int] = None
    coeff: str = "trivial"
    json: bool = False
    cache: Optional[str] = None
    budget: Optional[int] = None
    timings: bool = False
    suite: str = "all"
    gamma: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.max_n is not None and self.max_n < self.n:
            raise ValueError("--max-n must not be smaller than -n")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be positive")

    def degrees(self) -> range:
        return range(self.n, (self.max_n or self.n) + 1)


@contextmanager
def _stage(name: str) -> Iterator[None]:
    t0 = time.perf_counter()
    yield
    log.debug("%s: %.3fs", name, time.perf_counter() - t0)


def _record(pg: PresentedGroup, phash: str, degree: int, inv: AbInvariants,
            checks: list[tuple[str, bool]]) -> dict:
    return {
        "group_order": pg.m,
        "presentation_hash": phash,
        "degree": degree,
        "result": {"free_rank": inv.free_rank, "torsion": list(inv.torsion)},
        "checks": [{"name": name, "pass": bool(ok)} for name, ok in checks],
    }


SCHEMA_KEYS = ("group_order", "presentation_hash", "degree", "result", "checks")


def _canonical(rec: dict) -> dict:
    out = {k: rec[k] for k in SCHEMA_KEYS}
    out["result"] = {"free_rank": rec["result"]["free_rank"], "torsion": rec["result"]["torsion"]}
    out["checks"] = [{"name": c["name"], "pass": c["pass"]} for c in rec["checks"]]
    return out


def _inv(rec: dict) -> AbInvariants:
    return AbInvariants(rec["result"]["free_rank"], tuple(rec["result"]["torsion"]))


def load_module(source: str, pg: PresentedGroup) -> tuple[ZGModule, object]:
    """``trivial`` or a JSON file ``{"rank": r, "actions": [matrix per generator]}``."""
    if source == "trivial":
        return trivial_module(pg.group, 1), "trivial"
    with open(source) as fh:
        desc = json.load(fh)
    rank = int(desc["rank"])
    mats = desc["actions"]
    if len(mats) != pg.d:
        raise RelhomError(f"coefficient module gives {len(mats)} matrices for {pg.d} generators")
    ims = [IntMat.from_dense(m, rank) for m in mats]
    M = ZGModule.from_generators(pg.group, rank, pg.quotient.images, ims, label=source)
    return M, desc


class Runner:
    def __init__(self, cfg: JobConfig, out=None):
        self.cfg = cfg
        self.out = out if out is not None else sys.stdout
        with open(cfg.presentation) as fh:
            self.text = fh.read()
        try:
            self.pres = parse_presentation(self.text)
        except RelhomError as exc:
            raise RelhomError(f"{cfg.presentation}: {exc}") from exc
        self.phash = hashlib.sha256(self.pres.format().encode()).hexdigest()
        with _stage("enumeration"):
            self.pg = realize(self.pres)
        with _stage("rewriting"):
            self.pg.relmod
            self.pg.magnus
        self.M, self.coeff_desc = load_module(cfg.coeff, self.pg)
        self.cache = ResultCache(cfg.cache)
        self.failed = False

    def cached(self, op: str, n: int, compute: Callable[[], dict]) -> dict:
        key = content_key(presentation=self.pres.format(), coeff=self.coeff_desc, op=op, n=n)
        hit = self.cache.get(key)
        if hit is not None:
            log.debug("%s n=%d: cache hit", op, n)
            return hit
        with _stage(f"{op} n={n}"):
            rec = compute()
        self.cache.put(key, rec)
        return rec

    def emit(self, rec: dict, line: str) -> None:
        if not all(c["pass"] for c in rec["checks"]):
            self.failed = True
        if self.cfg.json:
            print(json.dumps(_canonical(rec), separators=(",", ":")), file=self.out)
        else:
            print(line, file=self.out)
            for c in rec["checks"]:
                print(f"  {'PASS' if c['pass'] else 'FAIL'} {c['name']}", file=self.out)

    # -- commands -----------------------------------------------------------

    def hom(self) -> None:
        trivial = self.cfg.coeff == "trivial"
        for n in self.cfg.degrees():
            def even(n=n):
                H = h_even(self.pg, n, self.M, self.cfg.budget)
                checks = [("kernel lifts killed by Magnus map", True)]
                if n == 1 and trivial:
                    checks.append(("Hopf formula agrees", hopf_h2(self.pg) == H.invariants))
                return _record(self.pg, self.phash, 2 * n, H.invariants, checks)
            rec = self.cached("h_even", n, even)
            self.emit(rec, f"H_{2 * n} = {_inv(rec)}")
            if trivial:
                def odd(n=n):
                    rep = five_term(self.pg, None, n + 1, self.cfg.budget, strict=False)
                    return _record(self.pg, self.phash, 2 * n + 1, rep.h1_group, rep.checks)
                rec = self.cached("h_odd", n, odd)
                self.emit(rec, f"H_{2 * n + 1} = {_inv(rec)}")

    def lie(self) -> None:
        for n in self.cfg.degrees():
            def comp(n=n):
                if n == 1:
                    ln = l_n_map(self.pg, n, self.cfg.budget)
                    K = kernel_of_induced(ln)
                    checks = [("l_1 injective", K.invariants.is_zero())]
                    return _record(self.pg, self.phash, n, ln.source.invariants, checks)
                rep = torsion_report(self.pg, n, self.cfg.budget, strict=False)
                rec = _record(self.pg, self.phash, n, rep.gamma, rep.checks)
                return rec
            rec = self.cached("lie", n, comp)
            self.emit(rec, f"gamma_{n} R/[gamma_{n} R, F] = {_inv(rec)}")

    def verify(self) -> None:
        suite = self.cfg.suite
        pick = (lambda s: suite in (s, "all"))
        for n in self.cfg.degrees():
            if pick("sequence") and n == self.cfg.n:
                rep = verify_relation_sequence(self.pg)
                self.emit(_record(self.pg, self.phash, 1, h1_trivial(self.pg), rep.checks),
                          "sequence: relation sequence exactness")
            if pick("five-term"):
                rep = five_term(self.pg, self.M, n, self.cfg.budget, strict=False)
                self.emit(_record(self.pg, self.phash, 2 * n - 1, rep.h1_group, rep.checks),
                          f"five-term n={n}: H_1(G, N) = {rep.h1_group}")
            if pick("lie") and n >= 2:
                rep = torsion_report(self.pg, n, self.cfg.budget, strict=False)
                self.emit(_record(self.pg, self.phash, n, rep.gamma, rep.checks),
                          f"lie n={n}: torsion_report")
            if pick("split"):
                checks = []
                for r in (splitting_check(self.pg, self.pg, strict=False),
                          coproduct_injectivity_check(self.pg, self.pg, n, self.M, self.cfg.budget,
                                                      strict=False),
                          error_term_check(self.pg, n, self.M, self.cfg.budget, strict=False)):
                    checks.extend((f"{r.name}: {k}", ok) for k, ok in r.checks)
                self.emit(_record(self.pg, self.phash, n, AbInvariants(), checks),
                          f"split n={n}: doubling P * P")
            if pick("oracle"):
                H = h_even(self.pg, n, self.M, self.cfg.budget)
                bar = bar_homology(self.pg.group, self.M, 2 * n, self.cfg.budget)
                checks = [(f"H_{2 * n} = bar complex", H.invariants == bar)]
                if self.cfg.coeff == "trivial" and n == 1:
                    checks.append(("Hopf formula = bar complex", hopf_h2(self.pg) == bar))
                self.emit(_record(self.pg, self.phash, 2 * n, H.invariants, checks),
                          f"oracle n={n}: H_{2 * n} = {H.invariants}, bar = {bar}")

    def limit(self) -> None:
        for n in self.cfg.degrees():
            if self.cfg.gamma:
                def comp(n=n):
                    res = gamma_equalizer(self.pg, n, self.cfg.budget, strict=False)
                    e = 4 if n == 2 else n
                    checks = [(f"{e}-torsion", bool(res.matches))] if n >= 2 else []
                    return _record(self.pg, self.phash, n, res.invariants, checks)
                rec = self.cached("gamma_equalizer", n, comp)
                self.emit(rec, f"gamma-equalizer = {_inv(rec)}")
            else:
                def comp(n=n):
                    res = equalizer_limit(self.pg, n, self.M, self.cfg.budget)
                    return _record(self.pg, self.phash, 2 * n, res.invariants,
                                   [("equalizer = h_even", bool(res.matches))])
                rec = self.cached("equalizer", n, comp)
                verdict = "MATCH" if rec["checks"][0]["pass"] else "MISMATCH"
                self.emit(rec, f"equalizer = {_inv(rec)} ; h_even = "
                               f"{self._h_even_text(n)} ; {verdict}")

    def _h_even_text(self, n: int) -> str:
        rec = self.cached("h_even_plain", n, lambda: _record(
            self.pg, self.phash, 2 * n, h_even(self.pg, n, self.M, self.cfg.budget).invariants, []))
        return str(_inv(rec))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relhom",
                                 description="Homology of finite groups from presentations.")
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--presentation", required=True, metavar="FILE")
    common.add_argument("-n", type=int, default=1, metavar="N")
    common.add_argument("--max-n", type=int, default=None, metavar="N")
    common.add_argument("--coeff", default="trivial", metavar="FILE|trivial")
    common.add_argument("--json", action="store_true")
    common.add_argument("--cache", default=None, metavar="DIR")
    common.add_argument("--budget", type=int, default=None, metavar="COLS")
    common.add_argument("--timings", action="store_true")
    sub.add_parser("hom", parents=[common], help="even and odd homology")
    sub.add_parser("lie", parents=[common], help="lower central quotients and torsion report")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=SUITES, default="all")
    lim = sub.add_parser("limit", parents=[common], help="doubling-diagram equalizer")
    lim.add_argument("--gamma", action="store_true")
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = None
    if args.timings:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("[timing] %(name)s %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.DEBUG)
    try:
        return _run(args)
    finally:
        if handler is not None:
            log.removeHandler(handler)


def _run(args) -> int:
    try:
        cfg = JobConfig(command=args.command, presentation=args.presentation, n=args.n,
                        max_n=args.max_n, coeff=args.coeff, json=args.json, cache=args.cache,
                        budget=args.budget, timings=args.timings,
                        suite=getattr(args, "suite", "all"), gamma=getattr(args, "gamma", False))
        runner = Runner(cfg)
        getattr(runner, cfg.command)()
    except BudgetExceeded as exc:
        print(f"relhom: refused: {exc}", file=sys.stderr)
        return 2
    except (RelhomError, OSError, ValueError, KeyError) as exc:
        print(f"relhom: error: {exc}", file=sys.stderr)
        return 1
    return 1 if runner.failed else 0

if __name__ == "__main__":
    sys.exit(main())

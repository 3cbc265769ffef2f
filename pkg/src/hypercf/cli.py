"""Command-line entry point.

Exit status: 0 when every check passes, 1 for a mathematical finding
(mismatch, counterexample, failed divisibility), 2 for usage or resource errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import figures, measure, patterns, quartic
from .contfrac import word_to_json
from .errors import DomainError, HypercfError, InvariantViolation, ResourceCapExceeded
from .hyper import check_h1, check_h2, expand, load_spec, precision_cap
from .modular_poly import is_prime
from .pk import check_w2_expansion, classify, make_context, word_w1, word_w2

OK, FINDING, USAGE = 0, 1, 2


@dataclass
class CommandConfig:
    subcommand: str
    action: str | None = None
    p: int | None = None
    k: int | None = None
    kind: str | None = None
    l: list[int] = field(default_factory=list)
    count: int | None = None
    cap: int | None = None
    spec: str | None = None
    emit: str | None = None
    output: str | None = None
    all_p: str | None = None
    jobs: int = 1
    width: int = 72
    which: list[int] = field(default_factory=list)
    cross_check: bool = True
    as_json: bool = False

    def validate(self) -> None:
        if self.spec and any(v is not None for v in (self.p, self.k, self.kind)):
            raise DomainError("--spec excludes --p/--k/--kind")
        if self.count is not None and self.count < 0:
            raise DomainError("--count must be nonnegative")
        if self.cap is not None and self.cap < 16:
            raise DomainError("--cap must be at least 16")


def _out(cfg: CommandConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _cap(cfg: CommandConfig) -> int:
    return cfg.cap if cfg.cap is not None else precision_cap()


def _mark(ok: bool) -> str:
    return "ok" if ok else "FAIL"


def _emit_word(cfg: CommandConfig, word, lambdas=None) -> str:
    if cfg.emit == "quotients":
        return "\n".join(json.dumps(c) for c in word_to_json(word))
    if cfg.emit == "figure":
        return figures.render_figure([int(a.degree) for a in word], cfg.width)
    if cfg.emit == "lambdas":
        return ", ".join("?" if x is None else str(x) for x in lambdas)
    return ", ".join(str(int(a.degree)) for a in word)


def _capped(exp, count: int) -> bool:
    if exp.certified < count:
        print(f"error: only {exp.certified} of {count} letters certified "
              f"(precision cap {exp.precision}); raise --cap or HYPERCF_PRECISION_CAP",
              file=sys.stderr)
        return True
    return False


# -- eq ----------------------------------------------------------------------

def cmd_eq_expand(cfg: CommandConfig) -> int:
    exp = quartic.expand_alpha(cfg.p, cfg.count, _cap(cfg), cross_check=cfg.cross_check)
    _out(cfg, _emit_word(cfg, exp.word))
    return USAGE if _capped(exp, cfg.count) else OK


def verify_prime(p: int, count: int, cap: int) -> tuple[bool, str]:
    """Divisibility, degree claims, hypothesis, dual routes and pattern for one prime."""
    lines = [f"p = {p}"]
    ok = True
    try:
        lam = quartic.build_lambda0(p)
        hyp = "H(1)" if lam.kind == "first" else "H(2)"
        lines.append(f"  Lambda_0: k={lam.k} r={lam.r} l={lam.l} eps={lam.eps} "
                     f"eps1={lam.spec.eps1} eps2={lam.spec.eps2}  {hyp} ok")
        div = quartic.check_divisibility(p)
        lines.append(f"  divisibility by A: {_mark(div.divisible)}")
        lines.append(f"  deg U = {div.deg_u} (claim {div.expected_u}), deg V = {div.deg_v} "
                     f"(claim {div.expected_v}): {_mark(div.degrees_ok)}")
        ok &= div.ok
        exp = quartic.expand_alpha(p, count, cap)
        routes = exp.certified >= count
        lines.append(f"  two routes agree on {exp.certified} letters: {_mark(routes)}")
        ok &= routes
        rep = patterns.verify_perfect(exp.word, lam.spec.ctx, lam.kind, lam.meta)
        msg = f"{rep.matched}/{rep.checked} letters"
        if not rep.perfect:
            msg += f", first miss at {rep.mismatch_position}: {rep.reason}"
        lines.append(f"  pattern match: {msg}: {_mark(rep.perfect)}")
        ok &= rep.perfect
    except InvariantViolation as e:
        lines.append(f"  FAIL: {e}")
        ok = False
    return ok, "\n".join(lines)


def _parse_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise DomainError("--all-p expects LO..HI")
    return [q for q in range(int(lo), int(hi) + 1) if q > 3 and is_prime(q)]


def _verify_task(args):
    return verify_prime(*args)


def cmd_eq_verify(cfg: CommandConfig) -> int:
    primes = _parse_range(cfg.all_p) if cfg.all_p else [cfg.p]
    if not primes or any(q is None for q in primes):
        raise DomainError("give --p or --all-p")
    tasks = [(q, cfg.count, _cap(cfg)) for q in primes]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(_verify_task, tasks))
    else:
        results = [_verify_task(t) for t in tasks]
    _out(cfg, "\n".join(text for _, text in results))
    return OK if all(ok for ok, _ in results) else FINDING


# -- expand / check-perfect --------------------------------------------------

def _meta(spec):
    if spec.kind == "first":
        rep = check_h1(spec)
        return rep, spec.l
    rep = check_h2(spec)
    return rep, rep.gaps


def cmd_expand(cfg: CommandConfig) -> int:
    spec = load_spec(cfg.spec)
    exp = expand(spec, cfg.count, _cap(cfg))
    lambdas = None
    if cfg.emit == "lambdas":
        ab = patterns.kind_letter(spec.kind)
        lambdas = []
        for a in exp.word:
            c = classify(spec.ctx, a, ab)
            lambdas.append(None if c is None else c.lam)
    _out(cfg, _emit_word(cfg, exp.word, lambdas))
    return USAGE if _capped(exp, cfg.count) else OK


def cmd_check_perfect(cfg: CommandConfig) -> int:
    spec = load_spec(cfg.spec)
    hyp, meta = _meta(spec)
    if not hyp.satisfied:
        print(f"hypothesis not satisfied: {hyp.message}")
        return FINDING
    exp = expand(spec, cfg.count, _cap(cfg))
    rep = patterns.verify_perfect(exp.word, spec.ctx, spec.kind, meta)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(rep.to_csv())
    print(f"{hyp.message}")
    print(f"matched {rep.matched} of {rep.checked} certified letters")
    if not rep.perfect:
        print(f"first mismatch at letter {rep.mismatch_position}: {rep.reason}")
        return FINDING
    return USAGE if _capped(exp, cfg.count) else OK


# -- ctx / predict -----------------------------------------------------------

def cmd_ctx(cfg: CommandConfig) -> int:
    ctx = make_context(cfg.p, cfg.k)
    w2_ok = check_w2_expansion(ctx)
    data = {
        "p": ctx.p, "k": ctx.k, "omega": ctx.omega,
        "P": ctx.Pk.to_list(), "Q": ctx.Qk.to_list(), "A1": ctx.A1.to_list(),
        "v": list(ctx.v), "w": list(ctx.w),
        "W1": word_to_json(word_w1(ctx)), "W2": word_to_json(word_w2(ctx)),
        "W2_checks": w2_ok,
    }
    if cfg.as_json:
        _out(cfg, json.dumps(data))
    else:
        lines = [f"p={ctx.p} k={ctx.k} omega={ctx.omega}",
                 f"P_k = {ctx.Pk!r}", f"Q_k = {ctx.Qk!r}", f"A_1 = {ctx.A1!r}",
                 f"v = {list(ctx.v)}", f"w = {list(ctx.w)}",
                 f"W1 = {', '.join(repr(a) for a in word_w1(ctx))}",
                 f"W2: {len(word_w2(ctx))} letters, Euclid and symmetry checks {_mark(w2_ok)}"]
        _out(cfg, "\n".join(lines))
    return OK if w2_ok else FINDING


def cmd_predict(cfg: CommandConfig) -> int:
    if not cfg.l:
        raise DomainError("--l is required")
    if cfg.kind == "first":
        if len(cfg.l) != 1:
            raise DomainError("first kind takes a single --l")
        meta = cfg.l[0]
    else:
        meta = tuple(cfg.l)
    idx = patterns.predicted_indices(cfg.k, cfg.kind, meta, cfg.count)
    if cfg.emit == "degrees":
        if cfg.p is None:
            raise DomainError("--emit degrees needs --p")
        make_context(cfg.p, cfg.k)
        idx = patterns.index_degrees(cfg.p, cfg.k, cfg.kind, idx)
    _out(cfg, ", ".join(map(str, idx)))
    return OK


# -- measure / figures -------------------------------------------------------

def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def cmd_measure(cfg: CommandConfig) -> int:
    p = cfg.p
    lam = quartic.build_lambda0(p)
    if lam.kind == "first":
        nu0 = measure.nu0_first(p, lam.k, lam.l)
    else:
        nu0, _, _ = measure.nu0_second(p, lam.k, lam.meta)
    nu = measure.nu_eq(p)
    exp = quartic.expand_alpha(p, cfg.count, _cap(cfg), cross_check=False)
    degs = exp.degrees()
    peaks = measure.level_peaks(degs)
    rows = ["position,degree,ratio,approx"]
    for pos, r in peaks:
        rows.append(f"{pos},{degs[pos - 1]},{_fmt(r)},{float(r):.6f}")
    ok = nu == 2 + nu0
    converged = None
    if peaks and nu0:
        last = peaks[-1][1]
        converged = abs(last - nu0) <= nu0 / 20
    lines = [f"nu = {_fmt(nu)}  (nu_0 = {_fmt(nu0)})",
             f"closed forms agree: {_mark(ok)}",
             *rows,
             f"last peak within 5% of nu_0: {_mark(bool(converged)) if converged is not None else 'n/a'}"]
    _out(cfg, "\n".join(lines))
    if _capped(exp, cfg.count):
        return USAGE
    return OK if ok and converged is not False else FINDING


def cmd_figures(cfg: CommandConfig) -> int:
    which = cfg.which or [1, 2]
    blocks = []
    ok = True
    for n in which:
        if n not in figures.FIGURE_PRIME:
            raise DomainError(f"unknown figure {n}")
        gold = figures.figure_degrees(n)
        count = cfg.count if cfg.count is not None else len(gold)
        exp = quartic.expand_alpha(figures.FIGURE_PRIME[n], count, _cap(cfg))
        if _capped(exp, count):
            return USAGE
        degs = exp.degrees()
        m = min(len(gold), len(degs))
        ok &= degs[:m] == gold[:m]
        blocks.append(figures.render_figure(degs, cfg.width))
    _out(cfg, "\n\n".join(blocks))
    if not ok:
        print("error: regenerated degrees differ from the stored figure", file=sys.stderr)
    return OK if ok else FINDING


# -- parsing -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypercf", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(sp, count=None):
        sp.add_argument("--cap", type=int, help="precision cap in coefficients")
        sp.add_argument("--output", "-o", help="write to a file instead of stdout")
        if count is not False:
            sp.add_argument("--count", type=int, default=count, required=count is None)

    eq = sub.add_parser("eq", help="the quartic equation")
    eqsub = eq.add_subparsers(dest="action", required=True)
    ex = eqsub.add_parser("expand", help="partial quotients of the quartic's root")
    ex.add_argument("--p", type=int, required=True)
    ex.add_argument("--emit", choices=["degrees", "quotients", "figure"], default="degrees")
    ex.add_argument("--width", type=int, default=72)
    ex.add_argument("--no-cross-check", dest="cross_check", action="store_false")
    common(ex)
    ve = eqsub.add_parser("verify", help="divisibility, degree claims and pattern match")
    grp = ve.add_mutually_exclusive_group(required=True)
    grp.add_argument("--p", type=int)
    grp.add_argument("--all-p", dest="all_p", metavar="LO..HI")
    ve.add_argument("--jobs", type=int, default=1)
    common(ve, 400)

    sp = sub.add_parser("expand", help="expand a P_k-expansion spec file")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--emit", choices=["degrees", "quotients", "lambdas"], default="degrees")
    common(sp)

    cp = sub.add_parser("check-perfect", help="compare a spec's expansion with its index word")
    cp.add_argument("--spec", required=True)
    common(cp)

    cx = sub.add_parser("ctx", help="print the (p, k) objects")
    cx.add_argument("--p", type=int, required=True)
    cx.add_argument("--k", type=int, required=True)
    cx.add_argument("--json", dest="as_json", action="store_true")
    common(cx, False)

    pr = sub.add_parser("predict", help="predicted index words")
    pr.add_argument("--kind", choices=["first", "second"], required=True)
    pr.add_argument("--p", type=int)
    pr.add_argument("--k", type=int, required=True)
    pr.add_argument("--l", type=int, nargs="+", required=True,
                    help="l for the first kind, l_1 .. l_m for the second")
    pr.add_argument("--emit", choices=["indices", "degrees"], default="indices")
    common(pr)

    me = sub.add_parser("measure", help="irrationality measure of the quartic's root")
    me.add_argument("--p", type=int, required=True)
    common(me)

    fi = sub.add_parser("figures", help="regenerate the degree figures for p = 5 and p = 7")
    fi.add_argument("--which", type=int, nargs="+", choices=[1, 2])
    fi.add_argument("--width", type=int, default=72)
    common(fi, False)
    fi.add_argument("--count", type=int)
    return ap


COMMANDS = {
    ("eq", "expand"): cmd_eq_expand,
    ("eq", "verify"): cmd_eq_verify,
    ("expand", None): cmd_expand,
    ("check-perfect", None): cmd_check_perfect,
    ("ctx", None): cmd_ctx,
    ("predict", None): cmd_predict,
    ("measure", None): cmd_measure,
    ("figures", None): cmd_figures,
}


def parse_config(argv: Sequence[str] | None = None) -> CommandConfig:
    ns = build_parser().parse_args(argv)
    known = set(CommandConfig.__dataclass_fields__)
    cfg = CommandConfig(**{k: v for k, v in vars(ns).items() if k in known and v is not None})
    cfg.validate()
    return cfg


def run(cfg: CommandConfig) -> int:
    try:
        return COMMANDS[(cfg.subcommand, cfg.action)](cfg)
    except (DomainError, OSError, json.JSONDecodeError, ResourceCapExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except InvariantViolation as e:
        print(f"finding: {e}", file=sys.stderr)
        return FINDING
    except HypercfError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

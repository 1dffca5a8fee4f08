"""Command-line interface: ``affcat <subcommand> ...``.

Exit status is 0 on success, 1 when a verification finds counterexamples and
2 on usage errors (bad flags, malformed weights, violated preconditions).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from fractions import Fraction
from typing import List, Optional

from . import affweyl, charring, kgroup, klpoly, linkage, rootsys, verify
from .affweyl import AffineWeylElement, WeylGroup, make_level, parse_rational
from .kgroup import GroupAlgebraElement, TiltingTable

log = logging.getLogger("affcat")


class UsageError(Exception):
    pass


def jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, AffineWeylElement):
        return affweyl.format_word(obj.word)
    if isinstance(obj, affweyl.AffineWeight):
        return [str(c) for c in obj.weight]
    if isinstance(obj, dict):
        return {k if isinstance(k, str) else weight_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return obj


def weight_key(k) -> str:
    if isinstance(k, AffineWeylElement):
        return affweyl.format_word(k.word)
    if isinstance(k, tuple):
        return rootsys.fmt_weight(k)
    return str(k)


def parse_weight_literal(text: str, rank: int) -> rootsys.Weight:
    """Parse ``[1,0]``, ``["1/2","0"]`` or ``[1/2, 0]`` exactly."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise UsageError(f"weight literal must look like [a,b,...]: {text!r}")
    body = s[1:-1].strip()
    items = [t.strip().strip('"').strip("'") for t in body.split(",")] if body else []
    try:
        lam = tuple(parse_rational(t) for t in items)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed weight {text!r}: {exc}") from None
    if len(lam) != rank:
        raise UsageError(f"weight {text!r} needs {rank} coordinates")
    return lam


def _rs(args):
    try:
        series, rank, affine = rootsys.parse_type(args.type)
        return rootsys.build(series, rank), affine
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _level(rs, text):
    try:
        return make_level(rs, text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None


def _element(G: WeylGroup, text: str) -> AffineWeylElement:
    try:
        return G.element(affweyl.parse_word(text))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _ga(G: WeylGroup, text: Optional[str]) -> GroupAlgebraElement:
    if not text:
        return GroupAlgebraElement.basis(G, G.identity)
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"element must be a JSON object of word -> integer: {text!r}") from None
    try:
        return GroupAlgebraElement.from_json(G, data)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- subcommands -----------------------------------------------------------------


def cmd_roots(args):
    rs, _ = _rs(args)
    return {
        "series": rs.series, "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "positive_roots": [list(a) for a in rs.positive_roots],
        "rho": list(rs.rho), "theta": list(rs.theta),
        "dual_coxeter": rs.dual_coxeter,
        "form": [list(r) for r in rs.form],
    }, 0


def cmd_orbit(args):
    rs, _ = _rs(args)
    lev = _level(rs, args.level)
    lam = affweyl.AffineWeight(parse_weight_literal(args.weight, rs.rank), lev)
    rep, w = affweyl.orbit_walk(lam)
    return {"representative": rep, "word": w, "length": w.length}, 0


def cmd_classify(args):
    rs, _ = _rs(args)
    lev = _level(rs, args.level)
    lam = affweyl.AffineWeight(parse_weight_literal(args.weight, rs.rank), lev)
    out = {"class": affweyl.classify(lam)}
    if not lev.generic:
        out.update({"p": lev.p, "q": lev.q, "sign_class": lev.sign_class})
    return out, 0


def cmd_tensor(args):
    rs, _ = _rs(args)
    lam = parse_weight_literal(args.hw, rs.rank)
    mu = parse_weight_literal(args.hw2, rs.rank)
    return charring.tensor_decompose(rs, lam, mu), 0


def cmd_flag(args):
    rs, _ = _rs(args)
    lam = parse_weight_literal(args.hw, rs.rank)
    mu = parse_weight_literal(args.hw2, rs.rank)
    lev = _level(rs, args.level) if args.level else None
    if args.kind == "verma":
        vec = charring.verma_flag(rs, lam, mu)
    else:
        vec = charring.weyl_flag(rs, lam, mu, lev)
    return {"family": vec.family, "support": vec.support, "meta": vec.meta}, 0


def cmd_kl(args):
    rs, affine = _rs(args)
    G = WeylGroup.affine(rs, rs.dual_coxeter) if affine else WeylGroup.finite(rs)
    S = klpoly.KLSession(G)
    x, w = _element(G, args.x), _element(G, args.w)
    return {"x": x, "w": w, "P": list(S.poly(x, w)), "mu": S.mu(x, w) if x != w else 0,
            "bruhat_leq": S.bruhat_leq(x, w)}, 0


def _block(rs, lev, text):
    try:
        return kgroup.make_block(lev, parse_weight_literal(text, rs.rank))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_translate(args):
    rs, _ = _rs(args)
    lev = _level(rs, args.level)
    src, dst = _block(rs, lev, args.src), _block(rs, lev, args.dst)
    v = _ga(src.group, args.element)
    out = kgroup.translate(src, dst, v)
    return {"element": out.to_json(), "weights": dst.to_weights(out)}, 0


def cmd_act(args):
    rs, _ = _rs(args)
    lev = _level(rs, args.level)
    src = _block(rs, lev, args.anchor)
    dst = _block(rs, lev, args.dst or args.anchor)
    v = _ga(src.group, args.element)
    mu = parse_weight_literal(args.mu, rs.rank)
    res = kgroup.tensor_action_detail(src, dst, mu, v)
    return {"element": res.image.to_json(), "weights": dst.to_weights(res.image),
            "dropped": res.dropped, "projected_out": res.projected_out}, 0


def _table(args, G, max_len):
    if args.table:
        try:
            return TiltingTable.load(G, args.table)
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"cannot read table {args.table}: {exc}") from None
    return kgroup.generic_identity_table(G, max_len)


def cmd_tilting(args):
    rs, _ = _rs(args)
    lev = _level(rs, args.level)
    if lev.generic:
        raise UsageError("tilting needs a rational level")
    G = WeylGroup.for_level(lev)
    left = affweyl.AffineWeight(parse_weight_literal(args.anchor, rs.rank), lev) if args.anchor \
        else affweyl.default_anchor(lev)
    if args.action == "check-group-algebra":
        table = _table(args, G, args.max_len)
        report = kgroup.group_algebra_check(left, table, args.max_len, mus=rs.fundamental_weights)
        return report, 0 if report["passed"] else 1
    right = affweyl.AffineWeight(parse_weight_literal(args.right, rs.rank), lev) if args.right else left
    if args.mu:
        mu = parse_weight_literal(args.mu, rs.rank)
    else:
        mu = kgroup.extremal_mu(_element(G, args.w or "e"), left, right)
    table = _table(args, G, args.max_len)
    coeffs = kgroup.decompose_tilting_functor(mu, left, right, table, args.max_len)
    return {"mu": list(mu), "provenance": table.provenance, "coefficients": coeffs}, 0


def cmd_linkage(args):
    rs, _ = _rs(args)
    lev = _level(rs, args.level)
    base = affweyl.AffineWeight(parse_weight_literal(args.base, rs.rank), lev)
    return linkage.singular_candidates(base, args.max_len).to_json(), 0


def cmd_annihilator(args):
    rs, _ = _rs(args)
    lev = _level(rs, args.level)
    zero = affweyl.AffineWeight(tuple(Fraction(0) for _ in range(rs.rank)), lev)
    target = affweyl.AffineWeight(parse_weight_literal(args.target, rs.rank), lev)
    report = linkage.singular_candidates(zero, args.max_len)
    pairs = linkage.annihilator_correspondence(report, target, args.max_len)
    return [{"source": a, "target": b} for a, b in pairs], 0


def cmd_verify(args):
    rs, _ = _rs(args)
    texts = args.level or ["1/2"]
    levels = [_level(rs, t) for t in texts]
    if args.what == "weights":
        out = [verify.check_weights(lev, args.max_len).to_json() for lev in levels]
    elif args.what == "lengths":
        out = []
        for lev in levels:
            if args.anchor:
                lam = affweyl.AffineWeight(parse_weight_literal(args.anchor, rs.rank), lev)
                bad = affweyl.verify_length_monotonicity(lam, args.max_len)
                res = verify.CheckResult("lemma-lengths", str(lev), "pass" if not bad else "fail", bad)
            else:
                res = verify.check_lengths(lev, args.max_len)
            out.append(res.to_json())
    else:
        config = verify.RunConfig(rs, texts, args.max_len, args.table, args.seed, args.samples, args.jobs)
        out = [r.to_json() for r in verify.verify_suite(config)]
    failures = sum(1 for r in out if r["status"] == "fail")
    n_bad = sum(len(r["counterexamples"]) for r in out)
    print(f"{n_bad} counterexamples", file=sys.stderr)
    return out, 1 if failures else 0


# --- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="affcat", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "table"), default="json")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, *, level=True, max_len=None, help=None):
        p = sub.add_parser(name, help=help)
        p.add_argument("--type", required=True, help="root system, e.g. A2 or affineA1")
        if level:
            p.add_argument("--level", required=True, help="k as p/q, or 'generic'")
        if max_len is not None:
            p.add_argument("--max-len", type=int, default=max_len)
        p.set_defaults(fn=fn)
        return p

    add("roots", cmd_roots, level=False, help="root system data")
    add("orbit", cmd_orbit, help="alcove representative").add_argument("--weight", required=True)
    add("classify", cmd_classify, help="position relative to affine walls").add_argument("--weight", required=True)
    p = add("tensor", cmd_tensor, level=False, help="decompose V_hw (x) V_hw2")
    p.add_argument("--hw", required=True)
    p.add_argument("--hw2", required=True)
    p = sub.add_parser("flag", help="Verma or Weyl flag multiplicities")
    p.add_argument("kind", choices=("verma", "weyl"))
    p.add_argument("--type", required=True)
    p.add_argument("--level")
    p.add_argument("--hw", required=True)
    p.add_argument("--hw2", required=True)
    p.set_defaults(fn=cmd_flag)
    p = add("kl", cmd_kl, level=False, help="Kazhdan-Lusztig polynomial P_{x,w}")
    p.add_argument("--x", required=True)
    p.add_argument("--w", required=True)
    p = add("translate", cmd_translate, help="translation functor on K-groups")
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("--element")
    p = add("act", cmd_act, help="V_mu^k (.x) ? on a block")
    p.add_argument("--anchor", required=True)
    p.add_argument("--dst")
    p.add_argument("--mu", required=True)
    p.add_argument("--element")
    p = add("tilting", cmd_tilting, max_len=6, help="tilting functors")
    p.add_argument("action", choices=("decompose", "check-group-algebra"))
    p.add_argument("--anchor")
    p.add_argument("--right")
    p.add_argument("--mu")
    p.add_argument("--w")
    p.add_argument("--table")
    p = add("linkage", cmd_linkage, max_len=4, help="candidate singular weights")
    p.add_argument("--base", required=True)
    p = add("annihilator", cmd_annihilator, max_len=4, help="ideal/submodule correspondence")
    p.add_argument("--target", required=True)
    p = sub.add_parser("verify", help="batch checks")
    p.add_argument("what", choices=("weights", "lengths", "suite"))
    p.add_argument("--type", required=True)
    p.add_argument("--level", action="append")
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--anchor")
    p.add_argument("--table")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_verify)
    return ap


def render_table(result) -> str:
    if isinstance(result, list):
        return "\n".join(render_table(r) for r in result)
    if isinstance(result, dict):
        width = max((len(str(k)) for k in result), default=0)
        return "\n".join(f"{str(k):<{width}}  {json.dumps(v, sort_keys=True)}" for k, v in result.items())
    return str(result)


def _glue_negative_values(argv: List[str]) -> List[str]:
    # argparse takes "-7/2" for an option; rewrite "--level -7/2" as "--level=-7/2"
    out: List[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and len(tok) > 1 \
                and tok[0] == "-" and (tok[1].isdigit() or tok[1] == "["):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    warnings.simplefilter("always")
    try:
        result, status = args.fn(args)
    except UsageError as exc:
        print(f"affcat: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"affcat: error: {exc}", file=sys.stderr)
        return 2
    result = jsonable(result)
    if args.format == "table":
        print(render_table(result))
    else:
        print(json.dumps(result, sort_keys=True, indent=1))
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Batch checks of the weight-geometry lemmas and the K-group theorems."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

from . import affweyl, kgroup, rootsys
from .affweyl import Level, WeylGroup, make_level
from .kgroup import Block, GroupAlgebraElement, TiltingTable
from .rootsys import RootSystem, sub

CHECKS = ("lemma-weights", "lemma-lengths", "translation-equivalence", "w-linearity", "group-algebra")


@dataclass
class RunConfig:
    rs: RootSystem
    levels: Sequence[str] = ("1/2",)
    max_len: int = 4
    table_path: Optional[str] = None
    seed: int = 0
    samples: int = 20
    jobs: int = 1
    output: str = "json"


@dataclass
class CheckResult:
    name: str
    level: str
    status: str
    counterexamples: List = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def to_json(self) -> dict:
        return {"check": self.name, "level": self.level, "status": self.status,
                "counterexamples": self.counterexamples}


def _status(bad: list) -> str:
    return "pass" if not bad else "fail"


def check_weights(level: Level, max_len: int) -> CheckResult:
    if not level.positive:
        return CheckResult("lemma-weights", str(level), "skipped: needs a positive level")
    alcove = affweyl.alcove_weights(level)
    if not alcove:
        return CheckResult("lemma-weights", str(level), "skipped: no integral regular weights")
    bad = []
    for lam, mu in itertools.product(alcove, repeat=2):
        bad += affweyl.verify_weight_geometry(lam, mu, max_len)
    return CheckResult("lemma-weights", str(level), _status(bad), bad)


def check_lengths(level: Level, max_len: int) -> CheckResult:
    if not level.negative:
        return CheckResult("lemma-lengths", str(level), "skipped: needs a negative level")
    lam = affweyl.default_anchor(level)
    bad = affweyl.verify_length_monotonicity(lam, max_len)
    return CheckResult("lemma-lengths", str(level), _status(bad), bad)


def check_translation(level: Level, max_len: int, samples: int, rng: random.Random) -> CheckResult:
    """Round trips of translation, and agreement of the relabeling with the actual functor."""
    anchors = affweyl.alcove_weights(level) or [affweyl.default_anchor(level)]
    G = WeylGroup.for_level(level)
    bad = []
    for a, b in itertools.product(anchors, repeat=2):
        src, dst = Block(level, a), Block(level, b)
        for _ in range(samples):
            v = kgroup.random_element(G, max_len, rng)
            if kgroup.translate(dst, src, kgroup.translate(src, dst, v)) != v:
                bad.append({"src": a.weight, "dst": b.weight, "v": v.to_json()})
        if not rootsys.is_integral(sub(b.weight, a.weight)):
            continue
        mu = rootsys.dominant_representative(level.rs, sub(b.weight, a.weight))[0]
        for u in G.elements(max_len):
            e = GroupAlgebraElement.basis(G, u)
            if kgroup.tensor_action(src, dst, mu, e) != kgroup.translate(src, dst, e):
                bad.append({"src": a.weight, "dst": b.weight, "label": str(u)})
    return CheckResult("translation-equivalence", str(level), _status(bad), bad)


def check_linearity(level: Level, max_len: int, samples: int, rng: random.Random) -> CheckResult:
    rs = level.rs
    lam = affweyl.default_anchor(level)
    block = Block(level, lam)
    G = block.group
    mus = [m for m in itertools.product(range(3), repeat=rs.rank) if 0 < sum(m) <= 2]
    bad = []
    for _ in range(samples):
        v = kgroup.random_element(G, max_len, rng)
        mu = rng.choice(mus)
        image = kgroup.tensor_action(block, block, mu, v)
        for w in G.elements(min(3, max_len)):
            if kgroup.tensor_action(block, block, mu, v.left_translate(w)) != image.left_translate(w):
                bad.append({"mu": list(mu), "w": str(w), "v": v.to_json()})
    return CheckResult("w-linearity", str(level), _status(bad), bad)


def check_group_algebra(level: Level, max_len: int, table: Optional[TiltingTable]) -> CheckResult:
    if not level.negative:
        return CheckResult("group-algebra", str(level), "skipped: needs a negative level")
    lam = affweyl.default_anchor(level)
    G = WeylGroup.for_level(level)
    table = table or kgroup.generic_identity_table(G, max_len)
    mus = list(lam.rs.fundamental_weights)
    report = kgroup.group_algebra_check(lam, table, max_len, mus=mus)
    bad = [f"{k}: {x}" for k in ("unitriangular", "basis", "composition", "operators") for x in report[k]]
    return CheckResult("group-algebra", str(level), _status(bad), bad)


def verify_suite(config: RunConfig) -> List[CheckResult]:
    """Run every check at every level; results come back in a fixed order."""
    tasks: List[Callable[[], CheckResult]] = []
    for text in config.levels:
        level = make_level(config.rs, text)
        if level.generic:
            for name in CHECKS:
                tasks.append(lambda name=name, t=text: CheckResult(name, str(t), "skipped: generic"))
            continue
        table = None
        if config.table_path:
            table = TiltingTable.load(WeylGroup.for_level(level), config.table_path)
        seed = config.seed
        n = config.max_len
        tasks += [
            lambda lv=level: check_weights(lv, n),
            lambda lv=level: check_lengths(lv, n),
            lambda lv=level: check_translation(lv, n, config.samples, random.Random(seed)),
            lambda lv=level: check_linearity(lv, n, config.samples, random.Random(seed + 1)),
            lambda lv=level, tb=table: check_group_algebra(lv, n, tb),
        ]
    if config.jobs > 1:
        with ThreadPoolExecutor(config.jobs) as pool:
            return list(pool.map(lambda f: f(), tasks))
    return [f() for f in tasks]

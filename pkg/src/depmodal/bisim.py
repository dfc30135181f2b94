"""Bisimilarity between finite pointed models, and distinguishing formulas.

A bisimulation pairs worlds that agree on all propositions and on both
generative families, and transfers along both relations in both directions
(zig and zag for the epistemic and the nomic relation).  On finite models
bisimilarity coincides with agreement on all formulas, which is exercised
here two ways: a pair-deletion fixpoint computes the greatest bisimulation,
and an independent partition-refinement search synthesizes a concrete
distinguishing formula whenever one exists.

Cross-model comparison requires a shared proposition signature: a pair of
worlds from models declaring different proposition sets never satisfies the
base conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .dependency import atom_holds_from_family, generative_sets, p_family
from .model import KripkeModel, PointedModel
from .syntax import (GLOBAL, LOCAL, All, DepG, DepL, Formula, Know, Not, Prop,
                     conj_all, dep_atom, mutual_dependence, proper_subsets)

Pair = tuple[str, str]


@dataclass(frozen=True)
class BisimRelation:
    """A set of world pairs between two models."""

    pairs: frozenset[Pair]

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def verdict(self, pair: Pair) -> bool:
        return pair in self.pairs


def _base_match(m: KripkeModel, m2: KripkeModel, s: str, s2: str) -> bool:
    # proposition agreement presumes an identical declared signature
    return (all(m.valuation[s][p] == m2.valuation[s2][p] for p in m.propositions)
            and generative_sets(m, s, GLOBAL) == generative_sets(m2, s2, GLOBAL)
            and generative_sets(m, s, LOCAL) == generative_sets(m2, s2, LOCAL))


def _transfers(m: KripkeModel, m2: KripkeModel, pairs: set[Pair],
               s: str, s2: str) -> bool:
    for cls, cls2 in ((m.epistemic_class(s), m2.epistemic_class(s2)),
                      (m.nomic_class(s), m2.nomic_class(s2))):
        for t in cls:                      # zig
            if not any((t, t2) in pairs for t2 in cls2):
                return False
        for t2 in cls2:                    # zag
            if not any((t, t2) in pairs for t in cls):
                return False
    return True


def check_bisimulation(m: KripkeModel, m2: KripkeModel,
                       b: BisimRelation | Iterable[Pair]) -> bool:
    """Whether ``b`` is a bisimulation between ``m`` and ``m2``: nonempty, and
    every pair satisfies the proposition, generative-family, zig and zag
    conditions."""
    pairs = set(b.pairs if isinstance(b, BisimRelation) else b)
    if not pairs:
        return False
    for s, s2 in pairs:
        m._world_index(s)
        m2._world_index(s2)
    if set(m.propositions) != set(m2.propositions):
        return False
    for s, s2 in pairs:
        if not _base_match(m, m2, s, s2):
            return False
        if not _transfers(m, m2, pairs, s, s2):
            return False
    return True


def greatest_bisimulation(m: KripkeModel, m2: KripkeModel) -> BisimRelation:
    """The largest bisimulation between the two models (possibly empty):
    start from all pairs passing the base conditions, then delete pairs whose
    zig or zag transfer fails until nothing changes."""
    if set(m.propositions) != set(m2.propositions):
        return BisimRelation(frozenset())
    pairs = {(s, s2)
             for s in m.worlds for s2 in m2.worlds
             if _base_match(m, m2, s, s2)}
    changed = True
    while changed:
        changed = False
        for pair in sorted(pairs):
            if not _transfers(m, m2, pairs, *pair):
                pairs.discard(pair)
                changed = True
    return BisimRelation(frozenset(pairs))


def are_bisimilar(pm: PointedModel, pm2: PointedModel) -> bool:
    """Whether some bisimulation links the two points."""
    return (pm.point, pm2.point) in greatest_bisimulation(pm.model, pm2.model)


# ---------------------------------------------------------------------------
# Distinguishing formulas via partition refinement
# ---------------------------------------------------------------------------

Node = tuple[int, str]


class _Refiner:
    """Depth-stratified modal-equivalence partitions over the disjoint union
    of two models, with formula synthesis for split pairs."""

    def __init__(self, m: KripkeModel, m2: KripkeModel):
        self.models = (m, m2)
        self.shared_props = sorted(set(m.propositions) & set(m2.propositions))
        self.nodes: list[Node] = ([(0, w) for w in m.worlds]
                                  + [(1, w) for w in m2.worlds])
        self.levels: list[dict[Node, int]] = [self._level0()]
        self.stable = False

    def model_of(self, node: Node) -> KripkeModel:
        return self.models[node[0]]

    def _level0(self) -> dict[Node, int]:
        profiles: dict[tuple, int] = {}
        cells: dict[Node, int] = {}
        for node in self.nodes:
            mdl, w = self.model_of(node), node[1]
            prof = (tuple(mdl.valuation[w][p] for p in self.shared_props),
                    generative_sets(mdl, w, GLOBAL),
                    generative_sets(mdl, w, LOCAL))
            cells[node] = profiles.setdefault(prof, len(profiles))
        return cells

    def _succ(self, node: Node, relation: str) -> list[Node]:
        mdl, w = self.model_of(node), node[1]
        cls = (mdl.epistemic_class(w) if relation == "epi" else mdl.nomic_class(w))
        return [(node[0], t) for t in sorted(cls)]

    def _refine_once(self) -> bool:
        prev = self.levels[-1]
        profiles: dict[tuple, int] = {}
        cells: dict[Node, int] = {}
        for node in self.nodes:
            prof = (prev[node],
                    frozenset(prev[t] for t in self._succ(node, "epi")),
                    frozenset(prev[t] for t in self._succ(node, "nomic")))
            cells[node] = profiles.setdefault(prof, len(profiles))
        changed = len(set(cells.values())) != len(set(prev.values()))
        self.levels.append(cells)
        return changed

    def refine_to(self, depth: int) -> None:
        while len(self.levels) <= depth and not self.stable:
            if not self._refine_once():
                self.stable = True
                self.levels.pop()

    def split_level(self, a: Node, b: Node, depth: int) -> int | None:
        """Smallest level <= depth at which the two nodes sit in different
        cells, or None if they agree through ``depth``."""
        for j in range(min(depth, len(self.levels) - 1) + 1):
            if self.levels[j][a] != self.levels[j][b]:
                return j
        return None

    # -- synthesis ------------------------------------------------------

    def _atom_true_at(self, node: Node, atom: Formula) -> bool:
        # family-route truth: total even for names the model never declares
        mdl, w = self.model_of(node), node[1]
        match atom:
            case Prop(name):
                return mdl.valuation[w][name] == 1
            case DepG(x, y):
                return atom_holds_from_family(p_family(mdl, w, GLOBAL), x, y)
            case DepL(x, y):
                return atom_holds_from_family(p_family(mdl, w, LOCAL), x, y)
        raise AssertionError(f"not an atom: {atom!r}")

    def split_atom(self, a: Node, b: Node) -> Formula:
        """A proposition or dependency atom with different truth values at the
        two nodes; the nodes must sit in different level-0 cells."""
        ma, wa = self.model_of(a), a[1]
        mb, wb = self.model_of(b), b[1]
        for p in self.shared_props:
            if ma.valuation[wa][p] != mb.valuation[wb][p]:
                return Prop(p)
        for kind in (GLOBAL, LOCAL):
            ga = generative_sets(ma, wa, kind)
            gb = generative_sets(mb, wb, kind)
            diff = sorted(ga.members ^ gb.members, key=lambda s: (len(s), sorted(s)))
            for w in diff:
                for atom in _block_atoms(kind, w):
                    if self._atom_true_at(a, atom) != self._atom_true_at(b, atom):
                        return atom
        raise AssertionError("level-0 split without a distinguishing atom")

    def distinguish(self, a: Node, b: Node, depth: int) -> Formula:
        """A formula of modal depth <= depth, true at ``a`` and false at ``b``;
        the nodes must split by ``depth``."""
        j = self.split_level(a, b, depth)
        if j is None:
            raise AssertionError("distinguish called on equivalent nodes")
        if j == 0:
            atom = self.split_atom(a, b)
            return atom if self._atom_true_at(a, atom) else Not(atom)
        for relation, box in (("epi", Know), ("nomic", All)):
            img_a = {self.levels[j - 1][t]: t for t in self._succ(a, relation)}
            img_b = {self.levels[j - 1][t]: t for t in self._succ(b, relation)}
            if set(img_a) != set(img_b):
                if set(img_a) - set(img_b):
                    # a sees a cell b never reaches: diamond over a's witness
                    t = img_a[min(set(img_a) - set(img_b))]
                    body = conj_all(self.distinguish(t, img_b[c], j - 1)
                                    for c in sorted(img_b))
                    return Not(box(Not(body)))
                # b sees a cell a never reaches: box formula over a's successors
                t = img_b[min(set(img_b) - set(img_a))]
                body = conj_all(self.distinguish(t, img_a[c], j - 1)
                                for c in sorted(img_a))
                return box(Not(body))
        raise AssertionError("split level with equal successor images")


def _block_atoms(kind: str, w: frozenset[str]):
    """The atoms whose conjunction asserts that ``w`` is one interdependent
    block; one of them must separate two worlds whose generative families
    disagree on ``w``."""
    if len(w) == 1:
        yield mutual_dependence(kind, w)
        return
    for z in proper_subsets(w):
        yield dep_atom(kind, z, w - z)


def find_distinguishing_formula(pm: PointedModel, pm2: PointedModel,
                                depth: int | None = None) -> Formula | None:
    """Some formula of modal depth <= depth over the shared propositions and
    support-bounded dependency atoms that separates the two points, or None
    when every such formula agrees on them.  ``depth`` defaults to the product
    of the two world counts, which is past the refinement fixpoint."""
    if depth is None:
        depth = len(pm.model.worlds) * len(pm2.model.worlds)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    ref = _Refiner(pm.model, pm2.model)
    ref.refine_to(depth)
    a, b = (0, pm.point), (1, pm2.point)
    split = ref.split_level(a, b, depth)
    if split is None:
        return None
    if split == 0:
        return ref.split_atom(a, b)
    return ref.distinguish(a, b, depth)

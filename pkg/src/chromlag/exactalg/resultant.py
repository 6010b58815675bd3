"""Variable elimination by iterated resultants.

Resultants are delegated to sympy; the inputs and outputs are MPolys.
"""

from __future__ import annotations

from typing import List, Sequence

import sympy

from .mpoly import MPoly

MAX_ELIMINATED = 3
MAX_TERMS = 20000


class EliminationBlowup(RuntimeError):
    pass


def _squarefree_factors(p: MPoly) -> List[MPoly]:
    if p.is_constant():
        return []
    _, factors = sympy.factor_list(p.to_sympy(), *sympy.symbols(p.vars))
    return [MPoly.from_sympy(p.vars, f).monic_normalized() for f, _ in factors]


def resultant_eliminate(polys: Sequence[MPoly], eliminate: Sequence[str]) -> List[MPoly]:
    """Eliminate ``eliminate`` from ``polys`` by successive resultants.

    Returns the irreducible factors of the surviving relations, in the
    original variable tuple (the eliminated variables no longer occur).
    Spurious factors are possible; callers verify them on the locus.
    """
    eliminate = list(eliminate)
    if len(eliminate) > MAX_ELIMINATED:
        raise EliminationBlowup(f"refusing to eliminate {len(eliminate)} > {MAX_ELIMINATED} variables")
    current: List[MPoly] = []
    for p in polys:
        current.extend(_squarefree_factors(p))
    for t in eliminate:
        with_t = [p for p in current if p.degree(t) > 0]
        without = [p for p in current if p.degree(t) <= 0]
        if not with_t:
            current = without
            continue
        sym = sympy.Symbol(t)
        pivot = min(with_t, key=lambda p: (p.degree(t), len(p.terms)))
        new = list(without)
        for p in with_t:
            if p is pivot:
                continue
            r = sympy.resultant(pivot.to_sympy(), p.to_sympy(), sym)
            rp = MPoly.from_sympy(p.vars, r)
            if len(rp.terms) > MAX_TERMS:
                raise EliminationBlowup(f"resultant in {t} has {len(rp.terms)} terms")
            new.extend(_squarefree_factors(rp))
        # dedupe, keep deterministic order
        seen = []
        for p in new:
            if p not in seen:
                seen.append(p)
        current = seen
    return current

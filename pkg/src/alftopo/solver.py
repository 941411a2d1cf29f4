"""Backtracking search for two-valued cell memberships.

Every constraint asks for a set of cells to go to one side (``True`` for T,
``False`` for K), either all of them or at least one of them.  "All"
constraints are applied first as plain assignments; "at least one"
constraints are then solved by DPLL-style backtracking with unit
propagation.  Cells no constraint pins down stay unassigned; callers
decide their default.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence


@dataclass(frozen=True)
class Constraint:
    cells: tuple[int, ...]
    side: bool
    every: bool
    info: Any = None


@dataclass(frozen=True)
class Conflict:
    """A cell that two constraints pull to opposite sides.

    ``reason`` is ``None`` when the opposite value came from a search
    decision rather than from a constraint.
    """

    cell: int
    constraint: Constraint
    reason: Constraint | None

    @property
    def size(self) -> int:
        return len(self.constraint.cells) + (len(self.reason.cells) if self.reason else 0)


def solve(constraints: Sequence[Constraint]) -> tuple[dict[int, bool] | None, Conflict | None]:
    """Return ``(assignment, None)`` or ``(None, conflict)``."""
    value: dict[int, bool] = {}
    reason: dict[int, Constraint] = {}
    conflicts: list[Conflict] = []
    for con in constraints:
        if not con.every:
            continue
        for c in con.cells:
            if c in value and value[c] != con.side:
                conflicts.append(Conflict(c, con, reason[c]))
            elif c not in value:
                value[c] = con.side
                reason[c] = con
    if conflicts:
        return None, min(conflicts, key=lambda k: k.size)

    clauses = [con for con in constraints if not con.every]
    first: list[Conflict] = []
    result = _dpll(clauses, value, dict(reason), first)
    if result is None:
        return None, first[0]
    return result, None


def _propagate(clauses, value, reason) -> Conflict | None:
    changed = True
    while changed:
        changed = False
        for con in clauses:
            free = None
            nfree = 0
            satisfied = False
            for c in con.cells:
                v = value.get(c)
                if v is None:
                    nfree += 1
                    free = c
                elif v == con.side:
                    satisfied = True
                    break
            if satisfied:
                continue
            if nfree == 0:
                c = con.cells[0]
                return Conflict(c, con, reason.get(c))
            if nfree == 1:
                value[free] = con.side
                reason[free] = con
                changed = True
    return None


def _dpll(clauses, value, reason, first):
    value = dict(value)
    reason = dict(reason)
    conflict = _propagate(clauses, value, reason)
    if conflict is not None:
        if not first:
            first.append(conflict)
        return None
    for con in clauses:
        if any(value.get(c) == con.side for c in con.cells):
            continue
        var = next(c for c in con.cells if c not in value)
        for choice in (con.side, not con.side):
            value[var] = choice
            reason.pop(var, None)
            out = _dpll(clauses, value, reason, first)
            if out is not None:
                return out
        return None
    return value

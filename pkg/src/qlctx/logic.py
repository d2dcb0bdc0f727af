"""Greechie orthogonality diagrams and their two-valued states.

A diagram is a set of named atoms (observables, representable as rays)
grouped into contexts (maximal sets of co-measurable observables); atoms
shared by two or more contexts are link observables.  A two-valued state
assigns 0/1 to every atom with exactly one 1 per context; it is represented
here as the frozenset of atoms assigned 1.

.gd file format, one directive per line ('#' starts a comment):

    name <free text>            optional diagram name
    atoms <a> <b> ...           optional atom declaration (validation only)
    context <a> <b> <c> ...     one context per line

Atoms are bare whitespace-delimited tokens; the same token appearing in two
contexts denotes the same observable.  All contexts must have the same size
(the diagram dimension).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ._lp import feasibility

TwoValuedState = frozenset  # atoms assigned 1; all other atoms are 0


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass(frozen=True)
class GreechieDiagram:
    atoms: tuple[str, ...]
    contexts: tuple[tuple[str, ...], ...]
    dim: int
    name: str | None = None


def make_diagram(contexts, name=None, atoms=None, _lines=None) -> GreechieDiagram:
    """Validate and build a diagram from context tuples.

    ``atoms``, when given, fixes the atom order and must cover exactly the
    atoms used by the contexts; otherwise atoms are ordered by first
    appearance.  ``_lines`` carries source line numbers for parse errors.
    """
    contexts = [tuple(c) for c in contexts]
    lines = _lines or [None] * len(contexts)
    if not contexts:
        raise ParseError("diagram has no contexts")
    dim = len(contexts[0])
    if dim < 2:
        raise ParseError("contexts need at least two atoms", lines[0])
    seen_sets: dict[frozenset, int] = {}
    for ctx, line in zip(contexts, lines):
        if len(ctx) != dim:
            raise ParseError(
                f"context {ctx} has size {len(ctx)}, expected {dim}", line
            )
        if len(set(ctx)) != dim:
            raise ParseError(f"context {ctx} repeats an atom", line)
        key = frozenset(ctx)
        if key in seen_sets:
            raise ParseError(
                f"context {ctx} duplicates an earlier context", line
            )
        seen_sets[key] = 1
    used: list[str] = []
    for ctx in contexts:
        for atom in ctx:
            if atom not in used:
                used.append(atom)
    if atoms is not None:
        atoms = list(atoms)
        declared = set(atoms)
        if len(declared) != len(atoms):
            raise ParseError("duplicate atom declaration")
        for ctx, line in zip(contexts, lines):
            for atom in ctx:
                if atom not in declared:
                    raise ParseError(f"unknown atom {atom!r} in context", line)
        unused = [a for a in atoms if a not in set(used)]
        if unused:
            raise ParseError(f"declared atoms {unused} appear in no context")
        order = tuple(atoms)
    else:
        order = tuple(used)
    return GreechieDiagram(order, tuple(contexts), dim, name)


def parse_diagram(text: str) -> GreechieDiagram:
    """Parse the .gd format; raises ParseError with a line number."""
    name = None
    declared = None
    contexts: list[tuple[str, ...]] = []
    lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword, rest = tokens[0], tokens[1:]
        if keyword == "name":
            name = " ".join(rest) or None
        elif keyword == "atoms":
            declared = (declared or []) + rest
        elif keyword == "context":
            if len(rest) < 2:
                raise ParseError("context needs at least two atoms", lineno)
            contexts.append(tuple(rest))
            lines.append(lineno)
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno)
    return make_diagram(contexts, name=name, atoms=declared, _lines=lines)


def link_atoms(diagram: GreechieDiagram) -> tuple[str, ...]:
    """Atoms belonging to two or more contexts, in atom order."""
    counts = {a: 0 for a in diagram.atoms}
    for ctx in diagram.contexts:
        for atom in ctx:
            counts[atom] += 1
    return tuple(a for a in diagram.atoms if counts[a] >= 2)


def state_vector(diagram: GreechieDiagram, state: TwoValuedState) -> tuple[int, ...]:
    return tuple(1 if a in state else 0 for a in diagram.atoms)


def two_valued_states(diagram: GreechieDiagram) -> list[TwoValuedState]:
    """All 0/1 assignments with exactly one 1 per context.

    Backtracks over contexts in file order; the result is sorted
    lexicographically by assignment vector in atom order, so the
    enumeration is deterministic and duplicate-free.
    """
    index = {a: i for i, a in enumerate(diagram.atoms)}
    contexts = [tuple(index[a] for a in ctx) for ctx in diagram.contexts]
    assign: list[int | None] = [None] * len(diagram.atoms)
    found: list[TwoValuedState] = []

    def backtrack(ci: int):
        if ci == len(contexts):
            found.append(
                frozenset(a for a, i in index.items() if assign[i] == 1)
            )
            return
        ctx = contexts[ci]
        ones = [i for i in ctx if assign[i] == 1]
        if len(ones) > 1:
            return
        candidates = ones if ones else [i for i in ctx if assign[i] is None]
        for chosen in candidates:
            touched = []
            ok = True
            for i in ctx:
                want = 1 if i == chosen else 0
                if assign[i] is None:
                    assign[i] = want
                    touched.append(i)
                elif assign[i] != want:
                    ok = False
                    break
            if ok:
                backtrack(ci + 1)
            for i in touched:
                assign[i] = None

    backtrack(0)
    found = sorted(set(found), key=lambda s: state_vector(diagram, s))
    return found


def nonseparating_pairs(diagram: GreechieDiagram) -> list[tuple[str, str]]:
    """Unordered atom pairs (x, y) with v(x) = v(y) in every two-valued state.

    Empty when no two-valued states exist (nonexistence is reported
    separately by classify).
    """
    states = two_valued_states(diagram)
    if not states:
        return []
    pairs = []
    for x, y in itertools.combinations(diagram.atoms, 2):
        if all((x in s) == (y in s) for s in states):
            pairs.append((x, y))
    return pairs


@dataclass(frozen=True)
class StateSetClassification:
    """Scarcity class of the two-valued state set, plus its witnesses.

    kind is one of 'nonexistent', 'nonunital', 'unital_nonseparating',
    'separating'; witnesses are the atoms never assigned 1 (nonunital) or
    the indistinguishable atom pairs (nonseparating).
    """

    kind: str
    witness_atoms: tuple[str, ...] = ()
    witness_pairs: tuple[tuple[str, str], ...] = ()


def classify(diagram: GreechieDiagram) -> StateSetClassification:
    states = two_valued_states(diagram)
    if not states:
        return StateSetClassification("nonexistent")
    dead = tuple(
        a for a in diagram.atoms if all(a not in s for s in states)
    )
    if dead:
        return StateSetClassification("nonunital", witness_atoms=dead)
    pairs = tuple(nonseparating_pairs(diagram))
    if pairs:
        return StateSetClassification("unital_nonseparating", witness_pairs=pairs)
    return StateSetClassification("separating")


# --- classical polytope membership ----------------------------------------


@dataclass(frozen=True)
class HullMembership:
    """Outcome of a convex-hull membership test over the two-valued states.

    For an inside verdict, ``weights`` is an exact convex combination
    aligned with ``states``.  For an outside verdict, ``functional`` and
    ``offset`` give an exact separating hyperplane: f(s) <= offset on every
    state while f(p) = offset + margin with margin > 0.
    """

    inside: bool
    states: tuple[TwoValuedState, ...]
    weights: tuple[Fraction, ...] | None = None
    functional: dict[str, Fraction] | None = None
    offset: Fraction | None = None
    margin: Fraction | None = None


def _to_fraction(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)  # exact binary value of the float
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a probability")


def hull_membership(diagram: GreechieDiagram, p, tol=1e-9) -> HullMembership:
    """Decide whether atom probabilities p lie in the classical polytope.

    p maps atom names to values in [0, 1] (ints, floats, Fractions, or
    strings like '1/3'); unlisted atoms default to 0.  The test asks for
    nonnegative weights over the enumerated two-valued states that sum to
    one and reproduce p within ``tol`` componentwise; it is solved exactly
    in rational arithmetic, so certificates are exact.
    """
    states = two_valued_states(diagram)
    if not states:
        raise ValueError("no classical states: the diagram admits no "
                         "two-valued states")
    for atom in p:
        if atom not in diagram.atoms:
            raise ValueError(f"unknown atom {atom!r} in probability assignment")
    target = [_to_fraction(p.get(a, 0)) for a in diagram.atoms]
    if any(t < 0 or t > 1 for t in target):
        raise ValueError("probabilities must lie in [0, 1]")
    tol = _to_fraction(tol)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")

    m = len(diagram.atoms)
    k = len(states)
    vertex = [
        [Fraction(1) if diagram.atoms[i] in s else Fraction(0) for s in states]
        for i in range(m)
    ]
    zero = Fraction(0)

    # exact reproduction first: clean certificates whenever p is hit exactly
    rows = [vertex[i] + [] for i in range(m)] + [[Fraction(1)] * k]
    rhs = list(target) + [Fraction(1)]
    status, x, _ = feasibility(rows, rhs)
    if status == "feasible":
        return HullMembership(True, tuple(states), weights=tuple(x))

    # otherwise allow a componentwise band of width tol around p
    # columns: state weights (k) | band offsets w (m) | band slacks r (m)
    rows, rhs = [], []
    for i in range(m):  # V·λ - w_i = p_i - tol
        row = vertex[i] + [zero] * (2 * m)
        row[k + i] = Fraction(-1)
        rows.append(row)
        rhs.append(target[i] - tol)
    for i in range(m):  # w_i + r_i = 2 tol
        row = [zero] * (k + 2 * m)
        row[k + i] = Fraction(1)
        row[k + m + i] = Fraction(1)
        rows.append(row)
        rhs.append(2 * tol)
    rows.append([Fraction(1)] * k + [zero] * (2 * m))  # sum of weights = 1
    rhs.append(Fraction(1))

    status, x, farkas = feasibility(rows, rhs)
    if status == "feasible":
        return HullMembership(True, tuple(states), weights=tuple(x[:k]))

    # Farkas row multipliers -> separating functional on atom probabilities
    coeffs = farkas[:m]
    scale = max(abs(c) for c in coeffs)
    coeffs = [c / scale for c in coeffs]
    offset = -farkas[2 * m] / scale
    functional = {a: coeffs[i] for i, a in enumerate(diagram.atoms)}
    value = sum(c * t for c, t in zip(coeffs, target))
    return HullMembership(
        False,
        tuple(states),
        functional=functional,
        offset=offset,
        margin=value - offset,
    )


# --- rendering -------------------------------------------------------------

_PALETTE = ("black", "red3", "blue3", "green4", "orange3",
            "purple3", "brown", "cyan4")


def _q(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def render(diagram: GreechieDiagram, style: str) -> str:
    """Render a diagram as DOT text.

    'dot' draws atoms as nodes with one clique per context; 'greechie'
    draws each context as a colored curve through its atoms; 'tkadlec'
    draws whole contexts as nodes joined by edges labelled with their link
    observables (dimension-3 diagrams only).
    """
    if style not in ("dot", "greechie", "tkadlec"):
        raise ValueError(f"unknown render style {style!r}")
    title = _q(diagram.name or "diagram")
    lines = [f"graph {title} {{"]
    if style == "tkadlec":
        if diagram.dim != 3:
            raise ValueError("tkadlec style requires dimension-3 contexts")
        names = ["{" + ",".join(ctx) + "}" for ctx in diagram.contexts]
        for n in names:
            lines.append(f"  {_q(n)};")
        for i, j in itertools.combinations(range(len(names)), 2):
            for atom in diagram.contexts[i]:
                if atom in diagram.contexts[j]:
                    lines.append(
                        f"  {_q(names[i])} -- {_q(names[j])} "
                        f"[label={_q(atom)}];"
                    )
    else:
        for atom in diagram.atoms:
            lines.append(f"  {_q(atom)};")
        if style == "dot":
            seen = set()
            for ctx in diagram.contexts:
                for x, y in itertools.combinations(ctx, 2):
                    if frozenset((x, y)) not in seen:
                        seen.add(frozenset((x, y)))
                        lines.append(f"  {_q(x)} -- {_q(y)};")
        else:
            for i, ctx in enumerate(diagram.contexts):
                color = _PALETTE[i % len(_PALETTE)]
                lines.append(f"  // context {i + 1}: {' '.join(ctx)}")
                for x, y in zip(ctx, ctx[1:]):
                    lines.append(
                        f"  {_q(x)} -- {_q(y)} "
                        f'[color={_q(color)}, label="{i + 1}"];'
                    )
    lines.append("}")
    return "\n".join(lines) + "\n"

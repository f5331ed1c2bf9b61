"""Root generating systems, Weyl action on the apartment, real roots, Tits cone.

Coordinates: cocharacter-side vectors (points of A = Y⊗Q) are tuples in the
fixed basis of Y; character-side vectors are tuples in the dual basis, so
χ(v) is a plain dot product.  Roots as elements of the root lattice
Q = ⊕Zα_i are integer tuples indexed by I.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

RootVec = tuple[int, ...]
ApartmentVec = tuple[Fraction, ...]


class NotGCM(ValueError):
    def __init__(self, axiom: str, position: tuple[int, int]):
        self.axiom = axiom
        self.position = position
        super().__init__(f"Kac-Moody axiom ({axiom}) fails at {position}")


class NotRegular(ValueError):
    pass


@dataclass(frozen=True)
class KacMoodyMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]


def validate_km(rows) -> KacMoodyMatrix:
    """Check the generalized Cartan axioms; name the violated one on failure."""
    entries = tuple(tuple(int(x) for x in row) for row in rows)
    size = len(entries)
    if any(len(row) != size for row in entries):
        raise ValueError("matrix must be square")
    for i in range(size):
        if entries[i][i] != 2:
            raise NotGCM("i", (i, i))
        for j in range(size):
            if i != j and entries[i][j] > 0:
                raise NotGCM("ii", (i, j))
            if (entries[i][j] == 0) != (entries[j][i] == 0):
                raise NotGCM("iii", (i, j))
    return KacMoodyMatrix(entries)


@dataclass(frozen=True)
class RootGenSys:
    """A Kac-Moody matrix with simple roots/coroots in dual coordinates.

    ``simple_roots[i]`` is α_i as a linear form (dual-basis coordinates),
    ``simple_coroots[i]`` is α_i∨ as a Y-vector.  Freeness of either family
    is not required (the affine SL2 system has non-free coroots).
    """

    matrix: KacMoodyMatrix
    rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for i, cov in enumerate(self.simple_coroots):
            for j, root in enumerate(self.simple_roots):
                if sum(a * b for a, b in zip(root, cov)) != self.matrix[i, j]:
                    raise ValueError(
                        f"pairing alpha_{j}(alpha_{i}^) != a[{i}][{j}]")

    @property
    def index_set(self) -> range:
        return range(self.matrix.size)

    def apartment_vec(self, coords) -> ApartmentVec:
        v = tuple(Fraction(c) for c in coords)
        if len(v) != self.rank:
            raise ValueError("dimension mismatch")
        return v


def eval_pairing(chi, v) -> Fraction:
    """χ(v) for a character-side vector χ and apartment vector v."""
    if len(chi) != len(v):
        raise ValueError("dimension mismatch")
    return sum((Fraction(a) * b for a, b in zip(chi, v)), Fraction(0))


def eval_root(system: RootGenSys, beta: RootVec, v) -> Fraction:
    """β(v) for β = Σ n_i α_i given by its root-lattice coordinates."""
    total = Fraction(0)
    for n, alpha in zip(beta, system.simple_roots):
        if n:
            total += n * eval_pairing(alpha, v)
    return total


def height(beta: RootVec) -> int:
    return sum(beta)


def reflect(system: RootGenSys, i: int, v) -> ApartmentVec:
    """r_i.v = v − α_i(v)·α_i∨."""
    c = eval_pairing(system.simple_roots[i], v)
    return tuple(x - c * w for x, w in zip(v, system.simple_coroots[i]))


def co_reflect(system: RootGenSys, i: int, beta: RootVec) -> RootVec:
    """Dual action on Q-coordinates: β − β(α_i∨)·α_i, β(α_i∨) = Σ_j β_j a_ij."""
    pairing = sum(b * system.matrix[i, j] for j, b in enumerate(beta))
    out = list(beta)
    out[i] -= pairing
    return tuple(out)


def real_roots_up_to_height(system: RootGenSys, max_height: int) -> frozenset[RootVec]:
    """All real roots β with |ht(β)| ≤ max_height.

    Breadth-first closure of {±α_i} under the simple co-reflections, pruning
    outside the height window; valid because every positive real root has a
    descent path of real roots to a simple root with weakly smaller heights.
    """
    if max_height < 1:
        raise ValueError("height bound must be >= 1")
    n = system.matrix.size
    seeds = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        seeds.append(e)
        seeds.append(tuple(-x for x in e))
    seen = set(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                img = co_reflect(system, i, beta)
                if img not in seen and abs(height(img)) <= max_height:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(b for b in seen if abs(height(b)) <= max_height)


def is_positive_root_vec(beta: RootVec) -> bool:
    return any(x > 0 for x in beta) and all(x >= 0 for x in beta)


class WeylElt:
    """A Weyl group element: a word in simple reflections plus its exact
    matrix on A; equality is by matrix (the A-representation)."""

    __slots__ = ("system", "word", "matrix")

    def __init__(self, system: RootGenSys, word=(), matrix=None):
        self.system = system
        self.word = tuple(word)
        if matrix is None:
            matrix = _word_matrix(system, self.word)
        self.matrix = matrix

    def __eq__(self, other):
        return (isinstance(other, WeylElt) and other.system == self.system
                and other.matrix == self.matrix)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return "w[" + ("".join(f"r{i}" for i in self.word) or "e") + "]"

    def apply(self, v) -> ApartmentVec:
        return tuple(sum(row[c] * v[c] for c in range(len(v))) for row in self.matrix)

    def apply_root(self, beta: RootVec) -> RootVec:
        # (w.β) via co-reflections, rightmost letter acting first
        for i in reversed(self.word):
            beta = co_reflect(self.system, i, beta)
        return beta

    def compose(self, other: "WeylElt") -> "WeylElt":
        mat = tuple(
            tuple(sum(self.matrix[r][k] * other.matrix[k][c]
                      for k in range(len(self.matrix)))
                  for c in range(len(self.matrix)))
            for r in range(len(self.matrix)))
        return WeylElt(self.system, self.word + other.word, mat)

    def inverse(self) -> "WeylElt":
        return WeylElt(self.system, tuple(reversed(self.word)))


def _reflection_matrix(system: RootGenSys, i: int):
    n = system.rank
    alpha = system.simple_roots[i]
    cov = system.simple_coroots[i]
    return tuple(
        tuple(Fraction((1 if r == c else 0) - cov[r] * alpha[c]) for c in range(n))
        for r in range(n))


def _word_matrix(system: RootGenSys, word):
    n = system.rank
    mat = tuple(tuple(Fraction(1 if r == c else 0) for c in range(n)) for r in range(n))
    elt = WeylElt.__new__(WeylElt)
    elt.system, elt.word, elt.matrix = system, (), mat
    for i in word:
        step = WeylElt.__new__(WeylElt)
        step.system, step.word, step.matrix = system, (i,), _reflection_matrix(system, i)
        elt = elt.compose(step)
    return elt.matrix


@dataclass(frozen=True)
class TitsClassification:
    w: WeylElt
    zero_set: frozenset[int]


def tits_classify(system: RootGenSys, v, max_steps: int):
    """Descend v into the closed fundamental chamber, or give up.

    While some α_i(current) < 0 apply r_i for the least such i. On success
    returns TitsClassification(w, J) with v ∈ w.F̄ and J the wall set; returns
    None (NotClassified) once max_steps reflections are spent -- points
    outside the Tits cone never terminate the descent.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    cur = system.apartment_vec(v)
    word = []
    for _ in range(max_steps + 1):
        values = [eval_pairing(a, cur) for a in system.simple_roots]
        neg = next((i for i, val in enumerate(values) if val < 0), None)
        if neg is None:
            w = WeylElt(system, tuple(word))
            zero = frozenset(i for i, val in enumerate(values) if val == 0)
            return TitsClassification(w, zero)
        if len(word) >= max_steps:
            return None
        cur = reflect(system, neg, cur)
        word.append(neg)
    return None


def n_of_lambda(system: RootGenSys, lam) -> int:
    """N(λ) = min over real roots α of |α(λ)| for regular integral λ.

    Scans real roots up to the height beyond which |α(λ)| must exceed the
    running minimum (height h forces dominant value ≥ h·min_i α_i(λ++)).
    """
    lam = system.apartment_vec(lam)
    if any(x.denominator != 1 for x in lam):
        raise ValueError("lambda must have integer coordinates")
    cls = tits_classify(system, lam, max_steps=1000)
    if cls is None or cls.zero_set:
        raise NotRegular(f"{lam} is not a regular point of the Tits cone")
    dominant = cls.w.inverse().apply(lam)
    simple_values = [eval_pairing(a, dominant) for a in system.simple_roots]
    floor_step = min(simple_values)
    best = min(simple_values)
    bound = int(best // floor_step)
    for beta in real_roots_up_to_height(system, max(1, bound)):
        if is_positive_root_vec(beta):
            best = min(best, eval_root(system, beta, dominant))
    return int(best)


def half_apartment_contains(system: RootGenSys, alpha: RootVec, k: int, v) -> bool:
    """Membership in D(α, k) = {x : α(x) + k ≥ 0}, exactly."""
    return eval_root(system, alpha, system.apartment_vec(v)) + k >= 0


# ---------------------------------------------------------------------------
# Built-in systems and fixture files.

def a1_system() -> RootGenSys:
    """SL2: X-basis the fundamental weight, å = 2·weight, Y = Z·å∨."""
    return RootGenSys(validate_km([[2]]), 1, ((2,),), ((1,),))


def affine_sl2_system() -> RootGenSys:
    """Affine SL2 lattices X = Zå ⊕ Zδ, Y = Zå∨ ⊕ Zd, non-free coroots.

    In the (å∨, d)-dual coordinates: α_0 = δ − å = (−2, 1), α_1 = å = (2, 0),
    α_0∨ = −å∨, α_1∨ = å∨.
    """
    return RootGenSys(
        validate_km([[2, -2], [-2, 2]]), 2,
        ((-2, 1), (2, 0)),
        ((-1, 0), (1, 0)),
    )


BUILTIN_SYSTEMS = {
    "a1": a1_system,
    "affine-sl2": affine_sl2_system,
}


def system_from_fixture(data: dict) -> RootGenSys:
    try:
        return RootGenSys(
            validate_km(data["cartan"]),
            int(data["rank"]),
            tuple(tuple(int(x) for x in r) for r in data["simple_roots"]),
            tuple(tuple(int(x) for x in r) for r in data["simple_coroots"]),
        )
    except KeyError as exc:
        raise ValueError(f"fixture is missing field {exc.args[0]!r}") from exc


def load_system(name_or_path: str) -> RootGenSys:
    """Resolve --system: a built-in name or a JSON fixture file path."""
    if name_or_path in BUILTIN_SYSTEMS:
        return BUILTIN_SYSTEMS[name_or_path]()
    with open(name_or_path) as fh:
        return system_from_fixture(json.load(fh))

"""Ramification portraits, the minimal weight function, and orbifold data.

A portrait is a finite functional graph of marked points, each with a
local degree.  The minimal weight nu assigns to every node the least
value (under divisibility, with an absorbing infinity) satisfying
nu(p) * deg(p) | nu(image(p)); its values above 1 form the signature of
the associated orbifold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


class _Infinity:
    """Absorbing top element for divisibility on the extended naturals."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()

ExtNat = "int | _Infinity"


def is_infinite(value) -> bool:
    return value is INFINITY


def ext_divides(a, b) -> bool:
    """a | b on naturals extended so that infinity is a multiple of anything."""
    if b is INFINITY:
        return True
    if a is INFINITY:
        return False
    return b % a == 0


def ext_lcm(a, b):
    if a is INFINITY or b is INFINITY:
        return INFINITY
    return lcm(a, b)


def ext_sort_key(value):
    return (1, 0) if value is INFINITY else (0, value)


@dataclass(frozen=True)
class PortraitNode:
    id: str
    image: str
    degree: int


@dataclass(frozen=True)
class Portrait:
    """Forward-closed list of marked points with local degrees."""

    nodes: tuple[PortraitNode, ...]

    def __post_init__(self):
        ids = [node.id for node in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate node id")
        id_set = set(ids)
        for node in self.nodes:
            if node.degree < 1:
                raise ValueError(f"node {node.id!r} has degree < 1")
            if node.image not in id_set:
                raise ValueError(f"node {node.id!r} maps to unknown {node.image!r}")

    @staticmethod
    def from_nodes(nodes) -> Portrait:
        return Portrait(tuple(PortraitNode(str(i), str(im), int(d)) for i, im, d in nodes))

    def image_of(self) -> dict[str, str]:
        return {node.id: node.image for node in self.nodes}

    def degree_of(self) -> dict[str, int]:
        return {node.id: node.degree for node in self.nodes}

    def postcritical_ids(self) -> frozenset[str]:
        """Forward orbits of the images of the critical nodes."""
        image = self.image_of()
        post = set()
        for node in self.nodes:
            if node.degree >= 2:
                current = image[node.id]
                while current not in post:
                    post.add(current)
                    current = image[current]
        return frozenset(post)


def has_periodic_critical(portrait: Portrait) -> bool:
    """True iff some cycle of the portrait carries a node of degree >= 2."""
    image = portrait.image_of()
    degree = portrait.degree_of()
    state = {}  # 0 in progress, 1 done
    for start in image:
        if start in state:
            continue
        trail = []
        current = start
        while current not in state:
            state[current] = 0
            trail.append(current)
            current = image[current]
        if state[current] == 0:
            cycle_start = trail.index(current)
            if any(degree[v] >= 2 for v in trail[cycle_start:]):
                return True
        for v in trail:
            state[v] = 1
    return False


@dataclass(frozen=True)
class OrbifoldData:
    """Minimal weights, signature, Euler characteristic and class."""

    nu: dict
    signature: tuple
    chi: Fraction
    orbifold_class: str

    def __post_init__(self):
        if self.chi > 0:
            raise ValueError("not a Thurston-map orbifold")


def euler_char(signature) -> Fraction:
    """2 minus the sum of (1 - 1/v) over the signature, with 1/inf = 0."""
    total = Fraction(2)
    for value in signature:
        if value is INFINITY:
            total -= 1
        else:
            if value < 2:
                raise ValueError("signature entries must be >= 2")
            total -= 1 - Fraction(1, value)
    return total


_PARABOLIC_NAMES = {
    (2, 2, 2, 2): "(2,2,2,2)",
    (3, 3, 3): "(3,3,3)",
    (2, 4, 4): "(2,4,4)",
    (2, 3, 6): "(2,3,6)",
}


def classify_orbifold(signature) -> tuple[str, str | None]:
    """(parabolic|hyperbolic, named parabolic type when it is one)."""
    chi = euler_char(signature)
    if chi > 0:
        raise ValueError("not a Thurston-map orbifold")
    if chi < 0:
        return ("hyperbolic", None)
    finite = tuple(v for v in signature if v is not INFINITY)
    name = _PARABOLIC_NAMES.get(finite) if len(finite) == len(signature) else None
    return ("parabolic", name)


def nu_minimal(portrait: Portrait) -> OrbifoldData:
    """Least weight function of the portrait and its orbifold data.

    Nodes on or downstream of a cycle whose degree product exceeds 1
    get infinity up front; the finite part is the least fixpoint of
    nu(image(p)) <- lcm(nu(image(p)), nu(p) * deg(p)) from nu == 1,
    which terminates because every finite value divides the lcm of the
    degree products over the (acyclic) finite region.
    """
    image = portrait.image_of()
    degree = portrait.degree_of()
    nu = {v: 1 for v in image}

    # absorbing part: forward closure of the bad cycles
    state = {}
    bad = set()
    for start in image:
        if start in state:
            continue
        trail = []
        current = start
        while current not in state:
            state[current] = 0
            trail.append(current)
            current = image[current]
        if state[current] == 0:
            cycle_start = trail.index(current)
            cycle = trail[cycle_start:]
            if any(degree[v] >= 2 for v in cycle):
                bad.update(cycle)
        for v in trail:
            state[v] = 1
    frontier = list(bad)
    while frontier:
        v = image[frontier.pop()]
        if v not in bad:
            bad.add(v)
            frontier.append(v)
    for v in bad:
        nu[v] = INFINITY

    # infinity was pushed forward above, so nu[v] is finite whenever
    # nu[image[v]] is
    changed = True
    while changed:
        changed = False
        for v, img in image.items():
            if nu[img] is INFINITY:
                continue
            need = ext_lcm(nu[img], nu[v] * degree[v])
            if need != nu[img]:
                nu[img] = need
                changed = True

    signature = tuple(sorted((v for v in nu.values() if v is INFINITY or v > 1),
                             key=ext_sort_key))
    chi = euler_char(signature)
    klass = "parabolic" if chi == 0 else "hyperbolic"
    return OrbifoldData(dict(sorted(nu.items())), signature, chi, klass)

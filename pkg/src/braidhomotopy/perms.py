"""Symmetric-group arithmetic and the strand-permutation homomorphism.

``Permutation.images[i-1]`` records which strand occupies position ``i``
at the bottom of a braid diagram, i.e. the starting point of the strand
arriving at ``i``.  With this convention the permutation of a product
u*v is ``compose(perm(u), perm(v))`` where letters act top-to-bottom in
word order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from braidhomotopy.words import Gen, Word


class UnsupportedLetterError(ValueError):
    """Raised when a word contains letters outside the homomorphism domain."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def __str__(self) -> str:
        return to_cycles(self)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def transposition(n: int, i: int) -> Permutation:
    """The adjacent transposition (i, i+1) in the symmetric group on n."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"transposition index {i} out of range for n={n}")
    images = list(range(1, n + 1))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Permutation of a braid doing p first, then q (diagram stacking)."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p.images[q.images[i] - 1] for i in range(p.n)))


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.n
    for i, v in enumerate(p.images):
        images[v - 1] = i + 1
    return Permutation(tuple(images))


def word_permutation(w: Word, n: int,
                     atom_images: Mapping[Gen, Permutation] | None = None) -> Permutation:
    """Image of a word under the homomorphism to the symmetric group.

    Crossing generators map to adjacent transpositions; loop and band
    generators are pure and map to the identity.  Abstract atoms are
    rejected unless ``atom_images`` assigns them a permutation.
    """
    images = list(range(1, n + 1))
    for gen, _ in w.letters:
        if gen.kind == "s":
            k = gen.i
            tau = None
        elif gen.kind in ("a", "t"):
            continue
        elif atom_images is not None and gen in atom_images:
            tau = atom_images[gen].images
        else:
            raise UnsupportedLetterError(f"no permutation image for letter {gen}")
        if tau is None:
            images[k - 1], images[k] = images[k], images[k - 1]
        else:
            images = [images[tau[i] - 1] for i in range(n)]
    return Permutation(tuple(images))


def is_pure(w: Word, n: int,
            atom_images: Mapping[Gen, Permutation] | None = None) -> bool:
    """True iff the word induces the trivial strand permutation."""
    return word_permutation(w, n, atom_images).is_identity()


def generated_permutations(gens: Iterable[Permutation]) -> set[Permutation]:
    """Closure of a generating set under composition (breadth-first)."""
    gens = list(gens)
    if not gens:
        return set()
    seen = {identity(gens[0].n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = compose(p, q)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


def to_cycles(p: Permutation) -> str:
    """Cycle notation; fixed points are omitted and the identity is ``()``."""
    seen = [False] * p.n
    parts = []
    for start in range(1, p.n + 1):
        if seen[start - 1]:
            continue
        cycle = [start]
        seen[start - 1] = True
        k = p(start)
        while k != start:
            cycle.append(k)
            seen[k - 1] = True
            k = p(k)
        if len(cycle) > 1:
            parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) if parts else "()"


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``(1 2)(3 4)``; ``()`` is the identity."""
    images = list(range(1, n + 1))
    body = text.strip()
    if body in ("", "()"):
        return Permutation(tuple(images))
    if not re.fullmatch(r"(\(\s*\d+(\s+\d+)*\s*\))+", body):
        raise ValueError(f"unparseable cycle notation {text!r}")
    for grp in re.findall(r"\(([^)]*)\)", body):
        entries = [int(x) for x in grp.split()]
        if len(set(entries)) != len(entries):
            raise ValueError(f"repeated entry in cycle ({grp})")
        for v in entries:
            if not 1 <= v <= n:
                raise ValueError(f"cycle entry {v} out of range for n={n}")
        perm = list(range(1, n + 1))
        for idx, v in enumerate(entries):
            perm[v - 1] = entries[(idx + 1) % len(entries)]
        images = [images[perm[i] - 1] for i in range(n)]
    return Permutation(tuple(images))

"""Typed free-group words over the braid/surface generator alphabet.

Letters are generator symbols with an exponent of +1 or -1; words are
always stored freely reduced.  Three typed symbol kinds exist (crossing
generators ``s``, surface loops ``a``, band generators ``t``) together
with named abstract atoms.  Typed letters are validated against an
alphabet context ``(n, g)`` attached to the word: ``n`` strands and
genus ``g``.  Purely abstract words carry no context and combine with
any other word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class ContextError(ValueError):
    """Raised when words over incompatible (n, g) contexts are combined."""


class AlphabetError(ValueError):
    """Raised for out-of-range generator indices or malformed symbols."""


@dataclass(frozen=True, eq=False)
class Gen:
    """A generator symbol: kind 's' | 'a' | 't' | 'x' plus indices/name.

    The factory functions below intern instances, so equality usually
    resolves by identity; field comparison remains the fallback.
    """

    kind: str
    i: int = 0
    j: int = 0
    name: str = ""

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Gen):
            return NotImplemented
        return (self.kind == other.kind and self.i == other.i
                and self.j == other.j and self.name == other.name)

    def __hash__(self) -> int:
        return hash((self.kind, self.i, self.j, self.name))

    def __str__(self) -> str:
        if self.kind == "s":
            return f"s{self.i}"
        if self.kind == "a":
            return f"a{self.i}.{self.j}"
        if self.kind == "t":
            return f"t{self.i}.{self.j}"
        return self.name

    def sort_key(self) -> tuple:
        return ({"s": 0, "a": 1, "t": 2, "x": 3}[self.kind], self.i, self.j, self.name)


_GEN_CACHE: dict[tuple, Gen] = {}


def _interned(kind: str, i: int = 0, j: int = 0, name: str = "") -> Gen:
    key = (kind, i, j, name)
    gen = _GEN_CACHE.get(key)
    if gen is None:
        gen = _GEN_CACHE.setdefault(key, Gen(kind, i, j, name))
    return gen


def sigma(i: int) -> Gen:
    """Crossing generator exchanging strands i and i+1."""
    if i < 1:
        raise AlphabetError(f"sigma index must be >= 1, got {i}")
    return _interned("s", i)


def loop(i: int, r: int) -> Gen:
    """Surface loop generator: strand i through the r-th handle loop."""
    if i < 1 or r < 1:
        raise AlphabetError(f"loop indices must be >= 1, got ({i}, {r})")
    return _interned("a", i, r)


def band(i: int, j: int) -> Gen:
    """Band generator swapping-and-returning strands i < j."""
    if not 1 <= i < j:
        raise AlphabetError(f"band generator needs 1 <= i < j, got ({i}, {j})")
    return _interned("t", i, j)


def atom(name: str) -> Gen:
    """Abstract generator; bypasses (n, g) index validation."""
    if not name:
        raise AlphabetError("atom name must be nonempty")
    return _interned("x", name=name)


def check_gen(gen: Gen, n: int, g: int) -> None:
    """Validate one typed symbol against the alphabet context (n, g)."""
    if gen.kind == "s":
        if not 1 <= gen.i <= n - 1:
            raise AlphabetError(f"{gen} out of range for n={n}")
    elif gen.kind == "a":
        if not (1 <= gen.i <= n and 1 <= gen.j <= 2 * g):
            raise AlphabetError(f"{gen} out of range for n={n}, g={g}")
    elif gen.kind == "t":
        if not 1 <= gen.i < gen.j <= n:
            raise AlphabetError(f"{gen} out of range for n={n}")


def _merge_context(a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise ContextError(f"incompatible alphabet contexts {a} and {b}")


def _reduce_chain(chains: Iterable[Sequence[tuple[Gen, int]]]) -> tuple[tuple[Gen, int], ...]:
    stack: list[tuple[Gen, int]] = []
    for chain in chains:
        for let in chain:
            if stack and stack[-1][0] == let[0] and stack[-1][1] == -let[1]:
                stack.pop()
            else:
                stack.append(let)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty word is the identity.

    ``context`` is ``(n, g)`` for words containing typed letters and
    ``None`` for purely abstract words.  Instances are immutable and all
    operations are pure, so words are safe to share between threads.
    """

    letters: tuple[tuple[Gen, int], ...] = ()
    context: tuple[int, int] | None = field(default=None)

    def __post_init__(self):
        if self.context is None:
            for gen, _ in self.letters:
                if gen.kind != "x":
                    raise ContextError(f"typed letter {gen} requires an (n, g) context")
        else:
            n, g = self.context
            typed = False
            for gen, _ in self.letters:
                check_gen(gen, n, g)
                typed = typed or gen.kind != "x"
            if not typed:
                # atom-only words are context-free; normalize for equality
                object.__setattr__(self, "context", None)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[tuple[Gen, int]]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __pow__(self, e: int) -> "Word":
        if e < 0:
            return invert(self) ** -e
        out = Word((), self.context)
        for _ in range(e):
            out = concat(out, self)
        return out

    def inverse(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        return format_word(self)


EPSILON = Word()


def _make_word(letters: tuple[tuple[Gen, int], ...],
               context: tuple[int, int] | None) -> Word:
    """Internal constructor for letters already validated against context."""
    if context is not None:
        for gen, _ in letters:
            if gen.kind != "x":
                break
        else:
            context = None
    w = object.__new__(Word)
    object.__setattr__(w, "letters", letters)
    object.__setattr__(w, "context", context)
    return w


def free_reduce(letters: Iterable[tuple[Gen, int]], n: int | None = None,
                g: int | None = None) -> Word:
    """Freely reduce a raw letter sequence into a Word.

    The result has no adjacent cancelling pair and equals the input in
    the free group.  Typed letters require ``n`` (and ``g`` for loops).
    """
    letters = tuple(letters)
    context = None
    if n is not None:
        context = (n, 0 if g is None else g)
    elif any(gen.kind != "x" for gen, _ in letters):
        raise ContextError("typed letters require an (n, g) context")
    for gen, e in letters:
        if e not in (1, -1):
            raise AlphabetError(f"letter exponent must be +/-1, got {e}")
    return Word(_reduce_chain([letters]), context)


def concat(u: Word, v: Word) -> Word:
    """Freely reduced product u * v; contexts must be compatible."""
    context = _merge_context(u.context, v.context)
    return _make_word(_reduce_chain([u.letters, v.letters]), context)


def concat_all(words: Sequence[Word]) -> Word:
    context = None
    for w in words:
        context = _merge_context(context, w.context)
    return _make_word(_reduce_chain([w.letters for w in words]), context)


def invert(w: Word) -> Word:
    """Mirror-reflection inverse: reversed letters with flipped signs."""
    return _make_word(tuple((gen, -e) for gen, e in reversed(w.letters)), w.context)


def conjugate(t: Word, h: Word) -> Word:
    """The conjugate h * t * h^-1 (conjugator on the left)."""
    context = _merge_context(t.context, h.context)
    inv_h = tuple((gen, -e) for gen, e in reversed(h.letters))
    return _make_word(_reduce_chain([h.letters, t.letters, inv_h]), context)


def commutator(u: Word, v: Word) -> Word:
    """The commutator u * v * u^-1 * v^-1."""
    context = _merge_context(u.context, v.context)
    inv_u = tuple((gen, -e) for gen, e in reversed(u.letters))
    inv_v = tuple((gen, -e) for gen, e in reversed(v.letters))
    return _make_word(_reduce_chain([u.letters, v.letters, inv_u, inv_v]), context)


def gen_word(gen: Gen, n: int | None = None, g: int | None = None,
             e: int = 1) -> Word:
    """Single-generator word gen^e."""
    context = None if n is None else (n, 0 if g is None else g)
    if gen.kind != "x" and context is None:
        raise ContextError(f"typed letter {gen} requires an (n, g) context")
    sign = 1 if e > 0 else -1
    return Word(tuple((gen, sign) for _ in range(abs(e))), context)


def enumerate_shortlex(basis: Sequence[Gen], max_len: int,
                       n: int | None = None, g: int | None = None) -> Iterator[Word]:
    """Yield every freely reduced word of length <= max_len exactly once.

    Order is shortlex with letter ranks: basis symbols first (in the
    given order), then their inverses.
    """
    if max_len < 0:
        raise ValueError(f"max_len must be >= 0, got {max_len}")
    context = None if n is None else (n, 0 if g is None else g)
    if context is None and any(b.kind != "x" for b in basis):
        raise ContextError("typed basis symbols require an (n, g) context")
    alphabet = [(b, 1) for b in basis] + [(b, -1) for b in basis]
    yield Word((), context)
    layer: list[tuple[tuple[Gen, int], ...]] = [()]
    for _ in range(max_len):
        next_layer = []
        for prefix in layer:
            for let in alphabet:
                if prefix and prefix[-1][0] == let[0] and prefix[-1][1] == -let[1]:
                    continue
                ext = prefix + (let,)
                next_layer.append(ext)
                yield Word(ext, context)
        layer = next_layer


_TOKEN_RE = re.compile(
    r"(?:s(?P<si>\d+)|a(?P<ai>\d+)\.(?P<ar>\d+)|t(?P<ti>\d+)\.(?P<tj>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*))"
    r"(?:\^(?P<exp>-?\d+))?$"
)


def parse_word(text: str, n: int | None = None, g: int | None = None) -> Word:
    """Parse the token grammar, e.g. ``s1 a1.2^-1 t1.3``.

    Tokens are whitespace separated; each is a symbol name with an
    optional ``^<signed int>`` exponent.  Abstract identifiers may not
    collide with the reserved ``s<i>``/``a<i>.<r>``/``t<i>.<j>`` forms.
    """
    letters: list[tuple[Gen, int]] = []
    for token in text.split():
        m = _TOKEN_RE.match(token)
        if m is None:
            raise AlphabetError(f"unparseable token {token!r}")
        if m.group("si") is not None:
            gen = sigma(int(m.group("si")))
        elif m.group("ai") is not None:
            gen = loop(int(m.group("ai")), int(m.group("ar")))
        elif m.group("ti") is not None:
            gen = band(int(m.group("ti")), int(m.group("tj")))
        else:
            gen = atom(m.group("name"))
        exp = 1 if m.group("exp") is None else int(m.group("exp"))
        sign = 1 if exp > 0 else -1
        letters.extend((gen, sign) for _ in range(abs(exp)))
    return free_reduce(letters, n, g)


def format_word(w: Word) -> str:
    """Render a word in the token grammar; runs collapse to powers."""
    if not w.letters:
        return ""
    parts = []
    run_gen, run_exp = w.letters[0]
    for gen, e in w.letters[1:]:
        if gen == run_gen and (e > 0) == (run_exp > 0):
            run_exp += e
        else:
            parts.append(_format_run(run_gen, run_exp))
            run_gen, run_exp = gen, e
    parts.append(_format_run(run_gen, run_exp))
    return " ".join(parts)


def _format_run(gen: Gen, exp: int) -> str:
    return str(gen) if exp == 1 else f"{gen}^{exp}"

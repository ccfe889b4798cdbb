"""Size caps and canonical enumeration of words and maps."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .finord import FinMap, all_maps

Word = tuple


@dataclass(frozen=True)
class Caps:
    """Bounds for exhaustive checks.

    ``max_word`` bounds every word (total length of concatenations),
    ``max_index`` bounds index sets ``I, J, K, L, ...``.  Configurations
    (maps and words) are always enumerated exhaustively; ``max_hom`` bounds the
    number of object or morphism tuples evaluated per configuration, with
    ``None`` meaning every tuple.  ``max_letters``, when set, bounds the total
    number of letters over all words of one configuration.
    """
    max_word: int = 3
    max_index: int = 3
    max_hom: int | None = 4
    max_letters: int | None = None

    def __post_init__(self):
        if self.max_word < 0 or self.max_index < 0:
            raise ValueError("caps must be non-negative")
        if self.max_hom is not None and self.max_hom < 1:
            raise ValueError("max_hom must be positive or None")
        if self.max_letters is not None and self.max_letters < 0:
            raise ValueError("max_letters must be non-negative or None")

    def letters_ok(self, n: int) -> bool:
        return self.max_letters is None or n <= self.max_letters


def words(colours: Sequence, n: int) -> Iterator[Word]:
    """Words of length ``n``; the last letter varies fastest."""
    for w in product(colours, repeat=n):
        yield tuple(w)


def words_upto(colours: Sequence, max_len: int) -> Iterator[Word]:
    for n in range(max_len + 1):
        yield from words(colours, n)


def maps_upto(max_index: int, dom: int | None = None, cod: int | None = None) -> Iterator[FinMap]:
    doms = [dom] if dom is not None else range(max_index + 1)
    cods = [cod] if cod is not None else range(max_index + 1)
    for I in doms:
        for J in cods:
            yield from all_maps(I, J)


def block_families(colours: Sequence, n_blocks: int, max_total: int) -> Iterator[tuple[Word, ...]]:
    """Families of ``n_blocks`` words whose total length is at most ``max_total``."""
    def rec(k, budget):
        if k == n_blocks:
            yield ()
            return
        for n in range(budget + 1):
            for w in words(colours, n):
                for rest in rec(k + 1, budget - n):
                    yield (w,) + rest
    yield from rec(0, max_total)


def concat(blocks: Sequence[Word]) -> Word:
    out: list = []
    for b in blocks:
        out.extend(b)
    return tuple(out)


def fibre_blocks(f: FinMap, blocks: Sequence[Word], l: int) -> Word:
    """Concatenation of the blocks indexed by the fiber ``f^-1 l``."""
    return concat([blocks[i] for i in f.fiber(l)])


def fmt_map(f: FinMap) -> str:
    return f"{f.dom}->{f.cod}{list(f.image)}"


def fmt_word(w: Word) -> str:
    return "(" + ",".join(str(c) for c in w) + ")"
